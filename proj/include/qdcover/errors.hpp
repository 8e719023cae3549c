#pragma once

#include <stdexcept>
#include <string>

namespace qdc {

// Every failure mode the pipeline can surface. The numeric values double as
// process exit codes for the CLI (see README for the table).
enum class ErrorCode : int {
  Parse = 10,
  IO = 11,
  NonManifold = 12,
  NonTriangle = 13,
  NoBoundary = 14,
  GenusZero = 15,
  DegenerateBasis = 16,
  Solver = 17,
  DegenerateFace = 18,
  EmptyCombination = 19,
  ZeroFace = 20,
  InconsistentHolonomy = 21,
  ChartNotSimplyConnected = 22,
  ZeroCountMismatch = 23,
  HighOrderZero = 24,
  TracingStall = 25,
  NonTermination = 26,
  DanglingArc = 27,
  CellCountMismatch = 28,
  DisconnectedGraph = 29,
  OddDegree = 30,
  StepTooLarge = 31,
  EmptyPath = 32,
  Resolution = 33,
  Config = 34,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qdc
