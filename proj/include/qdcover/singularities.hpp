#pragma once

#include <optional>
#include <vector>

#include "qdcover/quad_diff.hpp"

namespace qdc {

struct ZeroPoint {
  int vertex = -1;
  double angle_sum = 0;  // radians, ~ (2 + order) * pi
  int order = 0;
};

struct MeshPoint {
  int face = -1;
  Vec3 bary = Vec3::Zero();
  Vec3 position = Vec3::Zero();
};

MeshPoint mesh_point(const FaceGeometry& geom, int face, const Vec3& bary);
MeshPoint vertex_point(const FaceGeometry& geom, int face, int vertex);

enum class TrajectoryKind { critical, regular };
enum class Termination { zero_point, boundary, closed_loop, max_steps };
enum class TraceDirection { horizontal, vertical };

struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::regular;
  Termination termination = Termination::max_steps;
  std::vector<MeshPoint> points;
  int start_zero = -1;
  int end_zero = -1;
  int end_boundary_halfedge = -1;  // interior halfedge whose twin is boundary
  double ambient_length = 0;
};

// Natural-coordinate one-ring fan around an interior vertex: per-wedge sqrt
// branches propagated CCW, neighbor images, and the total image angle.
struct VertexFan {
  int vertex = -1;
  double angle_sum = 0;
  int closure_sign = 1;  // -1 when the propagated branch returns flipped
  std::vector<int> faces;          // wedge faces in CCW order
  std::vector<int> out_halfedges;  // outgoing halfedge per wedge
  std::vector<cplx> roots;         // propagated signed sqrt(phi) per wedge
  std::vector<cplx> xi_from;       // image of w_i within wedge i
  std::vector<cplx> xi_to;         // image of w_{i+1} within wedge i
};

VertexFan vertex_fan(const FaceGeometry& geom, const QuadraticDifferential& phi, int v);

// Alg.-4-style vertex classification: angle sum >= 2.5 pi marks a zero.
// Boundary vertices are skipped (their fans are incomplete).
std::vector<ZeroPoint> locate_zero_points(const FaceGeometry& geom,
                                          const QuadraticDifferential& phi);

// 4g-4 on closed surfaces, 2b+4g-4 on one half of a bordered input.
int expected_zero_count(const TopologySummary& topo);

std::vector<ZeroPoint> locate_zero_points_checked(const FaceGeometry& geom,
                                                  const QuadraticDifferential& phi,
                                                  const TopologySummary& topo);

struct TraceOptions {
  long max_steps = 0;  // 0: 100 * face count
  bool two_way = true; // regular traces extend both directions
  double stall_tolerance = 1e-9;
  double close_tolerance = 1e-6;  // x ambient diameter
};

std::vector<Trajectory> trace_critical_trajectories(const FaceGeometry& geom,
                                                    const QuadraticDifferential& phi,
                                                    const ZeroPoint& zero,
                                                    const std::vector<ZeroPoint>& all_zeros,
                                                    const TraceOptions& options = {});

Trajectory trace_regular_trajectory(const FaceGeometry& geom, const QuadraticDifferential& phi,
                                    const MeshPoint& start, TraceDirection direction,
                                    const std::vector<ZeroPoint>& all_zeros,
                                    const TraceOptions& options = {});

}  // namespace qdc
