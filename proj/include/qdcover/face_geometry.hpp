#pragma once

#include <complex>
#include <vector>

#include "qdcover/halfedge_mesh.hpp"

namespace qdc {

using cplx = std::complex<double>;

// Per-face isometric 2D charts built from intrinsic edge lengths, plus the
// derived quantities every differential operator needs: complex edge vectors,
// areas, clamped cotangent weights and chart-to-chart transition rotations.
class FaceGeometry {
 public:
  explicit FaceGeometry(const HalfEdgeMesh& mesh);

  const HalfEdgeMesh& mesh() const { return *mesh_; }

  cplx corner(int f, int k) const { return corners_[3 * f + k]; }
  double area(int f) const { return areas_[f]; }
  double total_area() const { return total_area_; }

  // Chart vector of halfedge h within its own face; undefined on boundary
  // halfedges (stored as 0).
  cplx edge_vector(int h) const { return edge_vectors_[h]; }
  int corner_index(int h) const { return corner_index_[h]; }

  // cot of the angle opposite h within face(h), clamped to +-1e4.
  double cotan(int h) const { return cotans_[h]; }
  // 1/2 (cot alpha + cot beta); single-sided on boundary edges.
  double edge_weight(int h) const { return edge_weights_[h]; }
  int clamp_count() const { return clamp_count_; }

  // Unit rotation carrying chart vectors of face(h) to chart vectors of
  // face(twin(h)); requires both faces interior.
  cplx transition(int h) const { return transitions_[h]; }

  cplx chart_of_bary(int f, const Vec3& bary) const {
    return bary.x() * corner(f, 0) + bary.y() * corner(f, 1) + bary.z() * corner(f, 2);
  }
  Vec3 bary_of_chart(int f, cplx p) const;
  Vec3 ambient_of_bary(int f, const Vec3& bary) const;

  // Constant face vector (as complex number) of a linear function
  // interpolating the given corner values.
  cplx gradient(int f, double v0, double v1, double v2) const;

 private:
  const HalfEdgeMesh* mesh_ = nullptr;
  std::vector<cplx> corners_;
  std::vector<double> areas_;
  std::vector<cplx> edge_vectors_;
  std::vector<int> corner_index_;
  std::vector<double> cotans_;
  std::vector<double> edge_weights_;
  std::vector<cplx> transitions_;
  double total_area_ = 0;
  int clamp_count_ = 0;
};

}  // namespace qdc
