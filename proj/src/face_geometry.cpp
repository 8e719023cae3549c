#include "qdcover/face_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

FaceGeometry::FaceGeometry(const HalfEdgeMesh& mesh) : mesh_(&mesh) {
  const int nf = mesh.face_count();
  const int nh = mesh.halfedge_count();
  corners_.assign(3 * static_cast<size_t>(nf), cplx(0, 0));
  areas_.assign(nf, 0);
  edge_vectors_.assign(nh, cplx(0, 0));
  corner_index_.assign(nh, -1);
  cotans_.assign(nh, 0);
  edge_weights_.assign(nh, 0);
  transitions_.assign(nh, cplx(1, 0));

  for (int f = 0; f < nf; ++f) {
    auto hs = mesh.face_halfedges(f);
    double l01 = mesh.length(hs[0]);
    double l12 = mesh.length(hs[1]);
    double l20 = mesh.length(hs[2]);
    if (!(l01 > 0) || !(l12 > 0) || !(l20 > 0))
      fail(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " has a zero-length edge");
    double x2 = (l01 * l01 + l20 * l20 - l12 * l12) / (2 * l01);
    double y2sq = l20 * l20 - x2 * x2;
    double scale = std::max({l01, l12, l20});
    if (y2sq <= scale * scale * 1e-24)
      fail(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " has (near) zero area");
    double y2 = std::sqrt(y2sq);
    corners_[3 * f + 0] = cplx(0, 0);
    corners_[3 * f + 1] = cplx(l01, 0);
    corners_[3 * f + 2] = cplx(x2, y2);
    areas_[f] = 0.5 * l01 * y2;
    total_area_ += areas_[f];

    for (int k = 0; k < 3; ++k) {
      int h = hs[k];
      corner_index_[h] = k;
      edge_vectors_[h] = corners_[3 * f + (k + 1) % 3] - corners_[3 * f + k];
    }
    for (int k = 0; k < 3; ++k) {
      int h = hs[k];
      cplx a = corners_[3 * f + k] - corners_[3 * f + (k + 2) % 3];
      cplx b = corners_[3 * f + (k + 1) % 3] - corners_[3 * f + (k + 2) % 3];
      double cross = a.real() * b.imag() - a.imag() * b.real();
      double dot = a.real() * b.real() + a.imag() * b.imag();
      double cot = dot / cross;
      if (cot > 1e4 || cot < -1e4) {
        cot = std::clamp(cot, -1e4, 1e4);
        ++clamp_count_;
      }
      cotans_[h] = cot;
    }
  }

  for (int h = 0; h < nh; ++h) {
    int t = mesh.twin(h);
    double w = 0;
    if (mesh.face(h) >= 0) w += cotans_[h];
    if (mesh.face(t) >= 0) w += cotans_[t];
    edge_weights_[h] = 0.5 * w;
    if (mesh.face(h) >= 0 && mesh.face(t) >= 0) {
      cplx r = -edge_vectors_[t] / edge_vectors_[h];
      transitions_[h] = r / std::abs(r);
    }
  }
}

Vec3 FaceGeometry::bary_of_chart(int f, cplx p) const {
  cplx q0 = corner(f, 0), q1 = corner(f, 1), q2 = corner(f, 2);
  cplx e1 = q1 - q0, e2 = q2 - q0, d = p - q0;
  double det = e1.real() * e2.imag() - e1.imag() * e2.real();
  double b1 = (d.real() * e2.imag() - d.imag() * e2.real()) / det;
  double b2 = (e1.real() * d.imag() - e1.imag() * d.real()) / det;
  return {1.0 - b1 - b2, b1, b2};
}

Vec3 FaceGeometry::ambient_of_bary(int f, const Vec3& bary) const {
  auto [a, b, c] = mesh_->face_vertices(f);
  return bary.x() * mesh_->position(a) + bary.y() * mesh_->position(b) +
         bary.z() * mesh_->position(c);
}

cplx FaceGeometry::gradient(int f, double v0, double v1, double v2) const {
  auto hs = mesh_->face_halfedges(f);
  const cplx i(0, 1);
  // grad = sum_k v_k * rot90(opposite edge) / (2A)
  cplx g = v0 * i * edge_vectors_[hs[1]] + v1 * i * edge_vectors_[hs[2]] +
           v2 * i * edge_vectors_[hs[0]];
  return g / (2.0 * areas_[f]);
}

}  // namespace qdc
