#pragma once

#include <sstream>
#include <string>

#include "qdcover/halfedge_mesh.hpp"
#include "qdcover/mesh_io.hpp"
#include "qdcover/meshgen.hpp"
#include "qdcover/quad_diff.hpp"

namespace qdc::testing {

inline HalfEdgeMesh obj_from_string(const std::string& text) {
  std::istringstream in(text);
  return load_mesh(in, MeshFormat::OBJ);
}

inline HalfEdgeMesh off_from_string(const std::string& text) {
  std::istringstream in(text);
  return load_mesh(in, MeshFormat::OFF);
}

// Coarse versions of the golden domains; cached because several suites reuse
// them and construction dominates test time otherwise.
inline const HalfEdgeMesh& coarse_donut() {
  static HalfEdgeMesh mesh = meshgen::three_hole_donut(0.05);
  return mesh;
}

inline const HalfEdgeMesh& coarse_pants() {
  static HalfEdgeMesh mesh = meshgen::two_hole_disk(0.06);
  return mesh;
}

inline const HalfEdgeMesh& coarse_annulus() {
  static HalfEdgeMesh mesh = meshgen::annulus(0.07);
  return mesh;
}

// Ambient complex coordinate of a planar point.
inline cplx planar(const Vec3& p) { return {p.x(), p.y()}; }

// Chart rotation of a planar face relative to the ambient frame.
inline cplx chart_rotation(const FaceGeometry& geom, int f) {
  const auto& mesh = geom.mesh();
  int h = mesh.face_halfedge(f);
  cplx amb = planar(mesh.position(mesh.dst(h))) - planar(mesh.position(mesh.origin(h)));
  return amb / geom.edge_vector(h);
}

// Samples an ambient quadratic differential phi(z) dz^2 at face centroids and
// expresses it in the face charts (planar meshes only).
template <typename F>
QuadraticDifferential synthetic_planar_quadratic(const FaceGeometry& geom, F&& phi_of_z) {
  const auto& mesh = geom.mesh();
  QuadraticDifferential out;
  out.phi.resize(mesh.face_count());
  for (int f = 0; f < mesh.face_count(); ++f) {
    auto [a, b, c] = mesh.face_vertices(f);
    cplx z = (planar(mesh.position(a)) + planar(mesh.position(b)) + planar(mesh.position(c))) /
             3.0;
    cplx r = chart_rotation(geom, f);
    out.phi[f] = phi_of_z(z) * r * r;
  }
  return out;
}

}  // namespace qdc::testing
