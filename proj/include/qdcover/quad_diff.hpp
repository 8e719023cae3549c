#pragma once

#include <unordered_map>
#include <vector>

#include "qdcover/face_geometry.hpp"
#include "qdcover/one_forms.hpp"

namespace qdc {

// Holomorphic quadratic differential: one complex value per face, expressed
// in that face's chart (transforms with the square of chart rotations).
struct QuadraticDifferential {
  std::vector<cplx> phi;

  cplx operator[](int f) const { return phi[f]; }
  cplx& operator[](int f) { return phi[f]; }
  int face_count() const { return static_cast<int>(phi.size()); }
};

QuadraticDifferential product(const FaceGeometry& geom, const ComplexOneForm& zi,
                              const ComplexOneForm& zj);

QuadraticDifferential combine(
    const std::vector<std::pair<cplx, const QuadraticDifferential*>>& terms);

// sqrt(Phi) branch choice per face, propagated from seed_face so adjacent
// faces' vectors agree to within a quarter turn. sign 0 marks faces outside
// the requested subset.
struct SignField {
  std::vector<signed char> sign;
  int seed_face = -1;
};

SignField sqrt_field(const FaceGeometry& geom, const QuadraticDifferential& phi, int seed_face);
SignField sqrt_field(const FaceGeometry& geom, const QuadraticDifferential& phi, int seed_face,
                     const std::vector<int>& face_set);

// Signed square root on a face: sign * principal sqrt of phi[f].
cplx sqrt_on_face(const QuadraticDifferential& phi, const SignField& signs, int f);

// Natural coordinate chart over a simply connected face set. xi is the
// least-squares potential of the signed sqrt(Phi) edge integrals, so path
// independence and the per-face closure of d(xi) are structural.
struct NaturalChart {
  std::vector<int> face_set;
  SignField signs;
  std::vector<int> chart_vertices;
  std::vector<cplx> xi;  // parallel to chart_vertices
  std::unordered_map<int, int> vertex_index;
  int base_vertex = -1;
  double max_side_residual = 0;  // worst |d(xi) - integrand| over halfedges

  cplx xi_of(int v) const { return xi[vertex_index.at(v)]; }
  bool contains_vertex(int v) const { return vertex_index.count(v) > 0; }
};

NaturalChart natural_coordinates(const FaceGeometry& geom, const QuadraticDifferential& phi,
                                 int base_vertex, const std::vector<int>& face_set);

// Schwarz-reflection symmetrization on the double: averages Phi with its
// conjugated pullback under the involution.
QuadraticDifferential symmetrize(const FaceGeometry& geom, const DoubleCover& dc,
                                 const QuadraticDifferential& phi);

// Natural-metric measurements (|sqrt(Phi)| line element).
double natural_edge_length(const FaceGeometry& geom, const QuadraticDifferential& phi, int h);
double natural_boundary_length(const FaceGeometry& geom, const QuadraticDifferential& phi,
                               const std::vector<int>& boundary_loop);
double natural_area(const FaceGeometry& geom, const QuadraticDifferential& phi);

}  // namespace qdc
