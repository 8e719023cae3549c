#pragma once

#include <memory>
#include <vector>

#include "qdcover/face_geometry.hpp"
#include "qdcover/homology.hpp"
#include "qdcover/one_form.hpp"

namespace qdc {

// Constant face vector of a closed real one-form on face f, as a complex
// number in the face chart.
cplx face_vector(const FaceGeometry& geom, const OneForm& form, int f);
// Per-face complex coefficient of a complex one-form (value(h) = z * E(h)),
// least squares over the three halfedges.
cplx face_value(const FaceGeometry& geom, const ComplexOneForm& form, int f);

double closedness_defect(const FaceGeometry& geom, const OneForm& form, int f);
// Cotangent-weighted divergence at a vertex, evaluated through face vectors
// so it applies to starred (non-antisymmetric) forms as well.
double divergence(const FaceGeometry& geom, const OneForm& form, int v);
// L2 norm of the piecewise-constant vector field.
double form_norm(const FaceGeometry& geom, const OneForm& form);
double harmonic_energy(const FaceGeometry& geom, const OneForm& form);

// omega = psi + df with f solving the cotan-Laplace equation that kills the
// divergence; periods of psi are preserved exactly.
OneForm harmonize(const FaceGeometry& geom, const OneForm& psi);

// Per-face +90 degree rotation; each halfedge takes its own face's value.
OneForm hodge_star(const FaceGeometry& geom, const OneForm& omega);

// zeta_i = omega_i + i * omega_i over the full tree-cotree basis (2g forms).
std::vector<ComplexOneForm> holomorphic_basis(const FaceGeometry& geom);

ComplexOneForm make_holomorphic(const FaceGeometry& geom, const OneForm& omega);

// Pullback under the double-cover involution and the odd projection
// (1/2)(omega - sigma* omega) used for bordered inputs; odd forms make the
// boundary curves vertical trajectories.
OneForm involution_pullback(const DoubleCover& dc, const OneForm& form);
OneForm symmetrize_odd(const DoubleCover& dc, const OneForm& form);

// Reusable factorization of the pinned cotan Laplacian.
class HarmonicSolver {
 public:
  explicit HarmonicSolver(const FaceGeometry& geom);
  ~HarmonicSolver();
  HarmonicSolver(HarmonicSolver&&) noexcept;
  OneForm harmonize(const OneForm& psi) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qdc
