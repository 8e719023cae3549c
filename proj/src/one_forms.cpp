#include "qdcover/one_forms.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>

namespace qdc {

cplx face_vector(const FaceGeometry& geom, const OneForm& form, int f) {
  auto hs = geom.mesh().face_halfedges(f);
  return geom.gradient(f, 0.0, form[hs[0]], form[hs[0]] + form[hs[1]]);
}

cplx face_value(const FaceGeometry& geom, const ComplexOneForm& form, int f) {
  auto hs = geom.mesh().face_halfedges(f);
  cplx num(0, 0);
  double den = 0;
  for (int h : hs) {
    cplx e = geom.edge_vector(h);
    num += std::conj(e) * form[h];
    den += std::norm(e);
  }
  return num / den;
}

double closedness_defect(const FaceGeometry& geom, const OneForm& form, int f) {
  auto hs = geom.mesh().face_halfedges(f);
  return std::abs(form[hs[0]] + form[hs[1]] + form[hs[2]]);
}

double divergence(const FaceGeometry& geom, const OneForm& form, int v) {
  const HalfEdgeMesh& mesh = geom.mesh();
  double div = 0;
  for (int h : mesh.outgoing_halfedges(v)) {
    int f = mesh.face(h);
    if (f < 0) continue;
    cplx g = face_vector(geom, form, f);
    cplx e_opp = geom.edge_vector(mesh.next(h));
    div += 0.5 * std::imag(std::conj(g) * e_opp);
  }
  return div;
}

double form_norm(const FaceGeometry& geom, const OneForm& form) {
  double e = harmonic_energy(geom, form);
  return std::sqrt(e);
}

double harmonic_energy(const FaceGeometry& geom, const OneForm& form) {
  double sum = 0;
  for (int f = 0; f < geom.mesh().face_count(); ++f)
    sum += geom.area(f) * std::norm(face_vector(geom, form, f));
  return sum;
}

struct HarmonicSolver::Impl {
  const FaceGeometry* geom;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  int n = 0;  // unknowns (vertex 0 pinned)
};

HarmonicSolver::HarmonicSolver(const FaceGeometry& geom) : impl_(new Impl) {
  impl_->geom = &geom;
  const HalfEdgeMesh& mesh = geom.mesh();
  const int nv = mesh.vertex_count();
  impl_->n = nv - 1;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.halfedge_count() * 2);
  for (int h = 0; h < mesh.halfedge_count(); ++h) {
    int u = mesh.origin(h), v = mesh.dst(h);
    if (u > v) continue;
    double w = geom.edge_weight(h);
    if (u > 0) trips.emplace_back(u - 1, u - 1, w);
    if (v > 0) trips.emplace_back(v - 1, v - 1, w);
    if (u > 0 && v > 0) {
      trips.emplace_back(u - 1, v - 1, -w);
      trips.emplace_back(v - 1, u - 1, -w);
    }
  }
  Eigen::SparseMatrix<double> L(impl_->n, impl_->n);
  L.setFromTriplets(trips.begin(), trips.end());
  impl_->solver.compute(L);
  if (impl_->solver.info() != Eigen::Success)
    fail(ErrorCode::Solver, "cotan Laplacian factorization failed");
}

HarmonicSolver::~HarmonicSolver() = default;
HarmonicSolver::HarmonicSolver(HarmonicSolver&&) noexcept = default;

OneForm HarmonicSolver::harmonize(const OneForm& psi) const {
  const FaceGeometry& geom = *impl_->geom;
  const HalfEdgeMesh& mesh = geom.mesh();
  const int nv = mesh.vertex_count();

  Eigen::VectorXd b = Eigen::VectorXd::Zero(impl_->n);
  double bscale = 0;
  for (int v = 1; v < nv; ++v) {
    double div = 0;
    for (int h : mesh.outgoing_halfedges(v)) div += geom.edge_weight(h) * psi[h];
    b(v - 1) = div;
    bscale = std::max(bscale, std::abs(div));
  }
  Eigen::VectorXd x = impl_->solver.solve(b);
  if (impl_->solver.info() != Eigen::Success)
    fail(ErrorCode::Solver, "harmonic solve failed");

  // potential with the pinned vertex prepended
  auto f = [&](int v) { return v == 0 ? 0.0 : x(v - 1); };
  OneForm omega(mesh.halfedge_count());
  for (int h = 0; h < mesh.halfedge_count(); ++h)
    omega[h] = psi[h] + f(mesh.dst(h)) - f(mesh.origin(h));

  // direct solver residual: fail loudly rather than return drifted forms
  double resid = 0;
  for (int v = 1; v < nv; ++v) {
    double div = 0;
    for (int h : mesh.outgoing_halfedges(v)) div += geom.edge_weight(h) * omega[h];
    resid = std::max(resid, std::abs(div));
  }
  if (resid > 1e-10 * std::max(1.0, bscale))
    fail(ErrorCode::Solver, "harmonic residual above tolerance");
  return omega;
}

OneForm harmonize(const FaceGeometry& geom, const OneForm& psi) {
  return HarmonicSolver(geom).harmonize(psi);
}

OneForm hodge_star(const FaceGeometry& geom, const OneForm& omega) {
  const HalfEdgeMesh& mesh = geom.mesh();
  OneForm star(mesh.halfedge_count());
  for (int f = 0; f < mesh.face_count(); ++f) {
    cplx g = face_vector(geom, omega, f);
    for (int h : mesh.face_halfedges(f)) star[h] = std::imag(std::conj(g) * geom.edge_vector(h));
  }
  return star;
}

ComplexOneForm make_holomorphic(const FaceGeometry& geom, const OneForm& omega) {
  OneForm star = hodge_star(geom, omega);
  ComplexOneForm zeta(geom.mesh().halfedge_count());
  for (int h = 0; h < geom.mesh().halfedge_count(); ++h) zeta[h] = cplx(omega[h], star[h]);
  return zeta;
}

std::vector<ComplexOneForm> holomorphic_basis(const FaceGeometry& geom) {
  const HalfEdgeMesh& mesh = geom.mesh();
  auto loops = homology_basis(mesh);
  auto cochains = cohomology_dual_basis(mesh, loops);
  HarmonicSolver solver(geom);
  std::vector<ComplexOneForm> basis;
  basis.reserve(cochains.size());
  for (const auto& psi : cochains) basis.push_back(make_holomorphic(geom, solver.harmonize(psi)));
  return basis;
}

OneForm involution_pullback(const DoubleCover& dc, const OneForm& form) {
  OneForm out(form.value.size());
  for (int h = 0; h < static_cast<int>(form.value.size()); ++h) out[h] = form[dc.halfedge_map[h]];
  return out;
}

OneForm symmetrize_odd(const DoubleCover& dc, const OneForm& form) {
  OneForm pulled = involution_pullback(dc, form);
  OneForm out(form.value.size());
  for (size_t h = 0; h < form.value.size(); ++h)
    out.value[h] = 0.5 * (form.value[h] - pulled.value[h]);
  return out;
}

}  // namespace qdc
