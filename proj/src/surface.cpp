#include "qdcover/surface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace qdc {

Surface Surface::analyze(HalfEdgeMesh mesh) {
  Surface s;
  s.mesh_ = std::move(mesh);
  auto topo = s.mesh_.topology();
  s.bordered_ = topo.boundary_count > 0;

  if (s.bordered_) {
    s.dc_ = double_cover(s.mesh_);
    s.domain_geom_ = std::make_unique<FaceGeometry>(s.dc_.original);
    s.closed_geom_ = std::make_unique<FaceGeometry>(s.dc_.mesh);
  } else {
    if (topo.genus == 0)
      fail(ErrorCode::GenusZero, "closed genus-0 surfaces carry no holomorphic differentials");
    s.domain_geom_ = std::make_unique<FaceGeometry>(s.mesh_);
    s.closed_geom_ = nullptr;  // same geometry object serves both roles
  }
  const FaceGeometry& geom = s.bordered_ ? *s.closed_geom_ : *s.domain_geom_;

  s.loops_ = homology_basis(geom.mesh());
  auto cochains = cohomology_dual_basis(geom.mesh(), s.loops_);
  HarmonicSolver solver(geom);
  for (const auto& psi : cochains) {
    OneForm omega = solver.harmonize(psi);
    if (s.bordered_) omega = symmetrize_odd(s.dc_, omega);
    s.harmonic_.push_back(std::move(omega));
  }
  for (const auto& omega : s.harmonic_) s.basis_.push_back(make_holomorphic(geom, omega));
  return s;
}

std::pair<int, int> Surface::default_pair() const {
  const FaceGeometry& geom = closed_geometry();
  const int n = static_cast<int>(harmonic_.size());

  // complex L2 Gram of the holomorphic forms via face values
  std::vector<std::vector<cplx>> values(n);
  for (int i = 0; i < n; ++i) {
    values[i].resize(geom.mesh().face_count());
    for (int f = 0; f < geom.mesh().face_count(); ++f)
      values[i][f] = face_value(geom, basis_[i], f);
  }
  auto inner = [&](int i, int j) {
    cplx sum = 0;
    for (int f = 0; f < geom.mesh().face_count(); ++f)
      sum += geom.area(f) * values[i][f] * std::conj(values[j][f]);
    return sum;
  };
  std::vector<double> norms(n);
  double max_norm = 0;
  for (int i = 0; i < n; ++i) {
    norms[i] = std::sqrt(std::abs(inner(i, i)));
    max_norm = std::max(max_norm, norms[i]);
  }
  for (int i = 0; i < n; ++i) {
    if (norms[i] < 1e-8 * max_norm) continue;
    for (int j = i + 1; j < n; ++j) {
      if (norms[j] < 1e-8 * max_norm) continue;
      double cosine = std::abs(inner(i, j)) / (norms[i] * norms[j]);
      if (cosine < 1.0 - 1e-6) return {i, j};
    }
  }
  fail(ErrorCode::DegenerateBasis, "no independent pair of basis differentials");
}

QuadraticDifferential Surface::build_phi(const PhiSpec& spec, const PhiScale& scale) const {
  const FaceGeometry& geom = closed_geometry();
  const int n = static_cast<int>(basis_.size());

  QuadraticDifferential phi;
  if (!spec.coefficients.empty()) {
    std::vector<QuadraticDifferential> parts;
    std::vector<std::pair<cplx, const QuadraticDifferential*>> terms;
    parts.reserve(spec.coefficients.size());
    for (const auto& [i, j, c] : spec.coefficients) {
      if (i < 0 || i >= n || j < 0 || j >= n)
        fail(ErrorCode::Config, "phi coefficient references basis element out of range");
      parts.push_back(product(geom, basis_[i], basis_[j]));
    }
    for (size_t k = 0; k < parts.size(); ++k)
      terms.emplace_back(std::get<2>(spec.coefficients[k]), &parts[k]);
    phi = combine(terms);
  } else {
    std::pair<int, int> pair = spec.pair ? *spec.pair : default_pair();
    if (pair.first < 0 || pair.first >= n || pair.second < 0 || pair.second >= n)
      fail(ErrorCode::Config, "phi pair out of range");
    phi = product(geom, basis_[pair.first], basis_[pair.second]);
  }

  if (bordered_) phi = symmetrize(geom, dc_, phi);

  if (scale.normalize) {
    double factor = 1.0;
    if (bordered_) {
      // outer boundary = longest boundary loop of the domain
      const HalfEdgeMesh& dom = domain();
      int outer = 0;
      for (size_t l = 0; l < dom.boundary_loops().size(); ++l)
        if (dom.boundary_loop_ambient_length(static_cast<int>(l)) >
            dom.boundary_loop_ambient_length(outer))
          outer = static_cast<int>(l);
      auto restricted = restrict_to_domain(phi);
      double len = natural_boundary_length(domain_geometry(), restricted,
                                           dom.boundary_loops()[outer]);
      if (len <= 0) fail(ErrorCode::ZeroFace, "Phi vanishes along the outer boundary");
      factor = scale.boundary_natural_length / len;
      factor *= factor;
    } else {
      double area = natural_area(geom, phi);
      if (area <= 0) fail(ErrorCode::ZeroFace, "Phi has zero natural area");
      factor = scale.natural_area / area;
    }
    for (auto& v : phi.phi) v *= factor;
  }
  return phi;
}

QuadraticDifferential Surface::restrict_to_domain(const QuadraticDifferential& phi) const {
  if (!bordered_) return phi;
  QuadraticDifferential out;
  out.phi.assign(phi.phi.begin(), phi.phi.begin() + dc_.original_face_count);
  return out;
}

std::vector<double> Surface::raw_coefficients(const OneForm& omega) const {
  // raw basis has period matrix = identity over loops_, so coefficients are
  // just the loop periods of omega
  std::vector<double> coeffs;
  coeffs.reserve(loops_.size());
  for (const auto& loop : loops_) coeffs.push_back(loop_period(omega, loop));
  return coeffs;
}

}  // namespace qdc
