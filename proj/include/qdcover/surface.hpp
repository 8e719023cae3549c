#pragma once

#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "qdcover/quad_diff.hpp"

namespace qdc {

// How to pick the quadratic differential from the holomorphic basis. Empty
// spec = default: product of the first independent pair (after
// symmetrization on bordered inputs).
struct PhiSpec {
  std::optional<std::pair<int, int>> pair;  // 0-based basis indices
  std::vector<std::tuple<int, int, cplx>> coefficients;  // sum of c * zeta_i zeta_j
};

// Normalization of the natural metric; the paper leaves the scale of Phi
// free, epsilon is quoted in natural units.
struct PhiScale {
  double boundary_natural_length = 1200.0;  // bordered: outer boundary target
  double natural_area = 160000.0;           // closed: total area target
  bool normalize = true;
};

// Input mesh plus everything derived from its conformal structure: the
// symmetric double for bordered inputs, the holomorphic basis (odd-projected
// on doubles), and quadratic differentials selected from it.
class Surface {
 public:
  static Surface analyze(HalfEdgeMesh mesh);

  bool bordered() const { return bordered_; }
  const DoubleCover& dc() const { return dc_; }

  // Domain carrying zeros, trajectories, cells and paths (the refined input
  // for bordered meshes, the input itself when closed).
  const HalfEdgeMesh& domain() const { return bordered_ ? dc_.original : mesh_; }
  const FaceGeometry& domain_geometry() const { return *domain_geom_; }

  // Closed mesh carrying the solves (the double for bordered inputs).
  const HalfEdgeMesh& closed() const { return bordered_ ? dc_.mesh : mesh_; }
  const FaceGeometry& closed_geometry() const {
    return bordered_ ? *closed_geom_ : *domain_geom_;
  }

  TopologySummary domain_topology() const { return domain().topology(); }

  // 2g forms on closed(); for bordered inputs each is odd-symmetrized (the
  // projection that turns boundary curves into vertical trajectories).
  const std::vector<ComplexOneForm>& basis() const { return basis_; }

  // First pair of basis forms that is numerically independent.
  std::pair<int, int> default_pair() const;

  // Phi on closed(), symmetrized on doubles, normalized per `scale`.
  QuadraticDifferential build_phi(const PhiSpec& spec, const PhiScale& scale = {}) const;

  QuadraticDifferential restrict_to_domain(const QuadraticDifferential& phi) const;

  // Expresses a basis element as coefficients over the raw (unsymmetrized)
  // harmonic basis via loop periods; used to export reproducible coefficient
  // files for closed meshes.
  std::vector<double> raw_coefficients(const OneForm& omega) const;

 private:
  HalfEdgeMesh mesh_;
  bool bordered_ = false;
  DoubleCover dc_;
  std::unique_ptr<FaceGeometry> domain_geom_;
  std::unique_ptr<FaceGeometry> closed_geom_;
  std::vector<HomologyLoop> loops_;
  std::vector<OneForm> harmonic_;  // symmetrized on doubles
  std::vector<ComplexOneForm> basis_;
};

}  // namespace qdc
