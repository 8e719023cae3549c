#include <doctest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "qdcover/homology.hpp"

using namespace qdc;

TEST_CASE("flat torus homology basis") {
  auto mesh = meshgen::grid_torus(12);
  auto loops = homology_basis(mesh);
  REQUIRE(loops.size() == 2);
  auto basis = cohomology_dual_basis(mesh, loops);
  REQUIRE(basis.size() == 2);

  // explicit 2x2 period matrix, full rank
  Eigen::Matrix2d period;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) period(i, j) = loop_period(basis[j], loops[i]);
  CHECK(std::abs(period.determinant()) > 0.5);
  CHECK(std::abs(loop_period(basis[0], loops[0])) > 0.5);  // duality
}

TEST_CASE("cochains are closed and antisymmetric") {
  auto dc = double_cover(qdc::testing::coarse_donut());
  const auto& mesh = dc.mesh;
  CHECK(mesh.topology().genus == 3);
  auto loops = homology_basis(mesh);
  REQUIRE(loops.size() == 6);
  auto basis = cohomology_dual_basis(mesh, loops);

  for (const auto& psi : basis) {
    for (int h = 0; h < mesh.halfedge_count(); ++h)
      CHECK(psi[h] == -psi[mesh.twin(h)]);
    for (int f = 0; f < mesh.face_count(); ++f) {
      auto hs = mesh.face_halfedges(f);
      CHECK(std::abs(psi[hs[0]] + psi[hs[1]] + psi[hs[2]]) <= 1e-12);
    }
  }

  // loops are genuinely closed halfedge cycles
  for (const auto& loop : loops) {
    for (size_t i = 0; i < loop.halfedges.size(); ++i) {
      int cur = loop.halfedges[i];
      int nxt = loop.halfedges[(i + 1) % loop.halfedges.size()];
      CHECK(mesh.dst(cur) == mesh.origin(nxt));
    }
  }

  // rank 2g
  const int n = 6;
  Eigen::MatrixXd period(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) period(i, j) = loop_period(basis[j], loops[i]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(period);
  CHECK(lu.rank() == n);
}

TEST_CASE("sphere has no homology basis") {
  try {
    homology_basis(meshgen::icosphere(1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenusZero);
  }
}
