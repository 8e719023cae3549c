#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "qdcover/face_geometry.hpp"

using namespace qdc;
using qdc::testing::coarse_annulus;
using qdc::testing::coarse_donut;
using qdc::testing::obj_from_string;
using qdc::testing::off_from_string;

namespace {

const char* kTetraObj =
    "v 1 1 1\nv 1 -1 -1\nv -1 1 -1\nv -1 -1 1\n"
    "f 1 2 3\nf 1 4 2\nf 1 3 4\nf 2 4 3\n";

void check_halfedge_roundtrips(const HalfEdgeMesh& mesh) {
  for (int h = 0; h < mesh.halfedge_count(); ++h) {
    CHECK(mesh.twin(mesh.twin(h)) == h);
    if (mesh.face(h) >= 0) {
      CHECK(mesh.next(mesh.next(mesh.next(h))) == h);
      CHECK(mesh.prev(mesh.next(h)) == h);
    }
  }
}

}  // namespace

TEST_CASE("OFF single triangle") {
  auto mesh = off_from_string("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
  CHECK(mesh.vertex_count() == 3);
  CHECK(mesh.edge_count() == 3);
  CHECK(mesh.face_count() == 1);
  CHECK(mesh.boundary_loops().size() == 1);
  check_halfedge_roundtrips(mesh);
}

TEST_CASE("OBJ tetrahedron topology") {
  auto mesh = obj_from_string(kTetraObj);
  CHECK(mesh.vertex_count() == 4);
  CHECK(mesh.edge_count() == 6);
  CHECK(mesh.face_count() == 4);
  auto topo = mesh.topology();
  CHECK(topo.euler_characteristic == 2);
  CHECK(topo.genus == 0);
  CHECK(topo.boundary_count == 0);
  check_halfedge_roundtrips(mesh);
}

TEST_CASE("flat torus grid topology") {
  auto mesh = meshgen::grid_torus(16);
  auto topo = mesh.topology();
  CHECK(topo.euler_characteristic == 0);
  CHECK(topo.genus == 1);
  CHECK(topo.boundary_count == 0);
  CHECK(mesh.vertex_count() == 256);
  CHECK(mesh.face_count() == 512);
  check_halfedge_roundtrips(mesh);

  // intrinsic metric: every edge has the wrapped length
  for (int h = 0; h < mesh.halfedge_count(); ++h) {
    double l = mesh.length(h);
    bool axis = std::abs(l - 1.0 / 16) < 1e-12;
    bool diag = std::abs(l - std::sqrt(2.0) / 16) < 1e-12;
    CHECK((axis || diag));
  }
}

TEST_CASE("annulus and donut topology") {
  const auto& annulus = coarse_annulus();
  auto ta = annulus.topology();
  CHECK(ta.genus == 0);
  CHECK(ta.boundary_count == 2);
  CHECK(ta.euler_characteristic == 0);

  const auto& donut = coarse_donut();
  auto td = donut.topology();
  CHECK(td.genus == 0);
  CHECK(td.boundary_count == 4);
  CHECK(td.euler_characteristic == -2);
  check_halfedge_roundtrips(donut);
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(obj_from_string("v 0 0 0\nf 1 2 3\n"), Error);  // missing vertices
  CHECK_THROWS_AS(obj_from_string("nonsense"), Error);

  // quad face
  try {
    obj_from_string("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonTriangle);
  }

  // three faces on one edge
  try {
    obj_from_string(
        "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nv 1 1 1\n"
        "f 1 2 3\nf 2 1 4\nf 1 2 5\n");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonManifold);
  }
}

TEST_CASE("double cover of annulus is a torus") {
  auto dc = double_cover(coarse_annulus());
  auto topo = dc.mesh.topology();
  CHECK(topo.genus == 1);
  CHECK(topo.boundary_count == 0);
  CHECK(topo.euler_characteristic == 0);
  CHECK(topo.euler_characteristic == 2 * coarse_annulus().topology().euler_characteristic);
}

TEST_CASE("double cover of three-hole donut has genus 3") {
  auto dc = double_cover(coarse_donut());
  auto topo = dc.mesh.topology();
  CHECK(topo.genus == 3);
  CHECK(topo.euler_characteristic == -4);

  // involution is an involution; boundary vertices are fixed
  for (int v = 0; v < dc.mesh.vertex_count(); ++v)
    CHECK(dc.vertex_map[dc.vertex_map[v]] == v);
  for (int v = 0; v < dc.original_vertex_count; ++v) {
    if (dc.original.is_boundary_vertex(v)) CHECK(dc.vertex_map[v] == v);
  }
  for (int h = 0; h < dc.mesh.halfedge_count(); ++h) {
    CHECK(dc.halfedge_map[dc.halfedge_map[h]] == h);
    CHECK(dc.mesh.origin(dc.halfedge_map[h]) == dc.vertex_map[dc.mesh.origin(h)]);
  }
}

TEST_CASE("double cover of disk is a sphere; closed input refuses") {
  auto dc = double_cover(meshgen::disk(0.15));
  CHECK(dc.mesh.topology().genus == 0);
  CHECK(dc.mesh.topology().boundary_count == 0);

  try {
    double_cover(meshgen::tetrahedron());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoBoundary);
  }
}

TEST_CASE("obj writer preserves vertex order") {
  auto mesh = obj_from_string(kTetraObj);
  std::ostringstream out;
  save_obj(out, mesh);
  auto reloaded = obj_from_string(out.str());
  REQUIRE(reloaded.vertex_count() == mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    CHECK((reloaded.position(v) - mesh.position(v)).norm() == 0.0);
  REQUIRE(reloaded.face_count() == mesh.face_count());
}

TEST_CASE("face geometry charts match planar faces") {
  auto mesh = obj_from_string("v 0 0 0\nv 2 0 0\nv 0 1 0\nf 1 2 3\n");
  FaceGeometry geom(mesh);
  CHECK(geom.area(0) == doctest::Approx(1.0));
  CHECK(std::abs(geom.corner(0, 1) - cplx(2, 0)) < 1e-14);
  CHECK(std::abs(geom.corner(0, 2) - cplx(0, 1)) < 1e-14);

  // gradient of a linear function u = x on chart coordinates
  cplx g = geom.gradient(0, 0.0, 2.0, 0.0);
  CHECK(std::abs(g - cplx(1, 0)) < 1e-13);
  cplx gy = geom.gradient(0, 0.0, 0.0, 1.0);
  CHECK(std::abs(gy - cplx(0, 1)) < 1e-13);

  Vec3 bary = geom.bary_of_chart(0, cplx(0.5, 0.25));
  cplx back = geom.chart_of_bary(0, bary);
  CHECK(std::abs(back - cplx(0.5, 0.25)) < 1e-14);
}

TEST_CASE("sphere mesh sanity") {
  auto sphere = meshgen::icosphere(2);
  auto topo = sphere.topology();
  CHECK(topo.genus == 0);
  CHECK(topo.boundary_count == 0);
  CHECK(sphere.face_count() == 320);
}
