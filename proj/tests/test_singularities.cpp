#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qdcover/singularities.hpp"
#include "qdcover/surface.hpp"

using namespace qdc;
using namespace qdc::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;

int nearest_vertex(const HalfEdgeMesh& mesh, cplx target) {
  int best = 0;
  double best_d = 1e300;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    double d = std::abs(planar(mesh.position(v)) - target);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}
}  // namespace

TEST_CASE("angle sums classify the z dz^2 disk") {
  auto mesh = meshgen::disk(0.08);
  FaceGeometry geom(mesh);
  auto phi = synthetic_planar_quadratic(geom, [](cplx z) { return z; });

  auto zeros = locate_zero_points(geom, phi);
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0].order == 1);
  CHECK(zeros[0].angle_sum > 2.5 * kPi);
  CHECK(zeros[0].angle_sum < 3.5 * kPi);
  CHECK(std::abs(planar(mesh.position(zeros[0].vertex))) < 0.1);
  CHECK(zeros[0].vertex == nearest_vertex(mesh, cplx(0, 0)));

  // every classified vertex is near 2 pi or a reported zero (partition)
  int checked = 0;
  for (int v = 0; v < mesh.vertex_count(); v += 7) {
    if (mesh.is_boundary_vertex(v) || v == zeros[0].vertex) continue;
    auto fan = vertex_fan(geom, phi, v);
    CHECK(std::abs(fan.angle_sum - 2 * kPi) < 0.45 * kPi);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("three critical rays leave a simple zero 120 degrees apart") {
  auto mesh = meshgen::disk(0.08);
  FaceGeometry geom(mesh);
  auto phi = synthetic_planar_quadratic(geom, [](cplx z) { return z; });
  auto zeros = locate_zero_points(geom, phi);
  REQUIRE(zeros.size() == 1);

  auto rays = trace_critical_trajectories(geom, phi, zeros[0], zeros);
  REQUIRE(rays.size() == 3);

  std::vector<double> angles;
  for (const auto& ray : rays) {
    CHECK(ray.termination == Termination::boundary);
    CHECK(ray.points.size() >= 3);
    // ambient direction of the initial leg
    REQUIRE(ray.points.front().position.norm() < 0.1);
    Vec3 d = ray.points[2].position - ray.points.front().position;
    angles.push_back(std::atan2(d.y(), d.x()));
    // the ray marches outward to the boundary circle
    CHECK(ray.points.back().position.norm() > 0.98);
  }
  std::sort(angles.begin(), angles.end());
  double a01 = angles[1] - angles[0];
  double a12 = angles[2] - angles[1];
  double a20 = 2 * kPi - (angles[2] - angles[0]);
  CHECK(std::abs(a01 - 2 * kPi / 3) < 0.3);
  CHECK(std::abs(a12 - 2 * kPi / 3) < 0.3);
  CHECK(std::abs(a20 - 2 * kPi / 3) < 0.3);
}

TEST_CASE("regular horizontal trajectory on the flat torus closes") {
  auto mesh = meshgen::grid_torus(16);
  FaceGeometry geom(mesh);
  auto phi = synthetic_planar_quadratic(geom, [](cplx) { return cplx(1, 0); });

  auto zeros = locate_zero_points(geom, phi);
  CHECK(zeros.empty());

  MeshPoint start = mesh_point(geom, 3, Vec3(0.4, 0.3, 0.3));
  auto traj = trace_regular_trajectory(geom, phi, start, TraceDirection::horizontal, zeros);
  CHECK(traj.termination == Termination::closed_loop);
  CHECK((traj.points.front().position - traj.points.back().position).norm() <=
        1e-6 * mesh.ambient_diameter());
  CHECK(traj.points.size() > 16);
}

TEST_CASE("donut pipeline locates exactly four zeros") {
  Surface surf = Surface::analyze(coarse_donut());
  REQUIRE(surf.bordered());
  CHECK(surf.basis().size() == 6);

  auto phi = surf.build_phi({});
  auto phi_m = surf.restrict_to_domain(phi);
  auto topo = surf.domain_topology();
  CHECK(expected_zero_count(topo) == 4);

  auto zeros = locate_zero_points_checked(surf.domain_geometry(), phi_m, topo);
  REQUIRE(zeros.size() == 4);
  for (const auto& z : zeros) CHECK(z.order == 1);

  // every critical trajectory ends on the boundary or at a zero
  for (const auto& z : zeros) {
    auto rays = trace_critical_trajectories(surf.domain_geometry(), phi_m, z, zeros);
    REQUIRE(rays.size() == 3);
    for (const auto& ray : rays) {
      bool ok = ray.termination == Termination::boundary ||
                ray.termination == Termination::zero_point;
      CHECK(ok);
    }
  }
}

TEST_CASE("pants double: symmetric Phi has four simple zeros on the double") {
  Surface surf = Surface::analyze(coarse_pants());
  auto phi = surf.build_phi({});
  // the closed double is genus 2: 4g-4 = 4 zeros split across the two sheets
  auto zeros = locate_zero_points(surf.closed_geometry(), phi);
  CHECK(zeros.size() == 4);
  auto phi_m = surf.restrict_to_domain(phi);
  auto zeros_m = locate_zero_points(surf.domain_geometry(), phi_m);
  CHECK(zeros_m.size() == 2);
}
