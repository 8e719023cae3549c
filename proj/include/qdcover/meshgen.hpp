#pragma once

#include <array>
#include <vector>

#include "qdcover/halfedge_mesh.hpp"

namespace qdc {
namespace meshgen {

struct DiskSpec {
  double outer_radius = 1.0;
  std::vector<std::array<double, 3>> holes;  // cx, cy, r
  double edge_length = 0.02;
  int smoothing_iterations = 60;
};

// Planar disk with circular holes, meshed on a hex lattice with boundary
// projection and Laplacian smoothing. Deterministic.
HalfEdgeMesh disk_with_holes(const DiskSpec& spec);

// The reference domains used throughout the tests.
HalfEdgeMesh three_hole_donut(double edge_length = 0.0155);
HalfEdgeMesh two_hole_disk(double edge_length = 0.028);
HalfEdgeMesh annulus(double edge_length = 0.035);
HalfEdgeMesh disk(double edge_length = 0.06);

// Flat n x n torus; ambient positions live on the unit square, the metric is
// installed through intrinsic edge lengths (min-image distances).
HalfEdgeMesh grid_torus(int n);

HalfEdgeMesh tetrahedron();
HalfEdgeMesh icosphere(int subdivisions);

}  // namespace meshgen
}  // namespace qdc
