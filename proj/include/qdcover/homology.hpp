#pragma once

#include <vector>

#include "qdcover/halfedge_mesh.hpp"
#include "qdcover/one_form.hpp"

namespace qdc {

// Closed cycle of halfedges (dst of each is origin of the next).
struct HomologyLoop {
  std::vector<int> halfedges;
};

// 2g independent loops on a closed mesh via tree-cotree: a spanning tree of
// the vertex graph, a spanning cotree of the dual on the remaining edges, and
// one loop per leftover edge.
std::vector<HomologyLoop> homology_basis(const HalfEdgeMesh& mesh);

// Dual closed cochains: psi_i is +-1 on the edges crossed by the dual-tree
// cycle associated with loop gamma_i's leftover edge and 0 elsewhere, giving
// period matrix +-identity.
std::vector<OneForm> cohomology_dual_basis(const HalfEdgeMesh& mesh,
                                           const std::vector<HomologyLoop>& loops);

double loop_period(const OneForm& form, const HomologyLoop& loop);

}  // namespace qdc
