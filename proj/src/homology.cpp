#include "qdcover/homology.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <deque>

namespace qdc {

namespace {

struct TreeCotree {
  std::vector<int> vertex_parent_he;  // halfedge parent -> v, -1 at root
  std::vector<int> vertex_depth;
  std::vector<int> face_parent_he;  // halfedge with face(h)=parent, face(twin)=child
  std::vector<int> face_depth;
  std::vector<char> edge_in_tree;    // per halfedge, both twins marked
  std::vector<char> edge_in_cotree;  // per halfedge
  std::vector<int> leftover;         // one halfedge per leftover edge (origin < dst)
};

TreeCotree build_tree_cotree(const HalfEdgeMesh& mesh) {
  TreeCotree tc;
  const int nv = mesh.vertex_count();
  const int nf = mesh.face_count();
  const int nh = mesh.halfedge_count();
  tc.vertex_parent_he.assign(nv, -1);
  tc.vertex_depth.assign(nv, -1);
  tc.face_parent_he.assign(nf, -1);
  tc.face_depth.assign(nf, -1);
  tc.edge_in_tree.assign(nh, 0);
  tc.edge_in_cotree.assign(nh, 0);

  std::deque<int> queue;
  queue.push_back(0);
  tc.vertex_depth[0] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int h : mesh.outgoing_halfedges(v)) {
      int w = mesh.dst(h);
      if (tc.vertex_depth[w] >= 0) continue;
      tc.vertex_depth[w] = tc.vertex_depth[v] + 1;
      tc.vertex_parent_he[w] = h;
      tc.edge_in_tree[h] = tc.edge_in_tree[mesh.twin(h)] = 1;
      queue.push_back(w);
    }
  }
  for (int v = 0; v < nv; ++v)
    if (tc.vertex_depth[v] < 0) fail(ErrorCode::NonManifold, "disconnected mesh");

  queue.push_back(0);
  tc.face_depth[0] = 0;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int h : mesh.face_halfedges(f)) {
      if (tc.edge_in_tree[h]) continue;
      int g = mesh.face(mesh.twin(h));
      if (g < 0 || tc.face_depth[g] >= 0) continue;
      tc.face_depth[g] = tc.face_depth[f] + 1;
      tc.face_parent_he[g] = h;
      tc.edge_in_cotree[h] = tc.edge_in_cotree[mesh.twin(h)] = 1;
      queue.push_back(g);
    }
  }

  for (int h = 0; h < nh; ++h) {
    if (mesh.origin(h) > mesh.dst(h)) continue;
    if (tc.edge_in_tree[h] || tc.edge_in_cotree[h] || mesh.is_boundary_edge(h)) continue;
    tc.leftover.push_back(h);
  }
  return tc;
}

}  // namespace

std::vector<HomologyLoop> homology_basis(const HalfEdgeMesh& mesh) {
  auto topo = mesh.topology();
  if (topo.boundary_count != 0)
    fail(ErrorCode::Config, "homology_basis expects a closed mesh (double bordered inputs first)");
  if (topo.genus == 0) fail(ErrorCode::GenusZero, "genus-0 surface has no homology basis");

  TreeCotree tc = build_tree_cotree(mesh);
  if (static_cast<int>(tc.leftover.size()) != 2 * topo.genus)
    fail(ErrorCode::DegenerateBasis, "tree-cotree produced wrong leftover count");

  std::vector<HomologyLoop> loops;
  loops.reserve(tc.leftover.size());
  for (int h : tc.leftover) {
    int u = mesh.origin(h), v = mesh.dst(h);
    // tree paths up to the lowest common ancestor
    std::vector<int> up_from_v, down_to_u;
    int a = v, b = u;
    while (tc.vertex_depth[a] > tc.vertex_depth[b]) {
      up_from_v.push_back(mesh.twin(tc.vertex_parent_he[a]));
      a = mesh.origin(tc.vertex_parent_he[a]);
    }
    while (tc.vertex_depth[b] > tc.vertex_depth[a]) {
      down_to_u.push_back(tc.vertex_parent_he[b]);
      b = mesh.origin(tc.vertex_parent_he[b]);
    }
    while (a != b) {
      up_from_v.push_back(mesh.twin(tc.vertex_parent_he[a]));
      a = mesh.origin(tc.vertex_parent_he[a]);
      down_to_u.push_back(tc.vertex_parent_he[b]);
      b = mesh.origin(tc.vertex_parent_he[b]);
    }
    HomologyLoop loop;
    loop.halfedges.push_back(h);
    for (int e : up_from_v) loop.halfedges.push_back(e);
    std::reverse(down_to_u.begin(), down_to_u.end());
    for (int e : down_to_u) loop.halfedges.push_back(e);
    for (size_t i = 0; i < loop.halfedges.size(); ++i) {
      int cur = loop.halfedges[i];
      int nxt = loop.halfedges[(i + 1) % loop.halfedges.size()];
      if (mesh.dst(cur) != mesh.origin(nxt))
        fail(ErrorCode::DegenerateBasis, "homology loop is not closed");
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<OneForm> cohomology_dual_basis(const HalfEdgeMesh& mesh,
                                           const std::vector<HomologyLoop>& loops) {
  TreeCotree tc = build_tree_cotree(mesh);
  if (tc.leftover.size() != loops.size())
    fail(ErrorCode::DegenerateBasis, "loops do not match this mesh's tree-cotree");

  std::vector<OneForm> basis;
  basis.reserve(loops.size());
  for (int h : tc.leftover) {
    OneForm psi(mesh.halfedge_count());
    auto cross = [&](int he, double sign) {
      psi[he] += sign;
      psi[mesh.twin(he)] -= sign;
    };
    // dual cycle: cross h from face(h) to face(twin h), then walk the cotree
    // back from face(twin h) to face(h)
    cross(h, 1.0);
    int a = mesh.face(mesh.twin(h));
    int b = mesh.face(h);
    while (tc.face_depth[a] > tc.face_depth[b]) {
      int pe = tc.face_parent_he[a];  // face(pe)=parent, face(twin pe)=a
      cross(mesh.twin(pe), 1.0);      // crossing a -> parent
      a = mesh.face(pe);
    }
    while (tc.face_depth[b] > tc.face_depth[a]) {
      int pe = tc.face_parent_he[b];
      cross(pe, 1.0);  // crossing parent -> b, traversed b -> parent in reverse
      b = mesh.face(pe);
    }
    while (a != b) {
      int pa = tc.face_parent_he[a];
      cross(mesh.twin(pa), 1.0);
      a = mesh.face(pa);
      int pb = tc.face_parent_he[b];
      cross(pb, 1.0);
      b = mesh.face(pb);
    }
    basis.push_back(std::move(psi));
  }

  // period matrix must be invertible (it is +-identity by construction)
  const int n = static_cast<int>(loops.size());
  Eigen::MatrixXd period(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) period(i, j) = loop_period(basis[j], loops[i]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(period);
  double rcond = svd.singularValues()(n - 1) / svd.singularValues()(0);
  if (!(rcond > 1e-10))
    fail(ErrorCode::DegenerateBasis, "period matrix numerically singular");

  return basis;
}

double loop_period(const OneForm& form, const HomologyLoop& loop) {
  double sum = 0;
  for (int h : loop.halfedges) sum += form[h];
  return sum;
}

}  // namespace qdc
