#include "qdcover/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace qdc {
namespace meshgen {

namespace {

struct DomainGeometry {
  double outer_radius;
  std::vector<std::array<double, 3>> holes;

  // negative inside the domain
  double signed_distance(double x, double y) const {
    double d = std::hypot(x, y) - outer_radius;
    for (const auto& hole : holes) {
      double hd = hole[2] - std::hypot(x - hole[0], y - hole[1]);
      d = std::max(d, hd);
    }
    return d;
  }

  // feature 0 = outer circle, 1..n = holes
  int nearest_feature(double x, double y) const {
    int best = 0;
    double bestd = std::abs(std::hypot(x, y) - outer_radius);
    for (size_t i = 0; i < holes.size(); ++i) {
      double d = std::abs(std::hypot(x - holes[i][0], y - holes[i][1]) - holes[i][2]);
      if (d < bestd) {
        bestd = d;
        best = static_cast<int>(i) + 1;
      }
    }
    return best;
  }

  Vec3 project(int feature, double x, double y) const {
    if (feature == 0) {
      double n = std::hypot(x, y);
      if (n < 1e-12) return {outer_radius, 0, 0};
      return {x * outer_radius / n, y * outer_radius / n, 0};
    }
    const auto& hole = holes[feature - 1];
    double dx = x - hole[0], dy = y - hole[1];
    double n = std::hypot(dx, dy);
    if (n < 1e-12) return {hole[0] + hole[2], hole[1], 0};
    return {hole[0] + dx * hole[2] / n, hole[1] + dy * hole[2] / n, 0};
  }
};

// Drops faces until every vertex has a single face fan. Returns true if any
// face was removed.
bool remove_pinched_fans(const std::vector<std::array<int, 3>>& faces,
                         std::vector<char>& alive, int vertex_count) {
  std::vector<std::vector<int>> vertex_faces(vertex_count);
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (!alive[f]) continue;
    for (int k = 0; k < 3; ++k) vertex_faces[faces[f][k]].push_back(f);
  }
  bool changed = false;
  for (int v = 0; v < vertex_count; ++v) {
    auto& incident = vertex_faces[v];
    if (incident.size() < 2) continue;
    // group incident faces by shared edges through v
    std::map<int, int> comp;  // face -> group
    int groups = 0;
    for (int f : incident) {
      if (comp.count(f)) continue;
      std::vector<int> stack{f};
      comp[f] = groups;
      while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int other : incident) {
          if (comp.count(other)) continue;
          int shared = 0;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              if (faces[cur][a] == faces[other][b] && faces[cur][a] != v) ++shared;
          if (shared > 0) {
            comp[other] = groups;
            stack.push_back(other);
          }
        }
      }
      ++groups;
    }
    if (groups > 1) {
      std::vector<int> group_size(groups, 0);
      for (auto& [f, g] : comp) group_size[g]++;
      int keep = static_cast<int>(std::max_element(group_size.begin(), group_size.end()) -
                                  group_size.begin());
      for (auto& [f, g] : comp)
        if (g != keep) {
          alive[f] = 0;
          changed = true;
        }
    }
  }
  return changed;
}

void keep_largest_component(const std::vector<std::array<int, 3>>& faces,
                            std::vector<char>& alive) {
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (!alive[f]) continue;
    for (int k = 0; k < 3; ++k) {
      int a = faces[f][k], b = faces[f][(k + 1) % 3];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(f);
    }
  }
  std::map<int, int> comp;
  int groups = 0;
  std::vector<int> group_size;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (!alive[f] || comp.count(f)) continue;
    group_size.push_back(0);
    std::vector<int> stack{f};
    comp[f] = groups;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      group_size[groups]++;
      for (int k = 0; k < 3; ++k) {
        int a = faces[cur][k], b = faces[cur][(k + 1) % 3];
        for (int other : edge_faces[{std::min(a, b), std::max(a, b)}]) {
          if (alive[other] && !comp.count(other)) {
            comp[other] = groups;
            stack.push_back(other);
          }
        }
      }
    }
    ++groups;
  }
  if (groups <= 1) return;
  int keep = static_cast<int>(std::max_element(group_size.begin(), group_size.end()) -
                              group_size.begin());
  for (auto& [f, g] : comp)
    if (g != keep) alive[f] = 0;
}

}  // namespace

HalfEdgeMesh disk_with_holes(const DiskSpec& spec) {
  DomainGeometry dom{spec.outer_radius, spec.holes};
  const double h = spec.edge_length;
  const double dy = h * std::sqrt(3.0) / 2.0;
  const double pad = spec.outer_radius + h;
  const int rows = static_cast<int>(std::ceil(2 * pad / dy)) + 1;
  const int cols = static_cast<int>(std::ceil(2 * pad / h)) + 2;

  auto point = [&](int r, int c) {
    double x = -pad + (c + 0.5 * (r & 1)) * h;
    double y = -pad + r * dy;
    return std::make_pair(x, y);
  };

  // Keep lattice vertices strictly inside; the staircase boundary gets
  // projected onto the true circles afterwards.
  std::vector<int> vid(static_cast<size_t>(rows) * cols, -1);
  std::vector<Vec3> positions;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto [x, y] = point(r, c);
      if (dom.signed_distance(x, y) < -0.5 * h) {
        vid[static_cast<size_t>(r) * cols + c] = static_cast<int>(positions.size());
        positions.emplace_back(x, y, 0);
      }
    }
  }

  std::vector<std::array<int, 3>> faces;
  auto id = [&](int r, int c) -> int {
    if (r < 0 || r >= rows || c < 0 || c >= cols) return -1;
    return vid[static_cast<size_t>(r) * cols + c];
  };
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      int a = id(r, c), b = id(r, c + 1), d = id(r + 1, c), e = id(r + 1, c + 1);
      if (r & 1) {
        if (a >= 0 && b >= 0 && e >= 0) faces.push_back({a, b, e});
        if (a >= 0 && e >= 0 && d >= 0) faces.push_back({a, e, d});
      } else {
        if (a >= 0 && b >= 0 && d >= 0) faces.push_back({a, b, d});
        if (b >= 0 && e >= 0 && d >= 0) faces.push_back({b, e, d});
      }
    }
  }

  std::vector<char> alive(faces.size(), 1);
  keep_largest_component(faces, alive);
  while (remove_pinched_fans(faces, alive, static_cast<int>(positions.size())))
    keep_largest_component(faces, alive);

  // compact
  std::vector<int> remap(positions.size(), -1);
  std::vector<Vec3> packed_positions;
  std::vector<std::array<int, 3>> packed_faces;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (!alive[f]) continue;
    std::array<int, 3> tri;
    for (int k = 0; k < 3; ++k) {
      int v = faces[f][k];
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(packed_positions.size());
        packed_positions.push_back(positions[v]);
      }
      tri[k] = remap[v];
    }
    packed_faces.push_back(tri);
  }

  // Identify boundary vertices from edge counts, project them, then relax.
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& tri : packed_faces)
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}]++;
    }
  const int n = static_cast<int>(packed_positions.size());
  std::vector<int> feature(n, -1);
  std::vector<std::vector<int>> boundary_nbrs(n), nbrs(n);
  for (const auto& [e, cnt] : edge_count) {
    nbrs[e.first].push_back(e.second);
    nbrs[e.second].push_back(e.first);
    if (cnt == 1) {
      boundary_nbrs[e.first].push_back(e.second);
      boundary_nbrs[e.second].push_back(e.first);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (boundary_nbrs[v].empty()) continue;
    feature[v] = dom.nearest_feature(packed_positions[v].x(), packed_positions[v].y());
    packed_positions[v] =
        dom.project(feature[v], packed_positions[v].x(), packed_positions[v].y());
  }

  for (int iter = 0; iter < spec.smoothing_iterations; ++iter) {
    std::vector<Vec3> next = packed_positions;
    for (int v = 0; v < n; ++v) {
      if (feature[v] >= 0) {
        if (boundary_nbrs[v].size() == 2) {
          Vec3 mid = 0.5 * (packed_positions[boundary_nbrs[v][0]] +
                            packed_positions[boundary_nbrs[v][1]]);
          next[v] = dom.project(feature[v], mid.x(), mid.y());
        }
      } else {
        Vec3 avg = Vec3::Zero();
        for (int u : nbrs[v]) avg += packed_positions[u];
        avg /= static_cast<double>(nbrs[v].size());
        if (dom.signed_distance(avg.x(), avg.y()) < -0.3 * h) next[v] = avg;
      }
    }
    packed_positions.swap(next);
  }

  HalfEdgeMesh mesh = HalfEdgeMesh::build(std::move(packed_positions), std::move(packed_faces));
  if (mesh.boundary_loops().size() != spec.holes.size() + 1)
    fail(ErrorCode::Config, "disk_with_holes produced wrong boundary count; decrease edge_length");
  return mesh;
}

HalfEdgeMesh three_hole_donut(double edge_length) {
  DiskSpec spec;
  spec.outer_radius = 1.0;
  spec.holes = {{-0.52, 0.03, 0.16}, {0.02, -0.05, 0.21}, {0.55, 0.06, 0.18}};
  spec.edge_length = edge_length;
  return disk_with_holes(spec);
}

HalfEdgeMesh two_hole_disk(double edge_length) {
  DiskSpec spec;
  spec.outer_radius = 1.0;
  spec.holes = {{-0.45, 0.0, 0.28}, {0.45, 0.02, 0.24}};
  spec.edge_length = edge_length;
  return disk_with_holes(spec);
}

HalfEdgeMesh annulus(double edge_length) {
  DiskSpec spec;
  spec.outer_radius = 1.0;
  spec.holes = {{0.0, 0.0, 0.45}};
  spec.edge_length = edge_length;
  return disk_with_holes(spec);
}

HalfEdgeMesh disk(double edge_length) {
  DiskSpec spec;
  spec.outer_radius = 1.0;
  spec.edge_length = edge_length;
  return disk_with_holes(spec);
}

HalfEdgeMesh grid_torus(int n) {
  if (n < 3) fail(ErrorCode::Config, "grid_torus needs n >= 3");
  std::vector<Vec3> positions;
  positions.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      positions.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n, 0);

  auto vid = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<size_t>(2) * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  HalfEdgeMesh mesh = HalfEdgeMesh::build(std::move(positions), std::move(faces));

  std::vector<double> lengths(mesh.halfedge_count());
  auto wrap = [](double d) {
    d -= std::floor(d + 0.5);
    return d;
  };
  for (int h = 0; h < mesh.halfedge_count(); ++h) {
    const Vec3& a = mesh.position(mesh.origin(h));
    const Vec3& b = mesh.position(mesh.dst(h));
    double dx = wrap(b.x() - a.x());
    double dyy = wrap(b.y() - a.y());
    lengths[h] = std::hypot(dx, dyy);
  }
  mesh.set_intrinsic_lengths(std::move(lengths));
  return mesh;
}

HalfEdgeMesh tetrahedron() {
  std::vector<Vec3> positions = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return HalfEdgeMesh::build(std::move(positions), std::move(faces));
}

HalfEdgeMesh icosphere(int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> positions = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : positions) p.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 m = (positions[a] + positions[b]).normalized();
      int idx = static_cast<int>(positions.size());
      positions.push_back(m);
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(4 * faces.size());
    for (const auto& [a, b, c] : faces) {
      int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({b, bc, ab});
      next.push_back({c, ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  return HalfEdgeMesh::build(std::move(positions), std::move(faces));
}

}  // namespace meshgen
}  // namespace qdc
