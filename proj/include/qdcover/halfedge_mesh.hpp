#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "qdcover/errors.hpp"

namespace qdc {

using Vec3 = Eigen::Vector3d;

struct Halfedge {
  int origin = -1;
  int twin = -1;
  int next = -1;
  int prev = -1;
  int face = -1;  // -1 marks a boundary halfedge
};

struct TopologySummary {
  int genus = 0;
  int boundary_count = 0;
  int euler_characteristic = 0;
};

// Manifold triangle mesh with halfedge connectivity. Immutable after build();
// boundary halfedges carry face = -1 and are linked into boundary loops.
class HalfEdgeMesh {
 public:
  HalfEdgeMesh() = default;

  // Validates manifoldness (each edge on <= 2 faces, disk vertex links,
  // consistent orientation) and links boundary loops.
  static HalfEdgeMesh build(std::vector<Vec3> positions,
                            std::vector<std::array<int, 3>> faces);

  int vertex_count() const { return static_cast<int>(positions_.size()); }
  int halfedge_count() const { return static_cast<int>(halfedges_.size()); }
  int edge_count() const { return halfedge_count() / 2; }
  int face_count() const { return static_cast<int>(face_halfedge_.size()); }

  const Vec3& position(int v) const { return positions_[v]; }
  const std::vector<Vec3>& positions() const { return positions_; }

  const Halfedge& halfedge(int h) const { return halfedges_[h]; }
  int origin(int h) const { return halfedges_[h].origin; }
  int dst(int h) const { return halfedges_[halfedges_[h].twin].origin; }
  int twin(int h) const { return halfedges_[h].twin; }
  int next(int h) const { return halfedges_[h].next; }
  int prev(int h) const { return halfedges_[h].prev; }
  int face(int h) const { return halfedges_[h].face; }

  int face_halfedge(int f) const { return face_halfedge_[f]; }
  int vertex_halfedge(int v) const { return vertex_halfedge_[v]; }

  std::array<int, 3> face_halfedges(int f) const {
    int h0 = face_halfedge_[f];
    int h1 = halfedges_[h0].next;
    return {h0, h1, halfedges_[h1].next};
  }
  std::array<int, 3> face_vertices(int f) const {
    auto hs = face_halfedges(f);
    return {origin(hs[0]), origin(hs[1]), origin(hs[2])};
  }

  bool is_boundary_halfedge(int h) const { return halfedges_[h].face < 0; }
  bool is_boundary_edge(int h) const {
    return is_boundary_halfedge(h) || is_boundary_halfedge(twin(h));
  }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }

  // Rotates an outgoing halfedge counterclockwise around its origin.
  int ccw_outgoing(int h) const { return twin(prev(h)); }

  // All outgoing halfedges around v in CCW order (includes the boundary
  // halfedge when v lies on a boundary loop).
  std::vector<int> outgoing_halfedges(int v) const;

  // Halfedge from u to v, or -1.
  int find_halfedge(int u, int v) const;

  double length(int h) const { return intrinsic_length_[h]; }
  const std::vector<double>& intrinsic_lengths() const { return intrinsic_length_; }
  // Overrides edge lengths (used by the flat-torus generator, whose metric is
  // not realizable by its ambient positions). Values must agree on twins.
  void set_intrinsic_lengths(std::vector<double> lengths);

  const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }

  TopologySummary topology() const;

  double ambient_diameter() const;
  double boundary_loop_ambient_length(int loop) const;

 private:
  std::vector<Vec3> positions_;
  std::vector<Halfedge> halfedges_;
  std::vector<int> face_halfedge_;
  std::vector<int> vertex_halfedge_;
  std::vector<char> boundary_vertex_;
  std::vector<std::vector<int>> boundary_loops_;
  std::vector<double> intrinsic_length_;
};

// Closed symmetric double of a bordered mesh. Mirror faces reverse
// orientation; boundary vertices are shared between the two sheets.
//
// Interior edges joining two boundary vertices would become parallel edges in
// the double, which neither the halfedge structure nor OBJ can express, so
// the input is refined first (those chords are split at their midpoint). The
// refined copy is returned as `original`; faces 0..F-1 and vertices 0..V-1 of
// `mesh` coincide with it.
struct DoubleCover {
  HalfEdgeMesh original;
  HalfEdgeMesh mesh;
  std::vector<int> vertex_map;    // involution on vertices of the double
  std::vector<int> halfedge_map;  // oriented edge (u->v) -> (sigma u -> sigma v)
  std::vector<int> face_map;      // face -> mirror face
  int original_vertex_count = 0;
  int original_face_count = 0;
};

DoubleCover double_cover(const HalfEdgeMesh& mesh);

// Splits interior edges whose endpoints both lie on the boundary.
HalfEdgeMesh split_boundary_chords(const HalfEdgeMesh& mesh);

}  // namespace qdc
