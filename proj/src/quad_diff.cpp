#include "qdcover/quad_diff.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <deque>

namespace qdc {

QuadraticDifferential product(const FaceGeometry& geom, const ComplexOneForm& zi,
                              const ComplexOneForm& zj) {
  QuadraticDifferential out;
  out.phi.resize(geom.mesh().face_count());
  for (int f = 0; f < geom.mesh().face_count(); ++f)
    out.phi[f] = face_value(geom, zi, f) * face_value(geom, zj, f);
  return out;
}

QuadraticDifferential combine(
    const std::vector<std::pair<cplx, const QuadraticDifferential*>>& terms) {
  bool any = false;
  for (const auto& [c, phi] : terms) any |= std::abs(c) > 0;
  if (terms.empty() || !any)
    fail(ErrorCode::EmptyCombination, "combine needs at least one nonzero coefficient");
  QuadraticDifferential out;
  out.phi.assign(terms.front().second->phi.size(), cplx(0, 0));
  for (const auto& [c, phi] : terms) {
    if (phi->phi.size() != out.phi.size())
      fail(ErrorCode::Config, "combine terms live on different meshes");
    for (size_t f = 0; f < out.phi.size(); ++f) out.phi[f] += c * phi->phi[f];
  }
  return out;
}

cplx sqrt_on_face(const QuadraticDifferential& phi, const SignField& signs, int f) {
  return static_cast<double>(signs.sign[f]) * std::sqrt(phi[f]);
}

namespace {

// Sign of the second face chosen so the two sqrt vectors agree across h
// (face(h) known, face(twin h) to decide). Returns 0 when ambiguous.
int propagate_sign(const FaceGeometry& geom, const QuadraticDifferential& phi, int known_sign,
                   int h) {
  const HalfEdgeMesh& mesh = geom.mesh();
  int f = mesh.face(h);
  int g = mesh.face(mesh.twin(h));
  cplx a = static_cast<double>(known_sign) * std::sqrt(phi[f]) * geom.edge_vector(h);
  cplx b = std::sqrt(phi[g]) * (-geom.edge_vector(mesh.twin(h)));
  double agree = std::real(b * std::conj(a));
  if (agree == 0) return 0;
  return agree > 0 ? 1 : -1;
}

}  // namespace

SignField sqrt_field(const FaceGeometry& geom, const QuadraticDifferential& phi, int seed_face) {
  std::vector<int> all(geom.mesh().face_count());
  for (int f = 0; f < geom.mesh().face_count(); ++f) all[f] = f;
  return sqrt_field(geom, phi, seed_face, all);
}

SignField sqrt_field(const FaceGeometry& geom, const QuadraticDifferential& phi, int seed_face,
                     const std::vector<int>& face_set) {
  const HalfEdgeMesh& mesh = geom.mesh();
  SignField field;
  field.sign.assign(mesh.face_count(), 0);
  field.seed_face = seed_face;

  std::vector<char> in_set(mesh.face_count(), 0);
  for (int f : face_set) in_set[f] = 1;
  if (seed_face < 0 || !in_set[seed_face])
    fail(ErrorCode::Config, "sqrt_field seed outside the face set");

  const double scale = [&] {
    double s = 0;
    for (int f : face_set) s = std::max(s, std::abs(phi[f]));
    return s;
  }();
  for (int f : face_set)
    if (std::abs(phi[f]) <= 1e-14 * scale)
      fail(ErrorCode::ZeroFace,
           "Phi vanishes on face " + std::to_string(f) + " inside the chart");

  std::deque<int> queue{seed_face};
  field.sign[seed_face] = 1;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int h : mesh.face_halfedges(f)) {
      int g = mesh.face(mesh.twin(h));
      if (g < 0 || !in_set[g]) continue;
      int s = propagate_sign(geom, phi, field.sign[f], h);
      if (s == 0)
        fail(ErrorCode::InconsistentHolonomy,
             "ambiguous sqrt sign across halfedge " + std::to_string(h));
      if (field.sign[g] == 0) {
        field.sign[g] = static_cast<signed char>(s);
        queue.push_back(g);
      } else if (field.sign[g] != s) {
        fail(ErrorCode::InconsistentHolonomy,
             "sqrt sign holonomy across halfedge " + std::to_string(h));
      }
    }
  }
  for (int f : face_set)
    if (field.sign[f] == 0)
      fail(ErrorCode::Config, "face set is not edge-connected");
  return field;
}

NaturalChart natural_coordinates(const FaceGeometry& geom, const QuadraticDifferential& phi,
                                 int base_vertex, const std::vector<int>& face_set) {
  const HalfEdgeMesh& mesh = geom.mesh();
  NaturalChart chart;
  chart.face_set = face_set;
  std::sort(chart.face_set.begin(), chart.face_set.end());
  chart.base_vertex = base_vertex;

  // collect chart vertices and edges (for the simply-connectedness check)
  std::vector<char> in_set(mesh.face_count(), 0);
  for (int f : chart.face_set) in_set[f] = 1;
  std::vector<char> vertex_seen(mesh.vertex_count(), 0);
  int edge_count = 0;
  for (int f : chart.face_set) {
    for (int h : mesh.face_halfedges(f)) {
      vertex_seen[mesh.origin(h)] = 1;
      int g = mesh.face(mesh.twin(h));
      bool shared = g >= 0 && in_set[g];
      if (!shared || h < mesh.twin(h)) ++edge_count;
    }
  }
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (!vertex_seen[v]) continue;
    chart.vertex_index.emplace(v, static_cast<int>(chart.chart_vertices.size()));
    chart.chart_vertices.push_back(v);
  }
  int chi = static_cast<int>(chart.chart_vertices.size()) - edge_count +
            static_cast<int>(chart.face_set.size());
  if (chi != 1)
    fail(ErrorCode::ChartNotSimplyConnected,
         "chart face set has Euler characteristic " + std::to_string(chi));
  if (!chart.vertex_index.count(base_vertex))
    fail(ErrorCode::Config, "base vertex not in the chart");

  int seed_face = -1;
  for (int f : chart.face_set) {
    for (int v : mesh.face_vertices(f))
      if (v == base_vertex) seed_face = f;
    if (seed_face >= 0) break;
  }
  if (seed_face < 0) seed_face = chart.face_set.front();
  chart.signs = sqrt_field(geom, phi, seed_face, chart.face_set);

  // least-squares potential: one equation per (face, halfedge)
  const int n = static_cast<int>(chart.chart_vertices.size());
  const int base = chart.vertex_index.at(base_vertex);
  auto reduced = [&](int idx) { return idx < base ? idx : idx - 1; };
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs_re = Eigen::VectorXd::Zero(n - 1);
  Eigen::VectorXd rhs_im = Eigen::VectorXd::Zero(n - 1);
  for (int f : chart.face_set) {
    cplx root = sqrt_on_face(phi, chart.signs, f);
    for (int h : mesh.face_halfedges(f)) {
      int u = chart.vertex_index.at(mesh.origin(h));
      int v = chart.vertex_index.at(mesh.dst(h));
      cplx nu = root * geom.edge_vector(h);
      // (xi_v - xi_u - nu) enters the normal equations
      if (v != base) {
        trips.emplace_back(reduced(v), reduced(v), 1.0);
        rhs_re(reduced(v)) += nu.real();
        rhs_im(reduced(v)) += nu.imag();
      }
      if (u != base) {
        trips.emplace_back(reduced(u), reduced(u), 1.0);
        rhs_re(reduced(u)) -= nu.real();
        rhs_im(reduced(u)) -= nu.imag();
      }
      if (u != base && v != base) {
        trips.emplace_back(reduced(u), reduced(v), -1.0);
        trips.emplace_back(reduced(v), reduced(u), -1.0);
      }
    }
  }
  Eigen::SparseMatrix<double> L(n - 1, n - 1);
  L.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Solver, "chart normal equations failed");
  Eigen::VectorXd xre = solver.solve(rhs_re);
  Eigen::VectorXd xim = solver.solve(rhs_im);

  chart.xi.assign(n, cplx(0, 0));
  for (int i = 0; i < n; ++i) {
    if (i == base) continue;
    chart.xi[i] = cplx(xre(reduced(i)), xim(reduced(i)));
  }

  for (int f : chart.face_set) {
    cplx root = sqrt_on_face(phi, chart.signs, f);
    for (int h : mesh.face_halfedges(f)) {
      cplx d = chart.xi[chart.vertex_index.at(mesh.dst(h))] -
               chart.xi[chart.vertex_index.at(mesh.origin(h))];
      chart.max_side_residual =
          std::max(chart.max_side_residual, std::abs(d - root * geom.edge_vector(h)));
    }
  }
  return chart;
}

QuadraticDifferential symmetrize(const FaceGeometry& geom, const DoubleCover& dc,
                                 const QuadraticDifferential& phi) {
  const HalfEdgeMesh& mesh = geom.mesh();
  QuadraticDifferential out;
  out.phi.resize(phi.phi.size());
  for (int f = 0; f < mesh.face_count(); ++f) {
    int h = mesh.face_halfedge(f);
    int hbar = mesh.twin(dc.halfedge_map[h]);  // lies in the mirror face
    int fbar = mesh.face(hbar);
    cplx e = geom.edge_vector(h);
    cplx ebar = geom.edge_vector(hbar);
    cplx pullback = std::conj(phi[fbar] * ebar * ebar) / (e * e);
    out.phi[f] = 0.5 * (phi[f] + pullback);
  }
  return out;
}

double natural_edge_length(const FaceGeometry& geom, const QuadraticDifferential& phi, int h) {
  const HalfEdgeMesh& mesh = geom.mesh();
  int f = mesh.face(h);
  if (f < 0) {
    h = mesh.twin(h);
    f = mesh.face(h);
  }
  return std::sqrt(std::abs(phi[f])) * std::abs(geom.edge_vector(h));
}

double natural_boundary_length(const FaceGeometry& geom, const QuadraticDifferential& phi,
                               const std::vector<int>& boundary_loop) {
  double len = 0;
  for (int h : boundary_loop) len += natural_edge_length(geom, phi, h);
  return len;
}

double natural_area(const FaceGeometry& geom, const QuadraticDifferential& phi) {
  double area = 0;
  for (int f = 0; f < geom.mesh().face_count(); ++f)
    area += std::abs(phi[f]) * geom.area(f);
  return area;
}

}  // namespace qdc
