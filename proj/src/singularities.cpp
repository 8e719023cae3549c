#include "qdcover/singularities.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

MeshPoint mesh_point(const FaceGeometry& geom, int face, const Vec3& bary) {
  MeshPoint p;
  p.face = face;
  p.bary = bary;
  p.position = geom.ambient_of_bary(face, bary);
  return p;
}

MeshPoint vertex_point(const FaceGeometry& geom, int face, int vertex) {
  auto vs = geom.mesh().face_vertices(face);
  Vec3 bary = Vec3::Zero();
  for (int k = 0; k < 3; ++k)
    if (vs[k] == vertex) bary[k] = 1.0;
  return mesh_point(geom, face, bary);
}

VertexFan vertex_fan(const FaceGeometry& geom, const QuadraticDifferential& phi, int v) {
  const HalfEdgeMesh& mesh = geom.mesh();
  VertexFan fan;
  fan.vertex = v;

  for (int h : mesh.outgoing_halfedges(v)) {
    if (mesh.face(h) < 0) fail(ErrorCode::Config, "vertex fan requires an interior vertex");
    fan.out_halfedges.push_back(h);
    fan.faces.push_back(mesh.face(h));
  }
  const int n = static_cast<int>(fan.faces.size());
  fan.roots.resize(n);
  fan.xi_from.resize(n);
  fan.xi_to.resize(n);

  for (int i = 0; i < n; ++i) {
    int f = fan.faces[i];
    int h = fan.out_halfedges[i];
    if (std::abs(phi[f]) == 0.0)
      fail(ErrorCode::ZeroFace, "Phi vanishes on a fan face at vertex " + std::to_string(v));
    cplx root = std::sqrt(phi[f]);
    if (i > 0) {
      // align with the previous wedge across the shared edge v -> w_i
      int prev_he = mesh.prev(fan.out_halfedges[i - 1]);  // (w_i -> v) in wedge i-1
      cplx prev_val = fan.roots[i - 1] * (-geom.edge_vector(prev_he));
      cplx cand = root * geom.edge_vector(h);
      if (std::real(cand * std::conj(prev_val)) < 0) root = -root;
    }
    fan.roots[i] = root;
    fan.xi_from[i] = root * geom.edge_vector(h);
    fan.xi_to[i] = root * (-geom.edge_vector(mesh.prev(h)));
  }

  // mixed consecutive angles pick up the branch winding; the closing step
  // compares the last wedge's re-entry image against wedge 0's image.
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    cplx from = fan.xi_from[i];
    cplx to = i + 1 < n ? fan.xi_from[i + 1] : fan.xi_to[n - 1];
    sum += std::abs(std::arg(to / from));
  }
  fan.angle_sum = sum;

  {
    cplx cand = std::sqrt(phi[fan.faces[0]]) * geom.edge_vector(fan.out_halfedges[0]);
    cplx continuation = std::real(cand * std::conj(fan.xi_to[n - 1])) >= 0 ? cand : -cand;
    fan.closure_sign = std::real(continuation * std::conj(fan.xi_from[0])) >= 0 ? 1 : -1;
  }
  return fan;
}

std::vector<ZeroPoint> locate_zero_points(const FaceGeometry& geom,
                                          const QuadraticDifferential& phi) {
  const HalfEdgeMesh& mesh = geom.mesh();
  std::vector<ZeroPoint> zeros;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.is_boundary_vertex(v)) continue;
    VertexFan fan = vertex_fan(geom, phi, v);
    if (fan.angle_sum < 2.5 * kPi) continue;
    if (fan.angle_sum >= 3.5 * kPi)
      fail(ErrorCode::HighOrderZero,
           "vertex " + std::to_string(v) + " has angle sum " + std::to_string(fan.angle_sum) +
               " (order > 1 unsupported)");
    ZeroPoint z;
    z.vertex = v;
    z.angle_sum = fan.angle_sum;
    z.order = static_cast<int>(std::lround(fan.angle_sum / kPi)) - 2;
    zeros.push_back(z);
  }
  return zeros;
}

int expected_zero_count(const TopologySummary& topo) {
  if (topo.boundary_count == 0) return std::max(0, 4 * topo.genus - 4);
  int doubled_genus = 2 * topo.genus + topo.boundary_count - 1;
  return std::max(0, 2 * doubled_genus - 2);
}

std::vector<ZeroPoint> locate_zero_points_checked(const FaceGeometry& geom,
                                                  const QuadraticDifferential& phi,
                                                  const TopologySummary& topo) {
  auto zeros = locate_zero_points(geom, phi);
  int expected = expected_zero_count(topo);
  int weighted = 0;
  for (const auto& z : zeros) weighted += z.order;
  if (weighted != expected)
    fail(ErrorCode::ZeroCountMismatch,
         "found " + std::to_string(weighted) + " zeros (with order), topology predicts " +
             std::to_string(expected) + "; try different Phi coefficients");
  return zeros;
}

namespace {

struct TraceState {
  int face = -1;
  int entry_halfedge = -1;  // halfedge of `face` the trace entered through, -1 at start
  cplx point;               // chart position in `face`
  cplx root;                // branch-tracked signed sqrt(phi) * (i for vertical)
  double level = 0;         // Im(xi) on the trajectory
  double re = 0;            // Re(xi) at `point`
  int dir = +1;             // sign of d Re(xi) along the trace
};

double sgn0(double y) { return y > 0 ? 1.0 : (y < 0 ? -1.0 : 1.0); }

// One face crossing. Returns false when no admissible exit exists.
bool step_face(const FaceGeometry& geom, const QuadraticDifferential& phi, TraceState& st,
               int& exit_halfedge, double& exit_t, cplx& exit_xi) {
  const HalfEdgeMesh& mesh = geom.mesh();
  auto hs = mesh.face_halfedges(st.face);

  int best_h = -1;
  double best_t = 0, best_re = 0, best_progress = -1;
  for (int h : hs) {
    if (h == st.entry_halfedge) continue;
    cplx qa = geom.corner(st.face, geom.corner_index(h));
    cplx qb = qa + geom.edge_vector(h);
    cplx xa = st.re + cplx(0, st.level) + st.root * (qa - st.point);
    cplx xb = st.re + cplx(0, st.level) + st.root * (qb - st.point);
    double ya = xa.imag() - st.level;
    double yb = xb.imag() - st.level;
    if (sgn0(ya) == sgn0(yb)) continue;
    double t = ya / (ya - yb);
    t = std::clamp(t, 1e-12, 1.0 - 1e-12);
    double re = xa.real() + t * (xb.real() - xa.real());
    double progress = (re - st.re) * st.dir;
    if (progress > best_progress) {
      best_progress = progress;
      best_h = h;
      best_t = t;
      best_re = re;
    }
  }
  if (best_h < 0 || best_progress <= 0) return false;
  exit_halfedge = best_h;
  exit_t = best_t;
  exit_xi = cplx(best_re, st.level);
  return true;
}

// Crossing into face(twin(exit)); keeps the branch aligned.
bool cross_edge(const FaceGeometry& geom, const QuadraticDifferential& phi, TraceState& st,
                int exit_halfedge, double exit_t, cplx exit_xi, cplx phase) {
  const HalfEdgeMesh& mesh = geom.mesh();
  int t_he = mesh.twin(exit_halfedge);
  int g = mesh.face(t_he);
  if (g < 0) return false;

  cplx old_edge_val = st.root * geom.edge_vector(exit_halfedge);
  cplx root = phase * std::sqrt(phi[g]);
  cplx cand = root * (-geom.edge_vector(t_he));
  if (std::real(cand * std::conj(old_edge_val)) < 0) root = -root;

  cplx qa = geom.corner(g, geom.corner_index(t_he));
  st.face = g;
  st.entry_halfedge = t_he;
  st.point = qa + (1.0 - exit_t) * geom.edge_vector(t_he);
  st.root = root;
  st.re = exit_xi.real();
  return true;
}

Vec3 bary_on_halfedge(const FaceGeometry& geom, int h, double t) {
  const HalfEdgeMesh& mesh = geom.mesh();
  int f = mesh.face(h);
  int k = geom.corner_index(h);
  Vec3 bary = Vec3::Zero();
  bary[k] = 1.0 - t;
  bary[(k + 1) % 3] = t;
  (void)f;
  return bary;
}

struct RunResult {
  Termination termination = Termination::max_steps;
  int end_zero = -1;
  int end_boundary_halfedge = -1;
};

RunResult run_trace(const FaceGeometry& geom, const QuadraticDifferential& phi, TraceState st,
                    const std::vector<char>& zero_vertex, int start_zero, cplx phase,
                    const TraceOptions& options, std::vector<MeshPoint>& out_points) {
  const HalfEdgeMesh& mesh = geom.mesh();
  long max_steps = options.max_steps > 0 ? options.max_steps : 100L * mesh.face_count();
  const double diameter = mesh.ambient_diameter();
  const Vec3 start_pos = out_points.empty() ? geom.ambient_of_bary(st.face, Vec3(1, 1, 1) / 3.0)
                                            : out_points.back().position;

  auto face_has_zero = [&](int f, int& zv) {
    for (int v : mesh.face_vertices(f))
      if (zero_vertex[v]) {
        zv = v;
        return true;
      }
    return false;
  };

  bool left_start_ring = start_zero < 0;
  int stall_run = 0;
  RunResult res;
  for (long step = 0; step < max_steps; ++step) {
    int exit_h;
    double exit_t;
    cplx exit_xi;
    if (!step_face(geom, phi, st, exit_h, exit_t, exit_xi))
      fail(ErrorCode::TracingStall, "no admissible exit in face " + std::to_string(st.face));

    MeshPoint p = mesh_point(geom, st.face, bary_on_halfedge(geom, exit_h, exit_t));
    if (!out_points.empty()) {
      double advance = (p.position - out_points.back().position).norm();
      stall_run = advance < options.stall_tolerance * diameter ? stall_run + 1 : 0;
      if (stall_run > 16) fail(ErrorCode::TracingStall, "step size collapsed");
    }
    out_points.push_back(p);

    int t_he = mesh.twin(exit_h);
    if (mesh.face(t_he) < 0) {
      res.termination = Termination::boundary;
      res.end_boundary_halfedge = exit_h;
      return res;
    }
    if (!cross_edge(geom, phi, st, exit_h, exit_t, exit_xi, phase))
      fail(ErrorCode::TracingStall, "failed to cross an interior edge");

    int zv = -1;
    if (face_has_zero(st.face, zv)) {
      if (left_start_ring || zv != start_zero) {
        out_points.push_back(vertex_point(geom, st.face, zv));
        res.termination = Termination::zero_point;
        res.end_zero = zv;
        return res;
      }
    } else if (!left_start_ring) {
      bool incident = false;
      for (int v : mesh.face_vertices(st.face)) incident |= v == start_zero;
      if (!incident) left_start_ring = true;
    }

    if (start_zero < 0 && step > 4 &&
        (p.position - start_pos).norm() < options.close_tolerance * diameter) {
      res.termination = Termination::closed_loop;
      return res;
    }
  }
  fail(ErrorCode::NonTermination,
       "trajectory exceeded " + std::to_string(max_steps) + " steps");
}

double polyline_length(const std::vector<MeshPoint>& pts) {
  double len = 0;
  for (size_t i = 1; i < pts.size(); ++i)
    len += (pts[i].position - pts[i - 1].position).norm();
  return len;
}

}  // namespace

std::vector<Trajectory> trace_critical_trajectories(const FaceGeometry& geom,
                                                    const QuadraticDifferential& phi,
                                                    const ZeroPoint& zero,
                                                    const std::vector<ZeroPoint>& all_zeros,
                                                    const TraceOptions& options) {
  const HalfEdgeMesh& mesh = geom.mesh();
  std::vector<char> zero_vertex(mesh.vertex_count(), 0);
  for (const auto& z : all_zeros) zero_vertex[z.vertex] = 1;

  VertexFan fan = vertex_fan(geom, phi, zero.vertex);
  const int n = static_cast<int>(fan.faces.size());

  // Unwrapped image angle along the fan polyline (from_0, to_0, from_1, ...).
  // Rays leave wherever the unwrapped angle passes a multiple of pi; crossings
  // landing on a wedge boundary are snapped slightly inside a wedge.
  std::vector<cplx> pts;
  pts.reserve(2 * n + 1);
  for (int i = 0; i < n; ++i) {
    pts.push_back(fan.xi_from[i]);
    pts.push_back(fan.xi_to[i]);
  }
  // virtual closure point so rays hiding in the final seam are found
  pts.push_back(static_cast<double>(fan.closure_sign) * fan.xi_from[0]);
  std::vector<double> ang(pts.size());
  ang[0] = std::arg(pts[0]);
  for (size_t k = 1; k < pts.size(); ++k) ang[k] = ang[k - 1] + std::arg(pts[k] / pts[k - 1]);

  constexpr double kPi2 = 3.14159265358979323846;
  struct RaySeed {
    int wedge;
    double t;
    int parity;  // ray angle mod 2pi: 0 -> +Re, 1 -> -Re
  };
  std::vector<RaySeed> seeds;
  int m_lo = static_cast<int>(std::ceil(std::min(ang.front(), ang.back()) / kPi2)) - 1;
  int m_hi = static_cast<int>(std::floor(std::max(ang.front(), ang.back()) / kPi2)) + 1;
  for (int m = m_lo; m <= m_hi; ++m) {
    double target = m * kPi2;
    for (size_t k = 1; k < pts.size(); ++k) {
      if (!((ang[k - 1] < target && target <= ang[k]) ||
            (ang[k] <= target && target < ang[k - 1])))
        continue;
      if (k % 2 == 1) {
        // inside wedge (k-1)/2: linear interpolation on the image segment
        int i = static_cast<int>(k - 1) / 2;
        double ya = std::imag(fan.xi_from[i] * std::polar(1.0, -target));
        double yb = std::imag(fan.xi_to[i] * std::polar(1.0, -target));
        double t = (ya - yb) != 0 ? ya / (ya - yb) : 0.5;
        seeds.push_back({i, std::clamp(t, 1e-6, 1.0 - 1e-6), std::abs(m) % 2});
      } else {
        // on the wedge boundary: start just inside the following wedge
        int i = static_cast<int>(k) / 2 % n;
        seeds.push_back({i, 1e-4, std::abs(m) % 2});
      }
      break;  // each target angle occurs once along the unwrapped fan
    }
  }

  std::vector<Trajectory> rays;
  for (const auto& seed : seeds) {
    int i = seed.wedge;
    int f = fan.faces[i];
    int opposite = mesh.next(fan.out_halfedges[i]);  // edge w_i -> w_{i+1}
    double t = seed.t;
    cplx exit_xi = fan.xi_from[i] + t * (fan.xi_to[i] - fan.xi_from[i]);

    Trajectory traj;
    traj.kind = TrajectoryKind::critical;
    traj.start_zero = zero.vertex;
    traj.points.push_back(vertex_point(geom, f, zero.vertex));

    TraceState st;
    st.face = f;
    st.entry_halfedge = -1;
    st.point = geom.corner(f, geom.corner_index(fan.out_halfedges[i]));
    st.root = fan.roots[i];
    st.level = 0;
    st.re = 0;
    st.dir = exit_xi.real() > 0 ? +1 : -1;

    // first crossing is known from the fan; emit it and continue
    MeshPoint first = mesh_point(geom, f, bary_on_halfedge(geom, opposite, t));
    traj.points.push_back(first);
    int t_he = mesh.twin(opposite);
    RunResult res;
    if (mesh.face(t_he) < 0) {
      res.termination = Termination::boundary;
      res.end_boundary_halfedge = opposite;
    } else {
      TraceState next = st;
      if (!cross_edge(geom, phi, next, opposite, t, cplx(exit_xi.real(), 0), cplx(1, 0)))
        fail(ErrorCode::TracingStall, "critical ray failed to leave the fan");
      next.level = 0;
      res = run_trace(geom, phi, next, zero_vertex, zero.vertex, cplx(1, 0), options,
                      traj.points);
    }
    traj.termination = res.termination;
    traj.end_zero = res.end_zero;
    traj.end_boundary_halfedge = res.end_boundary_halfedge;
    traj.ambient_length = polyline_length(traj.points);
    rays.push_back(std::move(traj));
  }

  if (static_cast<int>(rays.size()) != 2 + zero.order)
    fail(ErrorCode::ZeroCountMismatch,
         "zero at vertex " + std::to_string(zero.vertex) + " emitted " +
             std::to_string(rays.size()) + " rays, expected " + std::to_string(2 + zero.order));
  return rays;
}

Trajectory trace_regular_trajectory(const FaceGeometry& geom, const QuadraticDifferential& phi,
                                    const MeshPoint& start, TraceDirection direction,
                                    const std::vector<ZeroPoint>& all_zeros,
                                    const TraceOptions& options) {
  const HalfEdgeMesh& mesh = geom.mesh();
  std::vector<char> zero_vertex(mesh.vertex_count(), 0);
  for (const auto& z : all_zeros) zero_vertex[z.vertex] = 1;
  if (start.face < 0) fail(ErrorCode::Config, "regular trace needs a start face");
  for (int v : mesh.face_vertices(start.face))
    if (zero_vertex[v]) fail(ErrorCode::Config, "regular trace must not start at a zero");

  cplx phase = direction == TraceDirection::horizontal ? cplx(1, 0) : cplx(0, 1);

  auto make_state = [&](int dir) {
    TraceState st;
    st.face = start.face;
    st.entry_halfedge = -1;
    st.point = geom.chart_of_bary(start.face, start.bary);
    st.root = phase * std::sqrt(phi[start.face]);
    st.level = 0;
    st.re = 0;
    st.dir = dir;
    return st;
  };

  Trajectory traj;
  traj.kind = TrajectoryKind::regular;
  traj.points.push_back(mesh_point(geom, start.face, start.bary));
  RunResult forward = run_trace(geom, phi, make_state(+1), zero_vertex, -1, phase, options,
                                traj.points);
  traj.termination = forward.termination;
  traj.end_zero = forward.end_zero;
  traj.end_boundary_halfedge = forward.end_boundary_halfedge;

  if (forward.termination == Termination::closed_loop) {
    traj.points.push_back(traj.points.front());
  } else if (options.two_way) {
    std::vector<MeshPoint> back;
    back.push_back(mesh_point(geom, start.face, start.bary));
    run_trace(geom, phi, make_state(-1), zero_vertex, -1, phase, options, back);
    std::reverse(back.begin(), back.end());
    back.pop_back();  // drop the duplicated start
    traj.points.insert(traj.points.begin(), back.begin(), back.end());
  }
  traj.ambient_length = polyline_length(traj.points);
  return traj;
}

}  // namespace qdc
