#include "qdcover/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qdc {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

MeshFormat format_from_path(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(c));
  if (ext == "obj") return MeshFormat::OBJ;
  if (ext == "off") return MeshFormat::OFF;
  fail(ErrorCode::Parse, "cannot infer mesh format from path: " + path);
}

namespace {

HalfEdgeMesh load_obj(std::istream& in) {
  std::vector<Vec3> positions;
  std::vector<std::array<int, 3>> faces;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x = 0, y = 0, z = 0;
      if (!(ls >> x >> y)) fail(ErrorCode::Parse, "bad vertex at line " + std::to_string(lineno));
      ls >> z;  // planar inputs may omit z
      positions.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        // accept v, v/vt, v/vt/vn, v//vn
        size_t slash = tok.find('/');
        std::string head = slash == std::string::npos ? tok : tok.substr(0, slash);
        try {
          int i = std::stoi(head);
          if (i < 0) i = static_cast<int>(positions.size()) + i + 1;
          idx.push_back(i - 1);
        } catch (const std::exception&) {
          fail(ErrorCode::Parse, "bad face index at line " + std::to_string(lineno));
        }
      }
      if (idx.size() != 3)
        fail(ErrorCode::NonTriangle,
             "face with " + std::to_string(idx.size()) + " vertices at line " + std::to_string(lineno));
      faces.push_back({idx[0], idx[1], idx[2]});
    }
    // other records (vn, vt, l, o, g, usemtl, ...) are ignored
  }
  if (positions.empty() || faces.empty()) fail(ErrorCode::Parse, "OBJ contains no mesh");
  return HalfEdgeMesh::build(std::move(positions), std::move(faces));
}

HalfEdgeMesh load_off(std::istream& in) {
  auto next_token_line = [&](std::istringstream& ls) {
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok) {
        ls.clear();
        ls.str(line);
        return true;
      }
    }
    return false;
  };

  std::istringstream ls;
  if (!next_token_line(ls)) fail(ErrorCode::Parse, "empty OFF stream");
  std::string magic;
  ls >> magic;
  long nv = 0, nf = 0, ne = 0;
  if (magic == "OFF") {
    if (!(ls >> nv >> nf >> ne)) {
      if (!next_token_line(ls) || !(ls >> nv >> nf >> ne))
        fail(ErrorCode::Parse, "OFF missing element counts");
    }
  } else {
    // counts on the first line, headerless variant
    try {
      nv = std::stol(magic);
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "not an OFF stream");
    }
    if (!(ls >> nf >> ne)) fail(ErrorCode::Parse, "OFF missing element counts");
  }
  if (nv <= 0 || nf < 0) fail(ErrorCode::Parse, "bad OFF counts");

  std::vector<Vec3> positions;
  positions.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!next_token_line(ls)) fail(ErrorCode::Parse, "OFF vertex block truncated");
    double x = 0, y = 0, z = 0;
    if (!(ls >> x >> y)) fail(ErrorCode::Parse, "bad OFF vertex");
    ls >> z;
    positions.emplace_back(x, y, z);
  }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    if (!next_token_line(ls)) fail(ErrorCode::Parse, "OFF face block truncated");
    int n = 0;
    if (!(ls >> n)) fail(ErrorCode::Parse, "bad OFF face");
    if (n != 3) fail(ErrorCode::NonTriangle, "OFF face with " + std::to_string(n) + " vertices");
    int a, b, c;
    if (!(ls >> a >> b >> c)) fail(ErrorCode::Parse, "bad OFF face indices");
    faces.push_back({a, b, c});
  }
  return HalfEdgeMesh::build(std::move(positions), std::move(faces));
}

}  // namespace

HalfEdgeMesh load_mesh(std::istream& in, MeshFormat format) {
  return format == MeshFormat::OBJ ? load_obj(in) : load_off(in);
}

HalfEdgeMesh load_mesh_file(const std::string& path, MeshFormat format) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IO, "cannot open " + path);
  return load_mesh(in, format);
}

HalfEdgeMesh load_mesh_file(const std::string& path) {
  return load_mesh_file(path, format_from_path(path));
}

void save_obj(std::ostream& out, const HalfEdgeMesh& mesh) {
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Vec3& p = mesh.position(v);
    out << "v " << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
        << format_double(p.z()) << '\n';
  }
  for (int f = 0; f < mesh.face_count(); ++f) {
    auto [a, b, c] = mesh.face_vertices(f);
    out << "f " << a + 1 << ' ' << b + 1 << ' ' << c + 1 << '\n';
  }
}

void save_obj_file(const std::string& path, const HalfEdgeMesh& mesh) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IO, "cannot write " + path);
  save_obj(out, mesh);
}

void save_obj_polylines(std::ostream& out, const std::vector<std::vector<Vec3>>& polylines) {
  int base = 1;
  for (const auto& poly : polylines) {
    for (const Vec3& p : poly)
      out << "v " << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
          << format_double(p.z()) << '\n';
    out << "l";
    for (size_t i = 0; i < poly.size(); ++i) out << ' ' << base + static_cast<int>(i);
    out << '\n';
    base += static_cast<int>(poly.size());
  }
}

void save_obj_polylines_file(const std::string& path,
                             const std::vector<std::vector<Vec3>>& polylines) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IO, "cannot write " + path);
  save_obj_polylines(out, polylines);
}

}  // namespace qdc
