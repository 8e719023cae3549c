#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdcover/halfedge_mesh.hpp"

namespace qdc {

enum class MeshFormat { OBJ, OFF };

MeshFormat format_from_path(const std::string& path);

HalfEdgeMesh load_mesh(std::istream& in, MeshFormat format);
HalfEdgeMesh load_mesh_file(const std::string& path, MeshFormat format);
HalfEdgeMesh load_mesh_file(const std::string& path);

// OBJ writer; polylines become `l` records appended after the faces.
void save_obj(std::ostream& out, const HalfEdgeMesh& mesh);
void save_obj_file(const std::string& path, const HalfEdgeMesh& mesh);
void save_obj_polylines(std::ostream& out, const std::vector<std::vector<Vec3>>& polylines);
void save_obj_polylines_file(const std::string& path,
                             const std::vector<std::vector<Vec3>>& polylines);

std::string format_double(double value);  // %.17g, shared by all text exporters

}  // namespace qdc
