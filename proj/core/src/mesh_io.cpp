#include "minlab/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "minlab/error.hpp"

namespace minlab {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  return out;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

Index parse_index(std::string_view text) {
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::io, "bad index '" + std::string(text) + "'");
  }
  return v;
}

double median_edge_length(const std::vector<MeshVertex>& vertices,
                          const std::vector<Triangle>& triangles) {
  std::vector<double> lengths;
  lengths.reserve(3 * triangles.size());
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      lengths.push_back(norm(vertices[t[(e + 1) % 3]].position -
                             vertices[t[e]].position));
    }
  }
  if (lengths.empty()) return 1.0;
  auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2);
  std::nth_element(lengths.begin(), mid, lengths.end());
  return *mid > 0.0 ? *mid : 1.0;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::io, "bad number '" + std::string(text) + "'");
  }
  return x;
}

void write_mesh(std::ostream& out, const SurfaceMesh& mesh) {
  out << "minlab-mesh v1 " << to_string(mesh.spec().kind()) << ' '
      << mesh.spec().order() << ' ' << (mesh.periodic_v() ? 1 : 0) << '\n';
  for (const auto& v : mesh.vertices()) {
    out << "v " << format_double(v.param.u) << ' ' << format_double(v.param.v)
        << ' ' << format_double(v.position.x) << ' '
        << format_double(v.position.y) << ' ' << format_double(v.position.z)
        << ' ' << format_double(v.lambda) << '\n';
  }
  for (const auto& t : mesh.triangles()) {
    out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

SurfaceMesh read_mesh(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::io, "empty mesh file");
  const auto head = split(line);
  if (head.size() != 5 || head[0] != "minlab-mesh" || head[1] != "v1") {
    throw Error(ErrorKind::io, "not a minlab-mesh v1 file");
  }
  const SurfaceKind kind = parse_surface_kind(head[2]);
  const int order = static_cast<int>(parse_index(head[3]));
  const bool periodic = parse_index(head[4]) != 0;
  const ImmersionSpec spec = ImmersionSpec::make(
      kind, kind == SurfaceKind::enneper ? std::optional<int>(order) : std::nullopt);

  std::vector<MeshVertex> vertices;
  std::vector<Triangle> triangles;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto w = split(line);
    if (w.empty()) continue;
    if (w[0] == "v" && w.size() == 7) {
      MeshVertex v;
      v.param = {parse_double(w[1]), parse_double(w[2])};
      v.position = {parse_double(w[3]), parse_double(w[4]), parse_double(w[5])};
      v.lambda = parse_double(w[6]);
      vertices.push_back(v);
    } else if (w[0] == "t" && w.size() == 4) {
      triangles.push_back({parse_index(w[1]), parse_index(w[2]), parse_index(w[3])});
    } else {
      throw Error(ErrorKind::io, "malformed mesh line " + std::to_string(line_no));
    }
  }
  for (const auto& t : triangles) {
    for (Index i : t) {
      if (i >= vertices.size()) {
        throw Error(ErrorKind::io, "triangle index out of range in mesh file");
      }
    }
  }
  const double h = median_edge_length(vertices, triangles);
  return SurfaceMesh(spec, h, periodic, std::move(vertices), std::move(triangles));
}

void save_mesh(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  auto out = open_out(path);
  write_mesh(out, mesh);
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

SurfaceMesh load_mesh(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_mesh(in);
}

void write_field(std::ostream& out, const ScalarField& field) {
  out << "minlab-field v1 " << field.size() << '\n';
  for (double x : field.values()) out << format_double(x) << '\n';
}

ScalarField read_field(std::istream& in, const SurfaceMesh& mesh) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::io, "empty field file");
  const auto head = split(line);
  if (head.size() != 3 || head[0] != "minlab-field" || head[1] != "v1") {
    throw Error(ErrorKind::io, "not a minlab-field v1 file");
  }
  const std::size_t n = parse_index(head[2]);
  if (n != mesh.num_vertices()) {
    throw Error(ErrorKind::io, "field has " + std::to_string(n) +
                                   " values, mesh has " +
                                   std::to_string(mesh.num_vertices()));
  }
  std::vector<double> values;
  values.reserve(n);
  while (values.size() < n && std::getline(in, line)) {
    const auto w = split(line);
    if (w.size() != 1) throw Error(ErrorKind::io, "malformed field line");
    values.push_back(parse_double(w[0]));
  }
  if (values.size() != n) throw Error(ErrorKind::io, "truncated field file");
  return ScalarField(mesh, std::move(values));
}

void save_field(const std::filesystem::path& path, const ScalarField& field) {
  auto out = open_out(path);
  write_field(out, field);
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

ScalarField load_field(const std::filesystem::path& path,
                       const SurfaceMesh& mesh) {
  auto in = open_in(path);
  return read_field(in, mesh);
}

void write_level_set_csv(std::ostream& out, const LevelSet& level_set) {
  out << "x1,y1,z1,x2,y2,z2,component_id\n";
  for (const auto& s : level_set.segments) {
    out << format_double(s.a.x) << ',' << format_double(s.a.y) << ','
        << format_double(s.a.z) << ',' << format_double(s.b.x) << ','
        << format_double(s.b.y) << ',' << format_double(s.b.z) << ','
        << s.component << '\n';
  }
}

}  // namespace minlab
