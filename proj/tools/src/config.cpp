#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "field_select.hpp"
#include "minlab/error.hpp"
#include "minlab/mesh_io.hpp"

namespace minlab::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::argument, "bad value for " + key + ": '" + value + "'");
}

double to_double(const std::string& key, const std::string& value) {
  try {
    const double x = parse_double(value);
    if (!std::isfinite(x)) bad(key, value);
    return x;
  } catch (const Error&) {
    bad(key, value);
  }
}

template <typename Int>
Int to_int(const std::string& key, const std::string& value) {
  Int x{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(key, value);
  return x;
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += format_double(xs[i]);
  }
  return s;
}

void assign(RunConfig& c, const std::string& section, const std::string& key,
            const std::string& value) {
  const std::string full = section + "." + key;
  if (full == "surface.kind") c.kind = parse_surface_kind(value);
  else if (full == "surface.order") c.order = to_int<int>(full, value);
  else if (full == "mesh.radius") c.radius = to_double(full, value);
  else if (full == "mesh.target_h") c.target_h = to_double(full, value);
  else if (full == "mesh.max_vertices") c.max_vertices = to_int<std::size_t>(full, value);
  else if (full == "mesh.file") c.mesh_file = value;
  else if (full == "radii.list") c.radii = to_list(full, value);
  else if (full == "radii.dyadic_base") c.dyadic_base = to_double(full, value);
  else if (full == "radii.dyadic_count") c.dyadic_count = to_int<int>(full, value);
  else if (full == "field.name") c.field = value;
  else if (full == "field.shift") c.shift = to_double(full, value);
  else if (full == "field.scale") c.scale = to_double(full, value);
  else if (full == "field.dirichlet_radius") c.dirichlet_radius = to_double(full, value);
  else if (full == "analysis.c_a") c.c_a = to_double(full, value);
  else if (full == "analysis.alpha") c.alpha = to_double(full, value);
  else if (full == "analysis.levels") c.levels = to_int<int>(full, value);
  else if (full == "analysis.pair_samples") c.pair_samples = to_int<std::size_t>(full, value);
  else if (full == "analysis.holder_r") c.holder_r = to_double(full, value);
  else if (full == "analysis.s_values") c.s_values = to_list(full, value);
  else if (full == "run.name") c.name = value;
  else if (full == "run.output_dir") c.output_dir = value;
  else if (full == "run.seed") c.seed = to_int<std::uint64_t>(full, value);
  else if (full == "run.threads") c.threads = to_int<std::size_t>(full, value);
  else throw Error(ErrorKind::argument, "unknown config key '" + full + "'");
}

}  // namespace

std::vector<double> RunConfig::schedule() const {
  if (!radii.empty()) return radii;
  std::vector<double> out;
  double r = dyadic_base;
  for (int i = 0; i < dyadic_count && r <= radius; ++i, r *= 2.0) out.push_back(r);
  if (out.empty()) {
    throw Error(ErrorKind::argument, "dyadic schedule starts beyond the patch radius");
  }
  return out;
}

std::string RunConfig::run_name() const {
  return name.empty() ? spec().name() : name;
}

void RunConfig::validate() const {
  auto positive = [](const char* what, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorKind::argument, std::string(what) + " must be positive");
    }
  };
  (void)spec();
  positive("mesh.radius", radius);
  positive("mesh.target_h", target_h);
  positive("radii.dyadic_base", dyadic_base);
  positive("field.scale", scale);
  positive("analysis.alpha", alpha);
  if (max_vertices == 0) throw Error(ErrorKind::argument, "mesh.max_vertices must be positive");
  if (dyadic_count < 1) throw Error(ErrorKind::argument, "radii.dyadic_count must be >= 1");
  if (levels < 16) throw Error(ErrorKind::argument, "analysis.levels must be >= 16");
  if (pair_samples == 0) throw Error(ErrorKind::argument, "analysis.pair_samples must be positive");
  if (threads == 0) throw Error(ErrorKind::argument, "run.threads must be positive");
  if (c_a < 0.0 || holder_r < 0.0 || dirichlet_radius < 0.0) {
    throw Error(ErrorKind::argument, "c_a, holder_r and dirichlet_radius must be >= 0");
  }
  if (output_dir.empty()) throw Error(ErrorKind::argument, "run.output_dir is empty");
  const auto sched = radii.empty() ? std::vector<double>{} : radii;
  for (std::size_t i = 0; i < sched.size(); ++i) {
    positive("radius in schedule", sched[i]);
    if (sched[i] > radius) {
      throw Error(ErrorKind::argument, "radius " + format_double(sched[i]) +
                                           " exceeds the patch radius " +
                                           format_double(radius));
    }
    if (i > 0 && !(sched[i] > sched[i - 1])) {
      throw Error(ErrorKind::argument, "radii must be strictly increasing");
    }
  }
  for (double s : s_values) positive("s value", s);
  if (dirichlet_radius > radius || holder_r > radius) {
    throw Error(ErrorKind::argument, "radii must not exceed the patch radius");
  }
  (void)parse_field_selection(field);
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::stringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorKind::argument,
                    "bad section header on line " + std::to_string(line_no));
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw Error(ErrorKind::argument,
                  "expected key = value on line " + std::to_string(line_no));
    }
    assign(c, section, trim(std::string_view(line).substr(0, eq)),
           trim(std::string_view(line).substr(eq + 1)));
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[surface]\nkind = " << to_string(c.kind) << '\n';
  if (c.order) out << "order = " << *c.order << '\n';
  out << "\n[mesh]\nradius = " << format_double(c.radius)
      << "\ntarget_h = " << format_double(c.target_h)
      << "\nmax_vertices = " << c.max_vertices << '\n';
  if (!c.mesh_file.empty()) out << "file = " << c.mesh_file << '\n';
  out << "\n[radii]\n";
  if (!c.radii.empty()) out << "list = " << join(c.radii) << '\n';
  out << "dyadic_base = " << format_double(c.dyadic_base)
      << "\ndyadic_count = " << c.dyadic_count << '\n';
  out << "\n[field]\nname = " << c.field << "\nshift = " << format_double(c.shift)
      << "\nscale = " << format_double(c.scale)
      << "\ndirichlet_radius = " << format_double(c.dirichlet_radius) << '\n';
  out << "\n[analysis]\nc_a = " << format_double(c.c_a)
      << "\nalpha = " << format_double(c.alpha) << "\nlevels = " << c.levels
      << "\npair_samples = " << c.pair_samples
      << "\nholder_r = " << format_double(c.holder_r) << '\n';
  if (!c.s_values.empty()) out << "s_values = " << join(c.s_values) << '\n';
  out << "\n[run]\n";
  if (!c.name.empty()) out << "name = " << c.name << '\n';
  out << "output_dir = " << c.output_dir << "\nseed = " << c.seed
      << "\nthreads = " << c.threads << '\n';
  return out.str();
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace minlab::cli
