#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "minlab/surfaces.hpp"

namespace minlab::cli {

/// Everything a command needs, as read from a flat config file:
///
///   [surface]  kind, order
///   [mesh]     radius, target_h, max_vertices, file
///   [radii]    list  |  dyadic_base, dyadic_count
///   [field]    name, shift, scale, dirichlet_radius
///   [analysis] c_a, alpha, levels, pair_samples, holder_r, s_values
///   [run]      name, output_dir, seed, threads
///
/// A radii list, when present, wins over the dyadic schedule; dyadic radii
/// beyond the patch radius are dropped. Zero for c_a,
/// holder_r or dirichlet_radius means "derive it".
struct RunConfig {
  SurfaceKind kind = SurfaceKind::enneper;
  std::optional<int> order;

  double radius = 64.0;
  double target_h = 0.2;
  std::size_t max_vertices = 4'000'000;
  std::string mesh_file;

  std::vector<double> radii;
  double dyadic_base = 4.0;
  int dyadic_count = 5;

  std::string field = "x3";
  double shift = 0.0;
  double scale = 1.0;
  double dirichlet_radius = 0.0;

  double c_a = 0.0;
  double alpha = 0.8;
  int levels = 128;
  std::size_t pair_samples = 4096;
  double holder_r = 0.0;
  std::vector<double> s_values;

  std::string name;
  std::string output_dir = "minlab-out";
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  ImmersionSpec spec() const { return ImmersionSpec::make(kind, order); }
  std::vector<double> schedule() const;
  // run name, defaulting to the surface name
  std::string run_name() const;

  // Throws Error(argument) on the first violated constraint.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace minlab::cli
