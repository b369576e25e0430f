#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "minlab/surfaces.hpp"

namespace {

using minlab::cli::RunConfig;

struct Overrides {
  std::string config_file;
  std::optional<std::string> surface, field, out, name, mesh_file;
  std::optional<int> order, dyadic_count, levels;
  std::optional<double> radius, target_h, dyadic_base, shift, scale,
      dirichlet_radius, c_a, alpha, holder_r;
  std::optional<std::size_t> max_vertices, pairs, threads;
  std::optional<std::uint64_t> seed;
  std::vector<double> radii, s_values;
};

void add_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("-c,--config", o.config_file, "config file");
  cmd.add_option("--surface", o.surface, "plane | enneper | helicoid | catenoid");
  cmd.add_option("--order", o.order, "Enneper order k");
  cmd.add_option("--radius", o.radius, "ambient radius covered by the patch");
  cmd.add_option("--target-h", o.target_h, "target ambient edge length");
  cmd.add_option("--max-vertices", o.max_vertices, "vertex cap");
  cmd.add_option("--mesh-file", o.mesh_file, "load this mesh instead of meshing");
  cmd.add_option("--radii", o.radii, "explicit radii schedule")->delimiter(',');
  cmd.add_option("--dyadic-base", o.dyadic_base, "first dyadic radius");
  cmd.add_option("--dyadic-count", o.dyadic_count, "number of dyadic radii");
  cmd.add_option("--field", o.field, "field name (x3, u, dirichlet:random, ...)");
  cmd.add_option("--shift", o.shift, "added to the field");
  cmd.add_option("--scale", o.scale, "field multiplier");
  cmd.add_option("--dirichlet-radius", o.dirichlet_radius, "ball for Dirichlet fields");
  cmd.add_option("--c-a", o.c_a, "area growth constant (default: measured)");
  cmd.add_option("--alpha", o.alpha, "cone profile exponent");
  cmd.add_option("--levels", o.levels, "coarea levels");
  cmd.add_option("--pairs", o.pairs, "Holder pair samples");
  cmd.add_option("--holder-r", o.holder_r, "outer Holder radius");
  cmd.add_option("--s-values", o.s_values, "inner Holder radii")->delimiter(',');
  cmd.add_option("--seed", o.seed, "sampling seed");
  cmd.add_option("--name", o.name, "run name used in output file names");
  cmd.add_option("-o,--out", o.out, "output directory");
  cmd.add_option("--threads", o.threads, "worker thread bound");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_file.empty() ? RunConfig{}
                                      : minlab::cli::load_config(o.config_file);
  if (const char* dir = std::getenv("MINLAB_DIR"); dir && *dir) c.output_dir = dir;
  if (o.surface) {
    c.kind = minlab::parse_surface_kind(*o.surface);
    if (c.kind != minlab::SurfaceKind::enneper) c.order.reset();
  }
  if (o.order) c.order = *o.order;
  if (o.radius) c.radius = *o.radius;
  if (o.target_h) c.target_h = *o.target_h;
  if (o.max_vertices) c.max_vertices = *o.max_vertices;
  if (o.mesh_file) c.mesh_file = *o.mesh_file;
  if (!o.radii.empty()) c.radii = o.radii;
  if (o.dyadic_base) c.dyadic_base = *o.dyadic_base;
  if (o.dyadic_count) c.dyadic_count = *o.dyadic_count;
  if (o.field) c.field = *o.field;
  if (o.shift) c.shift = *o.shift;
  if (o.scale) c.scale = *o.scale;
  if (o.dirichlet_radius) c.dirichlet_radius = *o.dirichlet_radius;
  if (o.c_a) c.c_a = *o.c_a;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.levels) c.levels = *o.levels;
  if (o.pairs) c.pair_samples = *o.pairs;
  if (o.holder_r) c.holder_r = *o.holder_r;
  if (!o.s_values.empty()) c.s_values = o.s_values;
  if (o.seed) c.seed = *o.seed;
  if (o.name) c.name = *o.name;
  if (o.out) c.output_dir = *o.out;
  if (o.threads) c.threads = *o.threads;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minlab: harmonic functions on triangulated minimal disks"};
  app.require_subcommand(1);
  Overrides overrides;
  std::string chosen;
  const std::map<std::string, std::string> about = {
      {"mesh", "triangulate a ball patch and report mesh quality"},
      {"solve", "build or solve a field and write it to a .field file"},
      {"area-growth", "ball-component areas and the area growth constant"},
      {"osc-decay", "oscillations and decay ratios over the radius schedule"},
      {"certify", "decay certificates at every admissible radius"},
      {"growth-fit", "power versus log growth model for a field"},
      {"holder", "Holder exponent from sampled vertex pairs"},
      {"nodal", "length and components of the zero set"},
      {"cone-profile", "smallest C with |x3| <= C(|x1|^a + |x2|^a + 1)"},
      {"report", "summary table and CSV over the JSON reports in a directory"},
  };
  for (const auto& name : minlab::cli::command_names()) {
    auto* cmd = app.add_subcommand(name, about.at(name));
    add_options(*cmd, overrides);
    cmd->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every usage error maps to 1.
    return app.exit(e) == 0 ? minlab::cli::kExitOk : minlab::cli::kExitFailedCheck;
  }

  try {
    return minlab::cli::run_command(chosen, resolve(overrides), std::cout);
  } catch (const std::exception& e) {
    std::cerr << "minlab " << chosen << ": " << e.what() << '\n';
    return minlab::cli::exit_code_for(e);
  }
}
