#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "field_select.hpp"
#include "minlab/analysis.hpp"
#include "minlab/error.hpp"
#include "minlab/harmonic.hpp"
#include "minlab/level_set.hpp"
#include "minlab/mesh_io.hpp"
#include "minlab/parallel.hpp"

namespace minlab::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

json number(double x) {
  return std::isfinite(x) ? json(x) : json(nullptr);
}

json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

struct Quantity {
  std::string name;
  double measured;
  std::optional<double> reference;
  std::string label;
};

class Run {
 public:
  Run(const std::string& command, const RunConfig& config, std::ostream& log)
      : command_(command), config_(config), log_(log) {
    report_["command"] = command;
    report_["run"] = config.run_name();
    report_["surface"] = config.spec().name();
    report_["config"] = serialize_config(config);
    report_["results"] = json::object();
    report_["quantities"] = json::array();
  }

  const RunConfig& config() const { return config_; }
  std::ostream& log() { return log_; }
  json& results() { return report_["results"]; }

  const SurfaceMesh& mesh() {
    if (!mesh_) {
      if (!config_.mesh_file.empty()) {
        mesh_.emplace(load_mesh(config_.mesh_file));
      } else {
        TriangulateOptions opt;
        opt.max_vertices = config_.max_vertices;
        mesh_.emplace(triangulate_ball_patch(config_.spec(), config_.radius,
                                             config_.target_h, opt));
      }
      root_ = base_vertex(*mesh_);
    }
    return *mesh_;
  }
  Index root() {
    mesh();
    return root_;
  }

  double dirichlet_radius() const {
    return config_.dirichlet_radius > 0.0 ? config_.dirichlet_radius
                                          : config_.radius;
  }

  // Largest radius on which the field is defined.
  double field_coverage() const {
    return selection().dirichlet ? dirichlet_radius() : config_.radius;
  }

  FieldSelection selection() const { return parse_field_selection(config_.field); }

  const ScalarField& field() {
    if (!field_) {
      field_.emplace(build_field(mesh(), selection(), root(), dirichlet_radius(),
                                 config_.seed, config_.scale, config_.shift,
                                 &solve_stats_));
    }
    return *field_;
  }
  const SolveStats& solve_stats() const { return solve_stats_; }

  double c_a() {
    if (config_.c_a > 0.0) return config_.c_a;
    double c = 0.0;
    for (double r : config_.schedule()) {
      c = std::max(c, surface_area(ball_component(mesh(), root(), r)) / (r * r));
    }
    return c;
  }

  void quantity(Quantity q) {
    json j;
    j["name"] = q.name;
    j["measured"] = number(q.measured);
    j["reference"] = q.reference ? number(*q.reference) : json(nullptr);
    j["reference_label"] = q.label;
    report_["quantities"].push_back(j);
  }

  fs::path output(const std::string& suffix) const {
    return fs::path(config_.output_dir) /
           (config_.run_name() + "-" + command_ + suffix);
  }

  void write_csv(const std::string& header,
                 const std::vector<std::vector<double>>& rows) {
    std::ofstream out(prepare(output(".csv")));
    out << header << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << (std::isfinite(row[i]) ? format_double(row[i]) : "");
      }
      out << '\n';
    }
    if (!out) throw Error(ErrorKind::io, "cannot write " + output(".csv").string());
  }

  void finish() {
    const fs::path path = prepare(output(".json"));
    std::ofstream out(path);
    out << report_.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
    log_ << "report: " << path.string() << '\n';
  }

  fs::path prepare(const fs::path& path) const {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorKind::io, "cannot create " + path.parent_path().string());
    return path;
  }

 private:
  std::string command_;
  RunConfig config_;
  std::ostream& log_;
  json report_;
  std::optional<SurfaceMesh> mesh_;
  Index root_ = kNoIndex;
  std::optional<ScalarField> field_;
  SolveStats solve_stats_;
};

// Expected growth exponent of a field on the surface, when one is known.
std::optional<Quantity> growth_reference(const ImmersionSpec& spec,
                                         const std::string& field) {
  const bool coord = field == "x1" || field == "x2" || field == "x3";
  const bool param = field == "u" || field == "v";
  switch (spec.kind()) {
    case SurfaceKind::plane:
      if (coord && field != "x3") return Quantity{"", 0, 1.0, "plane 1"};
      if (param) return Quantity{"", 0, 1.0, "plane 1"};
      break;
    case SurfaceKind::enneper: {
      const int k = spec.order();
      const double n = 2.0 * k + 1.0;
      if (field == "x3") {
        return Quantity{"", 0, (k + 1.0) / n,
                        k == 1 ? "expected 2/3" : "order-k (k+1)/(2k+1)"};
      }
      if (param) {
        return Quantity{"", 0, 1.0 / n, k == 1 ? "expected 1/3" : "order-k 1/(2k+1)"};
      }
      break;
    }
    case SurfaceKind::helicoid:
      if (param && field == "u") return Quantity{"", 0, std::nullopt, "expected log"};
      break;
    case SurfaceKind::catenoid:
      if (field == "x3") return Quantity{"", 0, std::nullopt, "expected log"};
      break;
  }
  return std::nullopt;
}

int cmd_mesh(Run& run) {
  const SurfaceMesh& mesh = run.mesh();
  const ImmersionSpec& spec = mesh.spec();
  double conformal = 0.0, minimality = 0.0;
  for (const auto& v : mesh.vertices()) {
    conformal = std::max(conformal, conformal_defect(spec, v.param));
    minimality = std::max(minimality,
                          minimality_defect(spec, v.param) / (1.0 + v.lambda));
  }
  std::vector<double> lengths;
  for (const auto& t : mesh.triangles()) {
    for (int e = 0; e < 3; ++e) {
      lengths.push_back(norm(mesh.vertex(t[(e + 1) % 3]).position -
                             mesh.vertex(t[e]).position));
    }
  }
  std::sort(lengths.begin(), lengths.end());
  const fs::path file = run.prepare(run.output(".mesh"));
  save_mesh(file, mesh);

  auto& r = run.results();
  r["mesh_file"] = file.string();
  r["vertices"] = mesh.num_vertices();
  r["triangles"] = mesh.num_triangles();
  r["edges"] = mesh.num_edges();
  r["euler_characteristic"] = mesh.euler_characteristic();
  r["periodic_v"] = mesh.periodic_v();
  r["is_disk"] = spec.is_disk();
  r["target_h"] = mesh.target_h();
  r["max_conformal_defect"] = conformal;
  r["max_minimality_defect"] = minimality;
  r["edge_length_min"] = lengths.front();
  r["edge_length_median"] = lengths[lengths.size() / 2];
  r["edge_length_max"] = lengths.back();
  run.quantity({"euler characteristic",
                static_cast<double>(mesh.euler_characteristic()),
                spec.is_disk() ? 1.0 : 0.0, spec.is_disk() ? "disk" : "annulus"});

  auto& log = run.log();
  log << "surface " << spec.name() << ": " << mesh.num_vertices() << " vertices, "
      << mesh.num_triangles() << " triangles\n"
      << "euler characteristic " << mesh.euler_characteristic() << '\n'
      << "periodic_v " << (mesh.periodic_v() ? "true" : "false") << '\n'
      << "max conformal defect " << conformal << '\n'
      << "max minimality defect " << minimality << '\n'
      << "mesh: " << file.string() << '\n';
  run.finish();
  return kExitOk;
}

int cmd_solve(Run& run) {
  const ScalarField& f = run.field();
  const fs::path file = run.prepare(run.output(".field"));
  save_field(file, f);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t present = 0;
  for (double x : f.values()) {
    if (std::isnan(x)) continue;
    ++present;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  auto& r = run.results();
  r["field"] = run.config().field;
  r["field_file"] = file.string();
  r["defined_vertices"] = present;
  r["min"] = number(lo);
  r["max"] = number(hi);
  if (run.selection().dirichlet) {
    r["dirichlet_radius"] = run.dirichlet_radius();
    r["unknowns"] = run.solve_stats().unknowns;
    r["iterations"] = run.solve_stats().iterations;
    r["relative_residual"] = run.solve_stats().relative_residual;
  }
  run.log() << "field " << run.config().field << " on " << present
            << " vertices, range [" << lo << ", " << hi << "]\n";
  run.finish();
  return kExitOk;
}

int cmd_area_growth(Run& run) {
  const auto radii = run.config().schedule();
  const AreaGrowth g = area_growth_fit(run.mesh(), run.root(), radii);
  const ImmersionSpec spec = run.config().spec();
  auto& r = run.results();
  r["radii"] = numbers(g.radii);
  r["areas"] = numbers(g.areas);
  r["c_a"] = g.c_a;
  r["exponent"] = g.exponent;
  r["max_residual"] = g.max_residual;

  std::optional<double> ca_ref;
  std::string ca_label = "-";
  if (spec.kind() == SurfaceKind::plane) {
    ca_ref = std::numbers::pi;
    ca_label = "plane π";
  } else if (spec.kind() == SurfaceKind::enneper) {
    ca_ref = (2.0 * spec.order() + 1.0) * std::numbers::pi;
    ca_label = spec.order() == 1 ? "expected 3π" : "tangent cone (2k+1)π";
  }
  run.quantity({"C_a", g.c_a, ca_ref, ca_label});
  const bool cubic = spec.kind() == SurfaceKind::helicoid;
  run.quantity({"area exponent", g.exponent, cubic ? 3.0 : 2.0,
                cubic ? "expected cubic" : "quadratic"});

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    rows.push_back({g.radii[i], g.areas[i], g.areas[i] / (g.radii[i] * g.radii[i])});
  }
  run.write_csv("radius,area,area_over_r2", rows);
  run.log() << "C_a " << g.c_a << ", area exponent " << g.exponent << '\n';
  run.finish();
  return kExitOk;
}

OscillationCurve curve_for(Run& run, json& out) {
  const DecayBound bound = liouville_threshold(run.c_a());
  const auto radii = run.config().schedule();
  OscillationCurve c = decay_curve(run.field(), run.root(), radii, bound);
  out["c_a"] = bound.c_a;
  out["gamma"] = bound.gamma;
  out["one_minus_gamma"] = bound.one_minus_gamma;
  out["alpha_threshold"] = bound.alpha_threshold;
  out["radii"] = numbers(c.radii);
  out["osc0"] = numbers(c.osc0);
  out["osc2"] = numbers(c.osc2);
  out["ratios"] = numbers(c.ratios);
  out["degenerate"] = c.degenerate;
  out["exceeds_bound"] = c.exceeds;

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    const double ratio = i < c.ratios.size() && !c.degenerate[i]
                             ? c.ratios[i]
                             : std::numeric_limits<double>::quiet_NaN();
    rows.push_back({c.radii[i], c.osc0[i], c.osc2[i], ratio, bound.gamma});
  }
  run.write_csv("radius,osc0,osc2,ratio,gamma", rows);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.ratios.size(); ++i) {
    if (!c.degenerate[i]) worst = std::max(worst, c.ratios[i]);
  }
  run.quantity({"max decay ratio", worst, bound.gamma, "gamma"});
  return c;
}

int cmd_osc_decay(Run& run) {
  const OscillationCurve c = curve_for(run, run.results());
  for (std::size_t i = 0; i < c.ratios.size(); ++i) {
    run.log() << "r " << c.radii[i] << " -> " << c.radii[i + 1] << ": ratio "
              << (c.degenerate[i] ? std::string("degenerate")
                                  : format_double(c.ratios[i]))
              << '\n';
  }
  run.finish();
  return kExitOk;
}

json certificate_json(const DecayCertificate& c) {
  json j;
  j["radius"] = c.radius;
  j["slack"] = c.slack;
  j["inf_2r"] = c.inf_2r;
  j["osc0_2r"] = c.osc0_2r;
  j["epsilon"] = c.epsilon;
  j["osc0_r"] = c.osc0_r;
  j["ratio"] = c.ratio;
  j["gamma"] = c.gamma;
  j["ratio_pass"] = c.ratio_pass;
  j["energy"] = c.energy;
  j["area_2r"] = c.area_2r;
  j["energy_bound"] = c.energy_bound;
  j["energy_pass"] = c.energy_pass;
  j["sup_v"] = c.sup_v;
  j["sup_bound"] = c.sup_bound;
  j["sup_pass"] = c.sup_pass;
  j["levels"] = numbers(c.levels);
  j["level_lengths"] = numbers(c.level_lengths);
  j["min_level_length"] = c.min_level_length;
  j["level_bound"] = c.level_bound;
  j["level_pass"] = c.level_pass;
  j["passed"] = c.passed();
  return j;
}

int cmd_certify(Run& run) {
  auto& r = run.results();
  const OscillationCurve curve = curve_for(run, r["curve"]);
  const double c_a = curve.bound.c_a;
  const double coverage = run.field_coverage();
  bool ok = curve.all_within_bound();
  r["certificates"] = json::array();
  for (double radius : run.config().schedule()) {
    if (2.0 * radius > coverage) {
      run.log() << "r " << radius << ": skipped (2r beyond " << coverage << ")\n";
      continue;
    }
    const DecayCertificate c = decay_certificate(run.field(), run.root(), radius, c_a);
    ok = ok && c.passed();
    r["certificates"].push_back(certificate_json(c));
    run.log() << "r " << radius << ": ratio " << c.ratio
              << (c.ratio_pass ? " ok" : " FAIL") << ", energy " << c.energy << " / "
              << c.energy_bound << (c.energy_pass ? " ok" : " FAIL") << ", M "
              << c.sup_v << " / " << c.sup_bound << (c.sup_pass ? " ok" : " FAIL")
              << ", level length " << c.min_level_length << " / " << c.level_bound
              << (c.level_pass ? " ok" : " FAIL") << '\n';
  }
  if (r["certificates"].empty()) {
    throw Error(ErrorKind::argument,
                "no radius r in the schedule has 2r within the field's domain");
  }
  r["all_passed"] = ok;
  run.quantity({"certificates passed", ok ? 1.0 : 0.0, 1.0, "all checks pass"});
  run.finish();
  return ok ? kExitOk : kExitFailedCheck;
}

int cmd_growth_fit(Run& run) {
  const auto radii = run.config().schedule();
  const GrowthFit g = growth_exponent(run.field(), run.root(), radii);
  auto& r = run.results();
  r["radii"] = numbers(g.radii);
  r["osc2"] = numbers(g.osc2);
  r["alpha"] = g.alpha;
  r["power_intercept"] = g.power_intercept;
  r["power_residual"] = number(g.power_residual);
  r["log_slope"] = g.log_slope;
  r["log_intercept"] = g.log_intercept;
  r["log_residual"] = number(g.log_residual);
  r["model"] = g.log_preferred() ? "log" : "power";

  const std::string& field = run.config().field;
  const auto ref = growth_reference(run.config().spec(), field);
  const bool expect_log = ref && !ref->reference;
  if (!expect_log) {
    run.quantity({field + " growth", g.alpha, ref ? ref->reference : std::nullopt,
                  ref ? ref->label : "-"});
  }
  run.quantity({field + " log model", g.log_preferred() ? 1.0 : 0.0,
                expect_log ? 1.0 : 0.0, expect_log ? "expected log" : "power law"});

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < g.radii.size(); ++i) rows.push_back({g.radii[i], g.osc2[i]});
  run.write_csv("radius,osc2", rows);
  run.log() << field << " growth exponent " << g.alpha << " (power residual "
            << g.power_residual << ", log residual " << g.log_residual << ", "
            << (g.log_preferred() ? "log" : "power") << " model preferred)\n";
  run.finish();
  return kExitOk;
}

int cmd_holder(Run& run) {
  const RunConfig& c = run.config();
  const double r = c.holder_r > 0.0 ? c.holder_r : 0.5 * run.field_coverage();
  std::vector<double> s = c.s_values;
  if (s.empty()) {
    for (double x : c.schedule()) {
      if (x < r) s.push_back(x);
    }
  }
  const HolderFit h = holder_estimate(run.field(), r, s, c.pair_samples, c.seed);
  const DecayBound bound = liouville_threshold(run.c_a());
  auto& j = run.results();
  j["r"] = h.r;
  j["s_values"] = numbers(h.s_values);
  j["max_difference"] = numbers(h.max_difference);
  j["l1_norm"] = h.l1_norm;
  j["degenerate"] = h.degenerate;
  j["alpha"] = number(h.alpha);
  j["c_fit"] = number(h.c_fit);
  j["max_residual"] = number(h.max_residual);
  j["alpha_threshold"] = bound.alpha_threshold;
  run.quantity({"holder alpha", h.alpha, bound.alpha_threshold, "threshold"});

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < h.s_values.size(); ++i) {
    rows.push_back({h.s_values[i], h.max_difference[i]});
  }
  run.write_csv("s,max_difference", rows);
  run.log() << "holder alpha " << h.alpha << ", C " << h.c_fit << '\n';
  run.finish();
  if (h.degenerate) throw Error(ErrorKind::degenerate, "all sampled differences vanish");
  return kExitOk;
}

int cmd_nodal(Run& run) {
  const auto radii = run.config().schedule();
  const double r = std::min(radii.back(), run.field_coverage());
  const auto comp = ball_component(run.mesh(), run.root(), r);
  const LevelSet ls = level_set(run.field(), 0.0, comp);
  {
    std::ofstream out(run.prepare(run.output(".csv")));
    write_level_set_csv(out, ls);
  }
  const double h = run.mesh().target_h();
  auto& j = run.results();
  j["r"] = r;
  j["length"] = ls.total_length;
  j["components"] = ls.components.size();
  j["root_value"] = run.field()[run.root()];
  j["lower_bound_if_root_on_nodal_set"] = 0.5 * r * (1.0 - 5.0 * h / r);
  run.quantity({"nodal length", ls.total_length, 0.5 * r, "lower bound r/2"});
  run.log() << "nodal length " << ls.total_length << " in " << ls.components.size()
            << " components\n";
  run.finish();
  return kExitOk;
}

int cmd_cone_profile(Run& run) {
  const RunConfig& c = run.config();
  const double rho = param_radius_for_ball(c.spec(), c.radius);
  TriangulateOptions opt;
  opt.max_vertices = c.max_vertices;
  const SurfaceMesh half = triangulate(c.spec(), 0.5 * rho, c.target_h, opt);
  const double outer = cone_containment_profile(run.mesh(), c.alpha);
  const double inner = cone_containment_profile(half, c.alpha);
  const double growth = inner > 0.0 ? outer / inner - 1.0 : 0.0;
  auto& j = run.results();
  j["alpha"] = c.alpha;
  j["param_radius"] = rho;
  j["c_full_patch"] = outer;
  j["c_half_patch"] = inner;
  j["relative_growth"] = growth;
  run.quantity({"cone C", outer, std::nullopt, "-"});
  run.quantity({"cone C growth on doubling", growth, std::nullopt,
                c.alpha > 2.0 / 3.0 ? "bounded" : "unbounded"});
  run.log() << "alpha " << c.alpha << ": C = " << outer << " (half patch " << inner
            << ", growth " << growth * 100.0 << "%)\n";
  run.finish();
  return kExitOk;
}

std::string fixed2(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << x;
  return s.str();
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "mesh",   "solve",  "area-growth", "osc-decay",    "certify",
      "growth-fit", "holder", "nodal", "cone-profile", "report"};
  return names;
}

int run_command(const std::string& command, const RunConfig& config,
                std::ostream& log) {
  config.validate();
  thread_limit() = config.threads;
  if (command == "report") return run_report(config.output_dir, log);
  Run run(command, config, log);
  if (command == "mesh") return cmd_mesh(run);
  if (command == "solve") return cmd_solve(run);
  if (command == "area-growth") return cmd_area_growth(run);
  if (command == "osc-decay") return cmd_osc_decay(run);
  if (command == "certify") return cmd_certify(run);
  if (command == "growth-fit") return cmd_growth_fit(run);
  if (command == "holder") return cmd_holder(run);
  if (command == "nodal") return cmd_nodal(run);
  if (command == "cone-profile") return cmd_cone_profile(run);
  throw Error(ErrorKind::argument, "unknown command '" + command + "'");
}

int run_report(const fs::path& dir, std::ostream& log) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(dir, ec)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::ostringstream csv;
  csv << "run,command,name,measured,reference,reference_label\n";
  std::size_t rows = 0;
  for (const auto& path : files) {
    std::ifstream in(path);
    json report;
    try {
      report = json::parse(in);
    } catch (const json::exception&) {
      continue;
    }
    if (!report.contains("quantities")) continue;
    const std::string run = report.value("run", "");
    const std::string command = report.value("command", "");
    for (const auto& q : report["quantities"]) {
      const auto name = q.value("name", "");
      const auto label = q.value("reference_label", "-");
      const json& m = q["measured"];
      const json& ref = q["reference"];
      csv << run << ',' << command << ',' << name << ','
          << (m.is_number() ? format_double(m.get<double>()) : "") << ','
          << (ref.is_number() ? format_double(ref.get<double>()) : "") << ','
          << label << '\n';
      log << run << "  " << name << ": "
          << (m.is_number() ? fixed2(m.get<double>()) : std::string("n/a")) << " ("
          << label << ")\n";
      ++rows;
    }
  }
  if (rows == 0) {
    throw Error(ErrorKind::io, "no reports found in " + dir.string());
  }
  std::ofstream out(dir / "summary.csv");
  out << csv.str();
  if (!out) throw Error(ErrorKind::io, "cannot write summary.csv");
  return kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::io: return kExitMissingInput;
      case ErrorKind::resource: return kExitResource;
      case ErrorKind::degenerate: return kExitDegenerate;
      case ErrorKind::numerical: return kExitNumerical;
      default: return kExitFailedCheck;
    }
  }
  return kExitFailedCheck;
}

}  // namespace minlab::cli
