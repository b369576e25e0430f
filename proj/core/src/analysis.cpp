#include "minlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "minlab/error.hpp"
#include "minlab/fit.hpp"
#include "minlab/harmonic.hpp"
#include "minlab/level_set.hpp"
#include "minlab/sampling.hpp"

namespace minlab {

namespace {

void require_increasing(std::span<const double> radii) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw Error(ErrorKind::argument, "radii must be positive and finite");
    }
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw Error(ErrorKind::argument, "radii must be strictly increasing");
    }
  }
}

}  // namespace

DecayBound liouville_threshold(double c_a) {
  if (!(c_a > 0.0) || !std::isfinite(c_a)) {
    throw Error(ErrorKind::argument,
                "C_a must be positive and finite, got " + std::to_string(c_a));
  }
  DecayBound b;
  b.c_a = c_a;
  b.one_minus_gamma = std::exp(-24.0 * c_a);
  b.gamma = -std::expm1(-24.0 * c_a);
  b.alpha_threshold = -std::log1p(-b.one_minus_gamma) / std::numbers::ln2;
  return b;
}

double log_gamma_two_pow(const DecayBound& bound, double alpha) {
  return std::log1p(-bound.one_minus_gamma) + alpha * std::numbers::ln2;
}

double discretization_slack(double target_h, double r) {
  return 10.0 * target_h / r;
}

double oscillation(const ScalarField& f, const Region& component, Index root,
                   bool two_sided) {
  if (!component.contains_vertex(root)) {
    throw Error(ErrorKind::argument, "root is not a vertex of the component");
  }
  const double lo = field_min(f, component);
  return (two_sided ? field_max(f, component) : f[root]) - lo;
}

bool OscillationCurve::all_within_bound() const {
  return std::none_of(exceeds.begin(), exceeds.end(), [](bool b) { return b; });
}

OscillationCurve decay_curve(const ScalarField& f, Index root,
                             std::span<const double> radii,
                             const DecayBound& bound) {
  require_increasing(radii);
  const SurfaceMesh& mesh = f.mesh();
  OscillationCurve c;
  c.root = root;
  c.target_h = mesh.target_h();
  c.bound = bound;
  c.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    const auto comp = ball_component(mesh, root, r);
    c.osc0.push_back(oscillation(f, comp, root, false));
    c.osc2.push_back(oscillation(f, comp, root, true));
  }
  for (std::size_t i = 0; i + 1 < c.radii.size(); ++i) {
    const bool degenerate = !(c.osc0[i + 1] > 0.0);
    const double ratio = degenerate ? 0.0 : c.osc0[i] / c.osc0[i + 1];
    c.ratios.push_back(ratio);
    c.degenerate.push_back(degenerate);
    c.exceeds.push_back(!degenerate &&
                        ratio > bound.gamma +
                                    discretization_slack(c.target_h, c.radii[i]));
  }
  return c;
}

bool DecayCertificate::verdicts_consistent() const {
  const bool levels_ok = std::all_of(
      level_lengths.begin(), level_lengths.end(),
      [&](double len) { return len >= level_bound * (1.0 - slack); });
  return ratio_pass == (ratio <= gamma + slack) &&
         energy_pass == (energy <= energy_bound * (1.0 + slack)) &&
         sup_pass == (sup_v <= sup_bound + slack) && level_pass == levels_ok;
}

DecayCertificate decay_certificate(const ScalarField& f, Index root, double r,
                                   double c_a, int n_levels) {
  if (!(r > 0.0)) throw Error(ErrorKind::argument, "radius must be positive");
  if (n_levels < 1) throw Error(ErrorKind::argument, "need at least one level");
  const SurfaceMesh& mesh = f.mesh();
  const auto ball_2r = ball_component(mesh, root, 2.0 * r);
  const auto ball_3r2 = ball_component(mesh, root, 1.5 * r);
  const auto ball_r = ball_component(mesh, root, r);
  const DecayBound bound = liouville_threshold(c_a);

  DecayCertificate c;
  c.radius = r;
  c.target_h = mesh.target_h();
  c.c_a = c_a;
  c.slack = discretization_slack(c.target_h, r);
  c.epsilon = kCertificateEpsilon;
  c.inf_2r = field_min(f, ball_2r);
  c.osc0_2r = f[root] - c.inf_2r;
  if (!(c.osc0_2r > 0.0)) {
    throw Error(ErrorKind::degenerate,
                "field has zero one-sided oscillation on the 2r component at r = " +
                    std::to_string(r));
  }

  c.osc0_r = oscillation(f, ball_r, root, false);
  c.ratio = c.osc0_r / c.osc0_2r;
  c.gamma = bound.gamma;
  c.ratio_pass = c.ratio <= c.gamma + c.slack;

  ScalarField v(mesh);
  for (Index i : ball_2r.vertices()) {
    v[i] = -std::log((f[i] - c.inf_2r) / c.osc0_2r + c.epsilon);
  }

  c.energy = dirichlet_energy(v, ball_3r2);
  c.area_2r = surface_area(ball_2r);
  c.energy_bound = 16.0 * c.area_2r / (r * r);
  c.energy_pass = c.energy <= c.energy_bound * (1.0 + c.slack);

  c.sup_v = field_max(v, ball_r);
  c.sup_bound = 24.0 * c_a;
  c.sup_pass = c.sup_v <= c.sup_bound + c.slack;

  c.level_bound = 0.5 * r;
  if (c.sup_v > 0.0) {
    for (int i = 0; i < n_levels; ++i) {
      const double s = c.sup_v * (i + 0.5) / n_levels;
      const LevelSet ls = level_set(v, s, ball_3r2);
      double best = 0.0;
      for (const auto& comp : ls.components) {
        const bool meets = std::any_of(
            comp.segments.begin(), comp.segments.end(), [&](std::size_t k) {
              return ball_r.contains_triangle(ls.segments[k].triangle);
            });
        if (meets) best = std::max(best, comp.length);
      }
      c.levels.push_back(s);
      c.level_lengths.push_back(best);
    }
    c.min_level_length =
        *std::min_element(c.level_lengths.begin(), c.level_lengths.end());
  }
  c.level_pass = std::all_of(
      c.level_lengths.begin(), c.level_lengths.end(),
      [&](double len) { return len >= c.level_bound * (1.0 - c.slack); });
  return c;
}

GrowthFit growth_exponent(const ScalarField& f, Index root,
                          std::span<const double> radii) {
  if (radii.size() < 4) {
    throw Error(ErrorKind::argument, "growth fit needs >= 4 radii");
  }
  require_increasing(radii);
  GrowthFit g;
  g.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    const double osc = oscillation(f, ball_component(f.mesh(), root, r), root, true);
    if (!(osc > 0.0)) {
      throw Error(ErrorKind::degenerate,
                  "zero oscillation at radius " + std::to_string(r));
    }
    g.osc2.push_back(osc);
  }
  const LineFit power = fit_power_law(g.radii, g.osc2);
  g.alpha = power.slope;
  g.power_intercept = power.intercept;
  g.power_residual = power.max_residual;

  std::vector<double> log_r(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) log_r[i] = std::log(radii[i]);
  const LineFit lin = fit_line(log_r, g.osc2);
  g.log_slope = lin.slope;
  g.log_intercept = lin.intercept;
  g.log_residual = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double model = lin.intercept + lin.slope * log_r[i];
    const double res = model > 0.0
                           ? std::abs(std::log(g.osc2[i]) - std::log(model))
                           : std::numeric_limits<double>::infinity();
    g.log_residual = std::max(g.log_residual, res);
  }
  return g;
}

HolderFit holder_estimate(const ScalarField& f, double r,
                          std::span<const double> s_values,
                          std::size_t pair_samples, std::uint64_t seed) {
  if (s_values.empty()) throw Error(ErrorKind::argument, "empty s list");
  if (pair_samples == 0) throw Error(ErrorKind::argument, "pair_samples must be > 0");
  for (double s : s_values) {
    if (!(s > 0.0 && s < r)) {
      throw Error(ErrorKind::argument,
                  "s = " + std::to_string(s) + " outside (0, r)");
    }
  }
  const SurfaceMesh& mesh = f.mesh();
  const Index center = base_vertex(mesh);
  const R2Sequence seq(seed);

  HolderFit h;
  h.r = r;
  h.s_values.assign(s_values.begin(), s_values.end());
  for (double s : s_values) {
    const auto comp = ball_component(mesh, center, s);
    f.require_on(comp);
    const auto verts = comp.vertices();
    const double n = static_cast<double>(verts.size());
    double best = 0.0;
    for (std::size_t k = 0; k < pair_samples; ++k) {
      const auto [a, b] = seq[k];
      const Index x = verts[static_cast<std::size_t>(a * n)];
      const Index y = verts[static_cast<std::size_t>(b * n)];
      best = std::max(best, std::abs(f[x] - f[y]));
    }
    h.max_difference.push_back(best);
  }

  const auto outer = ball_component(mesh, center, 2.0 * r);
  f.require_on(outer);
  const auto areas = vertex_areas(outer);
  for (Index v : outer.vertices()) h.l1_norm += std::abs(f[v]) * areas[v];

  h.degenerate = std::any_of(h.max_difference.begin(), h.max_difference.end(),
                             [](double d) { return !(d > 0.0); });
  if (h.degenerate || h.s_values.size() < 2) return h;

  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.s_values.size(); ++i) {
    x.push_back(std::log(h.s_values[i] / r));
    y.push_back(std::log(h.max_difference[i]));
  }
  const LineFit fit = fit_line(x, y);
  h.alpha = fit.slope;
  h.max_residual = fit.max_residual;
  if (h.l1_norm > 0.0) h.c_fit = std::exp(fit.intercept) / h.l1_norm;
  return h;
}

double mean_value_ratio(const ScalarField& f, Index root, double r) {
  const SurfaceMesh& mesh = f.mesh();
  const auto inner = ball_component(mesh, root, r);
  const auto outer = ball_component(mesh, root, 2.0 * r);
  f.require_on(outer);
  double sup = 0.0;
  for (Index v : inner.vertices()) sup = std::max(sup, std::abs(f[v]));
  const auto areas = vertex_areas(outer);
  double integral = 0.0;
  for (Index v : outer.vertices()) integral += std::abs(f[v]) * areas[v];
  if (!(integral > 0.0)) {
    throw Error(ErrorKind::degenerate, "integral of |f| vanishes on the 2r component");
  }
  return sup * r * r / integral;
}

double cone_containment_profile(const SurfaceMesh& mesh, double alpha,
                                double max_radius) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::argument, "alpha must be positive");
  const double r2 = max_radius * max_radius;
  double c = 0.0;
  for (const auto& v : mesh.vertices()) {
    const Vec3& p = v.position;
    if (norm2(p) > r2) continue;
    c = std::max(c, std::abs(p.z) / (std::pow(std::abs(p.x), alpha) +
                                     std::pow(std::abs(p.y), alpha) + 1.0));
  }
  return c;
}

}  // namespace minlab
