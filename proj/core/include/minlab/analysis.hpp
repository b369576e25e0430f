#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "minlab/field.hpp"
#include "minlab/mesh.hpp"

namespace minlab {

/// Decay constant of the one-sided oscillation for area-growth constant C_a:
/// gamma = 1 - exp(-24 C_a), alpha_threshold = -log2(gamma).
///
/// For C_a beyond a few units gamma rounds to 1.0, so the complement
/// exp(-24 C_a) is kept separately and alpha_threshold is computed from it.
struct DecayBound {
  double c_a = 0.0;
  double gamma = 0.0;
  double one_minus_gamma = 0.0;
  double alpha_threshold = 0.0;
};

// Throws ErrorKind::argument for C_a <= 0 or non-finite.
DecayBound liouville_threshold(double c_a);

// log(gamma * 2^alpha), evaluated without forming gamma. Negative exactly
// when gamma * 2^alpha < 1.
double log_gamma_two_pow(const DecayBound& bound, double alpha);

// Slack added to every continuum inequality: 10 h / r.
double discretization_slack(double target_h, double r);

// One-sided: f(root) - min over the component. Two-sided: max - min.
double oscillation(const ScalarField& f, const Region& component, Index root,
                   bool two_sided);

struct OscillationCurve {
  Index root = kNoIndex;
  double target_h = 0.0;
  DecayBound bound;
  std::vector<double> radii;
  std::vector<double> osc0;
  std::vector<double> osc2;
  // Entry i compares radii[i] with radii[i + 1].
  std::vector<double> ratios;
  std::vector<bool> degenerate;  // osc0 at the larger radius is zero
  std::vector<bool> exceeds;     // ratio > gamma + slack(radii[i])

  bool all_within_bound() const;
};

// Throws ErrorKind::argument unless radii are positive and strictly
// increasing.
OscillationCurve decay_curve(const ScalarField& f, Index root,
                             std::span<const double> radii,
                             const DecayBound& bound);

/// Every number that enters the four inequalities of the oscillation-decay
/// argument at radius r, plus the verdicts.
struct DecayCertificate {
  double radius = 0.0;
  double target_h = 0.0;
  double c_a = 0.0;
  double slack = 0.0;

  // w = (f - inf_2r) / osc0_2r + epsilon on the 2r component, v = -log w.
  double inf_2r = 0.0;
  double osc0_2r = 0.0;
  double epsilon = 0.0;

  double osc0_r = 0.0;
  double ratio = 0.0;
  double gamma = 0.0;
  bool ratio_pass = false;  // ratio <= gamma + slack

  double energy = 0.0;        // of v on the 3r/2 component
  double area_2r = 0.0;
  double energy_bound = 0.0;  // 16 area_2r / r^2
  bool energy_pass = false;   // energy <= energy_bound (1 + slack)

  double sup_v = 0.0;    // M = sup of v on the r component
  double sup_bound = 0.0;  // 24 C_a
  bool sup_pass = false;   // M <= sup_bound + slack

  std::vector<double> levels;  // M (i + 1/2) / n
  // Longest level-set component on the 3r/2 component that meets the r
  // component, per level.
  std::vector<double> level_lengths;
  double min_level_length = 0.0;
  double level_bound = 0.0;  // r / 2
  bool level_pass = false;   // every level_length >= level_bound (1 - slack)

  bool passed() const {
    return ratio_pass && energy_pass && sup_pass && level_pass;
  }
  // Recomputes the four verdicts from the stored numbers.
  bool verdicts_consistent() const;
};

inline constexpr double kCertificateEpsilon = 1e-12;
inline constexpr int kCertificateLevels = 32;

// Throws ErrorKind::degenerate when f is constant on the 2r component (the
// one-sided oscillation vanishes).
DecayCertificate decay_certificate(const ScalarField& f, Index root, double r,
                                   double c_a, int n_levels = kCertificateLevels);

/// Power model log osc2 = log c + alpha log r against the log model
/// osc2 = a + b log r. Both residuals are measured as max |log osc2 - log
/// model|, so they are comparable; a log model that goes non-positive at a
/// sample gets an infinite residual.
struct GrowthFit {
  std::vector<double> radii;
  std::vector<double> osc2;
  double alpha = 0.0;
  double power_intercept = 0.0;
  double power_residual = 0.0;
  double log_slope = 0.0;
  double log_intercept = 0.0;
  double log_residual = 0.0;
  bool log_preferred() const { return log_residual < power_residual; }
};

// Needs >= 4 increasing radii. Throws ErrorKind::degenerate when the
// oscillation vanishes at some radius.
GrowthFit growth_exponent(const ScalarField& f, Index root,
                          std::span<const double> radii);

struct HolderFit {
  double r = 0.0;
  std::vector<double> s_values;
  std::vector<double> max_difference;  // over sampled pairs in the s component
  double l1_norm = 0.0;                // integral of |f| over the 2r component
  bool degenerate = false;             // some max_difference is zero
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double c_fit = std::numeric_limits<double>::quiet_NaN();
  double max_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Pairs are drawn from the component of B_s around the base vertex with an
/// R2 sequence seeded by splitmix64(seed). alpha is the slope of log max_difference against
/// log(s/r); c_fit = exp(intercept) / l1_norm. Throws ErrorKind::argument for
/// an empty s list or s outside (0, r).
HolderFit holder_estimate(const ScalarField& f, double r,
                          std::span<const double> s_values,
                          std::size_t pair_samples, std::uint64_t seed = 0);

// sup_{r component} |f| * r^2 / integral_{2r component} |f| dA with lumped
// vertex areas. Throws ErrorKind::degenerate when the integral vanishes.
double mean_value_ratio(const ScalarField& f, Index root, double r);

// max over vertices with |position| <= max_radius of
// |x3| / (|x1|^alpha + |x2|^alpha + 1). Throws ErrorKind::argument for
// alpha <= 0.
double cone_containment_profile(
    const SurfaceMesh& mesh, double alpha,
    double max_radius = std::numeric_limits<double>::infinity());

}  // namespace minlab
