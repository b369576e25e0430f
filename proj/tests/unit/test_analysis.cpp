#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "minlab/analysis.hpp"
#include "minlab/error.hpp"
#include "minlab/harmonic.hpp"
#include "minlab/level_set.hpp"
#include "minlab/mesh.hpp"
#include "minlab/sampling.hpp"

using namespace minlab;

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoThirdsRatio = std::pow(2.0, -2.0 / 3.0);

// Continuum one-sided oscillation of x3 at the origin of Enneper k = 1,
// -min of x3 over the component of B_r (polar ray oracle, 2048 x 2000).
struct OscOracle {
  double r;
  double osc0;
};
constexpr OscOracle kEnneperOsc0[] = {
    {4, 3.950159}, {8, 7.114563}, {16, 12.069804}, {32, 19.875870}, {64, 32.223358}};
// Least-squares slopes of log osc2 against log r over r = 8, 16, 32, 64 from
// the same oracle, for x3 and for the parameter coordinate u.
constexpr double kEnneperX3Slope = 0.725740;
constexpr double kEnneperUSlope = 0.362870;
// Slope of log osc2(x3) over s = 4, 8, 16, 32.
constexpr double kEnneperHolderSlope = 0.775566;
// sup over the parameter disk |z| <= 4.323734 of |x3| / (|x1|^a + |x2|^a + 1)
// (4096 rays x 3000 nodes); the radius is half the patch radius for B_200.
constexpr double kConeHalfRho = 4.323734;
constexpr double kConeC08 = 2.992680;
constexpr double kConeC05 = 3.247839;

template <typename Fn>
ErrorKind kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::io;
}

const SurfaceMesh& enneper64() {
  static const SurfaceMesh mesh =
      triangulate_ball_patch(ImmersionSpec::enneper(1), 64.0, 0.5);
  return mesh;
}

const SurfaceMesh& plane32() {
  static const SurfaceMesh mesh =
      triangulate_ball_patch(ImmersionSpec::plane(), 32.0, 0.1);
  return mesh;
}

}  // namespace

TEST(Oscillation, ConstantFieldIsZero) {
  const auto& mesh = plane32();
  const auto ball = ball_component(mesh, base_vertex(mesh), 4.0);
  const auto c = constant_field(mesh, 2.0);
  EXPECT_EQ(oscillation(c, ball, base_vertex(mesh), false), 0.0);
  EXPECT_EQ(oscillation(c, ball, base_vertex(mesh), true), 0.0);
}

TEST(Oscillation, PlaneCoordinate) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::plane(), 2.0, 0.05);
  const Index root = base_vertex(mesh);
  const auto ball = ball_component(mesh, root, 1.0);
  const auto x1 = coordinate_field(mesh, 0);
  EXPECT_NEAR(oscillation(x1, ball, root, false), 1.0, 0.05);
  EXPECT_NEAR(oscillation(x1, ball, root, true), 2.0, 0.1);
}

TEST(Oscillation, EnneperX3MatchesOracle) {
  const auto& mesh = enneper64();
  const Index root = base_vertex(mesh);
  const auto x3 = coordinate_field(mesh, 2);
  std::vector<double> osc;
  // x3 is 1-Lipschitz, so missing a rim band of width h costs at most h.
  for (const auto& o : kEnneperOsc0) {
    const double m = oscillation(x3, ball_component(mesh, root, o.r), root, false);
    EXPECT_NEAR(m, o.osc0, 0.01 * o.osc0 + mesh.target_h()) << o.r;
    osc.push_back(m);
  }
  const double ratio = osc[1] / osc[2];
  EXPECT_NEAR(ratio, kEnneperOsc0[1].osc0 / kEnneperOsc0[2].osc0, 0.01);
  EXPECT_NEAR(ratio, kTwoThirdsRatio, 0.05);
}

TEST(DecayCurve, ConstantFieldIsDegenerateNotFailed) {
  const auto& mesh = plane32();
  const std::vector<double> radii{1, 2, 4, 8};
  const auto c = decay_curve(constant_field(mesh, 1.0), base_vertex(mesh), radii,
                             liouville_threshold(kPi));
  for (std::size_t i = 0; i < c.ratios.size(); ++i) {
    EXPECT_TRUE(c.degenerate[i]);
    EXPECT_FALSE(c.exceeds[i]);
  }
  EXPECT_TRUE(c.all_within_bound());
}

TEST(DecayCurve, PlaneCoordinateHalves) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::plane(), 32.0, 0.05);
  const std::vector<double> radii{1, 2, 4, 8, 16, 32};
  const auto bound = liouville_threshold(kPi);
  const auto c = decay_curve(coordinate_field(mesh, 0), base_vertex(mesh), radii, bound);
  ASSERT_EQ(c.ratios.size(), 5u);
  for (double q : c.ratios) {
    EXPECT_NEAR(q, 0.5, 0.02);
    EXPECT_LE(q, bound.gamma);
  }
  EXPECT_TRUE(c.all_within_bound());
}

TEST(DecayCurve, EnneperX3MatchesOracleRatios) {
  const auto& mesh = enneper64();
  std::vector<double> radii;
  for (const auto& o : kEnneperOsc0) radii.push_back(o.r);
  const auto bound = liouville_threshold(3 * kPi);
  const auto c = decay_curve(coordinate_field(mesh, 2), base_vertex(mesh), radii, bound);
  for (std::size_t i = 0; i < c.ratios.size(); ++i) {
    const double expected = kEnneperOsc0[i].osc0 / kEnneperOsc0[i + 1].osc0;
    EXPECT_NEAR(c.ratios[i], expected, 0.02) << radii[i];
    EXPECT_LE(c.ratios[i], bound.gamma);
  }
  EXPECT_TRUE(c.all_within_bound());
}

TEST(DecayCurve, OscillationsAreMonotone) {
  const auto& mesh = enneper64();
  const std::vector<double> radii{2, 3, 5, 8, 13, 21, 34, 55};
  for (int axis : {0, 1, 2}) {
    const auto c = decay_curve(coordinate_field(mesh, axis), base_vertex(mesh), radii,
                               liouville_threshold(3 * kPi));
    for (std::size_t i = 0; i < radii.size(); ++i) {
      EXPECT_GE(c.osc0[i], 0.0);
      EXPECT_GE(c.osc2[i], c.osc0[i]);
      if (i > 0) {
        EXPECT_GE(c.osc0[i], c.osc0[i - 1]);
        EXPECT_GE(c.osc2[i], c.osc2[i - 1]);
      }
    }
  }
}

TEST(DecayCurve, NonMonotoneRadiiRejected) {
  const auto& mesh = plane32();
  const std::vector<double> radii{1, 4, 2};
  EXPECT_EQ(kind_of([&] {
              decay_curve(coordinate_field(mesh, 0), base_vertex(mesh), radii,
                          liouville_threshold(kPi));
            }),
            ErrorKind::argument);
}

TEST(Certificate, PlaneLinearField) {
  const auto& mesh = plane32();
  const Index root = base_vertex(mesh);
  for (double r : {2.0, 4.0, 8.0}) {
    const auto f = coordinate_field(mesh, 0).affine(1.0 / (4.0 * r), 1.0);
    const auto cert = decay_certificate(f, root, r, kPi);
    EXPECT_TRUE(cert.passed()) << r;
    EXPECT_TRUE(cert.verdicts_consistent());
    EXPECT_LT(cert.energy, 0.5 * cert.energy_bound);
    EXPECT_LT(cert.sup_v, 0.5 * cert.sup_bound);
    EXPECT_EQ(cert.levels.size(), static_cast<std::size_t>(kCertificateLevels));
    EXPECT_NEAR(cert.slack, 10 * mesh.target_h() / r, 1e-15);
  }
}

TEST(Certificate, EnneperX3) {
  const auto& mesh = enneper64();
  const Index root = base_vertex(mesh);
  const std::vector<double> radii{4, 8, 16};
  const double c_a = area_growth_fit(mesh, root, radii).c_a;
  const auto f = coordinate_field(mesh, 2).affine(1.0, 100.0);
  const auto cert = decay_certificate(f, root, 4.0, c_a);
  EXPECT_TRUE(cert.ratio_pass);
  EXPECT_TRUE(cert.energy_pass);
  EXPECT_TRUE(cert.sup_pass);
  EXPECT_TRUE(cert.level_pass);
  EXPECT_TRUE(cert.verdicts_consistent());
  EXPECT_NEAR(cert.ratio, kEnneperOsc0[0].osc0 / kEnneperOsc0[1].osc0, 0.02);
}

TEST(Certificate, ConstantFieldIsDegenerate) {
  const auto& mesh = plane32();
  EXPECT_EQ(kind_of([&] {
              decay_certificate(constant_field(mesh, 1.0), base_vertex(mesh), 2.0, kPi);
            }),
            ErrorKind::degenerate);
}

TEST(Certificate, VerdictsFollowStoredNumbers) {
  const auto& mesh = plane32();
  auto cert = decay_certificate(coordinate_field(mesh, 1).affine(1.0, 5.0),
                                base_vertex(mesh), 4.0, kPi);
  ASSERT_TRUE(cert.verdicts_consistent());
  cert.energy = 2.0 * cert.energy_bound;
  EXPECT_FALSE(cert.verdicts_consistent());
}

TEST(GrowthExponent, PlaneCoordinateIsLinear) {
  const auto& mesh = plane32();
  const std::vector<double> radii{2, 4, 8, 16, 32};
  const auto g = growth_exponent(coordinate_field(mesh, 0), base_vertex(mesh), radii);
  EXPECT_NEAR(g.alpha, 1.0, 0.02);
  EXPECT_FALSE(g.log_preferred());
}

TEST(GrowthExponent, EnneperMatchesOracle) {
  const auto& mesh = enneper64();
  const std::vector<double> radii{8, 16, 32, 64};
  const auto x3 = growth_exponent(coordinate_field(mesh, 2), base_vertex(mesh), radii);
  EXPECT_NEAR(x3.alpha, kEnneperX3Slope, 0.02);
  const auto u = growth_exponent(param_field(mesh, 0), base_vertex(mesh), radii);
  EXPECT_NEAR(u.alpha, kEnneperUSlope, 0.02);
}

TEST(GrowthExponent, CatenoidPrefersLogModel) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::catenoid(), 32.0, 0.2);
  const std::vector<double> radii{4, 8, 16, 32};
  const auto g = growth_exponent(coordinate_field(mesh, 2), base_vertex(mesh), radii);
  EXPECT_TRUE(g.log_preferred());
  EXPECT_LT(g.log_residual, g.power_residual);
}

TEST(GrowthExponent, Errors) {
  const auto& mesh = plane32();
  const std::vector<double> three{2, 4, 8}, four{2, 4, 8, 16};
  EXPECT_EQ(kind_of([&] {
              growth_exponent(coordinate_field(mesh, 0), base_vertex(mesh), three);
            }),
            ErrorKind::argument);
  EXPECT_EQ(kind_of([&] {
              growth_exponent(constant_field(mesh, 0.0), base_vertex(mesh), four);
            }),
            ErrorKind::degenerate);
}

TEST(Liouville, HalfDecayGivesThresholdOne) {
  const auto b = liouville_threshold(std::log(2.0) / 24.0);
  EXPECT_NEAR(b.gamma, 0.5, 1e-15);
  EXPECT_NEAR(b.alpha_threshold, 1.0, 1e-15);
  EXPECT_NEAR(b.one_minus_gamma, 0.5, 1e-15);
}

TEST(Liouville, EnneperThresholdIsTinyButPositive) {
  const auto b = liouville_threshold(3 * kPi);
  EXPECT_EQ(b.gamma, 1.0);
  EXPECT_GT(b.alpha_threshold, 0.0);
  const double first_order = std::exp(-72 * kPi) / std::log(2.0);
  EXPECT_NEAR(b.alpha_threshold / first_order, 1.0, 1e-12);
  EXPECT_LT(b.alpha_threshold, 1e-97);
  EXPECT_GT(b.alpha_threshold, 1e-99);
}

TEST(Liouville, DivergesAsAreaConstantVanishes) {
  double previous = 0.0;
  for (double c : {1e-1, 1e-3, 1e-6, 1e-9, 1e-12}) {
    const double a = liouville_threshold(c).alpha_threshold;
    EXPECT_GT(a, previous);
    previous = a;
  }
  EXPECT_GT(previous, 30.0);
}

TEST(Liouville, RejectsNonPositive) {
  EXPECT_EQ(kind_of([] { liouville_threshold(0.0); }), ErrorKind::argument);
  EXPECT_EQ(kind_of([] { liouville_threshold(-1.0); }), ErrorKind::argument);
  EXPECT_EQ(kind_of([] { liouville_threshold(std::numeric_limits<double>::quiet_NaN()); }),
            ErrorKind::argument);
}

TEST(LiouvilleProperty, MonotoneAndSharp) {
  std::uint64_t state = 99;
  DecayBound prev = liouville_threshold(1e-3);
  for (int i = 1; i <= 200; ++i) {
    const double c = 1e-3 + (25.0 - 1e-3) * i / 200.0;
    const DecayBound b = liouville_threshold(c);
    EXPECT_LT(b.alpha_threshold, prev.alpha_threshold);
    EXPECT_GE(b.gamma, prev.gamma);
    prev = b;

    const double a = b.alpha_threshold;
    EXPECT_LT(log_gamma_two_pow(b, a * (1 - 1e-9)), 0.0);
    EXPECT_GT(log_gamma_two_pow(b, a * (1 + 1e-9)), 0.0);
    const double below = a * unit_double(splitmix64_next(state));
    EXPECT_LT(log_gamma_two_pow(b, below), 0.0);
  }
}

TEST(Slack, TenStepsPerRadius) {
  EXPECT_DOUBLE_EQ(discretization_slack(0.2, 4.0), 0.5);
}

TEST(Holder, ConstantFieldIsDegenerate) {
  const auto& mesh = plane32();
  const std::vector<double> s{1, 2, 4};
  const auto fit = holder_estimate(constant_field(mesh, 3.0), 8.0, s, 512);
  EXPECT_TRUE(fit.degenerate);
  EXPECT_TRUE(std::isnan(fit.alpha));
}

TEST(Holder, PlaneCoordinateIsLipschitz) {
  const auto& mesh = plane32();
  const std::vector<double> s{1, 2, 4};
  const auto fit = holder_estimate(coordinate_field(mesh, 0), 8.0, s, 4096);
  EXPECT_FALSE(fit.degenerate);
  EXPECT_NEAR(fit.alpha, 1.0, 0.05);
  EXPECT_GT(fit.l1_norm, 0.0);
  EXPECT_NEAR(fit.c_fit, std::exp(std::log(fit.max_difference[0]) -
                                  fit.alpha * std::log(1.0 / 8.0)) /
                             fit.l1_norm,
              0.1 * fit.c_fit);
}

TEST(Holder, EnneperX3MatchesOracle) {
  const auto& mesh = enneper64();
  const std::vector<double> s{4, 8, 16, 32};
  const auto fit = holder_estimate(coordinate_field(mesh, 2), 64.0, s, 4096);
  EXPECT_NEAR(fit.alpha, kEnneperHolderSlope, 0.03);
  const double c_a = area_growth_fit(mesh, base_vertex(mesh),
                                     std::vector<double>{16, 32, 64})
                         .c_a;
  EXPECT_GE(fit.alpha, liouville_threshold(c_a).alpha_threshold);
}

TEST(Holder, DeterministicForSeed) {
  const auto& mesh = plane32();
  const std::vector<double> s{1, 2, 4};
  const auto f = coordinate_field(mesh, 1);
  const auto a = holder_estimate(f, 8.0, s, 300, 5);
  const auto b = holder_estimate(f, 8.0, s, 300, 5);
  EXPECT_EQ(a.max_difference, b.max_difference);
  EXPECT_EQ(a.alpha, b.alpha);
}

TEST(Holder, Errors) {
  const auto& mesh = plane32();
  const auto f = coordinate_field(mesh, 0);
  const std::vector<double> empty, outside{1, 8};
  EXPECT_EQ(kind_of([&] { holder_estimate(f, 8.0, empty, 64); }), ErrorKind::argument);
  EXPECT_EQ(kind_of([&] { holder_estimate(f, 8.0, outside, 64); }), ErrorKind::argument);
}

TEST(MeanValue, PlaneConstant) {
  const auto mesh = triangulate_ball_patch(ImmersionSpec::plane(), 2.0, 0.01);
  const double q = mean_value_ratio(constant_field(mesh, 1.0), base_vertex(mesh), 1.0);
  EXPECT_NEAR(q, 1.0 / (4 * kPi), 0.02 / (4 * kPi));
}

TEST(MeanValue, PlaneCoordinateClosedForm) {
  // sup_{B_1} |x1| = 1 and the integral of |x1| over B_2 is 32/3.
  const auto mesh = triangulate_ball_patch(ImmersionSpec::plane(), 2.0, 0.02);
  const double q = mean_value_ratio(coordinate_field(mesh, 0), base_vertex(mesh), 1.0);
  EXPECT_NEAR(q, 3.0 / 32.0, 0.02 * 3.0 / 32.0);
}

TEST(MeanValue, EnneperStableUnderRefinement) {
  double q[2];
  int i = 0;
  for (double h : {0.04, 0.02}) {
    const auto mesh = triangulate_ball_patch(ImmersionSpec::enneper(1), 4.0, h);
    q[i++] = mean_value_ratio(coordinate_field(mesh, 2), base_vertex(mesh), 2.0);
  }
  EXPECT_NEAR(q[0], q[1], 0.05 * q[1]);
}

TEST(MeanValue, ZeroFieldIsDegenerate) {
  const auto& mesh = plane32();
  EXPECT_EQ(kind_of([&] {
              mean_value_ratio(constant_field(mesh, 0.0), base_vertex(mesh), 1.0);
            }),
            ErrorKind::degenerate);
}

TEST(ConeProfile, PlaneIsZero) {
  const auto& mesh = plane32();
  for (double a : {0.1, 0.5, 0.8, 2.0}) EXPECT_EQ(cone_containment_profile(mesh, a), 0.0);
}

TEST(ConeProfile, EnneperMatchesOracle) {
  const auto mesh = triangulate(ImmersionSpec::enneper(1), kConeHalfRho, 0.25);
  EXPECT_NEAR(cone_containment_profile(mesh, 0.8), kConeC08, 0.02 * kConeC08);
  EXPECT_NEAR(cone_containment_profile(mesh, 0.5), kConeC05, 0.02 * kConeC05);
}

TEST(ConeProfile, MaxRadiusRestrictsVertices) {
  const auto& mesh = enneper64();
  const double all = cone_containment_profile(mesh, 0.5);
  const double inner = cone_containment_profile(mesh, 0.5, 16.0);
  EXPECT_LE(inner, all);
  EXPECT_GT(inner, 0.0);
}

TEST(ConeProfile, RejectsNonPositiveAlpha) {
  const auto& mesh = plane32();
  EXPECT_EQ(kind_of([&] { cone_containment_profile(mesh, 0.0); }), ErrorKind::argument);
}

TEST(AffineInvariance, OscillationsScaleRatiosStay) {
  const auto& mesh = enneper64();
  const Index root = base_vertex(mesh);
  const std::vector<double> radii{4, 8, 16, 32};
  const auto bound = liouville_threshold(3 * kPi);
  const auto f = coordinate_field(mesh, 2);
  const double a = 3.7, b = -12.5;
  const auto g = f.affine(a, b);
  const auto cf = decay_curve(f, root, radii, bound);
  const auto cg = decay_curve(g, root, radii, bound);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    EXPECT_NEAR(cg.osc0[i], a * cf.osc0[i], 1e-12 * a * cf.osc0[i]);
    EXPECT_NEAR(cg.osc2[i], a * cf.osc2[i], 1e-12 * a * cf.osc2[i]);
  }
  for (std::size_t i = 0; i < cf.ratios.size(); ++i) {
    EXPECT_NEAR(cg.ratios[i], cf.ratios[i], 1e-12);
  }
  const auto ef = growth_exponent(f, root, radii), eg = growth_exponent(g, root, radii);
  EXPECT_NEAR(eg.alpha, ef.alpha, 1e-12);

  const auto ball = ball_component(mesh, root, 16.0);
  for (double s : {-5.0, 0.5, 7.0}) {
    const auto lf = level_set(f, s, ball), lg = level_set(g, a * s + b, ball);
    ASSERT_EQ(lf.components.size(), lg.components.size());
    for (std::size_t k = 0; k < lf.components.size(); ++k) {
      EXPECT_EQ(lf.components[k].touches_boundary, lg.components[k].touches_boundary);
    }
  }
}
