#include "minlab/surfaces.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "minlab/error.hpp"

namespace minlab {

namespace {

using cplx = std::complex<double>;

cplx ipow(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

void require_finite(Vec2 p) {
  if (!std::isfinite(p.u) || !std::isfinite(p.v)) {
    throw Error(ErrorKind::domain, "non-finite parameter (" +
                                       std::to_string(p.u) + ", " +
                                       std::to_string(p.v) + ")");
  }
}

// Holomorphic pieces of the order-k Enneper surface:
//   h1 = z - z^(2k+1)/(2k+1),  h2 = z + z^(2k+1)/(2k+1),  h3 = 2 z^(k+1)/(k+1)
// with F = (Re h1, -Im h2, Re h3).
struct EnneperTerms {
  cplx h1, h2, h3;     // values
  cplx d1, d2, d3;     // first derivatives
  cplx dd1, dd2, dd3;  // second derivatives
};

EnneperTerms enneper_terms(int k, Vec2 p) {
  const cplx z{p.u, p.v};
  const cplx zk = ipow(z, k);
  const cplx zk_1 = k >= 1 ? ipow(z, k - 1) : cplx{0.0, 0.0};
  const cplx z2k = zk * zk;
  const cplx z2k_1 = zk * zk_1;
  const double n = 2.0 * k + 1.0;
  EnneperTerms t;
  t.h1 = z - z2k * z / n;
  t.h2 = z + z2k * z / n;
  t.h3 = 2.0 * zk * z / (k + 1.0);
  t.d1 = 1.0 - z2k;
  t.d2 = 1.0 + z2k;
  t.d3 = 2.0 * zk;
  t.dd1 = -2.0 * k * z2k_1;
  t.dd2 = 2.0 * k * z2k_1;
  t.dd3 = 2.0 * k * zk_1;
  return t;
}

// For Re(h): d/du = Re(h'), d/dv = Re(i h') = -Im(h').
// For -Im(h): d/du = -Im(h'), d/dv = -Im(i h') = -Re(h').
Vec3 enneper_du(const EnneperTerms& t) {
  return {t.d1.real(), -t.d2.imag(), t.d3.real()};
}
Vec3 enneper_dv(const EnneperTerms& t) {
  return {-t.d1.imag(), -t.d2.real(), -t.d3.imag()};
}

}  // namespace

std::string_view to_string(SurfaceKind kind) noexcept {
  switch (kind) {
    case SurfaceKind::plane: return "plane";
    case SurfaceKind::enneper: return "enneper";
    case SurfaceKind::helicoid: return "helicoid";
    case SurfaceKind::catenoid: return "catenoid";
  }
  return "unknown";
}

SurfaceKind parse_surface_kind(std::string_view name) {
  for (auto kind : {SurfaceKind::plane, SurfaceKind::enneper,
                    SurfaceKind::helicoid, SurfaceKind::catenoid}) {
    if (name == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::argument,
              "unknown surface kind '" + std::string(name) + "'");
}

ImmersionSpec ImmersionSpec::enneper(int order) {
  if (order < 1) {
    throw Error(ErrorKind::argument,
                "Enneper order must be >= 1, got " + std::to_string(order));
  }
  return ImmersionSpec(SurfaceKind::enneper, order);
}

ImmersionSpec ImmersionSpec::make(SurfaceKind kind, std::optional<int> order) {
  if (kind == SurfaceKind::enneper) return enneper(order.value_or(1));
  if (order.has_value()) {
    throw Error(ErrorKind::argument, std::string(to_string(kind)) +
                                         " does not take an order parameter");
  }
  return ImmersionSpec(kind, 1);
}

std::string ImmersionSpec::name() const {
  std::string s(to_string(kind_));
  if (kind_ == SurfaceKind::enneper) s += "-k" + std::to_string(order_);
  return s;
}

JetSample evaluate(const ImmersionSpec& spec, Vec2 p) {
  require_finite(p);
  JetSample s;
  s.param = p;
  switch (spec.kind()) {
    case SurfaceKind::plane:
      s.position = {p.u, p.v, 0.0};
      s.d_u = {1.0, 0.0, 0.0};
      s.d_v = {0.0, 1.0, 0.0};
      break;
    case SurfaceKind::enneper: {
      const auto t = enneper_terms(spec.order(), p);
      s.position = {t.h1.real(), -t.h2.imag(), t.h3.real()};
      s.d_u = enneper_du(t);
      s.d_v = enneper_dv(t);
      break;
    }
    case SurfaceKind::helicoid: {
      const double sh = std::sinh(p.u), ch = std::cosh(p.u);
      const double c = std::cos(p.v), sn = std::sin(p.v);
      s.position = {sh * c, sh * sn, p.v};
      s.d_u = {ch * c, ch * sn, 0.0};
      s.d_v = {-sh * sn, sh * c, 1.0};
      break;
    }
    case SurfaceKind::catenoid: {
      const double sh = std::sinh(p.u), ch = std::cosh(p.u);
      const double c = std::cos(p.v), sn = std::sin(p.v);
      s.position = {ch * c, ch * sn, p.u};
      s.d_u = {sh * c, sh * sn, 1.0};
      s.d_v = {-ch * sn, ch * c, 0.0};
      break;
    }
  }
  s.lambda = norm2(s.d_u);
  return s;
}

Vec3 position(const ImmersionSpec& spec, Vec2 p) {
  require_finite(p);
  switch (spec.kind()) {
    case SurfaceKind::plane:
      return {p.u, p.v, 0.0};
    case SurfaceKind::enneper: {
      const cplx z{p.u, p.v};
      const int k = spec.order();
      const cplx zk = ipow(z, k);
      const cplx z2k1 = zk * zk * z;
      const double n = 2.0 * k + 1.0;
      return {(z - z2k1 / n).real(), -(z + z2k1 / n).imag(),
              (2.0 * zk * z / (k + 1.0)).real()};
    }
    case SurfaceKind::helicoid: {
      const double sh = std::sinh(p.u);
      return {sh * std::cos(p.v), sh * std::sin(p.v), p.v};
    }
    case SurfaceKind::catenoid: {
      const double ch = std::cosh(p.u);
      return {ch * std::cos(p.v), ch * std::sin(p.v), p.u};
    }
  }
  return {};
}

SecondJet second_derivatives(const ImmersionSpec& spec, Vec2 p) {
  require_finite(p);
  SecondJet j;
  switch (spec.kind()) {
    case SurfaceKind::plane:
      break;
    case SurfaceKind::enneper: {
      const auto t = enneper_terms(spec.order(), p);
      const cplx i{0.0, 1.0};
      // d_vv of Re(h) is Re(i^2 h''); of -Im(h) it is -Im(i^2 h'').
      const cplx ii = i * i;
      j.d_uu = {t.dd1.real(), -t.dd2.imag(), t.dd3.real()};
      j.d_uv = {(i * t.dd1).real(), -(i * t.dd2).imag(), (i * t.dd3).real()};
      j.d_vv = {(ii * t.dd1).real(), -(ii * t.dd2).imag(),
                (ii * t.dd3).real()};
      break;
    }
    case SurfaceKind::helicoid: {
      const double sh = std::sinh(p.u), ch = std::cosh(p.u);
      const double c = std::cos(p.v), sn = std::sin(p.v);
      j.d_uu = {sh * c, sh * sn, 0.0};
      j.d_uv = {-ch * sn, ch * c, 0.0};
      j.d_vv = {-sh * c, -sh * sn, 0.0};
      break;
    }
    case SurfaceKind::catenoid: {
      const double sh = std::sinh(p.u), ch = std::cosh(p.u);
      const double c = std::cos(p.v), sn = std::sin(p.v);
      j.d_uu = {ch * c, ch * sn, 0.0};
      j.d_uv = {-sh * sn, sh * c, 0.0};
      j.d_vv = {-ch * c, -ch * sn, 0.0};
      break;
    }
  }
  return j;
}

double conformal_defect(const ImmersionSpec& spec, Vec2 p) {
  const JetSample s = evaluate(spec, p);
  const double e = norm2(s.d_u), g = norm2(s.d_v), f = dot(s.d_u, s.d_v);
  return std::max(std::abs(e - g), std::abs(f)) / std::max(s.lambda, 1e-300);
}

double minimality_defect(const ImmersionSpec& spec, Vec2 p) {
  const SecondJet j = second_derivatives(spec, p);
  return norm(j.d_uu + j.d_vv);
}

double param_radius_for_ball(const ImmersionSpec& spec, double ambient_radius) {
  if (!(ambient_radius > 0.0) || !std::isfinite(ambient_radius)) {
    throw Error(ErrorKind::argument, "ball radius must be positive and finite");
  }
  constexpr int kAngles = 256;
  const double target = 1.1 * ambient_radius;

  auto min_on_boundary = [&](double rho) {
    double m = std::numeric_limits<double>::infinity();
    for (int a = 0; a < kAngles; ++a) {
      const double t = 2.0 * std::numbers::pi * a / kAngles;
      Vec2 p;
      if (spec.periodic_v()) {
        p = {a % 2 == 0 ? rho : -rho, t};  // both circles |u| = rho
      } else {
        p = {rho * std::cos(t), rho * std::sin(t)};
      }
      m = std::min(m, norm(position(spec, p)));
    }
    return m;
  };

  double lo = 0.0, hi = 1.0;
  while (!(min_on_boundary(hi) > target)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e150) {
      throw Error(ErrorKind::range, "parameter radius overflow for R = " +
                                        std::to_string(ambient_radius));
    }
  }
  if (!std::isfinite(min_on_boundary(hi))) {
    throw Error(ErrorKind::range, "immersion overflows at parameter radius " +
                                      std::to_string(hi));
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (min_on_boundary(mid) > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace minlab
