#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "minlab/vec.hpp"

namespace minlab {

enum class SurfaceKind { plane, enneper, helicoid, catenoid };

std::string_view to_string(SurfaceKind kind) noexcept;
SurfaceKind parse_surface_kind(std::string_view name);

/// A closed-form conformal minimal immersion F : (u, v) -> R^3.
///
/// Enneper surfaces carry an order k >= 1 (Weierstrass data g = z^k,
/// f = 2); the other kinds take no order. The catenoid chart is periodic
/// in v with period 2*pi and is the only non-disk kind.
class ImmersionSpec {
 public:
  static ImmersionSpec plane() { return ImmersionSpec(SurfaceKind::plane, 1); }
  static ImmersionSpec enneper(int order = 1);
  static ImmersionSpec helicoid() {
    return ImmersionSpec(SurfaceKind::helicoid, 1);
  }
  static ImmersionSpec catenoid() {
    return ImmersionSpec(SurfaceKind::catenoid, 1);
  }

  // Validating factory: an order is accepted only for Enneper.
  static ImmersionSpec make(SurfaceKind kind, std::optional<int> order = std::nullopt);

  SurfaceKind kind() const noexcept { return kind_; }
  int order() const noexcept { return order_; }
  bool periodic_v() const noexcept { return kind_ == SurfaceKind::catenoid; }
  bool is_disk() const noexcept { return !periodic_v(); }

  std::string name() const;

  friend bool operator==(const ImmersionSpec&, const ImmersionSpec&) = default;

 private:
  ImmersionSpec(SurfaceKind kind, int order) : kind_(kind), order_(order) {}

  SurfaceKind kind_;
  int order_;
};

struct JetSample {
  Vec2 param;
  Vec3 position;
  Vec3 d_u;
  Vec3 d_v;
  double lambda = 0.0;  // |d_u|^2, the conformal factor
};

struct SecondJet {
  Vec3 d_uu;
  Vec3 d_uv;
  Vec3 d_vv;
};

// Position and analytic first derivatives. Throws ErrorKind::domain on a
// non-finite parameter.
JetSample evaluate(const ImmersionSpec& spec, Vec2 param);

// Position only; cheaper than evaluate().
Vec3 position(const ImmersionSpec& spec, Vec2 param);

SecondJet second_derivatives(const ImmersionSpec& spec, Vec2 param);

// max(| |F_u|^2 - |F_v|^2 |, |F_u . F_v|) / max(lambda, 1e-300)
double conformal_defect(const ImmersionSpec& spec, Vec2 param);

// |F_uu + F_vv|; zero exactly when F is minimal in conformal coordinates.
double minimality_defect(const ImmersionSpec& spec, Vec2 param);

/// Parameter radius rho whose boundary curve stays outside B_{1.1 R}.
///
/// The boundary curve is the circle |z| = rho, except for the catenoid where
/// it is the pair of circles |u| = rho. The minimum of |F| over 256 boundary
/// samples is driven above 1.1 R by doubling then bisection. Throws
/// ErrorKind::range when rho or |F| leaves the double range.
double param_radius_for_ball(const ImmersionSpec& spec, double ambient_radius);

}  // namespace minlab
