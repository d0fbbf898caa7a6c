#include "sphfermat/sphere_core.hpp"
#include "sphfermat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sphfermat {

namespace {

Eigen::Vector3d normalized_or_throw(const Eigen::Vector3d &v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n == 0.0)
    throw OutOfRange("unit point: vector must be finite and nonzero");
  return v / n;
}

} // namespace

UnitPoint::UnitPoint(double x, double y, double z)
    : UnitPoint(Eigen::Vector3d(x, y, z)) {}

UnitPoint::UnitPoint(const Eigen::Vector3d &v) : v_(normalized_or_throw(v)) {}

UnitPoint to_point(const SphericalCoords &c) {
  return UnitPoint(std::cos(c.omega) * std::cos(c.phi),
                   std::cos(c.omega) * std::sin(c.phi), std::sin(c.omega));
}

SphericalCoords to_coords(const UnitPoint &p) {
  SphericalCoords c;
  c.omega = std::asin(std::clamp(p.z(), -1.0, 1.0));
  c.phi = std::atan2(p.y(), p.x());
  if (c.phi < 0.0)
    c.phi += 2.0 * std::numbers::pi;
  if (c.phi >= 2.0 * std::numbers::pi)
    c.phi = 0.0;
  return c;
}

double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

double geodesic_distance(const UnitPoint &p, const UnitPoint &q) {
  // Same value as acos(<p,q>), without the loss of precision at tiny arcs.
  return std::atan2(p.vec().cross(q.vec()).norm(), p.dot(q));
}

TangentVector unit_tangent(const UnitPoint &p, const UnitPoint &q) {
  const double c = p.dot(q);
  if (std::abs(c) >= 1.0 - kAntipodalTol)
    throw DegenerateDirection("unit_tangent: points are coincident or antipodal");
  Eigen::Vector3d d = q.vec() - c * p.vec();
  // Re-project to kill the residual normal component left by rounding.
  d -= d.dot(p.vec()) * p.vec();
  return TangentVector{p, d.normalized()};
}

UnitPoint point_on_geodesic(const UnitPoint &p, const UnitPoint &q, double s) {
  const double d = geodesic_distance(p, q);
  if (s == 0.0)
    return p;
  const TangentVector t = unit_tangent(p, q);
  if (!(s >= 0.0 && s <= d + 1e-15))
    throw OutOfRange("point_on_geodesic: arc length outside [0, d(p,q)]");
  return UnitPoint(std::cos(s) * p.vec() + std::sin(s) * t.direction);
}

double spherical_cosine_side(double b, double c, double alpha) {
  return safe_acos(std::cos(b) * std::cos(c) +
                   std::sin(b) * std::sin(c) * std::cos(alpha));
}

double tangent_angle(const Eigen::Vector3d &u, const Eigen::Vector3d &v) {
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

GeodesicTriangle::GeodesicTriangle(const UnitPoint &v1, const UnitPoint &v2,
                                   const UnitPoint &v3)
    : v_{v1, v2, v3} {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(v_[i].dot(v_[j])) >= 1.0 - kAntipodalTol)
        throw DegenerateTriangle(
            "geodesic triangle: vertices coincident or antipodal");
    }
  }
}

GeodesicTriangle GeodesicTriangle::octant() {
  return {UnitPoint(1, 0, 0), UnitPoint(0, 1, 0), UnitPoint(0, 0, 1)};
}

double GeodesicTriangle::s12() const { return geodesic_distance(v_[0], v_[1]); }
double GeodesicTriangle::s23() const { return geodesic_distance(v_[1], v_[2]); }
double GeodesicTriangle::s13() const { return geodesic_distance(v_[0], v_[2]); }

double GeodesicTriangle::angle(int i) const {
  const UnitPoint &p = v_[i];
  const UnitPoint &q = v_[(i + 1) % 3];
  const UnitPoint &r = v_[(i + 2) % 3];
  return tangent_angle(unit_tangent(p, q).direction,
                       unit_tangent(p, r).direction);
}

double sine_law_residual(const GeodesicTriangle &tri) {
  const std::array<double, 3> ratio = {
      std::sin(tri.s23()) / std::sin(tri.angle(0)),
      std::sin(tri.s13()) / std::sin(tri.angle(1)),
      std::sin(tri.s12()) / std::sin(tri.angle(2)),
  };
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      worst = std::max(worst, std::abs(ratio[i] - ratio[j]));
  return worst;
}

} // namespace sphfermat
