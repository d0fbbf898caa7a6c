#pragma once

// Shared generators and independent reference computations for the tests.
// Nothing here calls into the solver paths it is used to check.

#include "sphfermat/fermat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace sphfermat::support {

using Rng = std::mt19937_64;

inline UnitPoint random_unit(Rng &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = {n(rng), n(rng), n(rng)};
  } while (v.norm() < 1e-6);
  return UnitPoint(v);
}

/// Point at arc distance r from c in a uniformly random direction.
inline UnitPoint random_within(Rng &rng, const UnitPoint &c, double r) {
  const UnitPoint q = random_unit(rng);
  Eigen::Vector3d t = q.vec() - q.dot(c) * c.vec();
  if (t.norm() < 1e-9)
    t = c.vec().unitOrthogonal();
  t.normalize();
  return UnitPoint(std::cos(r) * c.vec() + std::sin(r) * t);
}

/// Nondegenerate triangle with every side in [min_side, pi/2].
inline GeodesicTriangle random_triangle(Rng &rng, double min_side = 0.05) {
  std::uniform_real_distribution<double> rad(0.0, std::numbers::pi / 4);
  for (;;) {
    const UnitPoint c = random_unit(rng);
    const UnitPoint a = random_within(rng, c, rad(rng));
    const UnitPoint b = random_within(rng, c, rad(rng));
    const UnitPoint d = random_within(rng, c, rad(rng));
    const double s12 = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
    const double s23 = std::acos(std::clamp(b.dot(d), -1.0, 1.0));
    const double s13 = std::acos(std::clamp(a.dot(d), -1.0, 1.0));
    if (std::min({s12, s23, s13}) < min_side ||
        std::max({s12, s23, s13}) > std::numbers::pi / 2)
      continue;
    // Skip slivers: the area (spherical excess) must not be negligible.
    const double vol = std::abs(a.vec().dot(b.vec().cross(d.vec())));
    if (vol < 1e-3)
      continue;
    return {a, b, d};
  }
}

inline Weights random_weights(Rng &rng, double lo = 1.0, double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng), u(rng)};
}

/// Uniform in [lo, hi]^3 restricted to w_i^2 < w_j^2 + w_k^2.
inline Weights random_octant_floating_weights(Rng &rng, double lo = 1.0,
                                              double hi = 10.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (a * a < b * b + c * c && b * b < a * a + c * c &&
        c * c < a * a + b * b)
      return {a, b, c};
  }
}

/// Orthonormal basis of the tangent plane at p.
inline std::pair<Eigen::Vector3d, Eigen::Vector3d>
tangent_frame(const UnitPoint &p) {
  const Eigen::Vector3d e1 = p.vec().unitOrthogonal();
  return {e1, p.vec().cross(e1)};
}

/// exp_p(h e) for a unit tangent e.
inline UnitPoint exp_map(const UnitPoint &p, const Eigen::Vector3d &e,
                         double h) {
  return UnitPoint(std::cos(h) * p.vec() + std::sin(h) * e);
}

/// Brute-force objective evaluation by acos of dot products.
inline double objective_acos(const GeodesicTriangle &tri, const Weights &w,
                             const UnitPoint &p) {
  double f = 0.0;
  for (int i = 0; i < 3; ++i)
    f += w[i] * std::acos(std::clamp(p.dot(tri.vertex(i)), -1.0, 1.0));
  return f;
}

} // namespace sphfermat::support
