#include "sphfermat/plasticity.hpp"
#include "sphfermat/classifier.hpp"
#include "sphfermat/closed_form.hpp"
#include "sphfermat/errors.hpp"
#include "sphfermat/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace sphfermat {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kSideSlack = 1e-12;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Pairs (i, j) in equation order s12, s23, s13.
constexpr std::array<std::array<int, 2>, 3> kPairs = {{{0, 1}, {1, 2}, {0, 2}}};

std::array<double, 3> pair_cosines(const Weights &w) {
  const VertexAngles ang = vertex_angles_from_weights(w);
  return {std::cos(ang.a102), std::cos(ang.a203), std::cos(ang.a103)};
}

std::array<double, 3> target_cosines(const TriangleSides &t) {
  return {std::cos(t.s12), std::cos(t.s23), std::cos(t.s13)};
}

double predicted_cos(double di, double dj, double k) {
  return std::cos(di) * std::cos(dj) + std::sin(di) * std::sin(dj) * k;
}

std::array<double, 3> residuals_raw(const FermatDistances &a0,
                                    const Eigen::Vector3d &off,
                                    const std::array<double, 3> &k,
                                    const std::array<double, 3> &target_cos) {
  std::array<double, 3> r{};
  for (int e = 0; e < 3; ++e) {
    const auto [i, j] = kPairs[e];
    r[e] = predicted_cos(a0[i] - off[i], a0[j] - off[j], k[e]) - target_cos[e];
  }
  return r;
}

double max_abs(const std::array<double, 3> &r) {
  return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

void check_target(const TriangleSides &t) {
  for (double s : {t.s12, t.s23, t.s13}) {
    if (!(s > 0.0 && s <= kHalfPi + kSideSlack))
      throw OutOfRange("target sides must lie in (0, pi/2]");
  }
}

bool admissible(const FermatDistances &a0, const Eigen::Vector3d &off) {
  for (int i = 0; i < 3; ++i)
    if (!(off[i] >= -1e-12 && off[i] < a0[i]))
      return false;
  return true;
}

ShrinkOffsets to_offsets(const Eigen::Vector3d &v) {
  return {std::max(0.0, v[0]), std::max(0.0, v[1]), std::max(0.0, v[2])};
}

// ---- Newton ---------------------------------------------------------------

constexpr double kNewtonTol = 1e-12;
constexpr double kFdStep = 1e-7;
constexpr int kNewtonIters = 100;

struct NewtonRun {
  Eigen::Vector3d x;
  double residual;
  bool converged;
};

NewtonRun newton_from(const FermatDistances &a0, const std::array<double, 3> &k,
                      const std::array<double, 3> &tc, Eigen::Vector3d x) {
  auto eval = [&](const Eigen::Vector3d &v) {
    const auto r = residuals_raw(a0, v, k, tc);
    return Eigen::Vector3d(r[0], r[1], r[2]);
  };
  Eigen::Vector3d f = eval(x);
  double norm = f.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < kNewtonIters && norm >= kNewtonTol; ++iter) {
    Eigen::Matrix3d jac;
    for (int c = 0; c < 3; ++c) {
      Eigen::Vector3d hp = x, hm = x;
      hp[c] += kFdStep;
      hm[c] -= kFdStep;
      jac.col(c) = (eval(hp) - eval(hm)) / (2.0 * kFdStep);
    }
    const Eigen::Vector3d dx = jac.fullPivLu().solve(-f);
    if (!dx.allFinite())
      break;
    double step = 1.0;
    bool improved = false;
    for (int k2 = 0; k2 < 40; ++k2, step *= 0.5) {
      const Eigen::Vector3d xn = x + step * dx;
      const Eigen::Vector3d fn = eval(xn);
      const double nn = fn.lpNorm<Eigen::Infinity>();
      if (nn < norm) {
        x = xn;
        f = fn;
        norm = nn;
        improved = true;
        break;
      }
    }
    if (!improved)
      break;
  }
  return {x, norm, norm < kNewtonTol};
}

// Uniform shrink d_i = lambda a0i whose total side length matches the target.
Eigen::Vector3d uniform_shrink_guess(const FermatDistances &a0,
                                     const std::array<double, 3> &k,
                                     const TriangleSides &target) {
  const double goal = target.s12 + target.s23 + target.s13;
  auto total = [&](double lambda) {
    double s = 0.0;
    for (int e = 0; e < 3; ++e) {
      const auto [i, j] = kPairs[e];
      s += std::acos(std::clamp(
          predicted_cos(lambda * a0[i], lambda * a0[j], k[e]), -1.0, 1.0));
    }
    return s;
  };
  double lo = 0.0, hi = 1.0;
  if (total(hi) <= goal)
    return Eigen::Vector3d::Zero();
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) < goal ? lo : hi) = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  return {(1 - lambda) * a0[0], (1 - lambda) * a0[1], (1 - lambda) * a0[2]};
}

// ---- Weierstrass ----------------------------------------------------------

constexpr int kScanSamples = 2000;
constexpr double kBisectWidth = 1e-13;
constexpr double kAcceptResidual = 1e-10;

// Roots (ascending) of P cos x + Q sin x = R after t = tan(x/2):
// -(P + R) t^2 + 2 Q t + (P - R) = 0. NaN where not real.
std::array<double, 2> half_angle_roots(double p, double q, double r) {
  const double a = -(p + r);
  const double b = 2.0 * q;
  const double c = p - r;
  double disc = p * p + q * q - r * r;
  if (disc < 0.0) {
    if (disc > -1e-15)
      disc = 0.0;
    else
      return {kNan, kNan};
  }
  const double sq = 2.0 * std::sqrt(disc);
  if (a == 0.0) {
    if (b == 0.0)
      return {kNan, kNan};
    return {-c / b, kNan};
  }
  const double qq = -0.5 * (b + std::copysign(sq, b));
  double r1 = qq / a;
  double r2 = qq != 0.0 ? c / qq : r1;
  if (r1 > r2)
    std::swap(r1, r2);
  return {r1, r2};
}

// Solves the equation coupling the unknown offset x on arc A_x (distance ax)
// with the known offset y on arc A_y (distance ay), for t_x = tan(x/2).
std::array<double, 2> solve_half_angle(double ax, double ay, double t_y,
                                       double k, double target_cos) {
  const double den = 1.0 + t_y * t_y;
  const double cos_y = (1.0 - t_y * t_y) / den;
  const double sin_y = 2.0 * t_y / den;
  // cos(ay - y), sin(ay - y)
  const double cy = std::cos(ay) * cos_y + std::sin(ay) * sin_y;
  const double sy = std::sin(ay) * cos_y - std::cos(ay) * sin_y;
  const double p = std::cos(ax) * cy + std::sin(ax) * sy * k;
  const double q = std::sin(ax) * cy - std::cos(ax) * sy * k;
  return half_angle_roots(p, q, target_cos);
}

struct BranchEval {
  double t_a;
  double t_c;
  double g; // residual of the s13 equation; NaN if a branch is undefined
};

BranchEval eval_branch(const FermatDistances &a0, const std::array<double, 3> &k,
                       const std::array<double, 3> &tc, double t_b, int ba,
                       int bc) {
  const double t_a = solve_half_angle(a0[0], a0[1], t_b, k[0], tc[0])[ba];
  const double t_c = solve_half_angle(a0[2], a0[1], t_b, k[1], tc[1])[bc];
  if (!std::isfinite(t_a) || !std::isfinite(t_c))
    return {t_a, t_c, kNan};
  const Eigen::Vector3d off(2 * std::atan(t_a), 2 * std::atan(t_b),
                            2 * std::atan(t_c));
  return {t_a, t_c,
          predicted_cos(a0[0] - off[0], a0[2] - off[2], k[2]) - tc[2]};
}

} // namespace

HalfAngleTriple HalfAngleTriple::from_offsets(const ShrinkOffsets &off) {
  return {std::tan(off.a / 2), std::tan(off.b / 2), std::tan(off.c / 2)};
}

ShrinkOffsets HalfAngleTriple::to_offsets() const {
  return {2 * std::atan(t_a), 2 * std::atan(t_b), 2 * std::atan(t_c)};
}

void check_offsets(const FermatDistances &a0, const ShrinkOffsets &off) {
  for (int i = 0; i < 3; ++i) {
    if (!(off[i] >= 0.0))
      throw OffsetTooLarge("offsets must be non-negative");
    if (!(off[i] < a0[i]))
      throw OffsetTooLarge("offset " + std::to_string(i + 1) +
                           " reaches the Fermat-Torricelli point");
  }
}

GeodesicTriangle shrink_triangle(const GeodesicTriangle &tri, const Weights &w,
                                 const ShrinkOffsets &off,
                                 const UnitPoint &fermat_point) {
  if (!classify(tri, w).floating())
    throw WeightsNotFloating("shrink_triangle: weights are absorbed for this triangle");
  FermatDistances a0;
  for (int i = 0; i < 3; ++i)
    a0[i] = geodesic_distance(tri.vertex(i), fermat_point);
  check_offsets(a0, off);
  return {point_on_geodesic(tri.vertex(0), fermat_point, off.a),
          point_on_geodesic(tri.vertex(1), fermat_point, off.b),
          point_on_geodesic(tri.vertex(2), fermat_point, off.c)};
}

GeodesicTriangle shrink_triangle(const GeodesicTriangle &tri, const Weights &w,
                                 const ShrinkOffsets &off) {
  if (!classify(tri, w).floating())
    throw WeightsNotFloating("shrink_triangle: weights are absorbed for this triangle");
  return shrink_triangle(tri, w, off, solve(tri, w).point);
}

TriangleSides predicted_sides(const FermatDistances &a0,
                              const ShrinkOffsets &off, const Weights &w) {
  std::array<double, 3> d{};
  for (int i = 0; i < 3; ++i) {
    d[i] = a0[i] - off[i];
    if (!(d[i] > 0.0 && d[i] <= kHalfPi + kSideSlack))
      throw DomainError("predicted_sides: a0i - offset_i must lie in (0, pi/2]");
  }
  const auto k = pair_cosines(w);
  std::array<double, 3> s{};
  for (int e = 0; e < 3; ++e) {
    const auto [i, j] = kPairs[e];
    const double c = predicted_cos(d[i], d[j], k[e]);
    if (c > 1.0 + 1e-9 || c < -1.0 - 1e-9)
      throw DomainError("predicted_sides: cosine outside [-1, 1]");
    s[e] = safe_acos(c);
  }
  return {s[0], s[1], s[2]};
}

std::array<double, 3> side_residuals(const FermatDistances &a0,
                                     const ShrinkOffsets &off, const Weights &w,
                                     const TriangleSides &target) {
  return residuals_raw(a0, Eigen::Vector3d(off.a, off.b, off.c),
                       pair_cosines(w), target_cosines(target));
}

ShrinkOffsets invert_sides_newton(const TriangleSides &target, const Weights &w,
                                  const FermatDistances &a0) {
  check_target(target);
  const auto k = pair_cosines(w);
  const auto tc = target_cosines(target);

  std::vector<Eigen::Vector3d> starts{uniform_shrink_guess(a0, k, target)};
  for (double f : {0.1, 0.5, 0.9})
    starts.emplace_back(f * a0[0], f * a0[1], f * a0[2]);

  std::optional<NewtonRun> best;
  bool infeasible = false;
  for (const auto &x0 : starts) {
    const NewtonRun run = newton_from(a0, k, tc, x0);
    if (run.converged) {
      if (admissible(a0, run.x))
        return to_offsets(run.x);
      infeasible = true;
    }
    if (!best || run.residual < best->residual)
      best = run;
  }
  if (infeasible)
    throw InfeasibleTarget("invert_sides_newton: converged offsets leave [0, a0i)");
  throw NoConvergence("invert_sides_newton: residual stayed above 1e-12",
                      best->x, best->residual);
}

std::vector<WeierstrassSolution>
invert_sides_weierstrass(const TriangleSides &target, const Weights &w,
                         const FermatDistances &a0) {
  check_target(target);
  const auto k = pair_cosines(w);
  const auto tc = target_cosines(target);
  const double t_max = std::tan(a0[1] / 2);

  std::vector<WeierstrassSolution> found;
  std::ostringstream diag;

  auto accept = [&](double t_b, int ba, int bc) {
    const BranchEval e = eval_branch(a0, k, tc, t_b, ba, bc);
    if (!std::isfinite(e.g))
      return;
    const HalfAngleTriple t{e.t_a, t_b, e.t_c};
    const ShrinkOffsets raw = t.to_offsets();
    const Eigen::Vector3d v(raw.a, raw.b, raw.c);
    if (!admissible(a0, v))
      return;
    const double res = max_abs(residuals_raw(a0, v, k, tc));
    if (res >= kAcceptResidual)
      return;
    const ShrinkOffsets off = to_offsets(v);
    for (const auto &s : found) {
      if (std::abs(s.offsets.a - off.a) < 1e-9 &&
          std::abs(s.offsets.b - off.b) < 1e-9 &&
          std::abs(s.offsets.c - off.c) < 1e-9)
        return;
    }
    found.push_back({off, t, ba, bc, res});
  };

  for (int ba = 0; ba < 2; ++ba) {
    for (int bc = 0; bc < 2; ++bc) {
      int defined = 0, brackets = 0;
      double prev_t = kNan, prev_g = kNan;
      for (int s = 0; s < kScanSamples; ++s) {
        const double t_b = t_max * s / kScanSamples;
        const double g = eval_branch(a0, k, tc, t_b, ba, bc).g;
        if (std::isfinite(g)) {
          ++defined;
          if (std::abs(g) < kAcceptResidual * 1e-2)
            accept(t_b, ba, bc);
          if (std::isfinite(prev_g) && (prev_g < 0.0) != (g < 0.0)) {
            ++brackets;
            double lo = prev_t, hi = t_b, glo = prev_g;
            bool ok = true;
            while (hi - lo > kBisectWidth) {
              const double mid = 0.5 * (lo + hi);
              const double gm = eval_branch(a0, k, tc, mid, ba, bc).g;
              if (!std::isfinite(gm)) {
                ok = false;
                break;
              }
              if ((gm < 0.0) == (glo < 0.0)) {
                lo = mid;
                glo = gm;
              } else {
                hi = mid;
              }
            }
            if (ok)
              accept(0.5 * (lo + hi), ba, bc);
          }
        }
        prev_t = t_b;
        prev_g = g;
      }
      diag << "branch(" << ba << "," << bc << "): defined=" << defined
           << " brackets=" << brackets << "; ";
    }
  }

  if (found.empty())
    throw NoRealSolution("invert_sides_weierstrass: no admissible real root",
                         diag.str());
  std::sort(found.begin(), found.end(), [](const auto &x, const auto &y) {
    if (x.half_angles.t_b != y.half_angles.t_b)
      return x.half_angles.t_b < y.half_angles.t_b;
    return x.half_angles.t_a < y.half_angles.t_a;
  });
  return found;
}

} // namespace sphfermat
