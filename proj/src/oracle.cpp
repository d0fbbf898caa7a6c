#include "sphfermat/oracle.hpp"
#include "sphfermat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace sphfermat {

namespace {

constexpr double kArmijoC = 1e-4;
constexpr double kBacktrack = 0.5;
constexpr int kMaxBacktracks = 80;
constexpr double kGradientVertexTol = 1e-9;
constexpr int kEscapeDirections = 2048;
constexpr double kEscapeRadii[] = {1e-5, 1e-4, 1e-3, 1e-2};
constexpr int kMaxEscapes = 4;

struct DescentOutcome {
  UnitPoint point;
  double value;
  double grad_norm;
  bool converged;
  std::optional<int> near_vertex; // zero-based
};

std::optional<int> nearest_vertex_within(const GeodesicTriangle &tri,
                                         const UnitPoint &p, double radius) {
  for (int i = 0; i < 3; ++i)
    if (geodesic_distance(p, tri.vertex(i)) < radius)
      return i;
  return std::nullopt;
}

// Riemannian Hessian of sum_i w_i d(p, A_i) restricted to the tangent basis
// (e1, e2): Hess d = cot(d) (P - u u^T), with u the unit tangent toward A.
Eigen::Matrix2d hessian_2d(const GeodesicTriangle &tri, const Weights &w,
                           const UnitPoint &p, const Eigen::Vector3d &e1,
                           const Eigen::Vector3d &e2) {
  Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d &a = tri.vertex(i).vec();
    const double d = geodesic_distance(p, tri.vertex(i));
    Eigen::Vector3d u = a - p.vec().dot(a) * p.vec();
    u.normalize();
    const Eigen::Vector2d u2(u.dot(e1), u.dot(e2));
    h += w[i] / std::tan(d) *
         (Eigen::Matrix2d::Identity() - u2 * u2.transpose());
  }
  return h;
}

void tangent_basis(const UnitPoint &p, Eigen::Vector3d &e1,
                   Eigen::Vector3d &e2) {
  const Eigen::Vector3d &n = p.vec();
  const Eigen::Vector3d axis = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX()
                                                     : Eigen::Vector3d::UnitY();
  e1 = (axis - axis.dot(n) * n).normalized();
  e2 = n.cross(e1);
}

// Descent direction: the Newton step when the Hessian is positive definite,
// otherwise the negative gradient. Both are capped at step_init of arc.
Eigen::Vector3d descent_direction(const GeodesicTriangle &tri, const Weights &w,
                                  const UnitPoint &p, const Eigen::Vector3d &g,
                                  double step_init, bool &newton) {
  Eigen::Vector3d e1, e2;
  tangent_basis(p, e1, e2);
  const Eigen::Matrix2d h = hessian_2d(tri, w, p, e1, e2);
  const Eigen::Vector2d g2(g.dot(e1), g.dot(e2));
  Eigen::Vector3d dir;
  newton = false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(h);
  if (eig.info() == Eigen::Success &&
      eig.eigenvalues().minCoeff() > 1e-12 * std::max(1.0, h.trace())) {
    const Eigen::Vector2d v2 = -h.inverse() * g2;
    dir = v2.x() * e1 + v2.y() * e2;
    newton = dir.allFinite() && dir.dot(g) < 0.0;
  }
  if (!newton)
    dir = -g;
  const double len = dir.norm();
  if (len > step_init)
    dir *= step_init / len;
  return dir;
}

DescentOutcome descend(const GeodesicTriangle &tri, const Weights &w,
                       UnitPoint p, const OracleOptions &opts) {
  const double snap = std::max(opts.vertex_snap, kGradientVertexTol);
  double f = objective(tri, w, p);

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (auto v = nearest_vertex_within(tri, p, snap))
      return {p, f, 0.0, false, v};

    const Eigen::Vector3d g = gradient(tri, w, p).direction;
    const double gn = g.norm();
    if (gn < opts.tol_grad)
      return {p, f, gn, true, std::nullopt};

    bool newton = false;
    const Eigen::Vector3d dir =
        descent_direction(tri, w, p, g, opts.step_init, newton);
    const double slope = g.dot(dir);
    // Near the minimizer the Armijo decrease drops below the rounding noise
    // of f; a full Newton step is then accepted if it shrinks the gradient.
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(f));

    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k < kMaxBacktracks; ++k, t *= kBacktrack) {
      const UnitPoint trial(p.vec() + t * dir);
      const double ft = objective(tri, w, trial);
      bool ok = ft < f && ft <= f + kArmijoC * t * slope;
      if (!ok && newton && k == 0 && -slope < noise && ft <= f + noise &&
          !nearest_vertex_within(tri, trial, kGradientVertexTol))
        ok = gradient(tri, w, trial).norm() < gn;
      if (ok) {
        p = trial;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      return {p, f, gn, false, nearest_vertex_within(tri, p, snap)};
  }

  double gn = 0.0;
  std::optional<int> v = nearest_vertex_within(tri, p, snap);
  if (!v)
    gn = gradient(tri, w, p).norm();
  return {p, f, gn, gn < opts.tol_grad && !v, v};
}

// Derivative-free probe of small rings around vertex i. Returns the best ring
// point if it beats the vertex by more than rounding noise.
std::optional<UnitPoint> escape_probe(const GeodesicTriangle &tri,
                                      const Weights &w, int i) {
  const UnitPoint &v = tri.vertex(i);
  const double fv = objective(tri, w, v);
  const double noise =
      8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, fv);
  Eigen::Vector3d e1, e2;
  tangent_basis(v, e1, e2);
  std::optional<UnitPoint> best;
  double best_f = fv - noise;
  for (double r : kEscapeRadii) {
    for (int k = 0; k < kEscapeDirections; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / kEscapeDirections;
      const Eigen::Vector3d e = std::cos(theta) * e1 + std::sin(theta) * e2;
      const UnitPoint q(std::cos(r) * v.vec() + std::sin(r) * e);
      const double fq = objective(tri, w, q);
      if (fq < best_f) {
        best_f = fq;
        best = q;
      }
    }
  }
  return best;
}

// Vertex that beats (or ties within noise) the descent result, if any.
int winning_vertex(const GeodesicTriangle &tri, const Weights &w,
                   const DescentOutcome &out) {
  // Ties within rounding noise go to the vertex.
  const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(out.value));
  int best_vertex = -1;
  double best_vertex_f = out.value + noise;
  for (int i = 0; i < 3; ++i) {
    const double fv = objective(tri, w, tri.vertex(i));
    if (fv <= best_vertex_f) {
      best_vertex_f = fv;
      best_vertex = i;
    }
  }
  if (out.near_vertex && best_vertex < 0)
    best_vertex = *out.near_vertex;
  return best_vertex;
}

} // namespace

void OracleOptions::validate() const {
  if (scan_points < 12)
    throw OutOfRange("oracle: scan_points must be >= 12");
  if (max_iters <= 0)
    throw OutOfRange("oracle: max_iters must be positive");
  if (!(step_init > 0.0 && tol_grad > 0.0 && vertex_snap > 0.0))
    throw OutOfRange("oracle: tolerances must be strictly positive");
}

std::vector<UnitPoint> fibonacci_lattice(int n) {
  std::vector<UnitPoint> pts;
  pts.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = golden * k;
    pts.emplace_back(r * std::cos(theta), r * std::sin(theta), z);
  }
  return pts;
}

TangentVector gradient(const GeodesicTriangle &tri, const Weights &w,
                       const UnitPoint &p) {
  Eigen::Vector3d g = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d &a = tri.vertex(i).vec();
    if (geodesic_distance(p, tri.vertex(i)) < kGradientVertexTol)
      throw DegenerateDirection("gradient: point coincides with vertex " +
                                std::to_string(i + 1));
    // Normalizing the projection directly keeps full relative accuracy when
    // p is close to a vertex; dividing by sin(acos(.)) does not.
    const Eigen::Vector3d u = a - p.vec().dot(a) * p.vec();
    g -= w[i] * u.normalized();
  }
  g -= g.dot(p.vec()) * p.vec();
  return {p, g};
}

FermatResult minimize(const GeodesicTriangle &tri, const Weights &w,
                      const OracleOptions &opts) {
  opts.validate();

  // Best lattice seed; ties resolve to the lowest index.
  const auto lattice = fibonacci_lattice(opts.scan_points);
  std::size_t best = 0;
  double best_f = objective(tri, w, lattice[0]);
  for (std::size_t k = 1; k < lattice.size(); ++k) {
    const double f = objective(tri, w, lattice[k]);
    if (f < best_f) {
      best_f = f;
      best = k;
    }
  }

  UnitPoint seed = lattice[best];
  // A lattice point can land on a vertex; nudge it off so the gradient exists.
  if (nearest_vertex_within(tri, seed, kGradientVertexTol)) {
    const int i = (best + 1) % lattice.size();
    seed = lattice[i];
  }
  DescentOutcome out = descend(tri, w, seed, opts);

  // Vertices are candidates in their own right; the objective is not smooth
  // there, so descent alone cannot certify them. A line search can also land
  // inside the snap radius of a vertex that is not the minimizer, so a winning
  // vertex is probed on small rings and descent restarts from any better point.
  int best_vertex = winning_vertex(tri, w, out);
  for (int n = 0; n < kMaxEscapes && best_vertex >= 0; ++n) {
    const std::optional<UnitPoint> q = escape_probe(tri, w, best_vertex);
    if (!q)
      break;
    out = descend(tri, w, *q, opts);
    best_vertex = winning_vertex(tri, w, out);
  }

  if (best_vertex >= 0)
    return FermatResult::make(tri, w, tri.vertex(best_vertex),
                              CaseLabel::absorbed_at(best_vertex + 1));
  if (!out.converged)
  {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "oracle: descent did not reach gradient norm %.3g (got %.3g)",
                  opts.tol_grad, out.grad_norm);
    throw NoConvergence(msg, out.point.vec(), out.grad_norm);
  }
  return FermatResult::make(tri, w, out.point, CaseLabel::interior());
}

std::vector<GridRow> grid_scan(const GeodesicTriangle &tri, const Weights &w,
                               int resolution) {
  if (resolution < 2)
    throw OutOfRange("grid_scan: resolution must be >= 2");
  std::vector<GridRow> rows;
  rows.reserve(static_cast<std::size_t>(resolution) * resolution);
  const double pi = std::numbers::pi;
  for (int i = 0; i < resolution; ++i) {
    const double omega = -pi / 2 + pi * i / (resolution - 1);
    for (int j = 0; j < resolution; ++j) {
      const double phi = 2.0 * pi * j / resolution;
      rows.push_back({omega, phi, objective(tri, w, to_point({omega, phi}))});
    }
  }
  return rows;
}

} // namespace sphfermat
