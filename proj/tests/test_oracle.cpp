#include "sphfermat/classifier.hpp"
#include "sphfermat/closed_form.hpp"
#include "sphfermat/errors.hpp"
#include "sphfermat/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

using namespace sphfermat;
using sphfermat::support::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

// Central differences of the objective along two tangent directions.
Eigen::Vector3d fd_gradient(const GeodesicTriangle &t, const Weights &w,
                            const UnitPoint &p, double h) {
  const auto [e1, e2] = support::tangent_frame(p);
  auto deriv = [&](const Eigen::Vector3d &e) {
    return (support::objective_acos(t, w, support::exp_map(p, e, h)) -
            support::objective_acos(t, w, support::exp_map(p, e, -h))) /
           (2 * h);
  };
  return deriv(e1) * e1 + deriv(e2) * e2;
}

} // namespace

TEST(FibonacciLattice, CoversSphereDeterministically) {
  const auto a = fibonacci_lattice(1000);
  const auto b = fibonacci_lattice(1000);
  ASSERT_EQ(a.size(), 1000u);
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(a[i].vec(), b[i].vec());
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto &p : a)
    mean += p.vec();
  EXPECT_LT((mean / 1000).norm(), 1e-3);
}

TEST(OracleOptions, Validation) {
  OracleOptions o;
  EXPECT_NO_THROW(o.validate());
  o.scan_points = 11;
  EXPECT_THROW(o.validate(), OutOfRange);
  o = {};
  o.tol_grad = 0;
  EXPECT_THROW(o.validate(), OutOfRange);
}

TEST(Minimize, EqualWeightsOctant) {
  const FermatResult r = minimize(GeodesicTriangle::octant(), {1, 1, 1});
  EXPECT_TRUE(r.case_label.is_interior());
  const UnitPoint expected(1, 1, 1);
  EXPECT_LT(geodesic_distance(r.point, expected), 1e-6);
  EXPECT_NEAR(r.objective, 2.8659498543735278, 1e-10);
  EXPECT_LT(r.stationarity_residual, 1e-9);
}

TEST(Minimize, DominantWeightAbsorbed) {
  const FermatResult r = minimize(GeodesicTriangle::octant(), {1, 1, 10});
  EXPECT_EQ(r.case_label, CaseLabel::absorbed_at(3));
  EXPECT_EQ(r.point.vec(), Eigen::Vector3d(0, 0, 1));
  EXPECT_NEAR(r.objective, kPi, 1e-15);
}

TEST(Minimize, BoundaryTripleAbsorbed) {
  const FermatResult r = minimize(GeodesicTriangle::octant(), {3, 4, 5});
  EXPECT_EQ(r.case_label, CaseLabel::absorbed_at(3));
}

TEST(Minimize, MatchesClosedForm) {
  const FermatResult r = minimize(GeodesicTriangle::octant(), {4, 5, 6});
  EXPECT_LT(geodesic_distance(r.point, solve_octant({4, 5, 6}).point), 1e-5);
}

TEST(Minimize, InteriorCloseToVertex) {
  // sqrt(1 + 1) barely exceeds 1.41: the minimizer hugs A3.
  const Weights w(1, 1, 1.41);
  const FermatResult r = minimize(GeodesicTriangle::octant(), w);
  EXPECT_TRUE(r.case_label.is_interior());
  EXPECT_LT(geodesic_distance(r.point, solve_octant(w).point), 1e-8);
}

TEST(Minimize, EscapesVertexWhenMinimizerIsClose) {
  // Interior minimizers within a few 1e-4 rad of a vertex; a line search from
  // the lattice seed can land inside the vertex snap radius.
  struct Case {
    std::array<Eigen::Vector3d, 3> v;
    Weights w;
    int vertex;
  };
  const Case cases[] = {
      {{Eigen::Vector3d(0.48923674310142251, -0.76426960534479749, -0.42016589526711989),
        Eigen::Vector3d(-0.3924720652276138, -0.22412436274540221, -0.89203920768088396),
        Eigen::Vector3d(-0.43234736647234118, -0.63777921822504524, -0.63742719074783849)},
       {5.2311281750391521, 6.3298046099071579, 6.8201868023569387},
       2},
      {{Eigen::Vector3d(0.83666738623531922, -0.17491532965936396, 0.51903016507744049),
        Eigen::Vector3d(0.97219905555146846, -0.16991442364170645, 0.16111512971580128),
        Eigen::Vector3d(0.97548400404760116, -0.22005082433590639, -0.0029313062528180667)},
       {8.8923740317415323, 3.1339915559500828, 9.0885448897048402},
       1},
  };
  for (const Case &c : cases) {
    const GeodesicTriangle t(UnitPoint(c.v[0]), UnitPoint(c.v[1]), UnitPoint(c.v[2]));
    const FermatResult r = minimize(t, c.w);
    EXPECT_TRUE(r.case_label.is_interior());
    EXPECT_LT(r.objective, objective(t, c.w, t.vertex(c.vertex)));
    const double d = geodesic_distance(r.point, t.vertex(c.vertex));
    EXPECT_GT(d, 1e-4);
    EXPECT_LT(d, 1e-2);
    EXPECT_LT(r.stationarity_residual, 1e-9);
  }
}

TEST(Minimize, DeterministicAndDominatesCandidates) {
  Rng rng(61);
  OracleOptions opts;
  opts.scan_points = 2000;
  for (int n = 0; n < 50; ++n) {
    const GeodesicTriangle t = support::random_triangle(rng);
    const Weights w = support::random_weights(rng);
    const FermatResult a = minimize(t, w, opts);
    const FermatResult b = minimize(t, w, opts);
    EXPECT_EQ(a.point.vec(), b.point.vec());
    for (const auto &p : fibonacci_lattice(opts.scan_points))
      EXPECT_LE(a.objective, objective(t, w, p) + 1e-12);
    for (const auto &v : t.vertices())
      EXPECT_LE(a.objective, objective(t, w, v) + 1e-12);
    if (a.case_label.is_interior()) {
      EXPECT_LT(a.stationarity_residual, opts.tol_grad * 10);
    }
  }
}

TEST(Gradient, StationaryAtCentroid) {
  EXPECT_LT(gradient(GeodesicTriangle::octant(), {1, 1, 1}, UnitPoint(1, 1, 1))
                .norm(),
            1e-10);
}

TEST(Gradient, SymmetryPlane) {
  const auto oct = GeodesicTriangle::octant();
  Rng rng(67);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int n = 0; n < 100; ++n) {
    const UnitPoint p(u(rng), 0.0, u(rng) - 0.5);
    const UnitPoint q(p.x(), p.x(), p.z()); // on x = y
    const Eigen::Vector3d g =
        gradient(oct, {1, 1, 1 + 4 * u(rng)}, q).direction;
    EXPECT_NEAR(g.x(), g.y(), 1e-12);
  }
}

TEST(Gradient, NormEqualsStationarityResidual) {
  Rng rng(71);
  for (int n = 0; n < 200; ++n) {
    const GeodesicTriangle t = support::random_triangle(rng);
    const Weights w = support::random_weights(rng);
    const UnitPoint p = support::random_unit(rng);
    EXPECT_NEAR(gradient(t, w, p).norm(), stationarity_residual(t, w, p), 1e-12);
  }
}

TEST(Gradient, MatchesFiniteDifferences) {
  Rng rng(73);
  int checked = 0;
  while (checked < 100) {
    const GeodesicTriangle t = support::random_triangle(rng);
    const Weights w = support::random_weights(rng);
    const UnitPoint p = support::random_unit(rng);
    bool far = true;
    for (const auto &v : t.vertices())
      far = far && geodesic_distance(p, v) > 0.05 &&
            geodesic_distance(p, v) < kPi - 0.05;
    if (!far)
      continue;
    ++checked;
    const Eigen::Vector3d g = gradient(t, w, p).direction;
    const Eigen::Vector3d fd = fd_gradient(t, w, p, 1e-6);
    EXPECT_LT((g - fd).norm() / g.norm(), 1e-5);
  }
}

TEST(Gradient, RejectsVertex) {
  EXPECT_THROW(gradient(GeodesicTriangle::octant(), {1, 1, 1}, UnitPoint(1, 0, 0)),
               DegenerateDirection);
}

TEST(GridScan, SizeAndOrder) {
  const auto oct = GeodesicTriangle::octant();
  const auto rows = grid_scan(oct, {1, 1, 1}, 2);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].omega, rows[1].omega);
  EXPECT_LT(rows[1].omega, rows[2].omega);
  EXPECT_EQ(rows[0].phi, 0.0);
  EXPECT_NEAR(rows[1].phi, kPi, 1e-15);
  EXPECT_THROW(grid_scan(oct, {1, 1, 1}, 1), OutOfRange);
}

TEST(GridScan, MinimumNearCentroid) {
  const auto oct = GeodesicTriangle::octant();
  const Weights w(1, 1, 1);
  const auto rows = grid_scan(oct, w, 1000);
  ASSERT_EQ(rows.size(), 1000000u);
  const GridRow *best = &rows[0];
  for (const auto &r : rows)
    if (r.objective < best->objective)
      best = &r;
  const double pi = kPi;
  EXPECT_NEAR(best->omega, std::acos(std::sqrt(2.0 / 3.0)), pi / 999);
  EXPECT_NEAR(best->phi, pi / 4, 2 * pi / 1000);
  const double fmin = minimize(oct, w).objective;
  for (const auto &r : rows)
    ASSERT_GE(r.objective, fmin - 1e-12);
}
