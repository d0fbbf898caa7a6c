#include "sphfermat/classifier.hpp"
#include "sphfermat/closed_form.hpp"
#include "sphfermat/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sphfermat;
using sphfermat::support::Rng;

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);
} // namespace

TEST(Objective, Examples) {
  const auto oct = GeodesicTriangle::octant();
  const Weights ones(1, 1, 1);
  EXPECT_NEAR(objective(oct, ones, UnitPoint(1, 0, 0)), kPi, 1e-15);
  EXPECT_NEAR(objective(oct, ones, UnitPoint(1, 1, 1)), 2.8659498543735278,
              1e-14);
  EXPECT_THROW(Weights(0, 1, 1), OutOfRange);
  EXPECT_THROW(Weights(1, -2, 1), OutOfRange);
}

TEST(VertexAngles, Examples) {
  const VertexAngles eq = vertex_angles_from_weights({1, 1, 1});
  EXPECT_NEAR(eq.a102, 2 * kPi / 3, 1e-15);
  EXPECT_NEAR(eq.a203, 2 * kPi / 3, 1e-15);
  EXPECT_NEAR(eq.a103, 2 * kPi / 3, 1e-15);

  // 3-4-5: cos a102 = (25-9-16)/24 = 0, cos a103 = (16-9-25)/30 = -0.6,
  // cos a203 = (9-16-25)/40 = -0.8.
  const VertexAngles t = vertex_angles_from_weights({3, 4, 5});
  EXPECT_NEAR(t.a102, kPi / 2, 1e-15);
  EXPECT_NEAR(std::cos(t.a103), -0.6, 1e-15);
  EXPECT_NEAR(std::cos(t.a203), -0.8, 1e-15);
  EXPECT_NEAR(t.sum(), 2 * kPi, 1e-14);

  // 4-5-6: (36-16-25)/40, (25-16-36)/48, (16-25-36)/60.
  const VertexAngles f = vertex_angles_from_weights({4, 5, 6});
  EXPECT_NEAR(std::cos(f.a102), -0.125, 1e-15);
  EXPECT_NEAR(std::cos(f.a103), -0.5625, 1e-15);
  EXPECT_NEAR(std::cos(f.a203), -0.75, 1e-15);
}

TEST(VertexAngles, RejectsTriangleInequalityViolation) {
  EXPECT_THROW(vertex_angles_from_weights({1, 1, 3}), WeightsNotFloating);
  EXPECT_NO_THROW(vertex_angles_from_weights({1, 1, 2})); // boundary
}

TEST(VertexAngles, SumIsFullTurn) {
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  int checked = 0;
  while (checked < 10000) {
    const double a = u(rng), b = u(rng), c = u(rng);
    if (a >= b + c || b >= a + c || c >= a + b)
      continue;
    ++checked;
    EXPECT_NEAR(vertex_angles_from_weights({a, b, c}).sum(), 2 * kPi, 1e-10);
  }
}

TEST(SolveOctantPaper, EqualWeights) {
  const SphericalCoords c = solve_octant_paper({1, 1, 1});
  EXPECT_NEAR(c.phi, kPi / 4, 1e-15);
  EXPECT_NEAR(c.omega, std::acos(std::sqrt(2.0 / 3.0)), 1e-15);
  const UnitPoint p = to_point(c);
  EXPECT_NEAR(p.x(), kInvSqrt3, 1e-15);
  EXPECT_NEAR(p.z(), kInvSqrt3, 1e-15);
}

TEST(SolveOctantPaper, UnequalWeights) {
  const SphericalCoords c = solve_octant_paper({4, 5, 6});
  // cos^2 phi = 27/72
  EXPECT_NEAR(c.phi, 0.91173829096848764, 1e-15);
  // Printed omega radicand 0.125 / (sin a102 sin a103) = 16/105.
  EXPECT_NEAR(std::pow(std::cos(c.omega), 2), 16.0 / 105.0, 1e-15);
  EXPECT_NEAR(c.omega, 1.1697737119448172, 1e-14);
}

TEST(SolveOctantPaper, Errors) {
  EXPECT_THROW(solve_octant_paper({3, 4, 5}), WeightsNotFloating);
  EXPECT_THROW(solve_octant_paper({1, 1, 10}), WeightsNotFloating);
}

TEST(SolveOctant, EqualWeights) {
  const FermatResult r = solve_octant({1, 1, 1});
  EXPECT_TRUE(r.case_label.is_interior());
  EXPECT_NEAR(r.point.x(), kInvSqrt3, 1e-15);
  EXPECT_NEAR(r.point.y(), kInvSqrt3, 1e-15);
  EXPECT_NEAR(r.point.z(), kInvSqrt3, 1e-15);
  EXPECT_NEAR(r.coords.phi, kPi / 4, 1e-15);
  EXPECT_NEAR(r.coords.omega, std::acos(std::sqrt(2.0 / 3.0)), 1e-15);
  EXPECT_NEAR(r.objective, 2.8659498543735278, 1e-14);
}

TEST(SolveOctant, FourFiveSix) {
  // c = (0.75, 0.5625, 0.125); u^2 = (3/32, 1/6, 27/8); x^2 = u^2 / (1+u^2).
  const FermatResult r = solve_octant({4, 5, 6});
  EXPECT_NEAR(r.point.x() * r.point.x(), 3.0 / 35.0, 1e-15);
  EXPECT_NEAR(r.point.y() * r.point.y(), 5.0 / 35.0, 1e-15);
  EXPECT_NEAR(r.point.z() * r.point.z(), 27.0 / 35.0, 1e-15);
  EXPECT_NEAR(r.point.x(), 0.292770, 1e-6);
  EXPECT_NEAR(r.point.y(), 0.377964, 1e-6);
  EXPECT_NEAR(r.point.z(), 0.878310, 1e-6);
  EXPECT_NEAR(r.coords.omega, 1.0723158896574636, 1e-14);
  EXPECT_LT(r.stationarity_residual, 1e-8);
  double f = 0;
  for (int i = 0; i < 3; ++i)
    f += Weights(4, 5, 6)[i] * r.distances[i];
  EXPECT_NEAR(r.objective, f, 1e-12);
}

TEST(SolveOctant, BoundaryAndAbsorbedRejected) {
  EXPECT_THROW(solve_octant({3, 4, 5}), WeightsNotFloating);
  EXPECT_THROW(solve_octant({2, 3, 4}), WeightsNotFloating);
  EXPECT_THROW(solve_octant({1, 1, 10}), WeightsNotFloating);
  EXPECT_EQ(classify(GeodesicTriangle::octant(), {3, 4, 5}).label,
            CaseLabel::absorbed_at(3));
}

TEST(PhiResidual, Examples) {
  EXPECT_NEAR(theorem2_phi_residual({1, 1, 1}), 0.0, 1e-12);
  EXPECT_NEAR(theorem2_phi_residual({4, 5, 6}), 0.0, 1e-12);
  EXPECT_LT(theorem2_phi_residual({2, 3, 3.5}), 1e-12);
}

TEST(SolveOctant, ScaleInvariance) {
  Rng rng(19);
  std::uniform_real_distribution<double> lam(0.01, 100.0);
  for (int i = 0; i < 500; ++i) {
    const Weights w = support::random_octant_floating_weights(rng);
    const FermatResult a = solve_octant(w);
    const FermatResult b = solve_octant(w.scaled(lam(rng)));
    EXPECT_NEAR((a.point.vec() - b.point.vec()).norm(), 0.0, 1e-12);
  }
}

TEST(SolveOctant, StationarityAndAngles) {
  Rng rng(23);
  const auto oct = GeodesicTriangle::octant();
  for (int i = 0; i < 500; ++i) {
    const Weights w = support::random_octant_floating_weights(rng);
    const FermatResult r = solve_octant(w);
    EXPECT_LT(stationarity_residual(oct, w, r.point), 1e-8);

    const VertexAngles expected = vertex_angles_from_weights(w);
    auto tangent = [&](int i) {
      return unit_tangent(r.point, oct.vertex(i)).direction;
    };
    EXPECT_NEAR(tangent_angle(tangent(0), tangent(1)), expected.a102, 1e-9);
    EXPECT_NEAR(tangent_angle(tangent(1), tangent(2)), expected.a203, 1e-9);
    EXPECT_NEAR(tangent_angle(tangent(0), tangent(2)), expected.a103, 1e-9);
  }
}

TEST(SolveOctant, CotangentProductsHold) {
  // Closed-form relation from the right-angle sides: cot d_i cot d_j equals
  // -cos(alpha_i0j).
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const Weights w = support::random_octant_floating_weights(rng);
    const FermatResult r = solve_octant(w);
    const VertexAngles a = vertex_angles_from_weights(w);
    auto cot = [](double x) { return std::cos(x) / std::sin(x); };
    const auto &d = r.distances;
    EXPECT_NEAR(cot(d[0]) * cot(d[1]), -std::cos(a.a102), 1e-12);
    EXPECT_NEAR(cot(d[1]) * cot(d[2]), -std::cos(a.a203), 1e-12);
    EXPECT_NEAR(cot(d[0]) * cot(d[2]), -std::cos(a.a103), 1e-12);
  }
}

TEST(PublishedDerivation, SineLawRelationsAtClosedFormPoint) {
  // Residual checks of the intermediate sine-law identities in the published
  // derivation, evaluated at the closed-form point (test-only).
  Rng rng(31);
  const auto oct = GeodesicTriangle::octant();
  for (int i = 0; i < 200; ++i) {
    const Weights w = support::random_octant_floating_weights(rng);
    const FermatResult r = solve_octant(w);
    const VertexAngles a = vertex_angles_from_weights(w);
    const double om = r.coords.omega, ph = r.coords.phi;
    // Orthogonal-projection relations.
    EXPECT_NEAR(std::cos(r.distances[2]), std::sin(om), 1e-12);
    EXPECT_NEAR(std::cos(r.distances[0]), std::cos(om) * std::cos(ph), 1e-12);
    EXPECT_NEAR(std::cos(r.distances[1]), std::cos(om) * std::sin(ph), 1e-12);
    // Sub-triangle A1 A0 A3: angle at A1 (between A1A0 and A1A3).
    const UnitPoint &A1 = oct.vertex(0), &A3 = oct.vertex(2);
    const double a013 = tangent_angle(unit_tangent(A1, r.point).direction,
                                      unit_tangent(A1, A3).direction);
    EXPECT_NEAR(std::sin(a013), std::sin(a.a103) * std::cos(om), 1e-12);
    // Both "fundamental" relations.
    const double s103 = std::sin(a.a103), s102 = std::sin(a.a102),
                 s203 = std::sin(a.a203), c2 = std::pow(std::cos(om), 2);
    EXPECT_NEAR(s103 * s103 * c2 +
                    s102 * s102 * (1 - c2 * std::pow(std::sin(ph), 2)),
                1.0, 1e-12);
    EXPECT_NEAR(s203 * s203 * c2 +
                    s102 * s102 * (1 - c2 * std::pow(std::cos(ph), 2)),
                1.0, 1e-12);
  }
}
