#include "sphfermat/closed_form.hpp"
#include "sphfermat/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace sphfermat {

namespace {

// cos(alpha_i0j) from weights; i, j zero-based, k the remaining index.
double angle_cosine(const Weights &w, int i, int j) {
  const int k = 3 - i - j;
  return (w[k] * w[k] - w[i] * w[i] - w[j] * w[j]) / (2.0 * w[i] * w[j]);
}

// c_i = -cos(alpha_j0k): positive on the octant floating region.
std::array<double, 3> cotangent_products(const Weights &w) {
  return {-angle_cosine(w, 1, 2), -angle_cosine(w, 0, 2),
          -angle_cosine(w, 0, 1)};
}

double checked_acos_sqrt(double radicand, const char *what) {
  if (!(radicand >= 0.0 && radicand <= 1.0))
    throw NumericalDomain(std::string(what) + ": radicand " +
                          std::to_string(radicand) + " outside [0, 1]");
  return std::acos(std::sqrt(radicand));
}

} // namespace

VertexAngles vertex_angles_from_weights(const Weights &w) {
  const double c12 = angle_cosine(w, 0, 1);
  const double c23 = angle_cosine(w, 1, 2);
  const double c13 = angle_cosine(w, 0, 2);
  for (double c : {c12, c23, c13}) {
    if (!(c >= -1.0 && c <= 1.0))
      throw WeightsNotFloating(
          "vertex_angles_from_weights: weights violate the triangle inequality");
  }
  return {std::acos(c12), std::acos(c23), std::acos(c13)};
}

bool octant_floating(const Weights &w) {
  for (double c : cotangent_products(w))
    if (!(c > 0.0))
      return false;
  return true;
}

SphericalCoords solve_octant_paper(const Weights &w) {
  if (!octant_floating(w))
    throw WeightsNotFloating("solve_octant_paper: weights outside the floating region");
  const double w1 = w.w1(), w2 = w.w2(), w3 = w.w3();
  SphericalCoords c;
  c.phi = checked_acos_sqrt((w1 * w1 + w3 * w3 - w2 * w2) / (2.0 * w3 * w3),
                            "phi formula");
  const double sin102 = std::sin(std::acos(angle_cosine(w, 0, 1)));
  const double sin103 = std::sin(std::acos(angle_cosine(w, 0, 2)));
  c.omega = checked_acos_sqrt(
      (w1 * w1 + w2 * w2 - w3 * w3) / (2.0 * w1 * w2 * sin102 * sin103),
      "omega formula");
  return c;
}

FermatResult solve_octant(const Weights &w) {
  const auto c = cotangent_products(w);
  for (double ci : c) {
    if (!(ci > 0.0))
      throw WeightsNotFloating(
          "solve_octant: weights outside the floating region (absorbed case)");
  }
  Eigen::Vector3d x;
  for (int i = 0; i < 3; ++i) {
    const double u = std::sqrt(c[(i + 1) % 3] * c[(i + 2) % 3] / c[i]);
    x[i] = u / std::sqrt(1.0 + u * u);
  }
  return FermatResult::make(GeodesicTriangle::octant(), w, UnitPoint(x),
                            CaseLabel::interior());
}

double theorem2_phi_residual(const Weights &w) {
  const FermatResult r = solve_octant(w);
  const double x1 = r.point.x(), x2 = r.point.y();
  const double published =
      (w.w1() * w.w1() + w.w3() * w.w3() - w.w2() * w.w2()) /
      (2.0 * w.w3() * w.w3());
  return std::abs(published - x1 * x1 / (x1 * x1 + x2 * x2));
}

} // namespace sphfermat
