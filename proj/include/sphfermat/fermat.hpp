#pragma once

/** Weights, the weighted-distance objective, and the result record shared by
 * the closed-form solver and the numeric oracle. */

#include "sphfermat/sphere_core.hpp"

#include <array>
#include <string>

namespace sphfermat {

/// Positive weight triple (w1, w2, w3) attached to the three vertices.
class Weights {
public:
  Weights(double w1, double w2, double w3);

  double w1() const { return w_[0]; }
  double w2() const { return w_[1]; }
  double w3() const { return w_[2]; }
  /// Zero-based access.
  double operator[](int i) const { return w_[i]; }

  Weights scaled(double lambda) const;

private:
  std::array<double, 3> w_;
};

/// Where the minimizer sits: strictly inside, or on vertex 1, 2 or 3.
struct CaseLabel {
  enum class Kind { Interior, Absorbed };
  Kind kind = Kind::Interior;
  int vertex = 0; ///< 1-based; only meaningful when kind == Absorbed

  static CaseLabel interior() { return {}; }
  static CaseLabel absorbed_at(int vertex) { return {Kind::Absorbed, vertex}; }

  bool is_interior() const { return kind == Kind::Interior; }
  std::string name() const { return is_interior() ? "interior" : "absorbed"; }
  bool operator==(const CaseLabel &) const = default;
};

/// w1 d(p,A1) + w2 d(p,A2) + w3 d(p,A3).
double objective(const GeodesicTriangle &tri, const Weights &w,
                 const UnitPoint &p);

/// Norm of sum_i w_i U_{p A_i}. Throws DegenerateDirection when p sits on a
/// vertex.
double stationarity_residual(const GeodesicTriangle &tri, const Weights &w,
                             const UnitPoint &p);

struct FermatResult {
  UnitPoint point;
  SphericalCoords coords;
  CaseLabel case_label;
  double objective = 0.0;
  std::array<double, 3> distances{}; ///< a01, a02, a03
  double stationarity_residual = 0.0;

  /// Fills coordinates, distances, objective and residual from `point`.
  /// The residual is zero for absorbed results (tangents are undefined at
  /// the vertex itself).
  static FermatResult make(const GeodesicTriangle &tri, const Weights &w,
                           const UnitPoint &point, CaseLabel label);
};

} // namespace sphfermat
