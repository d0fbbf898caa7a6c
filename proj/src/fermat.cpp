#include "sphfermat/fermat.hpp"
#include "sphfermat/errors.hpp"

#include <cmath>

namespace sphfermat {

Weights::Weights(double w1, double w2, double w3) : w_{w1, w2, w3} {
  for (double w : w_) {
    if (!(std::isfinite(w) && w > 0.0))
      throw OutOfRange("weights must be finite and strictly positive");
  }
}

Weights Weights::scaled(double lambda) const {
  return {lambda * w_[0], lambda * w_[1], lambda * w_[2]};
}

double objective(const GeodesicTriangle &tri, const Weights &w,
                 const UnitPoint &p) {
  double f = 0.0;
  for (int i = 0; i < 3; ++i)
    f += w[i] * geodesic_distance(p, tri.vertex(i));
  return f;
}

double stationarity_residual(const GeodesicTriangle &tri, const Weights &w,
                             const UnitPoint &p) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i)
    sum += w[i] * unit_tangent(p, tri.vertex(i)).direction;
  return sum.norm();
}

FermatResult FermatResult::make(const GeodesicTriangle &tri, const Weights &w,
                                const UnitPoint &point, CaseLabel label) {
  FermatResult r{point, to_coords(point), label, 0.0, {}, 0.0};
  for (int i = 0; i < 3; ++i) {
    r.distances[i] = geodesic_distance(point, tri.vertex(i));
    r.objective += w[i] * r.distances[i];
  }
  if (label.is_interior())
    r.stationarity_residual = sphfermat::stationarity_residual(tri, w, point);
  return r;
}

} // namespace sphfermat
