#include "sphfermat/classifier.hpp"
#include "sphfermat/errors.hpp"

#include <algorithm>
#include <string>

namespace sphfermat {

CaseDecision classify(const GeodesicTriangle &tri, const Weights &w) {
  CaseDecision d;
  const double tol =
      kMarginTol * std::max({1.0, w.w1(), w.w2(), w.w3()});
  int absorbed = 0;
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    const UnitPoint &a = tri.vertex(i);
    const Eigen::Vector3d pull =
        w[j] * unit_tangent(a, tri.vertex(j)).direction +
        w[k] * unit_tangent(a, tri.vertex(k)).direction;
    d.margins[i] = pull.norm() - w[i];
    if (d.margins[i] <= tol) {
      absorbed = i + 1;
      ++count;
    }
  }
  if (count > 1)
    throw AmbiguousAbsorption("classify: " + std::to_string(count) +
                              " vertices satisfy the absorbed inequality");
  d.label = count == 0 ? CaseLabel::interior() : CaseLabel::absorbed_at(absorbed);
  return d;
}

} // namespace sphfermat
