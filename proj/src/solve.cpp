#include "sphfermat/solve.hpp"
#include "sphfermat/classifier.hpp"
#include "sphfermat/closed_form.hpp"

namespace sphfermat {

bool is_octant(const GeodesicTriangle &tri) {
  const auto oct = GeodesicTriangle::octant();
  for (int i = 0; i < 3; ++i)
    if (tri.vertex(i).vec() != oct.vertex(i).vec())
      return false;
  return true;
}

FermatResult solve(const GeodesicTriangle &tri, const Weights &w,
                   const OracleOptions &opts) {
  const CaseDecision d = classify(tri, w);
  if (!d.floating())
    return FermatResult::make(tri, w, tri.vertex(d.label.vertex - 1), d.label);
  if (is_octant(tri))
    return solve_octant(w);
  return minimize(tri, w, opts);
}

} // namespace sphfermat
