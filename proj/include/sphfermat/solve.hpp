#pragma once

#include "sphfermat/oracle.hpp"

namespace sphfermat {

/// True iff the vertices are exactly (1,0,0), (0,1,0), (0,0,1) in order.
bool is_octant(const GeodesicTriangle &tri);

/// Best available solver: the classifier decides absorbed cases, the octant
/// triangle goes through the closed form, anything else through the oracle.
FermatResult solve(const GeodesicTriangle &tri, const Weights &w,
                   const OracleOptions &opts = {});

} // namespace sphfermat
