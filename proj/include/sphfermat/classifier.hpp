#pragma once

#include "sphfermat/fermat.hpp"

#include <array>

namespace sphfermat {

/// Margins at or below this (scaled by max(1, max weight)) count as absorbed.
inline constexpr double kMarginTol = 1e-12;

/// Floating vs absorbed decision.
///
/// margins[i] = ||w_j U_{A_i A_j} + w_k U_{A_i A_k}|| - w_i. The minimizer is
/// interior iff every margin is strictly positive; otherwise it is the (unique)
/// vertex whose margin is non-positive.
struct CaseDecision {
  CaseLabel label;
  std::array<double, 3> margins{};

  bool floating() const { return label.is_interior(); }
};

/// Throws AmbiguousAbsorption if two or more margins are non-positive.
CaseDecision classify(const GeodesicTriangle &tri, const Weights &w);

} // namespace sphfermat
