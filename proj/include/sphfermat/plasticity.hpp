#pragma once

/** Geometric plasticity on the unit sphere.
 *
 * Sliding each vertex A_i toward the weighted Fermat-Torricelli point A0
 * along the arc A_i A0 (same weights, still floating) leaves A0 unchanged.
 * With d_i = a0i - offset_i the shrunken sides obey the spherical cosine law
 * at A0, whose angles depend only on the weights:
 *
 *   cos s12 = cos d1 cos d2 + sin d1 sin d2 cos(alpha_102)
 *   cos s23 = cos d2 cos d3 + sin d2 sin d3 cos(alpha_203)
 *   cos s13 = cos d1 cos d3 + sin d1 sin d3 cos(alpha_103)
 *
 * The forward map goes from offsets to sides; the inverse recovers offsets
 * for prescribed sides, either by Newton or by the tangent half-angle
 * reduction to two quadratics plus a scalar root search. */

#include "sphfermat/fermat.hpp"

#include <array>
#include <string>
#include <vector>

namespace sphfermat {

/// Distances a01, a02, a03 from A0 to the vertices.
using FermatDistances = std::array<double, 3>;

/// Arc lengths slid along A1A0, A2A0, A3A0.
struct ShrinkOffsets {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

struct TriangleSides {
  double s12 = 0.0;
  double s23 = 0.0;
  double s13 = 0.0;
};

/// t = tan(x / 2) for each offset.
struct HalfAngleTriple {
  double t_a = 0.0;
  double t_b = 0.0;
  double t_c = 0.0;

  static HalfAngleTriple from_offsets(const ShrinkOffsets &off);
  ShrinkOffsets to_offsets() const;
};

/// Throws OffsetTooLarge unless 0 <= offset_i < a0i for every i.
void check_offsets(const FermatDistances &a0, const ShrinkOffsets &off);

/// Moves A_i to the point at arc length offset_i along A_i -> fermat_point.
/// Throws WeightsNotFloating if the weights are absorbed for `tri`.
GeodesicTriangle shrink_triangle(const GeodesicTriangle &tri, const Weights &w,
                                 const ShrinkOffsets &off,
                                 const UnitPoint &fermat_point);

/// As above, with the Fermat-Torricelli point computed by `solve`.
GeodesicTriangle shrink_triangle(const GeodesicTriangle &tri, const Weights &w,
                                 const ShrinkOffsets &off);

/// Sides of the shrunken triangle predicted by the cosine law at A0.
/// Throws DomainError when some a0i - offset_i falls outside (0, pi/2] or a
/// cosine leaves [-1, 1] by more than 1e-9.
TriangleSides predicted_sides(const FermatDistances &a0,
                              const ShrinkOffsets &off, const Weights &w);

/// Per-equation residuals (predicted cos side - cos target side), in the
/// order s12, s23, s13. No domain checks.
std::array<double, 3> side_residuals(const FermatDistances &a0,
                                     const ShrinkOffsets &off, const Weights &w,
                                     const TriangleSides &target);

/// Newton solve of side_residuals = 0 with a central-difference Jacobian.
/// Throws NoConvergence or InfeasibleTarget.
ShrinkOffsets invert_sides_newton(const TriangleSides &target, const Weights &w,
                                  const FermatDistances &a0);

struct WeierstrassSolution {
  ShrinkOffsets offsets;
  HalfAngleTriple half_angles;
  int branch_a = 0; ///< root index of the quadratic in t_a
  int branch_c = 0; ///< root index of the quadratic in t_c
  double residual = 0.0; ///< max |side residual|
};

/// All admissible real solutions found through the half-angle reduction,
/// sorted by t_b. Throws NoRealSolution (with per-branch scan diagnostics)
/// when the list would be empty.
std::vector<WeierstrassSolution>
invert_sides_weierstrass(const TriangleSides &target, const Weights &w,
                         const FermatDistances &a0);

} // namespace sphfermat
