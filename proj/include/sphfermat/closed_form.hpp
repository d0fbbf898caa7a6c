#pragma once

/** Closed-form weighted Fermat-Torricelli point of the octant triangle
 * A1 = (1,0,0), A2 = (0,1,0), A3 = (0,0,1).
 *
 * Two routes are provided. `solve_octant` uses the cotangent-product
 * relations cot(a0i) cot(a0j) = -cos(alpha_i0j), which follow from the
 * spherical cosine law with the right-angle sides of the octant triangle and
 * the weight-determined angles at A0. `solve_octant_paper` evaluates the
 * published (omega, phi) formulas verbatim and is kept for comparison only;
 * its omega does not agree with the numeric minimizer for unequal weights. */

#include "sphfermat/fermat.hpp"

namespace sphfermat {

/// Angles at the Fermat-Torricelli point between the arcs to A_i and A_j.
struct VertexAngles {
  double a102 = 0.0;
  double a203 = 0.0;
  double a103 = 0.0;

  double sum() const { return a102 + a203 + a103; }
};

/// cos(alpha_i0j) = (w_k^2 - w_i^2 - w_j^2) / (2 w_i w_j).
/// Throws WeightsNotFloating when a ratio leaves [-1, 1], i.e. the weights
/// violate the triangle inequality.
VertexAngles vertex_angles_from_weights(const Weights &w);

/// True iff w_i^2 < w_j^2 + w_k^2 for every i (floating on the octant).
bool octant_floating(const Weights &w);

/// Published formulas:
///   phi   = acos sqrt((w1^2 + w3^2 - w2^2) / (2 w3^2))
///   omega = acos sqrt((w1^2 + w2^2 - w3^2) /
///                     (2 w1 w2 sin(alpha_102) sin(alpha_103)))
/// Throws WeightsNotFloating outside the octant floating region and
/// NumericalDomain when a radicand leaves [0, 1].
SphericalCoords solve_octant_paper(const Weights &w);

/// Weighted Fermat-Torricelli point of the octant triangle. With
/// c1 = (w2^2+w3^2-w1^2)/(2 w2 w3) and cyclic, u_i = sqrt(c_j c_k / c_i) is
/// cot(a0i) and A0 = (u_i / sqrt(1 + u_i^2))_i.
/// Throws WeightsNotFloating if any c_i <= 0.
FermatResult solve_octant(const Weights &w);

/// |cos^2(phi_published) - x1^2 / (x1^2 + x2^2)| with x = solve_octant(w).
double theorem2_phi_residual(const Weights &w);

} // namespace sphfermat
