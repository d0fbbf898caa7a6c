#pragma once

/** Numeric minimizer of the weighted geodesic-distance objective over S^2:
 * a deterministic Fibonacci-lattice scan followed by Riemannian gradient
 * descent with Armijo backtracking. Independent of the closed-form and
 * classifier code, so it can serve as ground truth for both. */

#include "sphfermat/fermat.hpp"

#include <vector>

namespace sphfermat {

struct OracleOptions {
  int scan_points = 20000;  ///< Fibonacci lattice size, >= 12
  int max_iters = 500;      ///< descent iterations
  double step_init = 0.5;   ///< first trial step, as an arc length (rad)
  double tol_grad = 1e-10;  ///< Riemannian gradient norm at convergence
  double vertex_snap = 1e-6; ///< snap to a vertex closer than this (rad)

  /// Throws OutOfRange on non-positive tolerances or scan_points < 12.
  void validate() const;
};

/// Deterministic Fibonacci lattice of n points on S^2.
std::vector<UnitPoint> fibonacci_lattice(int n);

/// Riemannian gradient sum_i w_i grad d(p, A_i), with
/// grad d(p, A) = -(A - cos d p) / sin d. Throws DegenerateDirection when p is
/// within 1e-9 of a vertex.
TangentVector gradient(const GeodesicTriangle &tri, const Weights &w,
                       const UnitPoint &p);

/// Global minimizer of the objective. Returns AbsorbedAt(i) with the exact
/// vertex when the minimum sits on A_i, otherwise Interior. Throws
/// NoConvergence if descent stalls away from every vertex with the gradient
/// norm above tolerance.
FermatResult minimize(const GeodesicTriangle &tri, const Weights &w,
                      const OracleOptions &opts = {});

struct GridRow {
  double omega;
  double phi;
  double objective;
};

/// Objective on a resolution x resolution (omega, phi) grid, omega-major.
/// omega spans [-pi/2, pi/2] inclusive, phi spans [0, 2 pi) exclusive.
std::vector<GridRow> grid_scan(const GeodesicTriangle &tri, const Weights &w,
                               int resolution);

} // namespace sphfermat
