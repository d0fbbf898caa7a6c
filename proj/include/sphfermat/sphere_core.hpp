#pragma once

/** Spherical-geometry primitives on the unit sphere S^2: points, tangent
 * vectors, geodesic distance, the spherical laws of cosines and sines, and
 * points along minor great-circle arcs. All angles are in radians. */

#include <Eigen/Dense>

#include <array>

namespace sphfermat {

/// Threshold on 1 - |<p,q>| below which two points count as coincident or
/// antipodal.
inline constexpr double kAntipodalTol = 1e-10;

/// A point on the unit sphere. Construction normalizes the input.
class UnitPoint {
public:
  UnitPoint(double x, double y, double z);
  explicit UnitPoint(const Eigen::Vector3d &v);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d &vec() const { return v_; }

  double dot(const UnitPoint &other) const { return v_.dot(other.v_); }

private:
  Eigen::Vector3d v_;
};

/// Latitude/longitude style coordinates:
/// p = (cos omega cos phi, cos omega sin phi, sin omega).
struct SphericalCoords {
  double omega = 0.0; ///< in [-pi/2, pi/2]
  double phi = 0.0;   ///< in [0, 2 pi)
};

UnitPoint to_point(const SphericalCoords &c);
SphericalCoords to_coords(const UnitPoint &p);

/// A vector in the tangent plane at `base`.
struct TangentVector {
  UnitPoint base;
  Eigen::Vector3d direction;

  double norm() const { return direction.norm(); }
};

/// Three pairwise non-coincident, non-antipodal points on the sphere.
class GeodesicTriangle {
public:
  GeodesicTriangle(const UnitPoint &v1, const UnitPoint &v2,
                   const UnitPoint &v3);

  /// (1,0,0), (0,1,0), (0,0,1): the equilateral triangle with sides pi/2.
  static GeodesicTriangle octant();

  /// Zero-based vertex access.
  const UnitPoint &vertex(int i) const { return v_[i]; }
  const std::array<UnitPoint, 3> &vertices() const { return v_; }

  double s12() const;
  double s23() const;
  double s13() const;

  /// Interior angle at vertex i (zero-based).
  double angle(int i) const;

private:
  std::array<UnitPoint, 3> v_;
};

/// Central angle between p and q, in [0, pi].
double geodesic_distance(const UnitPoint &p, const UnitPoint &q);

/// Unit tangent at p of the minor arc from p toward q.
TangentVector unit_tangent(const UnitPoint &p, const UnitPoint &q);

/// Point at arc length s from p along the minor arc toward q, 0 <= s <= d(p,q).
UnitPoint point_on_geodesic(const UnitPoint &p, const UnitPoint &q, double s);

/// Side opposite the included angle alpha between sides b and c.
double spherical_cosine_side(double b, double c, double alpha);

/// Angle in [0, pi] between two tangent directions.
double tangent_angle(const Eigen::Vector3d &u, const Eigen::Vector3d &v);

/// Largest pairwise deviation of sin(side)/sin(opposite angle) over the three
/// vertex/side pairs. Vanishes for any valid spherical triangle.
double sine_law_residual(const GeodesicTriangle &tri);

/// Clamps into [-1, 1] before std::acos.
double safe_acos(double x);

} // namespace sphfermat
