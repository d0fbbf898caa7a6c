#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sphfermat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Tangent direction requested between coincident or antipodal points.
class DegenerateDirection : public Error {
public:
  using Error::Error;
};

/// Argument outside its admissible interval.
class OutOfRange : public Error {
public:
  using Error::Error;
};

/// Triangle with coincident/antipodal vertices or zero-length sides.
class DegenerateTriangle : public Error {
public:
  using Error::Error;
};

/// Weights outside the floating (interior) regime.
class WeightsNotFloating : public Error {
public:
  using Error::Error;
};

/// A closed-form expression left its real domain (negative radicand etc).
class NumericalDomain : public Error {
public:
  using Error::Error;
};

/// Inconsistent inputs to the cosine-law system.
class DomainError : public Error {
public:
  using Error::Error;
};

/// More than one vertex satisfies the absorbed inequality.
class AmbiguousAbsorption : public Error {
public:
  using Error::Error;
};

/// Shrink offsets reach or pass the Fermat-Torricelli point.
class OffsetTooLarge : public Error {
public:
  using Error::Error;
};

/// Inverse solver converged to offsets that are not admissible.
class InfeasibleTarget : public Error {
public:
  using Error::Error;
};

/// Iterative solver ran out of iterations. Carries the best iterate.
class NoConvergence : public Error {
public:
  NoConvergence(const std::string &what, Eigen::Vector3d best, double residual)
      : Error(what), best_(std::move(best)), residual_(residual) {}

  const Eigen::Vector3d &best() const { return best_; }
  double residual() const { return residual_; }

private:
  Eigen::Vector3d best_;
  double residual_;
};

/// The Weierstrass reduction found no admissible real root.
class NoRealSolution : public Error {
public:
  NoRealSolution(const std::string &what, std::string diagnostics)
      : Error(what), diagnostics_(std::move(diagnostics)) {}

  const std::string &diagnostics() const { return diagnostics_; }

private:
  std::string diagnostics_;
};

} // namespace sphfermat
