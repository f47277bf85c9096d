#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nvwire {

/// Base class for all nvwire errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument magnitude or intermediate value left the double-precision safe range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not reach its accuracy target. Carries the best
/// estimate obtained so the caller can decide whether it is still usable.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, std::complex<double> best_estimate,
                double error_bound)
      : Error(what), best_estimate(best_estimate), error_bound(error_bound) {}

  std::complex<double> best_estimate{};
  double error_bound = 0.0;
};

/// Winding number over the search region was zero.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// Winding number over the search region exceeded one; the caller must shrink
/// the region.
class MultipleRootsError : public Error {
 public:
  explicit MultipleRootsError(const std::string& what, int winding)
      : Error(what), winding(winding) {}
  int winding = 0;
};

/// No guided plasmon mode exists for the requested geometry.
class NoModeError : public Error {
 public:
  using Error::Error;
};

/// Not enough data points for the requested fit or histogram.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// An iterative fit failed to converge; message carries diagnostics.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// File and format problems; message names the offending file (and line when known).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nvwire
