#pragma once

// Argument-principle root location for analytic functions. The winding number
// of f over a rectangle certifies the root count before any iteration starts,
// so convergence to a spurious zero near a branch cut cannot pass silently.

#include <complex>
#include <functional>

namespace nvwire::roots {

using Cplx = std::complex<double>;
using AnalyticFn = std::function<Cplx(Cplx)>;

struct RootRegion {
  Cplx center;
  double half_width = 0.0;
  double half_height = 0.0;

  RootRegion(Cplx center, double half_width, double half_height);
};

/// Winding number of f along the region boundary (discrete argument principle
/// with adaptive phase refinement; every adjacent phase step < pi/2).
int winding_number(const AnalyticFn& f, const RootRegion& region);

struct RootResult {
  Cplx root{};
  double residual = 0.0;  // |f(root)|
  double scale = 0.0;     // median |f| over the region boundary
  int winding = 0;        // certified count (always 1 on success)
};

/// Locates the unique root of f inside the region. The winding number must be
/// exactly one (NoRootError / MultipleRootsError otherwise); the region is
/// then shrunk by quadrisection and the root polished by damped Newton with a
/// numerical derivative. Success requires |f(root)| < tol * scale.
RootResult find_root(const AnalyticFn& f, const RootRegion& region, double tol);

}  // namespace nvwire::roots
