#pragma once

// Drude free-electron permittivity eps(w) = eps_inf - wp^2/(w^2 + i g w) and a
// relative-least-squares fit of its parameters to tabulated optical constants.

#include <complex>
#include <vector>

#include "nvwire/constants.hpp"
#include "nvwire/optical_table.hpp"

namespace nvwire {

struct DrudeParameters {
  double eps_inf = 1.0;  // dimensionless
  double omega_p = 0.0;  // rad/s
  double gamma = 0.0;    // rad/s

  DrudeParameters() = default;
  DrudeParameters(double eps_inf, double omega_p, double gamma);
};

/// Complex relative permittivity at vacuum wavelength lambda (meters).
std::complex<double> drude_epsilon(double wavelength_m,
                                   const DrudeParameters& params);

struct DrudeFit {
  DrudeParameters params;
  // Per-row relative residual |eps_model - eps_table| / |eps_table| for every
  // table row inside the fit range, in table order.
  std::vector<double> residuals;
  double max_residual = 0.0;
};

/// Fits (eps_inf, omega_p, gamma) to the table rows with wavelength inside
/// [range_min_m, range_max_m], minimizing the summed squared relative error of
/// the complex permittivity (real and imaginary parts weighted equally).
/// Needs at least 3 rows in range (InsufficientDataError otherwise).
DrudeFit fit_drude(const OpticalConstantTable& table, double range_min_m,
                   double range_max_m);

/// Parameters fitted to the bundled silver table over 600-800 nm; all
/// downstream defaults use these.
DrudeParameters default_silver();

}  // namespace nvwire
