#include "nvwire/drude.hpp"

#include <cmath>

#include "nvwire/constants.hpp"
#include "nvwire/error.hpp"
#include "nvwire/least_squares.hpp"

namespace nvwire {

DrudeParameters::DrudeParameters(double eps_inf, double omega_p, double gamma)
    : eps_inf(eps_inf), omega_p(omega_p), gamma(gamma) {
  if (!(omega_p > 0.0)) throw std::domain_error("DrudeParameters: omega_p must be > 0");
  if (gamma < 0.0) throw std::domain_error("DrudeParameters: gamma must be >= 0");
  if (eps_inf < 1.0) throw std::domain_error("DrudeParameters: eps_inf must be >= 1");
}

std::complex<double> drude_epsilon(double wavelength_m,
                                   const DrudeParameters& p) {
  if (!(wavelength_m > 0.0))
    throw std::domain_error("drude_epsilon: wavelength must be > 0");
  const double w = 2.0 * kPi * kSpeedOfLight / wavelength_m;
  return p.eps_inf -
         p.omega_p * p.omega_p / std::complex<double>(w * w, p.gamma * w);
}

DrudeFit fit_drude(const OpticalConstantTable& table, double range_min_m,
                   double range_max_m) {
  table.validate();
  std::vector<OpticalConstantTable::Row> in_range;
  for (const auto& r : table.rows)
    if (r.wavelength_m >= range_min_m && r.wavelength_m <= range_max_m)
      in_range.push_back(r);
  if (in_range.size() < 3)
    throw InsufficientDataError(
        "fit_drude: need at least 3 table rows inside the fit range");

  // Parameters scaled to O(1): x = (eps_inf, omega_p / 1eV, gamma / 1eV).
  auto residuals = [&in_range](const std::vector<double>& x) {
    std::vector<double> r;
    r.reserve(2 * in_range.size());
    const DrudeParameters p(std::max(x[0], 1.0),
                            std::abs(x[1]) * kEvToRadPerSec,
                            std::abs(x[2]) * kEvToRadPerSec);
    for (const auto& row : in_range) {
      const auto em = drude_epsilon(row.wavelength_m, p);
      const double norm = std::abs(row.epsilon);
      r.push_back((em.real() - row.epsilon.real()) / norm);
      r.push_back((em.imag() - row.epsilon.imag()) / norm);
    }
    return r;
  };

  lsq::Options opts;
  opts.max_iter = 500;
  const auto fit = lsq::levenberg_marquardt(residuals, {4.0, 9.0, 0.02}, opts);

  DrudeFit out;
  out.params = DrudeParameters(std::max(fit.x[0], 1.0),
                               std::abs(fit.x[1]) * kEvToRadPerSec,
                               std::abs(fit.x[2]) * kEvToRadPerSec);
  out.residuals.reserve(in_range.size());
  for (const auto& row : in_range) {
    const auto em = drude_epsilon(row.wavelength_m, out.params);
    const double res = std::abs(em - row.epsilon) / std::abs(row.epsilon);
    out.residuals.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

DrudeParameters default_silver() {
  static const DrudeParameters p = [] {
    return fit_drude(bundled_silver_table(), 600e-9, 800e-9).params;
  }();
  return p;
}

}  // namespace nvwire
