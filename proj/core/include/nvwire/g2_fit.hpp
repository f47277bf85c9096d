#pragma once

// Three-level second-order correlation model
//   g2(tau) = 1 - (1 + a) exp(-|tau|/tau1) + a exp(-|tau|/tau2)
// mixed with uncorrelated background through g2_obs = 1 + rho^2 (g2 - 1),
// rho = signal / (signal + background). g2_obs(0) = 1 - rho^2 exactly.

#include "nvwire/histogram.hpp"

namespace nvwire {

struct G2Params {
  double a = 0.0;        // bunching amplitude
  double tau1_ns = 1.0;  // antibunching time
  double tau2_ns = 1.0;  // shelving time
  double rho = 1.0;      // signal fraction, in [0, 1]
};

/// Background-mixed model value at delay tau (ns).
double g2_model(double tau_ns, const G2Params& params);

struct G2FitResult {
  double a = 0.0;
  double tau1_ns = 0.0;
  double tau2_ns = 0.0;
  double g2_zero = 0.0;             // fitted model at tau = 0 (= 1 - rho^2)
  double background_fraction = 0.0; // 1 - rho
  bool single_emitter = false;      // g2_zero < 0.5
  double rms_residual = 0.0;
};

struct G2FitOptions {
  // Normalization window on |tau| (far wings), ns.
  double norm_min_ns = 300.0;
  double norm_max_ns = 500.0;
};

/// Normalizes the correlation histogram by the far-wing mean and fits the
/// model by least squares. InsufficientDataError when the wings or the dip
/// region are not covered.
G2FitResult fit_g2(const Histogram& hist, const G2FitOptions& opts = {});

}  // namespace nvwire
