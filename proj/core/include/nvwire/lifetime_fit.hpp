#pragma once

// Maximum-likelihood single-exponential decay fit (Poisson counts):
// mu_i = amplitude * exp(-t_i / tau) + offset over the fit window.

#include "nvwire/histogram.hpp"

namespace nvwire {

struct LifetimeFitResult {
  double tau_ns = 0.0;
  double tau_stderr_ns = 0.0;
  double amplitude = 0.0;  // counts per bin at t = 0
  double offset = 0.0;     // counts per bin
  double chi2_per_dof = 0.0;
  size_t bins_used = 0;
};

struct LifetimeFitWindow {
  // Fit starts this long after the histogram peak (skips pulse pile-up) and
  // ends at this fraction of the histogram span.
  double start_after_peak_ns = 1.0;
  double end_fraction = 0.8;
};

/// Needs >= 10 non-empty bins inside the window (InsufficientDataError).
/// Standard errors come from the observed information matrix.
LifetimeFitResult fit_lifetime(const Histogram& hist,
                               const LifetimeFitWindow& window = {});

}  // namespace nvwire
