#include "nvwire/g2_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nvwire/error.hpp"
#include "nvwire/least_squares.hpp"

namespace nvwire {

double g2_model(double tau_ns, const G2Params& p) {
  const double at = std::abs(tau_ns);
  const double g2 =
      1.0 - (1.0 + p.a) * std::exp(-at / p.tau1_ns) + p.a * std::exp(-at / p.tau2_ns);
  return 1.0 + p.rho * p.rho * (g2 - 1.0);
}

G2FitResult fit_g2(const Histogram& hist, const G2FitOptions& opts) {
  if (hist.counts.size() < 16)
    throw InsufficientDataError("fit_g2: histogram too short");

  // Far-wing normalization.
  double wing_sum = 0.0;
  size_t wing_n = 0;
  for (size_t i = 0; i < hist.size(); ++i) {
    const double at = std::abs(hist.bin_center_ps(i)) * 1e-3;
    if (at >= opts.norm_min_ns && at <= opts.norm_max_ns) {
      wing_sum += hist.counts[i];
      ++wing_n;
    }
  }
  if (wing_n < 8 || wing_sum <= 0.0)
    throw InsufficientDataError(
        "fit_g2: normalization window not covered by the histogram wings");
  const double norm = wing_sum / wing_n;

  std::vector<double> tau_ns, g;
  for (size_t i = 0; i < hist.size(); ++i) {
    tau_ns.push_back(hist.bin_center_ps(i) * 1e-3);
    g.push_back(hist.counts[i] / norm);
  }

  // Starting values from the data: dip depth sets rho, dip width sets tau1.
  double g0 = 1.0;
  double best = 1e300;
  for (size_t i = 0; i < tau_ns.size(); ++i)
    if (std::abs(tau_ns[i]) < best) {
      best = std::abs(tau_ns[i]);
      g0 = g[i];
    }
  const double rho0 = std::sqrt(std::min(1.0, std::max(0.05, 1.0 - g0)));
  double tau1_0 = 5.0;
  for (size_t i = 0; i < tau_ns.size(); ++i)
    if (tau_ns[i] > 0 && g[i] > 1.0 - 0.6 * (1.0 - g0)) {
      tau1_0 = std::max(1.0, tau_ns[i]);
      break;
    }
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, v);
  const double a0 = std::max(0.05, gmax - 1.0);

  // Parameters (a, tau1, tau2, rho) through softplus-free |x| transforms.
  auto unpack = [](const std::vector<double>& x) {
    G2Params p;
    p.a = std::abs(x[0]);
    p.tau1_ns = std::abs(x[1]);
    p.tau2_ns = std::abs(x[2]);
    p.rho = std::min(1.0, std::abs(x[3]));
    return p;
  };
  auto residuals = [&](const std::vector<double>& x) {
    const G2Params p = unpack(x);
    std::vector<double> r(tau_ns.size());
    for (size_t i = 0; i < tau_ns.size(); ++i)
      r[i] = g2_model(tau_ns[i], p) - g[i];
    return r;
  };

  lsq::Options lopts;
  lopts.max_iter = 400;
  const auto fit = lsq::levenberg_marquardt(
      residuals, {a0, tau1_0, 10.0 * tau1_0, rho0}, lopts);
  const G2Params p = unpack(fit.x);

  // The spanned delay range must cover several antibunching times.
  const double span_ns =
      (std::abs(hist.start_ps) + hist.size() * hist.bin_width_ps) * 1e-3;
  if (span_ns < 5.0 * p.tau1_ns)
    throw InsufficientDataError(
        "fit_g2: histogram span below 5x the fitted antibunching time");

  G2FitResult out;
  out.a = p.a;
  out.tau1_ns = p.tau1_ns;
  out.tau2_ns = p.tau2_ns;
  out.g2_zero = g2_model(0.0, p);
  out.background_fraction = 1.0 - p.rho;
  out.single_emitter = out.g2_zero < 0.5;
  out.rms_residual = std::sqrt(2.0 * fit.cost / tau_ns.size());
  return out;
}

}  // namespace nvwire
