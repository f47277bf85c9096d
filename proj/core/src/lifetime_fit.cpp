#include "nvwire/lifetime_fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nvwire/error.hpp"
#include "nvwire/least_squares.hpp"

namespace nvwire {

namespace {

struct Design {
  std::vector<double> t_ns;  // bin centers relative to the peak-start
  std::vector<double> n;     // counts
};

// Log-likelihood, gradient and observed information for
// mu = A exp(-t/tau) + B, theta = (A, tau, B).
struct Eval {
  double logl = 0.0;
  double grad[3] = {0, 0, 0};
  double info[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};  // observed information
};

Eval evaluate(const Design& d, double A, double tau, double B) {
  Eval e;
  for (size_t i = 0; i < d.t_ns.size(); ++i) {
    const double t = d.t_ns[i], n = d.n[i];
    const double ex = std::exp(-t / tau);
    const double mu = std::max(A * ex + B, 1e-12);
    const double w = n / mu - 1.0;
    const double dA = ex;
    const double dtau = A * t / (tau * tau) * ex;
    const double dB = 1.0;
    e.logl += n * std::log(mu) - mu;
    const double dm[3] = {dA, dtau, dB};
    for (int a = 0; a < 3; ++a) e.grad[a] += w * dm[a];
    // Observed information: n/mu^2 dmu dmu^T - (n/mu - 1) d2mu.
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) e.info[a * 3 + b] += n / (mu * mu) * dm[a] * dm[b];
    const double d2_tautau = A * ex * (t * t / std::pow(tau, 4) - 2.0 * t / std::pow(tau, 3));
    const double d2_Atau = t / (tau * tau) * ex;
    e.info[1 * 3 + 1] -= w * d2_tautau;
    e.info[0 * 3 + 1] -= w * d2_Atau;
    e.info[1 * 3 + 0] -= w * d2_Atau;
  }
  return e;
}

}  // namespace

LifetimeFitResult fit_lifetime(const Histogram& hist,
                               const LifetimeFitWindow& window) {
  if (hist.counts.empty()) throw InsufficientDataError("fit_lifetime: empty histogram");

  // Establish the fit window: from (peak + start_after_peak) to end_fraction
  // of the span.
  size_t peak = 0;
  for (size_t i = 1; i < hist.size(); ++i)
    if (hist.counts[i] > hist.counts[peak]) peak = i;
  const double t_begin =
      hist.bin_center_ps(peak) + window.start_after_peak_ns * 1e3;
  const double span = hist.size() * hist.bin_width_ps;
  const double t_end = hist.start_ps + window.end_fraction * span;

  Design d;
  size_t nonempty = 0;
  for (size_t i = 0; i < hist.size(); ++i) {
    const double tc = hist.bin_center_ps(i);
    if (tc < t_begin || tc > t_end) continue;
    d.t_ns.push_back((tc - t_begin) * 1e-3);
    d.n.push_back(hist.counts[i]);
    if (hist.counts[i] > 0) ++nonempty;
  }
  if (nonempty < 10)
    throw InsufficientDataError(
        "fit_lifetime: fewer than 10 non-empty bins in the fit window");

  // Starting point: offset from the tail, amplitude from the head, tau from
  // the head/tail count ratio.
  const size_t nb = d.n.size();
  double tail = 0.0;
  const size_t ntail = std::max<size_t>(1, nb / 10);
  for (size_t i = nb - ntail; i < nb; ++i) tail += d.n[i];
  double B = std::max(tail / ntail, 1e-6);
  double A = std::max(d.n.front() - B, 1.0);
  double tau = 0.0;
  {
    // Crude decay estimate from the first point dropping to A/e.
    const double target = B + A / std::exp(1.0);
    tau = d.t_ns.back() * 0.3;
    for (size_t i = 0; i < nb; ++i)
      if (d.n[i] < target) {
        tau = std::max(d.t_ns[i], hist.bin_width_ps * 1e-3);
        break;
      }
  }

  double logl_prev = -1e300;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const Eval e = evaluate(d, A, tau, B);
    std::vector<double> info(e.info, e.info + 9), g = {e.grad[0], e.grad[1], e.grad[2]};
    std::vector<double> step;
    if (!lsq::solve_dense(info, g, 3, step))
      throw NonConvergenceError("fit_lifetime: singular information matrix");
    // Damped Fisher-type update keeping tau and A positive.
    double damp = 1.0;
    for (int k = 0; k < 30; ++k) {
      const double An = A + damp * step[0];
      const double taun = tau + damp * step[1];
      const double Bn = B + damp * step[2];
      if (An > 0 && taun > 0 && Bn > -1e-9) {
        const Eval en = evaluate(d, An, taun, std::max(Bn, 0.0));
        if (en.logl >= e.logl - 1e-12 || damp < 1e-4) {
          A = An;
          tau = taun;
          B = std::max(Bn, 0.0);
          break;
        }
      }
      damp *= 0.5;
    }
    const Eval now = evaluate(d, A, tau, B);
    if (std::abs(now.logl - logl_prev) < 1e-10 * (std::abs(now.logl) + 1.0)) {
      converged = true;
      break;
    }
    logl_prev = now.logl;
  }
  if (!converged)
    throw NonConvergenceError(
        "fit_lifetime: likelihood not converged after 200 iterations (tau=" +
        std::to_string(tau) + " ns)");

  const Eval e = evaluate(d, A, tau, B);
  std::vector<double> info(e.info, e.info + 9), etau = {0, 1, 0}, col;
  if (!lsq::solve_dense(info, etau, 3, col))
    throw NonConvergenceError("fit_lifetime: information matrix not invertible");

  LifetimeFitResult out;
  out.tau_ns = tau;
  out.tau_stderr_ns = std::sqrt(std::max(col[1], 0.0));
  out.amplitude = A;
  out.offset = B;
  out.bins_used = d.n.size();
  double chi2 = 0.0;
  for (size_t i = 0; i < d.n.size(); ++i) {
    const double mu = std::max(A * std::exp(-d.t_ns[i] / tau) + B, 1e-12);
    chi2 += (d.n[i] - mu) * (d.n[i] - mu) / mu;
  }
  out.chi2_per_dof = chi2 / std::max<double>(1.0, d.n.size() - 3.0);
  return out;
}

}  // namespace nvwire
