#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature for complex-valued integrands of
// a real variable, plus half-line drivers with decaying-tail transforms and an
// oscillatory partition-and-extrapolate mode (Wynn epsilon algorithm).

#include <complex>
#include <functional>

namespace nvwire::quad {

using Cplx = std::complex<double>;
using Integrand = std::function<Cplx(double)>;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
};

struct Result {
  Cplx value{};
  double error_bound = 0.0;  // reported upper bound on |true - value|
  long evaluations = 0;
};

/// Single G7/K15 panel on [a, b]; error from the Gauss/Kronrod difference.
Result kronrod_panel(const Integrand& f, double a, double b);

/// Globally adaptive integration over the finite interval [a, b].
/// Throws AccuracyError (carrying the best estimate) if max_subdivisions
/// panels cannot reach max(abs_tol, rel_tol * |result|).
Result integrate(const Integrand& f, double a, double b,
                 const QuadratureConfig& cfg);

enum class TailMap {
  rational,     // x = X + s t/(1-t): algebraic or exponential decay
  exponential,  // x = X - s ln(1-t): exponential decay only
};

/// Integral over [0, inf) for an integrand that decays at infinity.
/// [0, split] is handled directly, the tail through the selected transform.
Result integrate_half_line(const Integrand& f, const QuadratureConfig& cfg,
                           double split = 1.0,
                           TailMap map = TailMap::rational,
                           double tail_scale = 0.0);

/// Integral over [0, inf) of an oscillatory integrand with asymptotic angular
/// frequency omega: integrates half-period segments and accelerates the
/// partial sums with the epsilon algorithm.
Result integrate_half_line_oscillatory(const Integrand& f, double omega,
                                       const QuadratureConfig& cfg);

}  // namespace nvwire::quad
