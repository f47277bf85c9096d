#pragma once

// Damped Gauss-Newton (Levenberg-Marquardt) for small dense problems, with a
// forward-difference Jacobian. Problem sizes here are a handful of parameters
// against at most a few thousand residuals, so everything is hand-rolled.

#include <functional>
#include <vector>

namespace nvwire::lsq {

using ResidualFn =
    std::function<std::vector<double>(const std::vector<double>&)>;

struct Options {
  int max_iter = 300;
  double xtol = 1e-12;       // relative step size convergence
  double gtol = 1e-12;       // gradient convergence
  double lambda0 = 1e-3;     // initial damping
};

struct FitResult {
  std::vector<double> x;
  double cost = 0.0;  // 0.5 * sum r^2
  int iterations = 0;
  bool converged = false;
  // Row-major (JtJ)^-1 at the solution; multiply by the residual variance for
  // parameter covariance.
  std::vector<double> jtj_inverse;
};

/// Minimizes 0.5*|r(x)|^2 from the starting point x0.
/// Throws NonConvergenceError when max_iter passes without meeting a tolerance.
FitResult levenberg_marquardt(const ResidualFn& residuals,
                              std::vector<double> x0,
                              const Options& opts = {});

/// Solves the n x n system a*x = b in place (partial pivoting); a is row-major.
/// Returns false if the matrix is numerically singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, int n,
                 std::vector<double>& x);

}  // namespace nvwire::lsq
