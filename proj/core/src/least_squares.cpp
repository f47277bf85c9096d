#include "nvwire/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nvwire/error.hpp"

namespace nvwire::lsq {

namespace {

double cost_of(const std::vector<double>& r) {
  double c = 0.0;
  for (double v : r) c += v * v;
  return 0.5 * c;
}

std::vector<std::vector<double>> jacobian(const ResidualFn& fn,
                                          const std::vector<double>& x,
                                          const std::vector<double>& r0) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> cols(n);
  for (int j = 0; j < n; ++j) {
    const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
    std::vector<double> xp = x;
    xp[j] += h;
    const std::vector<double> rp = fn(xp);
    cols[j].resize(r0.size());
    for (size_t i = 0; i < r0.size(); ++i) cols[j][i] = (rp[i] - r0[i]) / h;
  }
  return cols;
}

}  // namespace

bool solve_dense(std::vector<double> a, std::vector<double> b, int n,
                 std::vector<double>& x) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col])) piv = row;
    if (std::abs(a[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
      std::swap(b[col], b[piv]);
    }
    for (int row = col + 1; row < n; ++row) {
      const double m = a[row * n + col] / a[col * n + col];
      for (int k = col; k < n; ++k) a[row * n + k] -= m * a[col * n + k];
      b[row] -= m * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double s = b[row];
    for (int k = row + 1; k < n; ++k) s -= a[row * n + k] * x[k];
    x[row] = s / a[row * n + row];
  }
  return true;
}

FitResult levenberg_marquardt(const ResidualFn& residuals,
                              std::vector<double> x0, const Options& opts) {
  const int n = static_cast<int>(x0.size());
  std::vector<double> x = std::move(x0);
  std::vector<double> r = residuals(x);
  double cost = cost_of(r);
  double lambda = opts.lambda0;

  FitResult out;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const auto jc = jacobian(residuals, x, r);

    // Normal equations: (JtJ + lambda diag(JtJ)) dx = -Jt r.
    std::vector<double> jtj(n * n, 0.0), jtr(n, 0.0);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        double s = 0.0;
        for (size_t i = 0; i < r.size(); ++i) s += jc[a][i] * jc[b][i];
        jtj[a * n + b] = jtj[b * n + a] = s;
      }
      double g = 0.0;
      for (size_t i = 0; i < r.size(); ++i) g += jc[a][i] * r[i];
      jtr[a] = g;
    }

    double gmax = 0.0;
    for (double g : jtr) gmax = std::max(gmax, std::abs(g));
    if (gmax < opts.gtol * std::max(1.0, cost)) {
      out.converged = true;
      out.iterations = iter;
      break;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 30 && !stepped; ++attempt) {
      std::vector<double> a = jtj;
      for (int d = 0; d < n; ++d)
        a[d * n + d] += lambda * std::max(jtj[d * n + d], 1e-30);
      std::vector<double> rhs(n);
      for (int d = 0; d < n; ++d) rhs[d] = -jtr[d];
      std::vector<double> dx;
      if (!solve_dense(a, rhs, n, dx)) {
        lambda *= 10.0;
        continue;
      }
      std::vector<double> xn(n);
      double rel_step = 0.0;
      for (int d = 0; d < n; ++d) {
        xn[d] = x[d] + dx[d];
        rel_step = std::max(rel_step,
                            std::abs(dx[d]) / std::max(1.0, std::abs(x[d])));
      }
      const std::vector<double> rn = residuals(xn);
      const double cn = cost_of(rn);
      if (cn < cost) {
        x = xn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda * 0.3, 1e-14);
        stepped = true;
        if (rel_step < opts.xtol) {
          out.converged = true;
          out.iterations = iter;
        }
      } else {
        lambda *= 10.0;
      }
    }
    if (out.converged) break;
    if (!stepped) {
      // No downhill step found in 30 damping attempts: local minimum.
      out.converged = true;
      out.iterations = iter;
      break;
    }
    out.iterations = iter;
  }

  if (!out.converged)
    throw NonConvergenceError(
        "levenberg_marquardt: no convergence after " +
        std::to_string(opts.max_iter) + " iterations (cost " +
        std::to_string(cost) + ")");

  // (JtJ)^-1 by column solves at the solution.
  const auto jc = jacobian(residuals, x, r);
  std::vector<double> jtj(n * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double s = 0.0;
      for (size_t i = 0; i < r.size(); ++i) s += jc[a][i] * jc[b][i];
      jtj[a * n + b] = jtj[b * n + a] = s;
    }
  out.jtj_inverse.assign(n * n, 0.0);
  for (int col = 0; col < n; ++col) {
    std::vector<double> e(n, 0.0), sol;
    e[col] = 1.0;
    if (solve_dense(jtj, e, n, sol))
      for (int row = 0; row < n; ++row) out.jtj_inverse[row * n + col] = sol[row];
  }

  out.x = x;
  out.cost = cost;
  return out;
}

}  // namespace nvwire::lsq
