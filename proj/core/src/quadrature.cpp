#include "nvwire/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "nvwire/constants.hpp"
#include "nvwire/error.hpp"

namespace nvwire::quad {

namespace {

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Cplx fc = f(c);
  Cplx resk = kWgk[7] * fc;
  Cplx resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  Cplx fv[15];
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const Cplx f1 = f(c - x);
    const Cplx f2 = f(c + x);
    fv[j] = f1;
    fv[14 - j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const Cplx reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
  resasc *= h;

  double err = std::abs(resk - resg) * h;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  err = std::max(err, eps50 * resabs * h);
  return {a, b, resk * h, err};
}

}  // namespace

Result kronrod_panel(const Integrand& f, double a, double b) {
  const Panel p = eval_panel(f, a, b);
  return {p.value, p.error, 15};
}

Result integrate(const Integrand& f, double a, double b,
                 const QuadratureConfig& cfg) {
  std::priority_queue<Panel> heap;
  Panel p0 = eval_panel(f, a, b);
  Cplx total = p0.value;
  double toterr = p0.error;
  long evals = 15;
  heap.push(p0);
  int splits = 0;
  while (toterr > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (splits >= cfg.max_subdivisions || heap.empty())
      throw AccuracyError("quadrature: subdivision limit reached", total, toterr);
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw AccuracyError("quadrature: interval exhausted at machine precision",
                          total, toterr);
    const Panel left = eval_panel(f, worst.a, mid);
    const Panel right = eval_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    toterr += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    evals += 30;
    ++splits;
  }
  return {total, toterr, evals};
}

Result integrate_half_line(const Integrand& f, const QuadratureConfig& cfg,
                           double split, TailMap map, double tail_scale) {
  if (split <= 0.0) throw std::domain_error("integrate_half_line: split must be > 0");
  const double s = tail_scale > 0.0 ? tail_scale : std::max(split, 1.0);

  QuadratureConfig half = cfg;
  half.rel_tol = 0.5 * cfg.rel_tol;
  half.abs_tol = 0.5 * cfg.abs_tol;

  const Result head = integrate(f, 0.0, split, half);

  Integrand tail;
  if (map == TailMap::rational) {
    tail = [&f, split, s](double t) {
      const double u = 1.0 - t;
      return f(split + s * t / u) * (s / (u * u));
    };
  } else {
    tail = [&f, split, s](double t) {
      const double u = 1.0 - t;
      return f(split - s * std::log(u)) * (s / u);
    };
  }
  const Result tl = integrate(tail, 0.0, 1.0, half);

  return {head.value + tl.value, head.error_bound + tl.error_bound,
          head.evaluations + tl.evaluations};
}

Result integrate_half_line_oscillatory(const Integrand& f, double omega,
                                       const QuadratureConfig& cfg) {
  if (omega <= 0.0)
    throw std::domain_error("oscillatory integration: omega must be > 0");
  const double half_period = kPi / omega;
  const int max_segments = 512;

  QuadratureConfig seg_cfg = cfg;
  seg_cfg.rel_tol = std::max(cfg.rel_tol * 0.1, 1e-14);
  seg_cfg.abs_tol = 0.0;
  seg_cfg.max_subdivisions = 200;

  // Partial sums of half-period segments, accelerated by the epsilon table.
  std::vector<Cplx> eps_prev, eps_cur, eps_next;
  std::vector<Cplx> partial;
  Cplx sum(0, 0);
  double seg_err = 0.0;
  long evals = 0;
  Cplx best(0, 0);
  double best_err = std::numeric_limits<double>::infinity();

  for (int n = 0; n < max_segments; ++n) {
    const double a = n * half_period;
    const double b = (n + 1) * half_period;
    Result r;
    try {
      r = integrate(f, a, b, seg_cfg);
    } catch (const AccuracyError& e) {
      r.value = e.best_estimate;
      r.error_bound = e.error_bound;
    }
    sum += r.value;
    seg_err = r.error_bound;
    evals += r.evaluations;
    partial.push_back(sum);

    // Wynn epsilon on the partial-sum sequence.
    const int nrows = static_cast<int>(partial.size());
    eps_prev.assign(nrows + 1, Cplx(0, 0));
    eps_cur = partial;
    Cplx extrap = partial.back();
    for (int k = 1; k < nrows; ++k) {
      eps_next.assign(nrows - k, Cplx(0, 0));
      bool broke = false;
      for (int j = 0; j < nrows - k; ++j) {
        const Cplx d = eps_cur[j + 1] - eps_cur[j];
        if (std::abs(d) < 1e-300) {
          broke = true;
          break;
        }
        eps_next[j] = eps_prev[j + 1] + 1.0 / d;
      }
      if (broke) break;
      eps_prev = eps_cur;
      eps_cur = eps_next;
      if (k % 2 == 0 && !eps_cur.empty()) extrap = eps_cur.back();
    }

    if (n >= 4) {
      const double diff = std::abs(extrap - best);
      const double target =
          std::max(cfg.abs_tol, cfg.rel_tol * std::abs(extrap));
      if (diff + seg_err <= target) {
        return {extrap, diff + seg_err, evals};
      }
      if (diff < best_err) best_err = diff;
    }
    best = extrap;
  }
  throw AccuracyError("oscillatory integration: no convergence", best,
                      best_err + seg_err);
}

}  // namespace nvwire::quad
