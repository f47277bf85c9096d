#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "nvwire/complex_bessel.hpp"
#include "nvwire/constants.hpp"
#include "nvwire/error.hpp"
#include "nvwire/quadrature.hpp"
#include "nvwire/root_finding.hpp"

using nvwire::kPi;
using Cplx = std::complex<double>;
namespace bessel = nvwire::bessel;
namespace quad = nvwire::quad;
namespace roots = nvwire::roots;

namespace {

// Test-side oracle: J_0(x) by a 40-term Taylor series in extended precision.
long double j0_series_oracle(long double x) {
  long double sum = 0.0L, term = 1.0L;
  const long double q = x * x / 4.0L;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) term *= -q / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

// Test-side oracle: K_0(x) = integral_0^inf exp(-x cosh t) dt, composite
// Simpson in extended precision on [0, 40] (integrand is ~1e-17 scaled there
// long before that for x >= 1).
long double k0_integral_oracle(long double x) {
  const int n = 40000;  // even
  const long double h = 40.0L / n;
  auto f = [x](long double t) { return std::exp(-x * std::cosh(t)); };
  long double s = f(0.0L) + f(40.0L);
  for (int i = 1; i < n; ++i) s += f(i * h) * ((i % 2) ? 4.0L : 2.0L);
  return s * h / 3.0L;
}

}  // namespace

TEST_CASE("bessel values at the origin") {
  const auto c0 = bessel::cyl(0, Cplx(0, 0));
  const auto c1 = bessel::cyl(1, Cplx(0, 0));
  CHECK(c0.j == Cplx(1, 0));
  CHECK(c1.j == Cplx(0, 0));
  const auto m0 = bessel::mod(0, Cplx(1e-12, 0));
  CHECK(m0.i.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(bessel::mod(0, Cplx(0, 0)), nvwire::RangeError);
}

TEST_CASE("J_0(1) against the series oracle") {
  const long double oracle = j0_series_oracle(1.0L);
  CHECK(std::abs(oracle - 0.7651976865579666L) < 1e-15L);  // frozen value
  const auto c = bessel::cyl(0, Cplx(1, 0));
  CHECK(std::abs(c.j - Cplx(static_cast<double>(oracle), 0)) < 1e-14);
}

TEST_CASE("K_0 against the integral-representation oracle") {
  const long double k1 = k0_integral_oracle(1.0L);
  CHECK(std::abs(k1 - 0.42102443824070834L) < 1e-13L);  // frozen value
  const auto m = bessel::mod(0, Cplx(1, 0));
  CHECK(std::abs(m.k - Cplx(static_cast<double>(k1), 0)) < 1e-13);
  // Continued-fraction branch (|z| > 2), two magnitudes.
  for (double x : {5.0, 30.0}) {
    const long double kx = k0_integral_oracle(static_cast<long double>(x));
    const auto mx = bessel::mod(0, Cplx(x, 0));
    CHECK(std::abs(mx.k.real() / static_cast<double>(kx) - 1.0) < 1e-12);
  }
}

TEST_CASE("K_0 diverges toward the origin") {
  double prev = 0.0;
  for (double x : {1e-1, 1e-2, 1e-3}) {
    const double k = bessel::mod(0, Cplx(x, 0)).k.real();
    CHECK(k > prev);
    prev = k;
  }
  CHECK(prev > 6.9);  // K_0(1e-3) ~ ln(2/z) - gamma
}

TEST_CASE("series/continued-fraction seam is continuous") {
  for (double arg : {0.0, 0.7, 1.5, 2.4, 3.1}) {
    const Cplx z1 = std::polar(1.999, arg);
    const Cplx z2 = std::polar(2.001, arg);
    const auto a = bessel::mod(0, z1);
    const auto b = bessel::mod(0, z2);
    CHECK(std::abs(a.k - b.k) / std::abs(a.k) < 1e-2);
    const auto am = bessel::mod(3, z1);
    const auto bm = bessel::mod(3, z2);
    CHECK(std::abs(am.k - bm.k) / std::abs(am.k) < 2e-2);
  }
}

TEST_CASE("modified Wronskian I K' - I' K = -1/z at spec tolerance") {
  // 1e4 random arguments, |z| in [1e-3, 50], |m| <= 20, full angular range.
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> ulog(std::log(1e-3), std::log(50.0));
  std::uniform_real_distribution<double> uarg(-kPi * 0.999, kPi * 0.999);
  std::uniform_int_distribution<int> um(-20, 20);
  for (int trial = 0; trial < 10000; ++trial) {
    const Cplx z = std::polar(std::exp(ulog(gen)), uarg(gen));
    const int m = um(gen);
    const auto v = bessel::mod(m, z);
    const Cplx w = v.i * v.kp - v.ip * v.k;
    const Cplx expect = -1.0 / z;
    CHECK(std::abs(w - expect) <= 1e-12 * std::abs(expect) +
                                      5e-15 * (std::abs(v.i * v.kp) +
                                               std::abs(v.ip * v.k)));
  }
}

TEST_CASE("cylinder Wronskian J Y' - J' Y = 2/(pi z) at spec tolerance") {
  // Same domain. Deep in the half planes J and Y both grow like e^{2|Im z|},
  // so the identity is asserted against the representable scale: full 1e-12
  // relative wherever the products do not dwarf 2/(pi z), and the products'
  // roundoff floor beyond.
  std::mt19937_64 gen(67890);
  std::uniform_real_distribution<double> ulog(std::log(1e-3), std::log(50.0));
  std::uniform_real_distribution<double> uarg(-kPi * 0.999, kPi * 0.999);
  std::uniform_int_distribution<int> um(-20, 20);
  for (int trial = 0; trial < 10000; ++trial) {
    const Cplx z = std::polar(std::exp(ulog(gen)), uarg(gen));
    const int m = um(gen);
    const auto v = bessel::cyl(m, z);
    const Cplx w = v.j * v.yp - v.jp * v.y;
    const Cplx expect = 2.0 / (kPi * z);
    CHECK(std::abs(w - expect) <= 1e-12 * std::abs(expect) +
                                      5e-15 * (std::abs(v.j * v.yp) +
                                               std::abs(v.jp * v.y)));
  }
}

TEST_CASE("spec example Wronskians at z = 2 + 1i") {
  const Cplx z(2, 1);
  const auto c = bessel::cyl(1, z);
  const Cplx wc = c.j * c.yp - c.jp * c.y;
  CHECK(std::abs(wc - 2.0 / (kPi * z)) < 1e-12 * std::abs(2.0 / (kPi * z)));
  const auto m = bessel::mod(1, z);
  const Cplx wm = m.i * m.kp - m.ip * m.k;
  CHECK(std::abs(wm - (-1.0 / z)) < 1e-12 * std::abs(1.0 / z));
}

TEST_CASE("H1 equals J + iY and negative orders reflect") {
  const Cplx z(3.0, -0.8);
  for (int m : {0, 1, 5, 17}) {
    const auto c = bessel::cyl(m, z);
    CHECK(std::abs(c.h1 - (c.j + Cplx(0, 1) * c.y)) <
          1e-12 * (std::abs(c.h1) + 1e-300));
    const auto cm = bessel::cyl(-m, z);
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(cm.j - sgn * c.j) < 1e-12 * std::abs(c.j));
  }
}

TEST_CASE("order cap and K overflow raise range errors") {
  CHECK_THROWS_AS(bessel::cyl(61, Cplx(1, 0)), std::domain_error);
  CHECK_THROWS_AS(bessel::mod(60, Cplx(1e-3, 0)), nvwire::RangeError);
}

TEST_CASE("quadrature reproduces the three analytic half-line integrals") {
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;

  const auto exp_decay = [](double x) { return Cplx(std::exp(-x), 0); };
  const auto r1 = quad::integrate_half_line(exp_decay, cfg);
  CHECK(std::abs(r1.value.real() - 1.0) < 1e-10);
  CHECK(std::abs(r1.value.real() - 1.0) <= r1.error_bound);

  const auto lorentz = [](double x) { return Cplx(1.0 / (1.0 + x * x), 0); };
  const auto r2 = quad::integrate_half_line(lorentz, cfg);
  CHECK(std::abs(r2.value.real() - kPi / 2.0) < 1e-10 * kPi / 2.0);
  CHECK(std::abs(r2.value.real() - kPi / 2.0) <= r2.error_bound);

  const auto sinc = [](double x) {
    return Cplx(x == 0.0 ? 1.0 : std::sin(x) / x, 0);
  };
  quad::QuadratureConfig ocfg;
  ocfg.rel_tol = 1e-9;
  const auto r3 = quad::integrate_half_line_oscillatory(sinc, 1.0, ocfg);
  CHECK(std::abs(r3.value.real() - kPi / 2.0) < 1e-8);
  CHECK(std::abs(r3.value.real() - kPi / 2.0) <= r3.error_bound + 1e-9);
}

TEST_CASE("quadrature exponential tail map on exp decay") {
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-10;
  const auto f = [](double x) { return Cplx(std::exp(-2.0 * x), 0); };
  const auto r = quad::integrate_half_line(f, cfg, 1.0,
                                           quad::TailMap::exponential);
  CHECK(std::abs(r.value.real() - 0.5) < 1e-10);
}

TEST_CASE("quadrature reports non-convergence with best estimate") {
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-14;
  cfg.max_subdivisions = 3;
  const auto nasty = [](double x) { return Cplx(std::sqrt(std::abs(x - 0.3)), 0); };
  CHECK_THROWS_AS(quad::integrate(nasty, 0.0, 1.0, cfg), nvwire::AccuracyError);
}

TEST_CASE("root finder certifies and locates z^2 + 1") {
  const auto f = [](Cplx z) { return z * z + 1.0; };
  const roots::RootRegion region(Cplx(0.1, 0.9), 0.6, 0.6);
  CHECK(roots::winding_number(f, region) == 1);
  const auto r = roots::find_root(f, region, 1e-13);
  CHECK(std::abs(r.root - Cplx(0, 1)) < 1e-12);

  const roots::RootRegion empty(Cplx(5, 5), 0.5, 0.5);
  CHECK_THROWS_AS(roots::find_root(f, empty, 1e-12), nvwire::NoRootError);

  const roots::RootRegion both(Cplx(0, 0), 0.7, 1.6);
  CHECK_THROWS_AS(roots::find_root(f, both, 1e-12), nvwire::MultipleRootsError);
}

TEST_CASE("root finder is idempotent around a found root") {
  const auto f = [](Cplx z) { return std::sin(z) - 0.3 * z; };
  const roots::RootRegion region(Cplx(2.1, 0.1), 0.9, 0.8);
  const auto first = roots::find_root(f, region, 1e-13);
  const roots::RootRegion recenter(first.root, 0.05, 0.05);
  const auto second = roots::find_root(f, recenter, 1e-13);
  CHECK(std::abs(first.root - second.root) < 1e-12 * std::abs(first.root));
}
