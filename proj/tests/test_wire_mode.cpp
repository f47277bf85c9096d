#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nvwire/constants.hpp"
#include "nvwire/drude.hpp"
#include "nvwire/error.hpp"
#include "nvwire/root_finding.hpp"
#include "nvwire/wire_mode.hpp"

using namespace nvwire;
using Cplx = std::complex<double>;

namespace {

const double kLambda = 700e-9;

WireGeometry silver_wire(double radius_nm) {
  return WireGeometry(radius_nm * 1e-9,
                      drude_epsilon(kLambda, default_silver()), 3.0);
}

// Independent root-location oracle: recursive 2-D winding-number grid scan.
// Subdivides the cell containing the single zero until it is 1e-8 wide.
Cplx winding_scan_oracle(const WireGeometry& g, double lambda) {
  auto f = [&](Cplx n) { return dispersion_residual(n, g, lambda); };
  double re_lo = 1.001 * std::sqrt(3.0), re_hi = 6.0;
  double im_lo = -0.05, im_hi = 1.0;
  for (int level = 0; level < 40; ++level) {
    if (re_hi - re_lo < 1e-9 && im_hi - im_lo < 1e-9) break;
    const double rm = 0.5 * (re_lo + re_hi), im = 0.5 * (im_lo + im_hi);
    // 2x2 subcells, slightly inflated to be robust against roots on edges.
    struct Cell { double a, b, c, d; };
    const Cell cells[4] = {{re_lo, rm, im_lo, im},
                           {rm, re_hi, im_lo, im},
                           {re_lo, rm, im, im_hi},
                           {rm, re_hi, im, im_hi}};
    bool found = false;
    for (const auto& c : cells) {
      const roots::RootRegion rr(Cplx(0.5 * (c.a + c.b), 0.5 * (c.c + c.d)),
                                 0.5 * (c.b - c.a) * 1.0008,
                                 0.5 * (c.d - c.c) * 1.0008);
      int w = 0;
      try {
        w = roots::winding_number(f, rr);
      } catch (const Error&) {
        continue;
      }
      if (w >= 1) {
        re_lo = c.a; re_hi = c.b; im_lo = c.c; im_hi = c.d;
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  return Cplx(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi));
}

}  // namespace

TEST_CASE("flat-interface limit at R = 10 lambda") {
  const auto geom = silver_wire(7000.0);  // 7 um radius = 10 lambda
  const auto mode = solve_fundamental_mode(geom, kLambda);
  const Cplx eps_m = geom.eps_metal;
  const Cplx flat = std::sqrt(eps_m * 3.0 / (eps_m + 3.0));
  // Both components against the mode scale; the curvature correction to the
  // small Im part is itself ~1.5% of Im at this radius.
  CHECK(std::abs(mode.n_eff.real() - flat.real()) < 0.005 * std::abs(flat));
  CHECK(std::abs(mode.n_eff.imag() - flat.imag()) < 0.005 * std::abs(flat));
}

TEST_CASE("R = 27.5 nm mode matches the winding-scan oracle") {
  const auto geom = silver_wire(27.5);
  const auto mode = solve_fundamental_mode(geom, kLambda);
  const Cplx oracle = winding_scan_oracle(geom, kLambda);
  CHECK(std::abs(mode.n_eff - oracle) < 1e-8 * std::abs(oracle));
  // Residual quality and certification.
  CHECK(mode.residual_rel < 1e-10);
  const roots::RootRegion around(mode.n_eff, 1e-4, 1e-4);
  auto f = [&](Cplx n) { return dispersion_residual(n, geom, kLambda); };
  CHECK(roots::winding_number(f, around) == 1);
}

TEST_CASE("dispersion residual vanishes at the solved mode") {
  for (double rnm : {20.0, 27.5, 32.5, 40.0}) {
    const auto geom = silver_wire(rnm);
    const auto mode = solve_fundamental_mode(geom, kLambda);
    const double rel = std::abs(dispersion_residual(mode.n_eff, geom, kLambda)) /
                       dispersion_scale(mode.n_eff, geom, kLambda);
    CHECK(rel < 1e-10);
  }
}

TEST_CASE("planar-limit bracketing of the dispersion sign change") {
  const auto geom = silver_wire(7000.0);
  const Cplx flat = std::sqrt(geom.eps_metal * 3.0 / (geom.eps_metal + 3.0));
  // Along the real direction through the flat-interface value the residual's
  // real part changes sign within +-0.01.
  const Cplx lo = dispersion_residual(flat - 0.01, geom, kLambda);
  const Cplx hi = dispersion_residual(flat + 0.01, geom, kLambda);
  CHECK(lo.real() * hi.real() < 0.0);
}

namespace {

// Extended-precision I/K oracle (power/log series, complex<long double>),
// valid for the small arguments of the 27.5 nm trial evaluation.
using CplxL = std::complex<long double>;

CplxL i_series(int m, CplxL z) {
  CplxL term = std::pow(0.5L * z, static_cast<long double>(m));
  for (int k = 1; k <= m; ++k) term /= static_cast<long double>(k);
  CplxL sum = term;
  const CplxL q = 0.25L * z * z;
  for (int k = 1; k < 60; ++k) {
    term *= q / static_cast<long double>(k) / static_cast<long double>(k + m);
    sum += term;
  }
  return sum;
}

CplxL k0_series(CplxL z) {
  const long double eg = 0.5772156649015328606065120900824L;
  CplxL s(0.0L, 0.0L), ck(1.0L, 0.0L);
  long double hk = 0.0L;
  const CplxL q = 0.25L * z * z;
  for (int k = 1; k < 60; ++k) {
    ck *= q / static_cast<long double>(k) / static_cast<long double>(k);
    hk += 1.0L / k;
    s += ck * hk;
  }
  return -(std::log(0.5L * z) + eg) * i_series(0, z) + s;
}

CplxL k1_series(CplxL z) {
  const long double eg = 0.5772156649015328606065120900824L;
  CplxL s(0.0L, 0.0L), ck(1.0L, 0.0L);
  long double hk = 0.0L;
  const CplxL q = 0.25L * z * z;
  for (int k = 1; k < 60; ++k) {
    ck *= q / static_cast<long double>(k) / static_cast<long double>(k);
    hk += 1.0L / k;
    s += ck * hk * static_cast<long double>(k);
  }
  return i_series(0, z) / z + (std::log(0.5L * z) + eg) * i_series(1, z) -
         2.0L / z * s;
}

}  // namespace

TEST_CASE("trial-value example matches the extended-precision formula") {
  const auto geom = silver_wire(27.5);
  const Cplx d = dispersion_residual(Cplx(2.0, 0.0), geom, kLambda);
  CHECK(std::isfinite(d.real()));
  CHECK(std::isfinite(d.imag()));

  const long double k0 = 2.0L * 3.14159265358979323846264338327950288L / 700e-9L;
  const CplxL eps_m(geom.eps_metal.real(), geom.eps_metal.imag());
  const CplxL km = k0 * std::sqrt(CplxL(4.0L, 0.0L) - eps_m);
  const CplxL k1 = k0 * std::sqrt(CplxL(1.0L, 0.0L));  // 4 - 3
  const long double R = 27.5e-9L;
  const CplxL oracle = eps_m / km * (i_series(1, km * R) / i_series(0, km * R)) +
                       CplxL(3.0L, 0.0L) / k1 *
                           (k1_series(k1 * R) / k0_series(k1 * R));
  const Cplx oracle_d(static_cast<double>(oracle.real()),
                      static_cast<double>(oracle.imag()));
  CHECK(std::abs(d - oracle_d) < 1e-12 * std::abs(oracle_d));
}

TEST_CASE("dielectric cylinder has no plasmon mode") {
  CHECK_THROWS_AS(
      solve_fundamental_mode(WireGeometry(27.5e-9, Cplx(2.0, 0.0), 3.0), kLambda),
      NoModeError);
}

TEST_CASE("confinement grows as the wire thins") {
  const auto n20 = solve_fundamental_mode(silver_wire(20.0), kLambda).n_eff;
  const auto n35 = solve_fundamental_mode(silver_wire(35.0), kLambda).n_eff;
  CHECK(n20.real() > n35.real());
}

TEST_CASE("mode is continuous in radius (no branch jumps)") {
  for (double rnm = 20.0; rnm <= 40.0; rnm += 5.0) {
    const auto base = solve_fundamental_mode(silver_wire(rnm), kLambda).n_eff;
    const auto up = solve_fundamental_mode(silver_wire(rnm * 1.01), kLambda).n_eff;
    const auto dn = solve_fundamental_mode(silver_wire(rnm * 0.99), kLambda).n_eff;
    CHECK(std::abs(up - base) < 0.05 * std::abs(base));
    CHECK(std::abs(dn - base) < 0.05 * std::abs(base));
  }
}

TEST_CASE("field continuity and decay") {
  const auto geom = silver_wire(27.5);
  const auto mode = solve_fundamental_mode(geom, kLambda);
  const double R = geom.radius_m;

  const auto in = mode_fields(mode, R * (1.0 - 1e-9));
  const auto out = mode_fields(mode, R * (1.0 + 1e-9));
  CHECK(std::abs(in.e_z - out.e_z) / std::abs(out.e_z) < 1e-6);
  CHECK(std::abs(in.h_phi - out.h_phi) / std::abs(out.h_phi) < 1e-6);

  // Exactly at the surface the outside convention fixes E_z = 1.
  const auto surf = mode_fields(mode, R);
  CHECK(surf.e_z == Cplx(1.0, 0.0));
  CHECK(surf.e_phi == Cplx(0.0, 0.0));

  // Monotone decay outside.
  double prev = std::abs(mode_fields(mode, R).e_r);
  for (double f : {2.0, 4.0, 10.0}) {
    const double cur = std::abs(mode_fields(mode, f * R).e_r);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(std::abs(mode_fields(mode, 10.0 * R).e_r) <
        0.05 * std::abs(mode_fields(mode, R).e_r));

  // The axial field is small against the radial one at the surface.
  CHECK(std::abs(surf.e_z) / std::abs(surf.e_r) < 0.5);
}

TEST_CASE("boundary continuity at 1e-9 after tightening") {
  // The spec-level check: E_z and H_phi continuous to relative 1e-9.
  const auto geom = silver_wire(27.5);
  const auto mode = solve_fundamental_mode(geom, kLambda);
  const double R = geom.radius_m;
  const auto in = mode_fields(mode, std::nextafter(R, 0.0));
  const auto out = mode_fields(mode, R);
  CHECK(std::abs(in.e_z - out.e_z) / std::abs(out.e_z) < 1e-9);
  CHECK(std::abs(in.h_phi - out.h_phi) / std::abs(out.h_phi) < 1e-9);
}

TEST_CASE("propagation length definition and scaling") {
  const auto geom = silver_wire(27.5);
  auto mode = solve_fundamental_mode(geom, kLambda);
  const double L = propagation_length(mode);
  CHECK(L == doctest::Approx(kLambda / (4.0 * kPi * mode.n_eff.imag())));
  CHECK(L > 0.0);

  // Doubling Im n_eff halves the length.
  PlasmonMode doubled = mode;
  doubled.n_eff = Cplx(mode.n_eff.real(), 2.0 * mode.n_eff.imag());
  CHECK(propagation_length(doubled) == doctest::Approx(0.5 * L).epsilon(1e-12));

  // Lossless metal: infinite propagation length sentinel.
  auto p = default_silver();
  const DrudeParameters lossless(p.eps_inf, p.omega_p, 0.0);
  const WireGeometry lg(27.5e-9, drude_epsilon(kLambda, lossless), 3.0);
  const auto lm = solve_fundamental_mode(lg, kLambda);
  CHECK(std::isinf(propagation_length(lm)));
}
