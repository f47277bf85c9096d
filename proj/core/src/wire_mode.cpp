#include "nvwire/wire_mode.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "nvwire/complex_bessel.hpp"
#include "nvwire/constants.hpp"
#include "nvwire/error.hpp"
#include "nvwire/root_finding.hpp"

namespace nvwire {

namespace {

struct DispersionTerms {
  Cplx metal, dielectric;
};

// Scaled I1/I0 and K1/K0 keep the evaluation finite out to radii of many
// wavelengths (the flat-interface regime).
Cplx ratio_i1_i0(Cplx z) {
  std::vector<Cplx> iv, kv;
  bessel::mod_seq_scaled(1, z, iv, kv);
  return iv[1] / iv[0];
}

Cplx ratio_k1_k0(Cplx z) {
  std::vector<Cplx> iv, kv;
  bessel::mod_seq_scaled(1, z, iv, kv);
  return kv[1] / kv[0];
}

DispersionTerms dispersion_terms(Cplx n, const WireGeometry& g,
                                 double wavelength_m) {
  const double k0 = 2.0 * kPi / wavelength_m;
  const Cplx kappa_m = k0 * decaying_sqrt(n * n - g.eps_metal);
  const Cplx kappa_1 = k0 * decaying_sqrt(n * n - g.eps_dielectric);
  return {g.eps_metal / kappa_m * ratio_i1_i0(kappa_m * g.radius_m),
          g.eps_dielectric / kappa_1 * ratio_k1_k0(kappa_1 * g.radius_m)};
}

}  // namespace

Cplx decaying_sqrt(Cplx w) {
  Cplx s = std::sqrt(w);
  if (s.real() < 0.0) s = -s;
  if (s.real() == 0.0 && s.imag() > 0.0) s = -s;
  return s;
}

WireGeometry::WireGeometry(double radius_m, Cplx eps_metal,
                           double eps_dielectric)
    : radius_m(radius_m), eps_metal(eps_metal), eps_dielectric(eps_dielectric) {
  if (!(radius_m > 0.0)) throw std::domain_error("WireGeometry: radius must be > 0");
  if (!(eps_dielectric >= 1.0))
    throw std::domain_error("WireGeometry: eps_dielectric must be >= 1");
}

Cplx dispersion_residual(Cplx n, const WireGeometry& g, double wavelength_m) {
  const auto t = dispersion_terms(n, g, wavelength_m);
  return t.metal + t.dielectric;
}

double dispersion_scale(Cplx n, const WireGeometry& g, double wavelength_m) {
  const auto t = dispersion_terms(n, g, wavelength_m);
  return std::abs(t.metal) + std::abs(t.dielectric);
}

PlasmonMode solve_fundamental_mode(const WireGeometry& g, double wavelength_m) {
  if (!(wavelength_m > 0.0))
    throw std::domain_error("solve_fundamental_mode: wavelength must be > 0");
  if (!(g.eps_metal.real() < -g.eps_dielectric))
    throw NoModeError(
        "solve_fundamental_mode: no bound mode (requires Re eps_metal < "
        "-eps_dielectric)");

  const double n1 = std::sqrt(g.eps_dielectric);
  const double re_lo = 1.001 * n1, re_hi = 6.0;
  const double im_lo = -0.05, im_hi = 1.0;
  roots::RootRegion region(
      Cplx(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)),
      0.5 * (re_hi - re_lo), 0.5 * (im_hi - im_lo));

  auto f = [&](Cplx n) { return dispersion_residual(n, g, wavelength_m); };

  roots::RootResult root;
  try {
    root = roots::find_root(f, region, 1e-13);
  } catch (const NoRootError&) {
    throw NoModeError(
        "solve_fundamental_mode: winding number 0 over the search region");
  }

  PlasmonMode mode{wavelength_m, g, root.root, 0.0, 0.0};
  mode.residual_rel = std::abs(f(root.root)) /
                      dispersion_scale(root.root, g, wavelength_m);
  if (!(mode.residual_rel < 1e-10))
    throw AccuracyError("solve_fundamental_mode: residual above 1e-10 relative",
                        root.root, mode.residual_rel);
  mode.propagation_length_m = propagation_length(mode);
  return mode;
}

double propagation_length(const PlasmonMode& mode) {
  const double im = mode.n_eff.imag();
  if (im <= 1e-14 * std::abs(mode.n_eff))
    return std::numeric_limits<double>::infinity();
  return mode.vacuum_wavelength_m / (4.0 * kPi * im);
}

ModeFieldSample mode_fields(const PlasmonMode& mode, double r_m) {
  if (r_m < 0.0) throw std::domain_error("mode_fields: r must be >= 0");
  const WireGeometry& g = mode.geometry;
  const double k0 = 2.0 * kPi / mode.vacuum_wavelength_m;
  const Cplx k_pl = mode.n_eff * k0;
  const double R = g.radius_m;

  ModeFieldSample s;
  s.r_m = r_m;
  s.e_phi = 0.0;

  if (r_m >= R) {
    const Cplx kap1 = k0 * decaying_sqrt(mode.n_eff * mode.n_eff - g.eps_dielectric);
    std::vector<Cplx> ivr, kvr, ivR, kvR;
    bessel::mod_seq_scaled(1, kap1 * r_m, ivr, kvr);
    bessel::mod_seq_scaled(1, kap1 * R, ivR, kvR);
    const double expo = -(kap1 * Cplx(r_m - R)).real();
    const Cplx k0ratio = kvr[0] / kvR[0] * std::exp(expo);
    const Cplx k1ratio = kvr[1] / kvR[0] * std::exp(expo);
    s.e_z = k0ratio;
    s.e_r = Cplx(0, 1) * k_pl / kap1 * k1ratio;
    s.h_phi = Cplx(0, 1) * g.eps_dielectric * k0 / kap1 * k1ratio;
  } else {
    const Cplx kapm = k0 * decaying_sqrt(mode.n_eff * mode.n_eff - g.eps_metal);
    std::vector<Cplx> ivR, kvR;
    bessel::mod_seq_scaled(1, kapm * R, ivR, kvR);
    const double expo = (kapm * Cplx(r_m - R)).real();
    Cplx i0ratio, i1ratio;
    if (r_m == 0.0) {
      i0ratio = std::exp(expo) / ivR[0];  // I0(0) = 1, I1(0) = 0
      i1ratio = 0.0;
    } else {
      std::vector<Cplx> ivr, kvr;
      bessel::mod_seq_scaled(1, kapm * r_m, ivr, kvr);
      i0ratio = ivr[0] / ivR[0] * std::exp(expo);
      i1ratio = ivr[1] / ivR[0] * std::exp(expo);
    }
    s.e_z = i0ratio;
    s.e_r = -Cplx(0, 1) * k_pl / kapm * i1ratio;
    s.h_phi = -Cplx(0, 1) * g.eps_metal * k0 / kapm * i1ratio;
  }
  return s;
}

}  // namespace nvwire
