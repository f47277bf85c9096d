#pragma once

// Fundamental (m = 0, TM) propagating surface-plasmon mode of an infinite
// metal cylinder in a uniform dielectric. The bound-mode condition is
//
//   D(n) = (eps_m / kappa_m) I1(kappa_m R)/I0(kappa_m R)
//        + (eps_1 / kappa_1) K1(kappa_1 R)/K0(kappa_1 R) = 0,
//
// kappa_j = k0 sqrt(n^2 - eps_j) on the decaying branch, fields I-type inside
// and K-type outside. Roots are certified by winding number before Newton.

#include <complex>

namespace nvwire {

using Cplx = std::complex<double>;

/// sqrt(w) with Re >= 0; on the tie (w on the negative real axis) the branch
/// with Im <= 0 is taken so K-type fields decay and, in the radiating region,
/// carry outgoing phase.
Cplx decaying_sqrt(Cplx w);

struct WireGeometry {
  double radius_m = 0.0;
  Cplx eps_metal{};        // at the working wavelength
  double eps_dielectric = 1.0;

  WireGeometry(double radius_m, Cplx eps_metal, double eps_dielectric);
};

struct PlasmonMode {
  double vacuum_wavelength_m = 0.0;
  WireGeometry geometry;
  Cplx n_eff{};                    // k_pl / k0
  double propagation_length_m = 0; // lambda / (4 pi Im n_eff); +inf if lossless
  double residual_rel = 0.0;       // |D| / (|term1| + |term2|) at n_eff
};

/// Fields of the mode at radius r, common arbitrary-amplitude convention
/// E_z(outside, r = R) = 1. h_phi is the impedance-normalized magnetic field
/// Z0 * H_phi; e_phi is identically zero for the m = 0 mode.
struct ModeFieldSample {
  double r_m = 0.0;
  Cplx e_r{}, e_phi{}, e_z{}, h_phi{};
};

/// The bound-mode residual D(n) above (units of meters).
Cplx dispersion_residual(Cplx n_eff_trial, const WireGeometry& geometry,
                         double wavelength_m);

/// Magnitude scale |term1| + |term2| of the dispersion residual at n, used to
/// express |D| relative to its addends.
double dispersion_scale(Cplx n_eff_trial, const WireGeometry& geometry,
                        double wavelength_m);

/// Solves for the unique fundamental mode with Re n_eff > sqrt(eps_1).
/// Search region: Re n in [1.001 sqrt(eps_1), 6], Im n in [-0.05, 1].
/// Throws NoModeError if Re eps_metal >= -eps_dielectric or the winding
/// number over the region is zero.
PlasmonMode solve_fundamental_mode(const WireGeometry& geometry,
                                   double wavelength_m);

ModeFieldSample mode_fields(const PlasmonMode& mode, double r_m);

double propagation_length(const PlasmonMode& mode);

}  // namespace nvwire
