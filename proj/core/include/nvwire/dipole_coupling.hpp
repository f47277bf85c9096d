#pragma once

// Spontaneous-emission rate enhancement of a point dipole at distance d' from
// the wire surface, decomposed into plasmon / radiative / nonradiative
// channels.
//
// total = 1 + (6 pi / k1) Im[ p.G_sc(r0,r0).p ], with G_sc expanded over
// angular orders m and axial wavenumber k_z. Per (m, k_z) the scattering
// matrix follows from the 4x4 tangential-continuity system at r = R linking
// regular J-type incident waves to outgoing H-type scattered and J-type
// transmitted waves. The m = 0 TM pole at k_z = n_eff k0 carries the guided
// channel: its residue is extracted with a small circular contour and the
// pole term is integrated analytically over [k1, K_max], leaving a smooth
// background integrand for the quenching channel.

#include <complex>
#include <string>
#include <vector>

#include "nvwire/wire_mode.hpp"

namespace nvwire {

enum class Orientation { radial, axial, azimuthal };

std::string to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

struct EmitterConfig {
  double distance_from_surface_m = 0.0;  // d'
  Orientation orientation = Orientation::radial;
  double vacuum_wavelength_m = 0.0;
  double eps_background = 1.0;  // must match WireGeometry::eps_dielectric

  EmitterConfig(double distance_from_surface_m, Orientation orientation,
                double vacuum_wavelength_m, double eps_background);
};

struct RateBreakdown {
  double gamma_pl = 0.0;   // Gamma_pl / Gamma_0
  double gamma_rad = 0.0;  // includes the free-space unit
  double gamma_nr = 0.0;
  double total = 0.0;      // = gamma_pl + gamma_rad + gamma_nr
  double beta = 0.0;       // gamma_pl / total
  int m_truncation = 0;
  long evaluations = 0;
  std::vector<std::string> notes;  // clamp warnings, accuracy annotations
};

struct CouplingAccuracy {
  double m_tol = 1e-4;      // last-order share of the running m-sum
  int m_start = 10;
  int m_max = 60;
  double kz_rel_tol = 1e-7;
  int max_subdivisions = 4000;
  double cutoff_distance_factor = 40.0;  // K_max = max(40/d', 8 k1)
  double cutoff_k1_factor = 8.0;
  int residue_points = 64;
};

/// Full channel decomposition for one emitter placement.
RateBreakdown total_rate_enhancement(const WireGeometry& geometry,
                                     const EmitterConfig& emitter,
                                     const CouplingAccuracy& acc = {});

/// Guided-channel rate only (residue route). Throws NoModeError when the
/// geometry carries no bound mode, and returns 0 for azimuthal dipoles.
double gamma_plasmon(const WireGeometry& geometry, const EmitterConfig& emitter,
                     const CouplingAccuracy& acc = {});

/// m = 0 TM scattering denominator as a function of the axial wavenumber
/// (kz in rad/m). Its zero coincides with the mode solver's n_eff * k0.
Cplx tm_scattering_denominator(const WireGeometry& geometry,
                               double wavelength_m, Cplx kz);

namespace coupling_detail {

/// Background-medium LDOS sum rule: the normalized radiating-region integral
/// for a homogeneous medium, analytically equal to 1 for every orientation.
/// Exposed so tests can pin the expansion normalization.
double homogeneous_ldos(Orientation orientation, double eps_background,
                        double wavelength_m, double r0_m, int m_max = 40);

}  // namespace coupling_detail

}  // namespace nvwire
