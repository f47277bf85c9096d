#pragma once

// Cylinder functions of integer order and complex argument.
//
// Everything is built on one workhorse: the modified pair (I_m, K_m) for
// Re z >= 0, computed by Miller backward recurrence with e^z normalization
// (I) and a Temme-type series / Steed continued fraction plus upward
// recurrence (K). J, Y and H1 are obtained through the rotation formulas
//   J_m(z)  = i^m I_m(-iz),          Im z >= 0,
//   H1_m(z) = (2/pi) (-i)^(m+1) K_m(-iz),
// with Schwarz reflection for the lower half plane. Near the negative real
// axis K follows the principal branch; the continuation formula
// K_m(z e^{±i pi}) = (-1)^m K_m(z) ∓ i pi I_m(z) covers Re z < 0.
//
// Supported: |order| <= 60, 0 < |z| <~ 700 (unscaled values must fit in a
// double; overflow raises RangeError). K diverges at z = 0 (RangeError);
// I_m(0) and J_m(0) are exact Kronecker deltas.

#include <complex>
#include <vector>

namespace nvwire::bessel {

using Cplx = std::complex<double>;

inline constexpr int kMaxOrder = 60;

struct Cyl {
  Cplx j, jp;    // J_m, J_m'
  Cplx y, yp;    // Y_m, Y_m'
  Cplx h1, h1p;  // H^(1)_m, H^(1)_m'
};

struct Mod {
  Cplx i, ip;  // I_m, I_m'
  Cplx k, kp;  // K_m, K_m'
};

/// J, Y, H1 and derivatives at one order.
Cyl cyl(int order, Cplx z);

/// I, K and derivatives at one order.
Mod mod(int order, Cplx z);

/// I_0..I_mmax and K_0..K_mmax in one pass (cheaper than repeated mod()).
/// Requires Re z >= 0.
void mod_seq(int mmax, Cplx z, std::vector<Cplx>& iv, std::vector<Cplx>& kv);

/// Scaled sequences for ratio work at large arguments:
/// iv[m] = I_m(z) * exp(-Re z),  kv[m] = K_m(z) * exp(+Re z).  Requires Re z >= 0.
void mod_seq_scaled(int mmax, Cplx z, std::vector<Cplx>& iv,
                    std::vector<Cplx>& kv);

/// J_0..J_mmax and H1_0..H1_mmax in one pass, any complex z != 0.
void cyl_seq(int mmax, Cplx z, std::vector<Cplx>& jv, std::vector<Cplx>& hv);

}  // namespace nvwire::bessel
