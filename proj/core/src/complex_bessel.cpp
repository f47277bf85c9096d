#include "nvwire/complex_bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nvwire/constants.hpp"
#include "nvwire/error.hpp"

namespace nvwire::bessel {

namespace {

constexpr double kHuge = 1e280;
constexpr double kRescale = 1e-280;
constexpr double kOverflowRe = 705.0;  // exp() still finite with headroom

const Cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};   // i^k
const Cplx kMIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^k

inline Cplx ipow(int k) { return kIPow[((k % 4) + 4) % 4]; }
inline Cplx mipow(int k) { return kMIPow[((k % 4) + 4) % 4]; }

inline bool is_zero(Cplx z) { return z.real() == 0.0 && z.imag() == 0.0; }

// Start order for the backward recurrence: deep enough into the decay regime
// that the contamination of the minimal solution is below 1e-25 relative.
int miller_start(int mmax, double az) {
  int s = std::max(mmax + 1, static_cast<int>(az * 0.5) + 1);
  double acc = 0.0;
  while (true) {
    ++s;
    const double ratio = az / (2.0 * s);
    if (ratio < 0.95) acc += std::log10(ratio);
    if (acc < -25.0) break;
    if (s > 100000) throw RangeError("bessel: argument too large for backward recurrence");
  }
  return s + 2;
}

// Scaled modified Bessel I_m(z) * exp(-Re z) for m = 0..mmax, Re z >= 0.
// Miller backward recurrence normalized with e^z = I0 + 2 sum_k I_k.
void scaled_i_seq(int mmax, Cplx z, std::vector<Cplx>& out) {
  out.assign(mmax + 1, Cplx(0, 0));
  if (is_zero(z)) {
    out[0] = 1.0;
    return;
  }
  const double az = std::abs(z);
  const int start = miller_start(mmax, az);
  const Cplx two_over_z = 2.0 / z;

  Cplx fkp1(0, 0), fk(1e-300, 0), sum(0, 0);
  for (int k = start; k >= 0; --k) {
    // I_{k-1} = (2k/z) I_k + I_{k+1}, iterated downward.
    if (k <= mmax) out[k] = fk;
    sum += (k == 0) ? fk : 2.0 * fk;
    const Cplx fkm1 = two_over_z * static_cast<double>(k) * fk + fkp1;
    fkp1 = fk;
    fk = fkm1;
    if (std::abs(fk.real()) > kHuge || std::abs(fk.imag()) > kHuge) {
      fk *= kRescale;
      fkp1 *= kRescale;
      sum *= kRescale;
      for (int j = std::min(k, mmax + 1); j <= mmax; ++j) out[j] *= kRescale;
    }
  }
  // sum accumulated the normalizer against e^z but is still missing the k = -1
  // step; the loop above added contributions for k = start..0 where the k = 0
  // term enters once. fk now holds the un-normalized I_{-1}; unused.
  (void)fk;
  // I_m e^{-Re z} = raw_m * e^{i Im z} / sum.
  const Cplx phase = std::polar(1.0, z.imag());
  for (int m = 0; m <= mmax; ++m) out[m] = out[m] * phase / sum;
}

// Scaled K_0, K_1 (times e^{+Re z}) for Re z >= 0, z != 0.
// |z| <= 2: Temme-type log series; beyond: Steed's continued fraction CF2.
void scaled_k01(Cplx z, Cplx& k0s, Cplx& k1s) {
  const double az = std::abs(z);
  if (az <= 2.0) {
    // Power series for I0, I1 feeding the K series.
    const Cplx q = 0.25 * z * z;
    Cplx i0(1, 0), i1(0.5 * z);
    Cplx term0(1, 0), term1(0.5 * z);
    Cplx s0(0, 0), s1(0, 0);  // sum c_k H_k and sum k c_k H_k
    Cplx ck(1, 0);
    double hk = 0.0;
    for (int k = 1; k < 40; ++k) {
      term0 *= q / static_cast<double>(k * k);
      term1 *= q / static_cast<double>(k * (k + 1));
      i0 += term0;
      i1 += term1;
      ck *= q / static_cast<double>(k * k);
      hk += 1.0 / k;
      s0 += ck * hk;
      s1 += ck * hk * static_cast<double>(k);
      if (std::abs(term0) < 1e-18 * std::abs(i0) && k > 4) break;
    }
    const Cplx lg = std::log(0.5 * z) + kEulerGamma;
    const Cplx k0 = -lg * i0 + s0;
    const Cplx k1 = i0 / z + lg * i1 - 2.0 / z * s1;
    const Cplx scale = std::exp(Cplx(z.real(), 0));  // |z| <= 2, no overflow
    k0s = k0 * scale;
    k1s = k1 * scale;
    return;
  }

  // CF2 after Temme/Thompson-Barnett, order mu = 0, complex argument.
  const double eps = std::numeric_limits<double>::epsilon();
  const int max_iter = 200000;
  Cplx b = 2.0 * (1.0 + z);
  Cplx d = 1.0 / b;
  Cplx h = d, delh = d;
  Cplx q1(0, 0), q2(1, 0);
  const double a1 = 0.25;
  Cplx q(a1, 0), c(a1, 0);
  double a = -a1;
  Cplx s = 1.0 + q * delh;
  int i = 2;
  for (; i <= max_iter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / static_cast<double>(i);
    const Cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const Cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) <= eps * std::abs(s)) break;
  }
  if (i > max_iter)
    throw AccuracyError("bessel: K continued fraction did not converge", Cplx(0, 0), 1.0);
  h = a1 * h;
  // K0 e^{+Re z} = sqrt(pi/2z) e^{-i Im z} / s.
  const Cplx phase = std::polar(1.0, -z.imag());
  k0s = std::sqrt(kPi / (2.0 * z)) * phase / s;
  k1s = k0s * (0.5 + z - h) / z;
}

struct ScaledIK {
  std::vector<Cplx> iv;  // I_m e^{-Re z}
  std::vector<Cplx> kv;  // K_m e^{+Re z}
};

// Workhorse: scaled I and K sequences for Re z >= 0, z != 0.
ScaledIK ik_core(int mmax, Cplx z) {
  ScaledIK r;
  scaled_i_seq(mmax, z, r.iv);
  r.kv.assign(mmax + 1, Cplx(0, 0));
  Cplx k0s, k1s;
  scaled_k01(z, k0s, k1s);
  r.kv[0] = k0s;
  if (mmax >= 1) r.kv[1] = k1s;
  const Cplx two_over_z = 2.0 / z;
  for (int m = 1; m < mmax; ++m) {
    // K_{m+1} = K_{m-1} + (2m/z) K_m, stable upward.
    r.kv[m + 1] = r.kv[m - 1] + two_over_z * static_cast<double>(m) * r.kv[m];
    if (std::abs(r.kv[m + 1].real()) > kHuge || std::abs(r.kv[m + 1].imag()) > kHuge)
      throw RangeError("bessel: K overflow in upward recurrence");
  }
  return r;
}

void check_order(int order) {
  if (std::abs(order) > kMaxOrder)
    throw std::domain_error("bessel: |order| must be <= 60");
}

// Sequences may run two orders past the cap for derivative assembly.
void check_seq_order(int mmax) {
  if (mmax < 0 || mmax > kMaxOrder + 2)
    throw std::domain_error("bessel: sequence order out of range");
}

Cplx unscale_i(Cplx iv_scaled, double re_z) {
  if (re_z > kOverflowRe) throw RangeError("bessel: I overflow (unscaled form)");
  return iv_scaled * std::exp(re_z);
}

Cplx unscale_k(Cplx kv_scaled, double re_z) {
  // Underflow to zero is allowed and documented; overflow cannot happen here.
  return kv_scaled * std::exp(-re_z);
}

}  // namespace

void mod_seq_scaled(int mmax, Cplx z, std::vector<Cplx>& iv, std::vector<Cplx>& kv) {
  check_seq_order(mmax);
  if (z.real() < 0.0) throw std::domain_error("mod_seq_scaled requires Re z >= 0");
  if (is_zero(z)) throw RangeError("bessel: K_m diverges at z = 0");
  auto r = ik_core(mmax, z);
  iv = std::move(r.iv);
  kv = std::move(r.kv);
}

void mod_seq(int mmax, Cplx z, std::vector<Cplx>& iv, std::vector<Cplx>& kv) {
  mod_seq_scaled(mmax, z, iv, kv);
  for (auto& v : iv) v = unscale_i(v, z.real());
  for (auto& v : kv) v = unscale_k(v, z.real());
}

Mod mod(int order, Cplx z) {
  check_order(order);
  const int m = std::abs(order);  // I_{-m} = I_m, K_{-m} = K_m
  if (is_zero(z)) throw RangeError("bessel: K_m diverges at z = 0");

  const int top = m + 1;
  std::vector<Cplx> iv, kv;
  if (z.real() >= 0.0) {
    mod_seq(top, z, iv, kv);
  } else {
    // Reflection through the principal branch: w = -z has Re w > 0.
    // I_n(z) = (-1)^n I_n(w);  K_n(z) = (-1)^n K_n(w) -/+ i pi I_n(w)
    // for Im z >= 0 / Im z < 0.
    const Cplx w = -z;
    std::vector<Cplx> iw, kw;
    mod_seq(top, w, iw, kw);
    const bool lower = std::signbit(z.imag());
    const Cplx ip = lower ? Cplx(0, kPi) : Cplx(0, -kPi);
    iv.resize(top + 1);
    kv.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
      const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      iv[n] = sgn * iw[n];
      kv[n] = sgn * kw[n] + ip * iw[n];
    }
  }

  Mod out;
  out.i = iv[m];
  out.k = kv[m];
  if (m == 0) {
    out.ip = iv[1];
    out.kp = -kv[1];
  } else {
    out.ip = 0.5 * (iv[m - 1] + iv[m + 1]);
    out.kp = -0.5 * (kv[m - 1] + kv[m + 1]);
  }
  return out;
}

void cyl_seq(int mmax, Cplx z, std::vector<Cplx>& jv, std::vector<Cplx>& hv) {
  check_seq_order(mmax);
  if (is_zero(z)) throw RangeError("bessel: H^(1)_m diverges at z = 0");

  if (!std::signbit(z.imag())) {
    // Upper half plane (and the real axis approached from above):
    // J_m(z) = i^m I_m(w), H1_m(z) = (2/pi)(-i)^{m+1} K_m(w), w = -iz, Re w >= 0.
    const Cplx w = Cplx(z.imag(), -z.real());
    std::vector<Cplx> iv, kv;
    mod_seq(mmax, w, iv, kv);
    jv.resize(mmax + 1);
    hv.resize(mmax + 1);
    for (int n = 0; n <= mmax; ++n) {
      jv[n] = ipow(n) * iv[n];
      hv[n] = (2.0 / kPi) * mipow(n + 1) * kv[n];
    }
  } else {
    // Lower half plane: Schwarz reflection. J has real Taylor coefficients and
    // H2_m(z) = conj(H1_m(conj z)); H1 = 2J - H2 is dominant here, so the
    // subtraction is benign.
    std::vector<Cplx> jc, hc;
    cyl_seq(mmax, std::conj(z), jc, hc);
    jv.resize(mmax + 1);
    hv.resize(mmax + 1);
    for (int n = 0; n <= mmax; ++n) {
      jv[n] = std::conj(jc[n]);
      hv[n] = 2.0 * jv[n] - std::conj(hc[n]);
    }
  }
}

Cyl cyl(int order, Cplx z) {
  check_order(order);
  const int m = std::abs(order);

  if (is_zero(z)) {
    // J is entire; Y and H1 diverge at the origin.
    Cyl out;
    out.j = (m == 0) ? 1.0 : 0.0;
    out.jp = (m == 1) ? 0.5 : 0.0;
    const double inf = std::numeric_limits<double>::infinity();
    out.y = Cplx(-inf, 0);
    out.yp = Cplx(inf, 0);
    out.h1 = Cplx(out.j.real(), -inf);
    out.h1p = Cplx(out.jp.real(), inf);
    if (order < 0 && m % 2 == 1) {
      out.j = -out.j;
      out.jp = -out.jp;
    }
    return out;
  }

  std::vector<Cplx> jv, hv;
  cyl_seq(m + 1, z, jv, hv);

  Cyl out;
  out.j = jv[m];
  out.h1 = hv[m];
  if (m == 0) {
    out.jp = -jv[1];
    out.h1p = -hv[1];
  } else {
    out.jp = 0.5 * (jv[m - 1] - jv[m + 1]);
    out.h1p = 0.5 * (hv[m - 1] - hv[m + 1]);
  }
  if (order < 0 && m % 2 == 1) {
    out.j = -out.j;
    out.jp = -out.jp;
    out.h1 = -out.h1;
    out.h1p = -out.h1p;
  }
  out.y = Cplx(0, -1) * (out.h1 - out.j);
  out.yp = Cplx(0, -1) * (out.h1p - out.jp);
  return out;
}

}  // namespace nvwire::bessel
