#include "nvwire/dipole_coupling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "nvwire/complex_bessel.hpp"
#include "nvwire/constants.hpp"
#include "nvwire/error.hpp"
#include "nvwire/quadrature.hpp"

namespace nvwire {

namespace {

using bessel::Cplx;

// Column-equilibrated partial-pivot solve of the 4x4 continuity system for
// both incidences at once. Returns x[0..3] for rhs_m and x[4..7] for rhs_n.
std::array<Cplx, 8> solve44(std::array<std::array<Cplx, 4>, 4> a,
                            std::array<Cplx, 4> rm, std::array<Cplx, 4> rn) {
  double cs[4];
  for (int j = 0; j < 4; ++j) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s = std::max(s, std::abs(a[i][j]));
    cs[j] = (s > 0.0) ? s : 1.0;
    for (int i = 0; i < 4; ++i) a[i][j] /= cs[j];
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    if (piv != col) {
      std::swap(a[col], a[piv]);
      std::swap(rm[col], rm[piv]);
      std::swap(rn[col], rn[piv]);
    }
    const Cplx d = a[col][col];
    if (std::abs(d) == 0.0)
      throw AccuracyError("coupling: singular boundary system", Cplx(0, 0), 1.0);
    for (int row = col + 1; row < 4; ++row) {
      const Cplx f = a[row][col] / d;
      for (int k = col; k < 4; ++k) a[row][k] -= f * a[col][k];
      rm[row] -= f * rm[col];
      rn[row] -= f * rn[col];
    }
  }
  // Back-substitute in the scaled unknowns y_j = cs_j x_j, unscale at the end.
  std::array<Cplx, 8> x{};
  for (int row = 3; row >= 0; --row) {
    Cplx sm = rm[row], sn = rn[row];
    for (int k = row + 1; k < 4; ++k) {
      sm -= a[row][k] * x[k];
      sn -= a[row][k] * x[k + 4];
    }
    x[row] = sm / a[row][row];
    x[row + 4] = sn / a[row][row];
  }
  for (int j = 0; j < 4; ++j) {
    x[j] /= cs[j];
    x[j + 4] /= cs[j];
  }
  return x;
}

struct ScatterCoeffs {
  Cplx r_mm, r_nm, r_mn, r_nn;
};

class CouplingKernel {
 public:
  CouplingKernel(const WireGeometry& g, const EmitterConfig& e,
                 const CouplingAccuracy& acc)
      : geom_(g), acc_(acc), orientation_(e.orientation) {
    k0_ = 2.0 * kPi / e.vacuum_wavelength_m;
    k1_ = std::sqrt(g.eps_dielectric) * k0_;
    k2_ = std::sqrt(g.eps_metal) * k0_;
    r0_ = g.radius_m + e.distance_from_surface_m;
    R_ = g.radius_m;
    m_ = acc.m_start;
    calibrate_m();
  }

  int m_truncation() const { return m_; }
  void force_m(int m) { m_ = std::min(m, acc_.m_max); }
  double k1() const { return k1_; }

  // W(kz): half-line integrand of the scattered Green's function projection,
  // total - 1 = Im[ 2 * Integral_0^inf W dkz ]. Analytic in kz off the
  // branch cut (-k1, k1) except for the guided-mode poles.
  Cplx integrand(Cplx kz) const { return eval(kz, m_); }

  // m = 0 part only; for radial/axial dipoles this carries the TM pole.
  Cplx integrand_m0(Cplx kz) const { return eval(kz, 0); }

  mutable long evaluations = 0;

 private:
  Cplx eval(Cplx kz, int mmax) const {
    ++evaluations;
    const Cplx eta1sq = k1_ * k1_ - kz * kz;
    const Cplx eta2sq = k2_ * k2_ - kz * kz;
    // eta = i kappa with the decaying/outgoing branch of kappa.
    const Cplx eta1 = Cplx(0, 1) * decaying_sqrt(-eta1sq);
    const Cplx eta2 = Cplx(0, 1) * decaying_sqrt(-eta2sq);

    // Far-evanescent guard: integrand ~ exp(-2 Re kappa1 d'), negligible and
    // prone to under/overflow chains well past the cutoff.
    const double expo = 2.0 * (Cplx(0, -1) * eta1).real() * (r0_ - R_);
    if (expo > 400.0) return Cplx(0, 0);

    std::vector<Cplx> j_R, h_R, j_r0, h_r0, j2_R, h2_R;
    bessel::cyl_seq(mmax + 1, eta1 * R_, j_R, h_R);
    bessel::cyl_seq(mmax + 1, eta1 * r0_, j_r0, h_r0);
    bessel::cyl_seq(mmax + 1, eta2 * R_, j2_R, h2_R);

    Cplx sum(0, 0);
    for (int m = 0; m <= mmax; ++m) {
      const Cplx f = order_term(m, kz, eta1, eta2, j_R, h_R, h_r0, j2_R);
      sum += (m == 0) ? f : 2.0 * f;
    }
    return Cplx(0, 0.75) / k1_ * sum;  // (3 i / 4 k1) * sum
  }

  Cplx order_term(int m, Cplx kz, Cplx eta1, Cplx eta2,
                  const std::vector<Cplx>& j_R, const std::vector<Cplx>& h_R,
                  const std::vector<Cplx>& h_r0,
                  const std::vector<Cplx>& j2_R) const {
    auto dval = [](const std::vector<Cplx>& v, int m) {
      return (m == 0) ? -v[1] : 0.5 * (v[m - 1] - v[m + 1]);
    };
    const Cplx j1 = j_R[m], j1p = dval(j_R, m);
    const Cplx h1 = h_R[m], h1p = dval(h_R, m);
    const Cplx j2 = j2_R[m], j2p = dval(j2_R, m);
    const Cplx hs = h_r0[m], hsp = dval(h_r0, m);

    const Cplx e1 = eta1 * eta1, e2 = eta2 * eta2;
    const double md = m;
    const Cplx mk = md * kz;

    std::array<std::array<Cplx, 4>, 4> a{};
    // E_z, H_z, E_phi, H_phi continuity at r = R; unknowns
    // (scattered M, scattered N, transmitted M, transmitted N).
    a[0] = {Cplx(0, 0), e1 / k1_ * h1, Cplx(0, 0), -e2 / k2_ * j2};
    a[1] = {e1 * h1, Cplx(0, 0), -e2 * j2, Cplx(0, 0)};
    a[2] = {-eta1 * h1p, -mk / (k1_ * R_) * h1, eta2 * j2p, mk / (k2_ * R_) * j2};
    a[3] = {-mk / R_ * h1, -k1_ * eta1 * h1p, mk / R_ * j2, k2_ * eta2 * j2p};

    const std::array<Cplx, 4> rhs_m = {Cplx(0, 0), -e1 * j1, eta1 * j1p,
                                       mk / R_ * j1};
    const std::array<Cplx, 4> rhs_n = {-e1 / k1_ * j1, Cplx(0, 0),
                                       mk / (k1_ * R_) * j1, k1_ * eta1 * j1p};

    const auto x = solve44(a, rhs_m, rhs_n);
    const Cplx r_mm = x[0], r_nm = x[1];
    const Cplx r_mn = x[4], r_nn = x[5];

    // Products are associated coefficient-first: the scattering coefficients
    // compensate the exponential size of the outgoing fields, so (r*h)*h stays
    // in range where h*h alone would not.
    switch (orientation_) {
      case Orientation::radial: {
        const Cplx t_te = (md * md) / (r0_ * r0_) / e1 * (r_mm * hs) * hs;
        const Cplx t_x = mk / (k1_ * r0_) / eta1 * ((r_nm + r_mn) * hs) * hsp;
        const Cplx t_tm = kz * kz / (k1_ * k1_) * (r_nn * hsp) * hsp;
        return t_te + t_x + t_tm;
      }
      case Orientation::axial:
        return e1 / (k1_ * k1_) * (r_nn * hs) * hs;
      case Orientation::azimuthal: {
        const Cplx t_te = (r_mm * hsp) * hsp;
        const Cplx t_x = mk / (k1_ * r0_) / eta1 * ((r_nm + r_mn) * hs) * hsp;
        const Cplx t_tm =
            (md * md) * kz * kz / (k1_ * k1_ * r0_ * r0_) / e1 * (r_nn * hs) * hs;
        return t_te + t_x + t_tm;
      }
    }
    return Cplx(0, 0);
  }

  // Fixed m truncation for the whole kz range: grow until the last two orders
  // contribute below m_tol of the running sum at every probe wavenumber.
  void calibrate_m() {
    const double probes[] = {0.5, 0.9, 1.1, 1.5, 3.0, 6.0};
    int m = std::max(2, acc_.m_start);
    for (;;) {
      bool ok = true;
      for (double p : probes) {
        const Cplx kz = Cplx(p * k1_, 0);
        const Cplx eta1 = Cplx(0, 1) * decaying_sqrt(kz * kz - k1_ * k1_);
        const Cplx eta2 = Cplx(0, 1) * decaying_sqrt(kz * kz - k2_ * k2_);
        const double expo = 2.0 * (Cplx(0, -1) * eta1).real() * (r0_ - R_);
        if (expo > 400.0) continue;
        std::vector<Cplx> j_R, h_R, j_r0, h_r0, j2_R, h2_R;
        bessel::cyl_seq(m + 1, eta1 * R_, j_R, h_R);
        bessel::cyl_seq(m + 1, eta1 * r0_, j_r0, h_r0);
        bessel::cyl_seq(m + 1, eta2 * R_, j2_R, h2_R);
        double running = 0.0;
        double last = 0.0, prev = 0.0;
        for (int mm = 0; mm <= m; ++mm) {
          const double t = std::abs(
              order_term(mm, kz, eta1, eta2, j_R, h_R, h_r0, j2_R));
          running += (mm == 0) ? t : 2.0 * t;
          prev = last;
          last = t;
        }
        if (running > 0.0 && (last + prev) > acc_.m_tol * running) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      if (m >= acc_.m_max)
        throw AccuracyError("coupling: angular order sum not converged at m_max",
                            Cplx(m, 0), acc_.m_tol);
      m = std::min(acc_.m_max, m + 4);
    }
    m_ = m;
  }

  WireGeometry geom_;
  CouplingAccuracy acc_;
  Orientation orientation_;
  double k0_ = 0, k1_ = 0, r0_ = 0, R_ = 0;
  Cplx k2_{};
  int m_ = 0;
};

// Residue of f at the (simple) pole c by an N-point trapezoid on a circle.
Cplx circle_residue(const std::function<Cplx(Cplx)>& f, Cplx c, double rho,
                    int n) {
  Cplx acc(0, 0);
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * j / n;
    const Cplx e = std::polar(1.0, th);
    acc += f(c + rho * e) * e;
  }
  return acc * rho / static_cast<double>(n);
}

}  // namespace

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::radial: return "radial";
    case Orientation::axial: return "axial";
    case Orientation::azimuthal: return "azimuthal";
  }
  return "?";
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "radial") return Orientation::radial;
  if (s == "axial") return Orientation::axial;
  if (s == "azimuthal") return Orientation::azimuthal;
  throw std::domain_error("unknown orientation '" + s +
                          "' (radial|axial|azimuthal)");
}

EmitterConfig::EmitterConfig(double distance_from_surface_m,
                             Orientation orientation,
                             double vacuum_wavelength_m, double eps_background)
    : distance_from_surface_m(distance_from_surface_m),
      orientation(orientation),
      vacuum_wavelength_m(vacuum_wavelength_m),
      eps_background(eps_background) {
  if (!(distance_from_surface_m > 0.0))
    throw std::domain_error("EmitterConfig: distance must be > 0");
  if (!(vacuum_wavelength_m > 0.0))
    throw std::domain_error("EmitterConfig: wavelength must be > 0");
  if (!(eps_background >= 1.0))
    throw std::domain_error("EmitterConfig: eps_background must be >= 1");
}

Cplx tm_scattering_denominator(const WireGeometry& g, double wavelength_m,
                               Cplx kz) {
  const double k0 = 2.0 * kPi / wavelength_m;
  const double k1 = std::sqrt(g.eps_dielectric) * k0;
  const Cplx k2 = std::sqrt(g.eps_metal) * k0;
  const Cplx eta1 = Cplx(0, 1) * decaying_sqrt(kz * kz - k1 * k1);
  const Cplx eta2 = Cplx(0, 1) * decaying_sqrt(kz * kz - k2 * k2);
  std::vector<Cplx> j1v, h1v, j2v, h2v;
  bessel::cyl_seq(1, eta1 * g.radius_m, j1v, h1v);
  bessel::cyl_seq(1, eta2 * g.radius_m, j2v, h2v);
  const Cplx h0 = h1v[0], h0p = -h1v[1];
  const Cplx j0 = j2v[0], j0p = -j2v[1];
  return eta1 * eta1 / k1 * h0 * k2 * eta2 * j0p -
         eta2 * eta2 / k2 * j0 * k1 * eta1 * h0p;
}

namespace {

struct ChannelSetup {
  bool pole_active = false;
  Cplx kpl{};
  Cplx residue{};
  Cplx log_remainder{};  // pole-term integral minus i*pi
  double rho = 0.0;
};

RateBreakdown compute_channels(const WireGeometry& g, const EmitterConfig& e,
                               const CouplingAccuracy& acc, bool residue_only) {
  if (std::abs(e.eps_background - g.eps_dielectric) >
      1e-12 * g.eps_dielectric)
    throw std::domain_error(
        "emitter eps_background must equal the wire's eps_dielectric");

  CouplingKernel kernel(g, e, acc);
  const double k0 = 2.0 * kPi / e.vacuum_wavelength_m;
  const double k1 = kernel.k1();
  const double dprime = e.distance_from_surface_m;
  const double kmax =
      std::max(acc.cutoff_distance_factor / dprime, acc.cutoff_k1_factor * k1);

  RateBreakdown out;

  // Guided-mode pole (m = 0 TM); absent for azimuthal dipoles and for
  // geometries with no bound mode.
  ChannelSetup pole;
  if (e.orientation != Orientation::azimuthal) {
    try {
      const PlasmonMode mode = solve_fundamental_mode(g, e.vacuum_wavelength_m);
      pole.kpl = mode.n_eff * k0;
      pole.pole_active = true;
    } catch (const NoModeError&) {
      pole.pole_active = false;
    }
  }
  if (pole.pole_active) {
    pole.rho = 0.3 * std::min(pole.kpl.real() - k1, kmax - pole.kpl.real());
    pole.rho = std::min(pole.rho, 0.5 * k0);
    pole.residue = circle_residue(
        [&kernel](Cplx kz) { return kernel.integrand_m0(kz); }, pole.kpl,
        pole.rho, acc.residue_points);

    // The guided channel is twice pi times the residue. The extracted pole
    // term integrates to Res*(Log(kmax-kpl) - Log(k1-kpl)) over the background
    // path; its remainder beyond the i*pi piece is loss-induced mixing and
    // belongs to the absorption background. The tiny positive-imaginary nudge
    // selects the loss->0 continuation when the pole sits on the real axis.
    out.gamma_pl = (2.0 * kPi * Cplx(0, 1) * pole.residue).imag();
    Cplx kpl_log = pole.kpl;
    if (kpl_log.imag() < 1e-14 * std::abs(kpl_log))
      kpl_log = Cplx(kpl_log.real(), 1e-14 * std::abs(kpl_log));
    pole.log_remainder = std::log(Cplx(kmax) - kpl_log) -
                         std::log(Cplx(k1) - kpl_log) - Cplx(0, kPi);
  }

  if (residue_only) {
    out.m_truncation = kernel.m_truncation();
    out.evaluations = kernel.evaluations;
    return out;
  }

  quad::QuadratureConfig qc;
  qc.rel_tol = acc.kz_rel_tol;
  qc.abs_tol = 1e-12;
  qc.max_subdivisions = acc.max_subdivisions;

  // Radiating region [0, k1].
  const auto w_rad = [&kernel](double kz) { return kernel.integrand(Cplx(kz, 0)); };
  quad::Result rad;
  try {
    rad = quad::integrate(w_rad, 0.0, k1 * (1.0 - 1e-13), qc);
  } catch (const AccuracyError& err) {
    rad.value = err.best_estimate;
    rad.error_bound = err.error_bound;
    out.notes.push_back("radiative k_z integral hit the subdivision limit");
  }
  out.gamma_rad = 1.0 + (2.0 * rad.value).imag();

  // Evanescent region [k1, kmax] with the pole term removed.
  const auto w_evan = [&](double kz) {
    Cplx v = kernel.integrand(Cplx(kz, 0));
    if (pole.pole_active) v -= pole.residue / (Cplx(kz) - pole.kpl);
    return v;
  };
  quad::Result evan;
  try {
    evan = quad::integrate(w_evan, k1 * (1.0 + 1e-13), kmax, qc);
  } catch (const AccuracyError& err) {
    evan.value = err.best_estimate;
    evan.error_bound = err.error_bound;
    out.notes.push_back("evanescent k_z integral hit the subdivision limit");
  }
  // Tail beyond kmax decays at least like exp(-2 kappa1 d'); bound it by the
  // last integrand value times the decay length.
  const double tail_bound =
      std::abs(kernel.integrand(Cplx(kmax, 0))) / (2.0 * dprime);
  out.gamma_nr = (2.0 * evan.value).imag();
  if (pole.pole_active)
    out.gamma_nr += (2.0 * pole.residue * pole.log_remainder).imag();

  // Positivity floor: tiny negative channels are numerical noise.
  auto clamp = [&out](double& v, const char* name) {
    if (v < 0.0) {
      if (v > -1e-9 * std::max(1.0, std::abs(out.total))) {
        v = 0.0;
        out.notes.push_back(std::string(name) +
                            " clamped to 0 (was within -1e-9 floor)");
      }
    }
  };
  out.total = out.gamma_pl + out.gamma_rad + out.gamma_nr;
  clamp(out.gamma_pl, "gamma_pl");
  clamp(out.gamma_nr, "gamma_nr");
  clamp(out.gamma_rad, "gamma_rad");
  out.total = out.gamma_pl + out.gamma_rad + out.gamma_nr;
  out.beta = (out.total > 0.0) ? out.gamma_pl / out.total : 0.0;
  out.m_truncation = kernel.m_truncation();
  out.evaluations = kernel.evaluations;
  if (tail_bound > 1e-6 * std::abs(out.total))
    out.notes.push_back("k_z tail bound unusually large");
  return out;
}

}  // namespace

RateBreakdown total_rate_enhancement(const WireGeometry& g,
                                     const EmitterConfig& e,
                                     const CouplingAccuracy& acc) {
  return compute_channels(g, e, acc, /*residue_only=*/false);
}

double gamma_plasmon(const WireGeometry& g, const EmitterConfig& e,
                     const CouplingAccuracy& acc) {
  if (e.orientation == Orientation::azimuthal) return 0.0;
  // Surface the no-mode condition instead of returning a silent zero.
  solve_fundamental_mode(g, e.vacuum_wavelength_m);
  return compute_channels(g, e, acc, /*residue_only=*/true).gamma_pl;
}

namespace coupling_detail {

double homogeneous_ldos(Orientation orientation, double eps_background,
                        double wavelength_m, double r0_m, int m_max) {
  const double k0 = 2.0 * kPi / wavelength_m;
  const double k1 = std::sqrt(eps_background) * k0;

  const auto integrand = [&](double kz) {
    const Cplx eta1 = Cplx(0, 1) * decaying_sqrt(Cplx(kz * kz - k1 * k1));
    std::vector<Cplx> jv, hv;
    bessel::cyl_seq(m_max + 1, eta1 * r0_m, jv, hv);
    auto dv = [](const std::vector<Cplx>& v, int m) {
      return (m == 0) ? -v[1] : 0.5 * (v[m - 1] - v[m + 1]);
    };
    Cplx sum(0, 0);
    for (int m = 0; m <= m_max; ++m) {
      const Cplx jh = jv[m] * hv[m];
      const Cplx jhp = dv(jv, m) * dv(hv, m);
      const double md = m;
      Cplx f;
      switch (orientation) {
        case Orientation::radial:
          f = md * md / (r0_m * r0_m) / (eta1 * eta1) * jh +
              kz * kz / (k1 * k1) * jhp;
          break;
        case Orientation::axial:
          f = eta1 * eta1 / (k1 * k1) * jh;
          break;
        case Orientation::azimuthal:
          f = jhp + md * md * kz * kz / (k1 * k1 * r0_m * r0_m) /
                        (eta1 * eta1) * jh;
          break;
      }
      sum += (m == 0) ? f : 2.0 * f;
    }
    return Cplx(0, 0.75) / k1 * sum;
  };

  quad::QuadratureConfig qc;
  qc.rel_tol = 1e-9;
  qc.max_subdivisions = 4000;
  const auto r = quad::integrate(integrand, 0.0, k1 * (1.0 - 1e-13), qc);
  return (2.0 * r.value).imag();
}

}  // namespace coupling_detail

}  // namespace nvwire
