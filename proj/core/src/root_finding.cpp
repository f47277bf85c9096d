#include "nvwire/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nvwire/constants.hpp"
#include "nvwire/error.hpp"

namespace nvwire::roots {

namespace {

struct BoundarySample {
  double t;  // perimeter parameter in [0, 1)
  Cplx z;
  Cplx f;
};

Cplx perimeter_point(const RootRegion& r, double t) {
  // Counterclockwise from the lower-left corner.
  const double w = 2.0 * r.half_width, h = 2.0 * r.half_height;
  const double perim = 2.0 * (w + h);
  double s = t * perim;
  const Cplx ll = r.center - Cplx(r.half_width, r.half_height);
  if (s < w) return ll + Cplx(s, 0);
  s -= w;
  if (s < h) return ll + Cplx(w, s);
  s -= h;
  if (s < w) return ll + Cplx(w - s, h);
  s -= w;
  return ll + Cplx(0, h - s);
}

double phase_step(Cplx f1, Cplx f2) {
  // Principal-value angle of f2/f1 without overflow.
  return std::arg(f2 / f1);
}

// Adaptive boundary walk: refine until adjacent phase steps are < pi/2.
std::vector<BoundarySample> walk_boundary(const AnalyticFn& f,
                                          const RootRegion& region) {
  const int n0 = 64;
  const int max_samples = 65536;
  std::vector<BoundarySample> s;
  s.reserve(n0 + 64);
  for (int i = 0; i < n0; ++i) {
    const double t = static_cast<double>(i) / n0;
    const Cplx z = perimeter_point(region, t);
    s.push_back({t, z, f(z)});
  }
  for (auto& b : s)
    if (!std::isfinite(std::abs(b.f)))
      throw Error("winding_number: f not finite on region boundary");

  // Refine on fast phase steps and on sharp magnitude swings; the latter
  // catches near-singular sneaks that alias a full phase loop between
  // neighbouring samples.
  const auto needs_split = [](const BoundarySample& a, const BoundarySample& b) {
    if (std::abs(phase_step(a.f, b.f)) > 1.0) return true;
    const double ma = std::abs(a.f), mb = std::abs(b.f);
    return ma > 4.0 * mb || mb > 4.0 * ma;
  };
  bool refined = true;
  while (refined) {
    refined = false;
    std::vector<BoundarySample> next;
    next.reserve(s.size() * 2);
    for (size_t i = 0; i < s.size(); ++i) {
      const BoundarySample& a = s[i];
      const BoundarySample& b = s[(i + 1) % s.size()];
      next.push_back(a);
      const double tb = (i + 1 == s.size()) ? 1.0 : b.t;
      if (needs_split(a, b) && tb - a.t > 1e-12) {
        const double tm = 0.5 * (a.t + tb);
        const Cplx zm = perimeter_point(region, tm);
        next.push_back({tm, zm, f(zm)});
        refined = true;
      }
    }
    s.swap(next);
    if (s.size() > static_cast<size_t>(max_samples))
      throw Error(
          "winding_number: boundary refinement exhausted (root on or very "
          "near the boundary?)");
  }
  return s;
}

int winding_from_samples(const std::vector<BoundarySample>& s) {
  double total = 0.0;
  for (size_t i = 0; i < s.size(); ++i)
    total += phase_step(s[i].f, s[(i + 1) % s.size()].f);
  const double w = total / (2.0 * kPi);
  const int wi = static_cast<int>(std::lround(w));
  if (std::abs(w - wi) > 0.25)
    throw Error("winding_number: non-integer phase accumulation");
  return wi;
}

double median_abs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.empty() ? 0.0 : v[v.size() / 2];
}

}  // namespace

RootRegion::RootRegion(Cplx center, double half_width, double half_height)
    : center(center), half_width(half_width), half_height(half_height) {
  if (!(half_width > 0.0) || !(half_height > 0.0))
    throw std::domain_error("RootRegion: half_width and half_height must be > 0");
}

int winding_number(const AnalyticFn& f, const RootRegion& region) {
  return winding_from_samples(walk_boundary(f, region));
}

RootResult find_root(const AnalyticFn& f, const RootRegion& region, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("find_root: tol must be > 0");

  const auto samples = walk_boundary(f, region);
  const int w = winding_from_samples(samples);
  if (w == 0) throw NoRootError("find_root: winding number 0, no root in region");
  if (w != 1)
    throw MultipleRootsError(
        "find_root: winding number > 1, shrink the region", w);

  std::vector<double> mags;
  mags.reserve(samples.size());
  for (const auto& b : samples) mags.push_back(std::abs(b.f));
  const double scale = median_abs(mags);

  // Quadrisect with slightly jittered split lines (so a root cannot sit
  // exactly on one) until the box is small, then polish with Newton. Subboxes
  // stay strictly inside the parent: the caller only guarantees analyticity
  // inside the given region.
  RootRegion box = region;
  for (int level = 0; level < 8; ++level) {
    if (box.half_width < 1e-7 * region.half_width &&
        box.half_height < 1e-7 * region.half_height)
      break;
    const double xlo = box.center.real() - box.half_width;
    const double xhi = box.center.real() + box.half_width;
    const double ylo = box.center.imag() - box.half_height;
    const double yhi = box.center.imag() + box.half_height;
    const double xs = xlo + 0.5003 * (xhi - xlo);
    const double ys = ylo + 0.4997 * (yhi - ylo);
    const double xedges[3] = {xlo, xs, xhi};
    const double yedges[3] = {ylo, ys, yhi};
    bool found = false;
    for (int ix = 0; ix < 2 && !found; ++ix) {
      for (int iy = 0; iy < 2 && !found; ++iy) {
        RootRegion sub(Cplx(0.5 * (xedges[ix] + xedges[ix + 1]),
                            0.5 * (yedges[iy] + yedges[iy + 1])),
                       0.5 * (xedges[ix + 1] - xedges[ix]),
                       0.5 * (yedges[iy + 1] - yedges[iy]));
        int ws;
        try {
          ws = winding_number(f, sub);
        } catch (const Error&) {
          continue;  // root near this sub-boundary; another subbox will catch it
        }
        if (ws >= 1) {
          box = sub;
          found = true;
        }
      }
    }
    if (!found) break;  // root straddles split lines; Newton from here
  }

  // Damped Newton with central-difference derivative.
  Cplx z = box.center;
  Cplx fz = f(z);
  const double hscale = std::max({box.half_width, box.half_height,
                                  1e-9 * std::abs(z)});
  for (int it = 0; it < 80; ++it) {
    if (std::abs(fz) < tol * scale) break;
    const double h = std::max(1e-7 * std::abs(z), 1e-9 * hscale);
    const Cplx df = (f(z + h) - f(z - h)) / (2.0 * h);
    if (std::abs(df) == 0.0)
      throw AccuracyError("find_root: vanishing numerical derivative", z,
                          std::abs(fz));
    Cplx step = fz / df;
    // Keep iterates inside a modestly inflated original region.
    double damp = 1.0;
    for (int k = 0; k < 40; ++k) {
      const Cplx zn = z - damp * step;
      if (std::abs(zn.real() - region.center.real()) <
              1.5 * region.half_width &&
          std::abs(zn.imag() - region.center.imag()) <
              1.5 * region.half_height) {
        const Cplx fn = f(zn);
        if (std::abs(fn) < std::abs(fz) || damp < 1e-3) {
          z = zn;
          fz = fn;
          break;
        }
      }
      damp *= 0.5;
    }
  }

  if (!(std::abs(fz) < tol * scale))
    throw AccuracyError("find_root: Newton polish did not reach tolerance", z,
                        std::abs(fz));
  return {z, std::abs(fz), scale, 1};
}

}  // namespace nvwire::roots
