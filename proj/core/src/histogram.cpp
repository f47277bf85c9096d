#include "nvwire/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "nvwire/csv.hpp"
#include "nvwire/error.hpp"

namespace nvwire {

namespace {

void check_params(double bin_width_ps, double window_ps) {
  if (!(bin_width_ps > 0.0))
    throw std::domain_error("histogram: bin width must be > 0");
  if (!(window_ps >= bin_width_ps))
    throw std::domain_error("histogram: window must be >= bin width");
}

}  // namespace

Histogram histogram_lifetime(const TimeTagStream& stream, double rep_rate_hz,
                             double bin_width_ps, double window_ps) {
  check_params(bin_width_ps, window_ps);
  if (!(rep_rate_hz > 0.0))
    throw std::domain_error("histogram: rep rate must be > 0");
  if (stream.events.empty())
    throw InsufficientDataError("histogram: empty time-tag stream");

  Histogram h;
  h.bin_width_ps = bin_width_ps;
  h.start_ps = 0.0;
  const size_t nbins = static_cast<size_t>(std::ceil(window_ps / bin_width_ps));
  h.counts.assign(nbins, 0.0);

  const double period_ps = 1e12 / rep_rate_hz;
  const auto& ev = stream.events;
  size_t next_event = 0;
  const long npulses = static_cast<long>(stream.duration_ps / period_ps);
  for (long n = 0; n < npulses; ++n) {
    const double t_pulse = n * period_ps;
    while (next_event < ev.size() && ev[next_event].time_ps < t_pulse)
      ++next_event;
    if (next_event == ev.size()) break;
    const double delay = ev[next_event].time_ps - t_pulse;
    if (delay < window_ps) {
      const size_t bin = static_cast<size_t>(delay / bin_width_ps);
      if (bin < nbins) h.counts[bin] += 1.0;
    }
  }
  return h;
}

Histogram histogram_correlation(const TimeTagStream& stream,
                                double bin_width_ps, double window_ps) {
  check_params(bin_width_ps, window_ps);
  if (stream.events.empty())
    throw InsufficientDataError("histogram: empty time-tag stream");

  std::vector<std::int64_t> ch1, ch2;
  for (const auto& e : stream.events)
    (e.channel == 1 ? ch1 : ch2).push_back(e.time_ps);
  if (ch1.empty() || ch2.empty())
    throw InsufficientDataError("histogram: a detector channel is empty");

  Histogram h;
  h.bin_width_ps = bin_width_ps;
  const size_t half = static_cast<size_t>(std::ceil(window_ps / bin_width_ps));
  h.start_ps = -static_cast<double>(half) * bin_width_ps;
  h.counts.assign(2 * half, 0.0);

  auto bin_of = [&](double delay) -> long {
    return static_cast<long>(std::floor((delay - h.start_ps) / bin_width_ps));
  };

  size_t lo = 0;  // first ch2 index with t2 >= t1 as t1 advances
  for (const std::int64_t t1 : ch1) {
    while (lo < ch2.size() && ch2[lo] < t1) ++lo;
    if (lo < ch2.size()) {
      const double d = static_cast<double>(ch2[lo] - t1);
      if (d < window_ps) {
        const long b = bin_of(d);
        if (b >= 0 && b < static_cast<long>(h.counts.size())) h.counts[b] += 1.0;
      }
    }
    if (lo > 0) {
      const double d = static_cast<double>(ch2[lo - 1] - t1);  // <= 0
      if (-d < window_ps && d < 0.0) {
        const long b = bin_of(d);
        if (b >= 0 && b < static_cast<long>(h.counts.size())) h.counts[b] += 1.0;
      }
    }
  }
  return h;
}

Histogram load_histogram(const std::string& path) {
  const auto t = csv::read_numeric(path);
  if (t.header.size() != 2 || t.header[0] != "bin_start_ps" ||
      t.header[1] != "count")
    throw IoError(path + ": expected header bin_start_ps,count");
  if (t.rows.size() < 2) throw IoError(path + ": need at least 2 bins");
  Histogram h;
  h.start_ps = t.rows.front()[0];
  h.bin_width_ps = t.rows[1][0] - t.rows[0][0];
  if (!(h.bin_width_ps > 0.0)) throw IoError(path + ": bins must increase");
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const double expect = h.start_ps + i * h.bin_width_ps;
    if (std::abs(t.rows[i][0] - expect) > 1e-6 * h.bin_width_ps + 1e-9)
      throw IoError(path + ": non-uniform bin edges at row " +
                    std::to_string(i + 1));
    h.counts.push_back(t.rows[i][1]);
  }
  return h;
}

void save_histogram(const std::string& path, const Histogram& hist) {
  csv::Table t;
  t.header = {"bin_start_ps", "count"};
  for (size_t i = 0; i < hist.counts.size(); ++i)
    t.rows.push_back({hist.start_ps + i * hist.bin_width_ps, hist.counts[i]});
  csv::write_numeric(path, t);
}

}  // namespace nvwire
