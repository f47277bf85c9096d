#pragma once

// Start-stop delay histograms (TAC semantics: each start is stopped by the
// first qualifying event after it). Lifetime mode syncs on the pulse train,
// correlation mode on channel 1 with signed channel-2 delays.

#include <cstdint>
#include <string>
#include <vector>

#include "nvwire/time_tags.hpp"

namespace nvwire {

struct Histogram {
  double bin_width_ps = 0.0;
  double start_ps = 0.0;  // left edge of bin 0
  std::vector<double> counts;

  double bin_center_ps(size_t i) const {
    return start_ps + (i + 0.5) * bin_width_ps;
  }
  size_t size() const { return counts.size(); }
};

/// Delays from each sync pulse (period = 1/rep_rate) to the first detected
/// event after it, binned over [0, window).
Histogram histogram_lifetime(const TimeTagStream& stream, double rep_rate_hz,
                             double bin_width_ps, double window_ps);

/// Signed delays channel 1 -> channel 2 binned over (-window, window): for
/// each channel-1 event the first channel-2 event after (positive) and before
/// (negative) it.
Histogram histogram_correlation(const TimeTagStream& stream,
                                double bin_width_ps, double window_ps);

Histogram load_histogram(const std::string& path);
void save_histogram(const std::string& path, const Histogram& hist);

}  // namespace nvwire
