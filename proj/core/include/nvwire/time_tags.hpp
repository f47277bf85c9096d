#pragma once

// Two-detector time-tag record. File format: CSV `channel,time_ps` with
// channel in {1, 2} and non-decreasing integer picosecond stamps.

#include <cstdint>
#include <string>
#include <vector>

namespace nvwire {

struct TimeTag {
  std::uint8_t channel;  // 1 or 2
  std::int64_t time_ps;
};

struct TimeTagStream {
  std::vector<TimeTag> events;  // sorted by (time, channel)
  std::int64_t duration_ps = 0;
  std::uint64_t seed = 0;

  void validate() const;  // ordering, channel range, times < duration
};

TimeTagStream load_time_tags(const std::string& path);
void save_time_tags(const std::string& path, const TimeTagStream& stream);

}  // namespace nvwire
