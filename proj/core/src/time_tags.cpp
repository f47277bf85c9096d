#include "nvwire/time_tags.hpp"

#include <charconv>
#include <fstream>

#include "nvwire/error.hpp"

namespace nvwire {

void TimeTagStream::validate() const {
  std::int64_t last = -1;
  for (const auto& e : events) {
    if (e.channel != 1 && e.channel != 2)
      throw Error("time tags: channel must be 1 or 2");
    if (e.time_ps < last) throw Error("time tags: times must be non-decreasing");
    if (e.time_ps >= duration_ps)
      throw Error("time tags: event time beyond stream duration");
    last = e.time_ps;
  }
}

TimeTagStream load_time_tags(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  TimeTagStream s;
  std::string line;
  long lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // `channel,time_ps`
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected channel,time_ps");
    int ch = 0;
    std::int64_t t = 0;
    auto r1 = std::from_chars(line.data(), line.data() + comma, ch);
    auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), t);
    if (r1.ec != std::errc{} || r2.ec != std::errc{})
      throw IoError(path + ":" + std::to_string(lineno) + ": bad number");
    s.events.push_back({static_cast<std::uint8_t>(ch), t});
    if (t >= s.duration_ps) s.duration_ps = t + 1;
  }
  s.validate();
  return s;
}

void save_time_tags(const std::string& path, const TimeTagStream& stream) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# duration_ps=" << stream.duration_ps << " seed=" << stream.seed << "\n";
  out << "channel,time_ps\n";
  for (const auto& e : stream.events)
    out << int(e.channel) << ',' << e.time_ps << '\n';
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace nvwire
