#include "nvwire/three_level.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nvwire/error.hpp"

namespace nvwire {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in (0, 1); 53-bit mantissa, never exactly 0 or 1.
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }
  double exponential(double rate) { return -std::log(uniform()) / rate; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

std::int64_t to_ps(double t_s) {
  return static_cast<std::int64_t>(std::llround(t_s * 1e12));
}

}  // namespace

ThreeLevelModel::ThreeLevelModel(double pump_rate, double radiative_rate,
                                 double isc_rate, double metastable_rate,
                                 double detection_efficiency,
                                 double background_rate)
    : pump_rate(pump_rate),
      radiative_rate(radiative_rate),
      isc_rate(isc_rate),
      metastable_rate(metastable_rate),
      detection_efficiency(detection_efficiency),
      background_rate(background_rate) {
  if (pump_rate < 0 || isc_rate < 0 || metastable_rate < 0 || background_rate < 0)
    throw std::domain_error("ThreeLevelModel: rates must be >= 0");
  if (!(radiative_rate > 0.0))
    throw std::domain_error("ThreeLevelModel: radiative_rate must be > 0");
  if (!(detection_efficiency > 0.0) || detection_efficiency > 1.0)
    throw std::domain_error("ThreeLevelModel: detection_efficiency in (0, 1]");
}

double cw_emission_rate(const ThreeLevelModel& m) {
  // Rate balance: r P_G = (rad+isc) P_E, isc P_E = met P_M, P_G+P_E+P_M = 1.
  const double r = m.pump_rate, out = m.radiative_rate + m.isc_rate;
  if (r <= 0.0) return 0.0;
  const double shelf = (m.metastable_rate > 0.0)
                           ? m.isc_rate / m.metastable_rate
                           : (m.isc_rate > 0.0
                                  ? std::numeric_limits<double>::infinity()
                                  : 0.0);
  const double pe = 1.0 / (out / r + 1.0 + shelf);
  return m.radiative_rate * pe;
}

TimeTagStream simulate_stream(const ThreeLevelModel& m, const PumpMode& mode,
                              double duration_s, std::uint64_t seed) {
  if (!(duration_s > 0.0))
    throw std::domain_error("simulate_stream: duration must be > 0");

  Rng rng(seed);
  enum class State { ground, excited, shelved };
  State state = State::ground;
  double t = 0.0;

  const bool pulsed = std::holds_alternative<PulsedPump>(mode);
  double period = 0.0, width = 0.0;
  if (pulsed) {
    const auto& p = std::get<PulsedPump>(mode);
    if (!(p.rep_rate_hz > 0.0) || !(p.pulse_width_s > 0.0))
      throw std::domain_error("PulsedPump: rep rate and width must be > 0");
    period = 1.0 / p.rep_rate_hz;
    width = p.pulse_width_s;
  }

  std::vector<TimeTag> signal;
  const double out_rate = m.radiative_rate + m.isc_rate;
  const double p_radiative = m.radiative_rate / out_rate;

  while (t < duration_s) {
    switch (state) {
      case State::ground: {
        if (m.pump_rate <= 0.0) {
          t = duration_s;
          break;
        }
        if (!pulsed) {
          t += rng.exponential(m.pump_rate);
          state = State::excited;
          break;
        }
        // Piecewise-constant pump: active only inside pulse windows.
        const double n = std::floor(t / period);
        const double in_pulse_end = n * period + width;
        if (t >= in_pulse_end) {
          t = (n + 1.0) * period;  // wait for the next pulse
          break;
        }
        const double dwell = rng.exponential(m.pump_rate);
        if (t + dwell < in_pulse_end) {
          t += dwell;
          state = State::excited;
        } else {
          t = (n + 1.0) * period;  // pulse passed without excitation
        }
        break;
      }
      case State::excited: {
        t += rng.exponential(out_rate);
        if (rng.bernoulli(p_radiative)) {
          if (t < duration_s) {
            const std::uint8_t ch = rng.bernoulli(0.5) ? 1 : 2;
            if (rng.bernoulli(m.detection_efficiency))
              signal.push_back({ch, to_ps(t)});
          }
          state = State::ground;
        } else {
          state = State::shelved;
        }
        break;
      }
      case State::shelved: {
        if (m.metastable_rate <= 0.0) {
          t = duration_s;  // stuck in the shelf for the rest of the run
        } else {
          t += rng.exponential(m.metastable_rate);
        }
        state = State::ground;
        break;
      }
    }
  }

  // Independent Poisson background per detector, merged afterwards.
  std::vector<TimeTag> bg;
  if (m.background_rate > 0.0) {
    for (std::uint8_t ch : {std::uint8_t(1), std::uint8_t(2)}) {
      double tb = 0.0;
      for (;;) {
        tb += rng.exponential(m.background_rate);
        if (tb >= duration_s) break;
        bg.push_back({ch, to_ps(tb)});
      }
    }
  }

  TimeTagStream out;
  out.duration_ps = to_ps(duration_s);
  out.seed = seed;
  out.events.reserve(signal.size() + bg.size());
  out.events.insert(out.events.end(), signal.begin(), signal.end());
  out.events.insert(out.events.end(), bg.begin(), bg.end());
  // Picosecond rounding can push an event onto the duration boundary.
  std::erase_if(out.events, [&out](const TimeTag& e) {
    return e.time_ps >= out.duration_ps;
  });
  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const TimeTag& a, const TimeTag& b) {
                     return a.time_ps != b.time_ps ? a.time_ps < b.time_ps
                                                   : a.channel < b.channel;
                   });
  out.validate();
  return out;
}

}  // namespace nvwire
