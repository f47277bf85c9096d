#pragma once

// Kinetic Monte-Carlo simulation of a pumped three-level emitter (ground,
// excited, metastable shelving state) behind a 50/50 beam splitter and two
// detectors. Streams are byte-for-byte reproducible for a fixed seed: the RNG
// is mt19937_64 with explicit inverse-CDF transforms, no std distributions.

#include <cstdint>
#include <variant>

#include "nvwire/time_tags.hpp"

namespace nvwire {

// Context constant: typical excited-state lifetime of this emitter class in
// bulk host material, in ns. Documentation only; no computation uses it.
inline constexpr double kBulkLifetimeNs = 12.0;

struct ThreeLevelModel {
  double pump_rate = 0.0;             // 1/s, ground -> excited while pumped
  double radiative_rate = 0.0;        // 1/s, excited -> ground (photon)
  double isc_rate = 0.0;              // 1/s, excited -> metastable
  double metastable_rate = 0.0;       // 1/s, metastable -> ground
  double detection_efficiency = 1.0;  // per emitted photon, in (0, 1]
  double background_rate = 0.0;       // 1/s per detector, Poisson

  ThreeLevelModel(double pump_rate, double radiative_rate, double isc_rate,
                  double metastable_rate, double detection_efficiency,
                  double background_rate);
};

struct CwPump {};
struct PulsedPump {
  double rep_rate_hz = 0.0;
  double pulse_width_s = 0.0;
};
using PumpMode = std::variant<CwPump, PulsedPump>;

/// Simulates the emitter for duration seconds; deterministic per seed.
TimeTagStream simulate_stream(const ThreeLevelModel& model, const PumpMode& mode,
                              double duration_s, std::uint64_t seed);

/// Steady-state photon emission rate (1/s) of the continuously pumped emitter,
/// before beam splitter and detection losses.
double cw_emission_rate(const ThreeLevelModel& model);

}  // namespace nvwire
