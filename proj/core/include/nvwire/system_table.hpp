#pragma once

// Records of assembled emitter-nanowire systems: measured geometry, measured
// lifetime-ratio enhancement, and the computed minimum expected enhancement
// (emitter at the full diamond height from the surface, radial dipole).

#include <string>
#include <vector>

#include "nvwire/dipole_coupling.hpp"
#include "nvwire/drude.hpp"

namespace nvwire {

struct SystemRecord {
  double wire_diameter_nm = 0.0;
  double diamond_height_nm = 0.0;
  double measured_enhancement = 0.0;
  double measured_error = 0.0;
  double predicted_min_enhancement = 0.0;  // filled by predict_table
};

std::vector<SystemRecord> load_system_records(const std::string& path);

/// The five records shipped with the library (same as data/table_systems.csv).
std::vector<SystemRecord> bundled_system_records();

struct PredictOptions {
  double wavelength_nm = 700.0;
  double eps_dielectric = 3.0;
  DrudeParameters drude;  // defaults to the fitted silver parameters
  CouplingAccuracy accuracy{};

  PredictOptions();
};

/// Fills predicted_min_enhancement for every record: emitter distance equals
/// the diamond height, dipole radial.
std::vector<SystemRecord> predict_table(std::vector<SystemRecord> records,
                                        const PredictOptions& opts = {});

void save_system_records(const std::string& path,
                         const std::vector<SystemRecord>& records,
                         bool include_prediction);

}  // namespace nvwire
