#pragma once

// Total-rate-enhancement map over (wire diameter, emitter distance), the
// quantity plotted against nanowire diameter and emitter surface distance.
// Cells are independent and distributed across worker threads; aggregation
// order is fixed so output is bit-stable.

#include <string>
#include <vector>

#include "nvwire/dipole_coupling.hpp"
#include "nvwire/drude.hpp"

namespace nvwire {

struct EnhancementMap {
  std::vector<double> diameter_nm;  // row axis
  std::vector<double> distance_nm;  // column axis
  std::vector<double> total;        // row-major [diameter][distance]
  // metadata
  double wavelength_nm = 0.0;
  double eps_dielectric = 0.0;
  Orientation orientation = Orientation::radial;
  DrudeParameters drude;
  std::vector<std::string> cell_notes;  // "i,j: message"

  double at(size_t i, size_t j) const { return total[i * distance_nm.size() + j]; }
};

struct MapRequest {
  std::vector<double> diameter_nm;
  std::vector<double> distance_nm;
  double wavelength_nm = 700.0;
  double eps_dielectric = 3.0;
  Orientation orientation = Orientation::radial;
  DrudeParameters drude;  // metal permittivity evaluated at wavelength
  CouplingAccuracy accuracy{};
  int threads = 0;  // 0 = hardware concurrency
};

/// Validated axis ranges: diameter within [30, 80] nm, distance within
/// [5, 60] nm; both axes non-empty.
EnhancementMap enhancement_map(const MapRequest& request);

/// CSV layout: header row carries the distance axis, first column the
/// diameter axis. A key-value metadata sidecar is written to `path + ".meta"`.
void save_map_csv(const std::string& path, const EnhancementMap& map);
EnhancementMap load_map_csv(const std::string& path);

/// Uniformly spaced axis helper for start:stop:count CLI ranges.
std::vector<double> linspace(double start, double stop, int count);

}  // namespace nvwire
