#pragma once

// Tabulated complex permittivity versus wavelength. File format:
// CSV with header `wavelength_nm,eps_re,eps_im`, UTF-8, '.' decimals.

#include <complex>
#include <string>
#include <vector>

namespace nvwire {

struct OpticalConstantTable {
  struct Row {
    double wavelength_m;  // stored in meters
    std::complex<double> epsilon;
  };
  std::vector<Row> rows;  // strictly increasing wavelength

  /// Validates the invariants: >= 2 rows, strictly increasing wavelength,
  /// Im eps >= 0 everywhere (passive medium). Throws on violation.
  void validate() const;
};

OpticalConstantTable load_optical_table(const std::string& path);
void save_optical_table(const std::string& path,
                        const OpticalConstantTable& table);

/// The bundled smoothed silver table (17 rows, 500-900 nm), compiled in so the
/// library works without locating data files.
const OpticalConstantTable& bundled_silver_table();

}  // namespace nvwire
