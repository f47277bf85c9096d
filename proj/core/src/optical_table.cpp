#include "nvwire/optical_table.hpp"

#include <cmath>

#include "nvwire/csv.hpp"
#include "nvwire/error.hpp"

namespace nvwire {

void OpticalConstantTable::validate() const {
  if (rows.size() < 2)
    throw InsufficientDataError("optical table needs at least 2 rows");
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].wavelength_m > 0.0))
      throw Error("optical table: wavelengths must be positive");
    if (i > 0 && !(rows[i].wavelength_m > rows[i - 1].wavelength_m))
      throw Error("optical table: wavelengths must be strictly increasing");
    if (rows[i].epsilon.imag() < 0.0)
      throw Error("optical table: Im eps < 0 violates passivity");
  }
}

OpticalConstantTable load_optical_table(const std::string& path) {
  const auto t = csv::read_numeric(path);
  if (t.header.size() != 3 || t.header[0] != "wavelength_nm" ||
      t.header[1] != "eps_re" || t.header[2] != "eps_im")
    throw IoError(path + ": expected header wavelength_nm,eps_re,eps_im");
  OpticalConstantTable out;
  out.rows.reserve(t.rows.size());
  for (const auto& r : t.rows)
    out.rows.push_back({r[0] * 1e-9, {r[1], r[2]}});
  out.validate();
  return out;
}

void save_optical_table(const std::string& path,
                        const OpticalConstantTable& table) {
  csv::Table t;
  t.header = {"wavelength_nm", "eps_re", "eps_im"};
  for (const auto& r : table.rows)
    t.rows.push_back({r.wavelength_m * 1e9, r.epsilon.real(), r.epsilon.imag()});
  csv::write_numeric(path, t);
}

const OpticalConstantTable& bundled_silver_table() {
  // Smoothed optical constants for polycrystalline silver, anchored to the
  // standard tabulated value near 700 nm (eps ~ -20.4 + 1.27i). Same rows as
  // data/silver_epsilon.csv.
  static const OpticalConstantTable table = [] {
    OpticalConstantTable t;
    const double anchor_im = 1.27, anchor_nm = 700.0, im_power = 4.2;
    const double eps_inf = 3.7, lambda_p_nm = 142.6;
    for (int i = 0; i < 17; ++i) {
      const double nm = 500.0 + 25.0 * i;
      const double re = eps_inf - (nm / lambda_p_nm) * (nm / lambda_p_nm);
      const double im = anchor_im * std::pow(nm / anchor_nm, im_power);
      // Round to 3 decimals so the compiled table matches the shipped CSV.
      auto r3 = [](double v) { return std::round(v * 1000.0) / 1000.0; };
      t.rows.push_back({nm * 1e-9, {r3(re), r3(im)}});
    }
    t.validate();
    return t;
  }();
  return table;
}

}  // namespace nvwire
