#include "nvwire/system_table.hpp"

#include "nvwire/csv.hpp"
#include "nvwire/error.hpp"

namespace nvwire {

std::vector<SystemRecord> load_system_records(const std::string& path) {
  const auto t = csv::read_numeric(path);
  if (t.header.size() < 4)
    throw IoError(path +
                  ": expected diameter_nm,height_nm,measured_enhancement,"
                  "measured_error");
  std::vector<SystemRecord> out;
  for (const auto& r : t.rows) {
    SystemRecord rec;
    rec.wire_diameter_nm = r[0];
    rec.diamond_height_nm = r[1];
    rec.measured_enhancement = r[2];
    rec.measured_error = r[3];
    if (!(rec.wire_diameter_nm > 0.0) || !(rec.diamond_height_nm > 0.0))
      throw Error(path + ": diameters and heights must be positive");
    out.push_back(rec);
  }
  return out;
}

std::vector<SystemRecord> bundled_system_records() {
  return {
      {65.0, 45.0, 4.6, 0.1, 0.0},
      {60.0, 40.0, 2.9, 0.1, 0.0},
      {51.0, 40.0, 4.4, 0.2, 0.0},
      {63.0, 17.0, 3.6, 0.1, 0.0},
      {50.0, 35.0, 4.2, 0.1, 0.0},
  };
}

PredictOptions::PredictOptions() : drude(default_silver()) {}

std::vector<SystemRecord> predict_table(std::vector<SystemRecord> records,
                                        const PredictOptions& opts) {
  const double lambda_m = opts.wavelength_nm * 1e-9;
  const Cplx eps_metal = drude_epsilon(lambda_m, opts.drude);
  for (auto& rec : records) {
    const WireGeometry g(0.5 * rec.wire_diameter_nm * 1e-9, eps_metal,
                         opts.eps_dielectric);
    const EmitterConfig e(rec.diamond_height_nm * 1e-9, Orientation::radial,
                          lambda_m, opts.eps_dielectric);
    rec.predicted_min_enhancement = total_rate_enhancement(g, e, opts.accuracy).total;
  }
  return records;
}

void save_system_records(const std::string& path,
                         const std::vector<SystemRecord>& records,
                         bool include_prediction) {
  csv::Table t;
  t.header = {"diameter_nm", "height_nm", "measured_enhancement",
              "measured_error"};
  if (include_prediction) t.header.push_back("predicted_min_enhancement");
  for (const auto& r : records) {
    std::vector<double> row = {r.wire_diameter_nm, r.diamond_height_nm,
                               r.measured_enhancement, r.measured_error};
    if (include_prediction) row.push_back(r.predicted_min_enhancement);
    t.rows.push_back(std::move(row));
  }
  csv::write_numeric(path, t);
}

}  // namespace nvwire
