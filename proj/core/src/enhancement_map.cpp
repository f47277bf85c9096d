#include "nvwire/enhancement_map.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include "nvwire/csv.hpp"
#include "nvwire/error.hpp"

namespace nvwire {

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw std::domain_error("linspace: count must be >= 1");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = start;
    return v;
  }
  for (int i = 0; i < count; ++i)
    v[i] = start + (stop - start) * i / (count - 1);
  return v;
}

EnhancementMap enhancement_map(const MapRequest& req) {
  if (req.diameter_nm.empty() || req.distance_nm.empty())
    throw std::domain_error("enhancement_map: axes must be non-empty");
  for (double d : req.diameter_nm)
    if (d < 30.0 || d > 80.0)
      throw std::domain_error("enhancement_map: diameter outside validated [30, 80] nm");
  for (double s : req.distance_nm)
    if (s < 5.0 || s > 60.0)
      throw std::domain_error("enhancement_map: distance outside validated [5, 60] nm");

  EnhancementMap map;
  map.diameter_nm = req.diameter_nm;
  map.distance_nm = req.distance_nm;
  map.wavelength_nm = req.wavelength_nm;
  map.eps_dielectric = req.eps_dielectric;
  map.orientation = req.orientation;
  map.drude = req.drude;
  const size_t nd = req.diameter_nm.size(), ns = req.distance_nm.size();
  map.total.assign(nd * ns, 0.0);

  const double lambda_m = req.wavelength_nm * 1e-9;
  const Cplx eps_metal = drude_epsilon(lambda_m, req.drude);

  std::mutex notes_mutex;
  std::atomic<size_t> next_row{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next_row.fetch_add(1);
      if (i >= nd) return;
      const WireGeometry g(0.5 * req.diameter_nm[i] * 1e-9, eps_metal,
                           req.eps_dielectric);
      for (size_t j = 0; j < ns; ++j) {
        const EmitterConfig e(req.distance_nm[j] * 1e-9, req.orientation,
                              lambda_m, req.eps_dielectric);
        try {
          const RateBreakdown b = total_rate_enhancement(g, e, req.accuracy);
          map.total[i * ns + j] = b.total;
          if (!b.notes.empty()) {
            std::lock_guard<std::mutex> lock(notes_mutex);
            for (const auto& n : b.notes)
              map.cell_notes.push_back(std::to_string(i) + "," +
                                       std::to_string(j) + ": " + n);
          }
        } catch (const AccuracyError& err) {
          map.total[i * ns + j] = err.best_estimate.real();
          std::lock_guard<std::mutex> lock(notes_mutex);
          map.cell_notes.push_back(std::to_string(i) + "," + std::to_string(j) +
                                   ": accuracy error: " + err.what());
        }
      }
    }
  };

  int nthreads = req.threads > 0
                     ? req.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(nd)));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::sort(map.cell_notes.begin(), map.cell_notes.end());
  return map;
}

void save_map_csv(const std::string& path, const EnhancementMap& map) {
  {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "diameter_nm\\distance_nm";
    for (double s : map.distance_nm) out << "," << csv::format_double(s);
    out << "\n";
    const size_t ns = map.distance_nm.size();
    for (size_t i = 0; i < map.diameter_nm.size(); ++i) {
      out << csv::format_double(map.diameter_nm[i]);
      for (size_t j = 0; j < ns; ++j)
        out << "," << csv::format_double(map.total[i * ns + j]);
      out << "\n";
    }
    if (!out) throw IoError("write failure on " + path);
  }
  std::ofstream meta(path + ".meta");
  if (!meta) throw IoError("cannot write " + path + ".meta");
  meta << "wavelength_nm=" << csv::format_double(map.wavelength_nm) << "\n"
       << "eps_dielectric=" << csv::format_double(map.eps_dielectric) << "\n"
       << "orientation=" << to_string(map.orientation) << "\n"
       << "drude_eps_inf=" << csv::format_double(map.drude.eps_inf) << "\n"
       << "drude_omega_p_rad_s=" << csv::format_double(map.drude.omega_p) << "\n"
       << "drude_gamma_rad_s=" << csv::format_double(map.drude.gamma) << "\n";
  for (const auto& n : map.cell_notes) meta << "note=" << n << "\n";
  if (!meta) throw IoError("write failure on " + path + ".meta");
}

EnhancementMap load_map_csv(const std::string& path) {
  const auto t = csv::read_numeric(path);
  if (t.header.size() < 2)
    throw IoError(path + ": map needs at least one distance column");
  EnhancementMap map;
  for (size_t j = 1; j < t.header.size(); ++j)
    map.distance_nm.push_back(csv::parse_double(t.header[j], path + " header"));
  for (const auto& row : t.rows) {
    map.diameter_nm.push_back(row[0]);
    for (size_t j = 1; j < row.size(); ++j) map.total.push_back(row[j]);
  }
  return map;
}

}  // namespace nvwire
