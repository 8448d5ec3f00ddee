#include "ltd/tile_measure.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "ltd/errors.hpp"

namespace ltd {

TileMeasure TileMeasure::from_masses(int n_neighbours, std::vector<double> mass,
                                     std::uint64_t sample_count, std::vector<double> std_err) {
  if (n_neighbours < 0 || n_neighbours > kMaxNeighbours)
    throw InputError("tile measure: n_neighbours must be in [0, " +
                     std::to_string(kMaxNeighbours) + "] (got " + std::to_string(n_neighbours) +
                     ")");
  const std::size_t n_tiles = std::size_t{1} << n_neighbours;
  if (mass.size() != n_tiles)
    throw InputError("tile measure: expected " + std::to_string(n_tiles) + " masses, got " +
                     std::to_string(mass.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (!std::isfinite(mass[i]) || mass[i] < 0.0)
      throw InputError("tile measure: mass[" + std::to_string(i) + "] must be non-negative");
    sum += mass[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InputError("tile measure: masses must sum to 1 (got " + std::to_string(sum) + ")");
  if (sum != 1.0)
    for (double& m : mass) m /= sum;
  if (!std_err.empty() && std_err.size() != n_tiles)
    throw InputError("tile measure: std_err must be empty or match the mass array");

  TileMeasure out;
  out.n_ = n_neighbours;
  out.mass_ = std::move(mass);
  out.std_err_ = std::move(std_err);
  out.sample_count_ = sample_count;
  return out;
}

TileMeasure TileMeasure::from_counts(int n_neighbours, const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) throw InputError("tile measure: counts must not be all zero");

  std::vector<double> mass(counts.size());
  std::vector<double> std_err(counts.size());
  const double n = static_cast<double>(total);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = static_cast<double>(counts[i]) / n;
    mass[i] = p;
    std_err[i] = std::sqrt(p * (1.0 - p) / n);
  }
  return from_masses(n_neighbours, std::move(mass), total, std::move(std_err));
}

TileMeasure load_tile_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open measure file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("measure file " + path + ": " + e.what());
  }
  try {
    const int n = j.at("n_neighbours").get<int>();
    auto mass = j.at("mass").get<std::vector<double>>();
    std::uint64_t samples = j.value("sample_count", std::uint64_t{0});
    std::vector<double> std_err;
    if (j.contains("std_err")) std_err = j.at("std_err").get<std::vector<double>>();
    return TileMeasure::from_masses(n, std::move(mass), samples, std::move(std_err));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("measure file " + path + ": " + e.what());
  }
}

void save_tile_measure(const TileMeasure& measure, const std::string& path) {
  nlohmann::json j;
  j["n_neighbours"] = measure.n_neighbours();
  j["mass"] = measure.masses();
  j["sample_count"] = measure.sample_count();
  if (measure.has_std_err()) j["std_err"] = measure.std_errs();
  std::ofstream out(path);
  if (!out) throw InputError("cannot write measure file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ltd
