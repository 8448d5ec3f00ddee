#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltd/geometry.hpp"

namespace ltd {

/// Reads a scenario from its JSON file format. Malformed files raise
/// ParseError naming the offending field; more neighbours than the cap raise
/// CapacityError.
Scenario load_scenario(const std::string& path, int neighbour_cap = kDefaultNeighbourCap);

/// Writes the JSON form; load(save(s)) == s bit-exactly for disc scenarios
/// and cell-exactly for raster scenarios.
void save_scenario(const Scenario& scenario, const std::string& path);

/// Raw contents of a raster power-map file: one dBm grid per station, all on
/// a shared extent. Row 0 is the northernmost row.
struct PowerMapStack {
  int n_cols = 0;
  int n_rows = 0;
  double cell_size = 0.0;
  Point2D origin;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> powers;  // per station, row-major
};

PowerMapStack load_power_maps(const std::string& path);
void write_power_maps(const PowerMapStack& stack, const std::string& path);

/// Applies the detection threshold to every grid of the stack. The first
/// station becomes the serving region; the rest become its neighbours, in
/// file order.
Scenario scenario_from_power_maps(const PowerMapStack& stack, double threshold_dbm,
                                  int neighbour_cap = kDefaultNeighbourCap);

Scenario load_raster_scenario(const std::string& path, double threshold_dbm,
                              int neighbour_cap = kDefaultNeighbourCap);

/// Synthetic indoor deployment for threshold studies: a constant-power
/// "macro" first station that covers the whole extent at any practical
/// threshold, plus four stations with log-distance path loss placed at
/// jittered interior positions.
struct SyntheticRasterParams {
  int n_cols = 60;
  int n_rows = 40;
  double cell_size = 2.0;  // metres
  Point2D origin{0.0, 0.0};
  double macro_power_dbm = 0.0;
  double tx_dbm_at_1m = -45.0;
  double path_loss_exponent = 4.0;
  double position_jitter_m = 8.0;
};

PowerMapStack make_synthetic_raster(std::uint64_t seed,
                                    const SyntheticRasterParams& params = {});
void write_synthetic_raster(const std::string& path, std::uint64_t seed,
                            const SyntheticRasterParams& params = {});

}  // namespace ltd
