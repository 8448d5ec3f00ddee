#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltd/neighbor_set.hpp"

namespace ltd {

/// Probability distribution over the 2^N tiles of the serving area,
/// normalised so the serving area has measure 1. Indexed by NeighborSet
/// masks; zero-mass tiles are kept so indexing stays dense. Immutable after
/// construction. This is the knowledge chain's sole input.
class TileMeasure {
 public:
  // State-sized arrays are 2^N doubles; above this the solve does not fit a
  // desk machine anyway.
  static constexpr int kMaxNeighbours = 22;

  /// Validates and normalises: 2^n non-negative entries summing to 1 within
  /// 1e-12 (then renormalised exactly). sample_count 0 means exact/synthetic.
  static TileMeasure from_masses(int n_neighbours, std::vector<double> mass,
                                 std::uint64_t sample_count = 0,
                                 std::vector<double> std_err = {});

  /// Empirical frequencies with binomial standard errors per tile.
  static TileMeasure from_counts(int n_neighbours, const std::vector<std::uint64_t>& counts);

  int n_neighbours() const { return n_; }
  std::size_t n_tiles() const { return mass_.size(); }
  NeighborSet full() const { return NeighborSet::full(n_); }

  double mass(NeighborSet tile) const { return mass_[tile.bits()]; }
  const std::vector<double>& masses() const { return mass_; }

  std::uint64_t sample_count() const { return sample_count_; }
  bool has_std_err() const { return !std_err_.empty(); }
  double std_err(NeighborSet tile) const { return std_err_[tile.bits()]; }
  const std::vector<double>& std_errs() const { return std_err_; }

 private:
  TileMeasure() = default;

  int n_ = 0;
  std::vector<double> mass_{1.0};
  std::vector<double> std_err_;
  std::uint64_t sample_count_ = 0;
};

TileMeasure load_tile_measure(const std::string& path);
void save_tile_measure(const TileMeasure& measure, const std::string& path);

}  // namespace ltd
