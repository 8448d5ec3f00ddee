#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ltd/neighbor_set.hpp"

namespace ltd {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(const Point2D&, const Point2D&) = default;
};

struct Disc {
  Point2D center;
  double radius = 0.0;
  friend bool operator==(const Disc&, const Disc&) = default;
};

/// dBm samples on a regular grid. `origin` is the south-west corner of the
/// extent and row 0 is the northernmost row. A cell is covered when its power
/// is at or above `threshold`.
struct RasterGrid {
  Point2D origin;
  double cell_size = 0.0;  // metres
  int n_cols = 0;
  int n_rows = 0;
  std::vector<double> power;  // row-major, n_rows * n_cols
  double threshold = 0.0;     // dBm

  double power_at(int row, int col) const {
    return power[static_cast<std::size_t>(row) * n_cols + col];
  }
  bool cell_covered(int row, int col) const { return power_at(row, col) >= threshold; }
  Point2D cell_center(int row, int col) const;
  std::vector<std::pair<int, int>> covered_cells() const;  // (row, col)

  friend bool operator==(const RasterGrid&, const RasterGrid&) = default;
};

using CoverageRegion = std::variant<Disc, RasterGrid>;

// Membership is closed: points at distance == radius, and cells with
// power == threshold, count as covered.
bool contains(const Disc& d, Point2D p);
bool contains(const RasterGrid& g, Point2D p);
bool contains(const CoverageRegion& region, Point2D p);

struct BoundingBox {
  Point2D lo;
  Point2D hi;
};
BoundingBox bounding_box(const CoverageRegion& region);

inline constexpr int kDefaultNeighbourCap = 20;

/// A serving coverage region plus the ordered list of neighbour regions
/// whose overlap with it is under study. Immutable after construction and
/// safe to share across threads.
class Scenario {
 public:
  Scenario(CoverageRegion serving, std::vector<CoverageRegion> neighbours,
           std::vector<std::string> labels = {}, int neighbour_cap = kDefaultNeighbourCap);

  const CoverageRegion& serving() const { return serving_; }
  const std::vector<CoverageRegion>& neighbours() const { return neighbours_; }
  int n_neighbours() const { return static_cast<int>(neighbours_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  NeighborSet all_neighbours() const { return NeighborSet::full(n_neighbours()); }

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  CoverageRegion serving_;
  std::vector<CoverageRegion> neighbours_;
  std::vector<std::string> labels_;
};

/// Serving disc at the origin plus `n_neighbours` discs of the same radius
/// whose centres are drawn uniformly from the disc of radius 2*radius around
/// the origin, so every neighbour overlaps the serving area. Deterministic
/// given the seed.
Scenario generate_random_scenario(int n_neighbours, double radius, std::uint64_t seed);

}  // namespace ltd
