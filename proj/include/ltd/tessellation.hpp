#pragma once

#include <cstdint>
#include <optional>

#include "ltd/geometry.hpp"
#include "ltd/tile_measure.hpp"

namespace ltd {

/// Tile of the serving-area tessellation containing p: the set of neighbours
/// whose regions cover p. nullopt when p lies outside the serving region.
std::optional<NeighborSet> classify_point(const Scenario& scenario, Point2D p);

/// Monte Carlo estimate of the tile measures from points drawn uniformly over
/// the serving region (disc: rejection from the bounding box; raster: a
/// uniformly chosen covered cell, then a uniform point inside it).
/// Deterministic given the seed, for any job count.
///
/// Throws DegenerateScenarioError when the serving region has no covered cell.
TileMeasure estimate_tessellation(const Scenario& scenario, std::uint64_t n_samples,
                                  std::uint64_t seed, int jobs = 0);

/// Fraction of the serving area covered by tiles whose neighbour set is
/// contained in k. Exactly 1 for the full set, monotone in k.
double coverage_fraction(const TileMeasure& measure, NeighborSet k);

}  // namespace ltd
