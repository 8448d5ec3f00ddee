#include "ltd/tessellation.hpp"

#include <atomic>
#include <cmath>

#include "ltd/errors.hpp"
#include "ltd/parallel.hpp"
#include "ltd/rng.hpp"

namespace ltd {

std::optional<NeighborSet> classify_point(const Scenario& scenario, Point2D p) {
  if (!contains(scenario.serving(), p)) return std::nullopt;
  NeighborSet tile;
  const auto& neighbours = scenario.neighbours();
  for (int i = 0; i < scenario.n_neighbours(); ++i)
    if (contains(neighbours[i], p)) tile = tile.with(i);
  return tile;
}

namespace {

// Uniform sampler over the serving region, one instance per worker chunk.
class ServingSampler {
 public:
  ServingSampler(const Scenario& scenario, const std::vector<std::pair<int, int>>* cells)
      : scenario_(&scenario), cells_(cells), box_(bounding_box(scenario.serving())) {}

  Point2D draw(Rng& rng) const {
    if (cells_) {
      const auto& g = std::get<RasterGrid>(scenario_->serving());
      const auto [row, col] = (*cells_)[rng.below(cells_->size())];
      const double x0 = g.origin.x + col * g.cell_size;
      const double y0 = g.origin.y + (g.n_rows - 1 - row) * g.cell_size;
      return {x0 + rng.uniform() * g.cell_size, y0 + rng.uniform() * g.cell_size};
    }
    Point2D p;
    do {
      p.x = rng.uniform(box_.lo.x, box_.hi.x);
      p.y = rng.uniform(box_.lo.y, box_.hi.y);
    } while (!contains(scenario_->serving(), p));
    return p;
  }

 private:
  const Scenario* scenario_;
  const std::vector<std::pair<int, int>>* cells_;  // covered cells, raster serving only
  BoundingBox box_;
};

constexpr std::uint64_t kChunkSamples = 1 << 16;

}  // namespace

TileMeasure estimate_tessellation(const Scenario& scenario, std::uint64_t n_samples,
                                  std::uint64_t seed, int jobs) {
  if (n_samples < 1) throw InputError("estimate_tessellation: n_samples must be >= 1");
  if (scenario.n_neighbours() > TileMeasure::kMaxNeighbours)
    throw CapacityError("estimate_tessellation: too many neighbours for a tile measure");

  std::vector<std::pair<int, int>> cells;
  const std::vector<std::pair<int, int>>* cells_ptr = nullptr;
  if (const auto* g = std::get_if<RasterGrid>(&scenario.serving())) {
    cells = g->covered_cells();
    if (cells.empty())
      throw DegenerateScenarioError("serving region covers no raster cell at this threshold");
    cells_ptr = &cells;
  }

  const std::size_t n_tiles = std::size_t{1} << scenario.n_neighbours();
  std::vector<std::atomic<std::uint64_t>> counts(n_tiles);
  const std::size_t n_chunks =
      static_cast<std::size_t>((n_samples + kChunkSamples - 1) / kChunkSamples);

  // Chunks are seeded by index and merged with integer sums, so the result is
  // identical for any scheduling.
  parallel_for(n_chunks, jobs, [&](std::size_t chunk) {
    Rng rng(derive_seed(seed, chunk));
    ServingSampler sampler(scenario, cells_ptr);
    const std::uint64_t begin = chunk * kChunkSamples;
    const std::uint64_t end = std::min(begin + kChunkSamples, n_samples);
    for (std::uint64_t i = begin; i < end; ++i) {
      const auto tile = classify_point(scenario, sampler.draw(rng));
      counts[tile->bits()].fetch_add(1, std::memory_order_relaxed);
    }
  });

  std::vector<std::uint64_t> plain(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) plain[i] = counts[i].load();
  return TileMeasure::from_counts(scenario.n_neighbours(), plain);
}

double coverage_fraction(const TileMeasure& measure, NeighborSet k) {
  if (k == measure.full()) return 1.0;
  double sum = 0.0;
  for (NeighborSet sub : subsets_of(k)) sum += measure.mass(sub);
  return std::min(sum, 1.0);
}

}  // namespace ltd
