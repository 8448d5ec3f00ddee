#include "ltd/geometry.hpp"

#include <cmath>
#include <string>

#include "ltd/errors.hpp"
#include "ltd/rng.hpp"

namespace ltd {

Point2D RasterGrid::cell_center(int row, int col) const {
  return {origin.x + (col + 0.5) * cell_size,
          origin.y + (n_rows - row - 0.5) * cell_size};
}

std::vector<std::pair<int, int>> RasterGrid::covered_cells() const {
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < n_rows; ++r)
    for (int c = 0; c < n_cols; ++c)
      if (cell_covered(r, c)) cells.emplace_back(r, c);
  return cells;
}

bool contains(const Disc& d, Point2D p) {
  const double dx = p.x - d.center.x;
  const double dy = p.y - d.center.y;
  return dx * dx + dy * dy <= d.radius * d.radius;
}

bool contains(const RasterGrid& g, Point2D p) {
  const double fx = (p.x - g.origin.x) / g.cell_size;
  const double fy = (p.y - g.origin.y) / g.cell_size;
  if (fx < 0.0 || fy < 0.0) return false;
  const int col = static_cast<int>(fx);
  const int row_from_south = static_cast<int>(fy);
  if (col >= g.n_cols || row_from_south >= g.n_rows) return false;
  return g.cell_covered(g.n_rows - 1 - row_from_south, col);
}

bool contains(const CoverageRegion& region, Point2D p) {
  return std::visit([&](const auto& g) { return contains(g, p); }, region);
}

BoundingBox bounding_box(const CoverageRegion& region) {
  if (const auto* d = std::get_if<Disc>(&region)) {
    return {{d->center.x - d->radius, d->center.y - d->radius},
            {d->center.x + d->radius, d->center.y + d->radius}};
  }
  const auto& g = std::get<RasterGrid>(region);
  return {g.origin,
          {g.origin.x + g.n_cols * g.cell_size, g.origin.y + g.n_rows * g.cell_size}};
}

namespace {

void validate_region(const CoverageRegion& region, const std::string& what) {
  if (const auto* d = std::get_if<Disc>(&region)) {
    if (!std::isfinite(d->center.x) || !std::isfinite(d->center.y))
      throw InputError(what + ": disc center must be finite");
    if (!(d->radius > 0.0) || !std::isfinite(d->radius))
      throw InputError(what + ": disc radius must be positive (got " +
                       std::to_string(d->radius) + ")");
    return;
  }
  const auto& g = std::get<RasterGrid>(region);
  if (!(g.cell_size > 0.0) || !std::isfinite(g.cell_size))
    throw InputError(what + ": raster cell_size must be positive");
  if (g.n_cols < 1 || g.n_rows < 1)
    throw InputError(what + ": raster dimensions must be positive");
  const std::size_t expected = static_cast<std::size_t>(g.n_cols) * g.n_rows;
  if (g.power.size() != expected)
    throw InputError(what + ": raster power grid has " + std::to_string(g.power.size()) +
                     " values, expected " + std::to_string(expected));
  if (!std::isfinite(g.threshold)) throw InputError(what + ": raster threshold must be finite");
}

}  // namespace

Scenario::Scenario(CoverageRegion serving, std::vector<CoverageRegion> neighbours,
                   std::vector<std::string> labels, int neighbour_cap)
    : serving_(std::move(serving)), neighbours_(std::move(neighbours)), labels_(std::move(labels)) {
  if (static_cast<int>(neighbours_.size()) > neighbour_cap)
    throw CapacityError("scenario has " + std::to_string(neighbours_.size()) +
                        " neighbours; the cap is " + std::to_string(neighbour_cap));
  validate_region(serving_, "serving");
  for (std::size_t i = 0; i < neighbours_.size(); ++i)
    validate_region(neighbours_[i], "neighbours[" + std::to_string(i) + "]");
  if (!labels_.empty() && labels_.size() != neighbours_.size())
    throw InputError("labels must be empty or match the number of neighbours");
}

Scenario generate_random_scenario(int n_neighbours, double radius, std::uint64_t seed) {
  if (n_neighbours < 1) throw InputError("generate_random_scenario: need at least one neighbour");
  if (!(radius > 0.0)) throw InputError("generate_random_scenario: radius must be positive");

  Rng rng(seed);
  const double reach = 2.0 * radius;  // centre distance below this guarantees overlap
  std::vector<CoverageRegion> neighbours;
  neighbours.reserve(n_neighbours);
  for (int i = 0; i < n_neighbours; ++i) {
    double x, y;
    do {
      x = rng.uniform(-reach, reach);
      y = rng.uniform(-reach, reach);
    } while (x * x + y * y >= reach * reach);
    neighbours.push_back(Disc{{x, y}, radius});
  }
  return Scenario(Disc{{0.0, 0.0}, radius}, std::move(neighbours));
}

}  // namespace ltd
