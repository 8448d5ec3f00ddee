#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ltd/errors.hpp"
#include "ltd/rng.hpp"
#include "ltd/tessellation.hpp"
#include "oracles.hpp"

using namespace ltd;

TEST_CASE("classify_point matches the per-neighbour membership tests") {
  const Scenario sc = generate_random_scenario(6, 1.0, 20);
  Rng rng(21);
  int inside = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Point2D p{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    const auto tile = classify_point(sc, p);
    if (!contains(sc.serving(), p)) {
      CHECK(!tile.has_value());
      continue;
    }
    ++inside;
    REQUIRE(tile.has_value());
    for (int i = 0; i < sc.n_neighbours(); ++i)
      CHECK(tile->contains(i) == contains(sc.neighbours()[i], p));
  }
  CHECK(inside > 500);
}

TEST_CASE("classify_point edge tiles") {
  // One neighbour far east, one overlapping the centre.
  const Scenario sc(Disc{{0, 0}, 1.0},
                    {Disc{{1.8, 0.0}, 1.0}, Disc{{0.3, 0.0}, 1.0}});
  CHECK(!classify_point(sc, {5.0, 5.0}).has_value());       // outside serving
  CHECK(classify_point(sc, {-0.5, 0.0})->bits() == 0b00u);  // serving only
  CHECK(classify_point(sc, {0.95, 0.0})->bits() == 0b11u);  // both neighbours
  CHECK(classify_point(sc, {0.5, 0.0})->bits() == 0b10u);   // second only
}

TEST_CASE("a scenario with no neighbours puts all mass on the empty tile") {
  const Scenario sc(Disc{{0, 0}, 1.0}, {});
  const TileMeasure m = estimate_tessellation(sc, 1000, 3);
  REQUIRE(m.n_tiles() == 1);
  CHECK(m.mass(NeighborSet()) == 1.0);
}

TEST_CASE("a co-located neighbour captures every sample") {
  const Scenario sc(Disc{{0, 0}, 1.0}, {Disc{{0, 0}, 1.0}});
  const TileMeasure m = estimate_tessellation(sc, 20000, 5);
  CHECK(m.mass(NeighborSet(1)) == 1.0);
  CHECK(m.mass(NeighborSet(0)) == 0.0);
}

TEST_CASE("estimated masses are a probability vector") {
  const Scenario sc = generate_random_scenario(5, 1.0, 8);
  const TileMeasure m = estimate_tessellation(sc, 100000, 9);
  double sum = 0.0;
  for (double v : m.masses()) {
    CHECK(v >= 0.0);
    sum += v;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-12);
  CHECK(m.sample_count() == 100000);
}

TEST_CASE("sliver overlap mass matches the closed-form lens area") {
  const double radius = 1.0, distance = 1.8;
  const Scenario sc(Disc{{0, 0}, radius}, {Disc{{distance, 0.0}, radius}});
  const std::uint64_t n = 1'000'000;
  const TileMeasure m = estimate_tessellation(sc, n, 1234);
  const double expected = oracles::lens_area(radius, distance) / (std::numbers::pi * radius * radius);
  const double got = m.mass(NeighborSet(1));
  const double se = m.std_err(NeighborSet(1));
  CHECK(std::abs(got - expected) <= 3.0 * se);
  CHECK(se < 1e-3);
}

TEST_CASE("reported standard errors shrink like one over sqrt(n)") {
  const Scenario sc(Disc{{0, 0}, 1.0}, {Disc{{1.8, 0.0}, 1.0}});
  std::vector<double> log_n, log_se;
  std::uint64_t n = 125'000;
  for (int i = 0; i < 4; ++i, n *= 2) {
    const TileMeasure m = estimate_tessellation(sc, n, derive_seed(99, i));
    log_n.push_back(std::log2(static_cast<double>(n)));
    log_se.push_back(std::log2(m.std_err(NeighborSet(1))));
  }
  // Least-squares slope over the three doublings; the sampling theory value
  // is -1/2 and the check allows 20% either way.
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    mx += log_n[i] / 4;
    my += log_se[i] / 4;
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    num += (log_n[i] - mx) * (log_se[i] - my);
    den += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = num / den;
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));
}

TEST_CASE("tessellation is deterministic and independent of the job count") {
  const Scenario sc = generate_random_scenario(4, 1.0, 55);
  const TileMeasure a = estimate_tessellation(sc, 200000, 7, 1);
  const TileMeasure b = estimate_tessellation(sc, 200000, 7, 4);
  const TileMeasure c = estimate_tessellation(sc, 200000, 8, 4);
  CHECK(a.masses() == b.masses());
  CHECK(a.masses() != c.masses());
}

TEST_CASE("raster serving regions sample only covered cells") {
  RasterGrid serving;
  serving.origin = {0, 0};
  serving.cell_size = 1.0;
  serving.n_cols = 4;
  serving.n_rows = 1;
  serving.threshold = -70.0;
  serving.power = {-60, -100, -60, -100};  // half the extent is covered
  // Neighbour covering the first covered cell only.
  RasterGrid n1 = serving;
  n1.power = {-60, -100, -100, -100};
  const Scenario sc(CoverageRegion{serving}, {CoverageRegion{n1}});
  const TileMeasure m = estimate_tessellation(sc, 50000, 2);
  CHECK(m.mass(NeighborSet(1)) == doctest::Approx(0.5).epsilon(0.02));
  CHECK(m.mass(NeighborSet(0)) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("an empty serving raster is a degenerate scenario") {
  RasterGrid serving;
  serving.origin = {0, 0};
  serving.cell_size = 1.0;
  serving.n_cols = 2;
  serving.n_rows = 2;
  serving.threshold = -50.0;
  serving.power = {-90, -90, -90, -90};
  const Scenario sc(CoverageRegion{serving}, {});
  CHECK_THROWS_AS(estimate_tessellation(sc, 1000, 1), DegenerateScenarioError);
}

TEST_CASE("coverage_fraction sums subsets and hits the documented anchors") {
  const TileMeasure m = TileMeasure::from_masses(2, {0.4, 0.2, 0.2, 0.2});
  CHECK(coverage_fraction(m, NeighborSet()) == 0.4);
  CHECK(coverage_fraction(m, NeighborSet(0b01)) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(coverage_fraction(m, NeighborSet(0b11)) == 1.0);
}

TEST_CASE("coverage_fraction is monotone under set inclusion") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const TileMeasure m = oracles::random_measure(5, seed);
    for (std::uint32_t k = 0; k < m.n_tiles(); ++k) {
      const NeighborSet a(k);
      for (int i = 0; i < 5; ++i) {
        const NeighborSet b = a.with(i);
        CHECK(coverage_fraction(m, a) <= coverage_fraction(m, b) + 1e-15);
      }
    }
  }
}
