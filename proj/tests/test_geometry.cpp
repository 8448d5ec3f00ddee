#include <cmath>
#include <variant>

#include "doctest.h"
#include "ltd/errors.hpp"
#include "ltd/geometry.hpp"
#include "ltd/rng.hpp"

using namespace ltd;

TEST_CASE("disc membership is closed and correct") {
  const Disc d{{0.0, 0.0}, 1.0};
  CHECK(contains(d, {0.0, 0.0}));
  CHECK(!contains(d, {2.0, 0.0}));
  CHECK(contains(d, {1.0, 0.0}));  // boundary counts as covered
  CHECK(contains(d, {0.6, 0.6}));
  CHECK(!contains(d, {0.8, 0.8}));
}

TEST_CASE("disc membership is translation equivariant") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Disc d{{rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(0.1, 3.0)};
    const Point2D p{rng.uniform(-8, 8), rng.uniform(-8, 8)};
    const Point2D v{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const Disc shifted{{d.center.x + v.x, d.center.y + v.y}, d.radius};
    CHECK(contains(d, p) == contains(shifted, {p.x + v.x, p.y + v.y}));
  }
}

TEST_CASE("raster membership respects threshold, extent and row orientation") {
  RasterGrid g;
  g.origin = {0.0, 0.0};
  g.cell_size = 1.0;
  g.n_cols = 3;
  g.n_rows = 2;
  g.threshold = -70.0;
  // Row 0 is the north row (y in [1, 2)).
  g.power = {-65.0, -80.0, -70.0,    // north
             -90.0, -60.0, -100.0};  // south

  CHECK(contains(g, {0.5, 1.5}));    // -65 >= -70
  CHECK(!contains(g, {1.5, 1.5}));   // -80 < -70
  CHECK(contains(g, {2.5, 1.5}));    // equality counts as covered
  CHECK(!contains(g, {0.5, 0.5}));   // -90
  CHECK(contains(g, {1.5, 0.5}));    // -60
  CHECK(!contains(g, {-0.5, 0.5}));  // west of the extent
  CHECK(!contains(g, {3.5, 0.5}));
  CHECK(!contains(g, {0.5, 2.5}));  // north of the extent
  CHECK(!contains(g, {0.5, -0.5}));

  CHECK(g.covered_cells() == std::vector<std::pair<int, int>>{{0, 0}, {0, 2}, {1, 1}});
  CHECK(g.cell_center(0, 0) == Point2D{0.5, 1.5});
  CHECK(g.cell_center(1, 2) == Point2D{2.5, 0.5});
}

TEST_CASE("lower thresholds can only grow raster coverage") {
  Rng rng(3);
  RasterGrid g;
  g.origin = {0.0, 0.0};
  g.cell_size = 2.0;
  g.n_cols = 8;
  g.n_rows = 6;
  g.power.resize(48);
  for (double& p : g.power) p = rng.uniform(-110.0, -50.0);

  for (double hi = -55.0; hi >= -105.0; hi -= 7.5) {
    RasterGrid a = g, b = g;
    a.threshold = hi;
    b.threshold = hi - 10.0;
    for (int r = 0; r < g.n_rows; ++r)
      for (int c = 0; c < g.n_cols; ++c)
        if (a.cell_covered(r, c)) CHECK(b.cell_covered(r, c));
  }
}

TEST_CASE("random scenarios keep every neighbour overlapping the serving disc") {
  for (std::uint64_t seed : {42ull, 1ull, 987654321ull}) {
    const Scenario sc = generate_random_scenario(7, 1.0, seed);
    REQUIRE(sc.n_neighbours() == 7);
    const auto& serving = std::get<Disc>(sc.serving());
    CHECK(serving.center == Point2D{0.0, 0.0});
    CHECK(serving.radius == 1.0);
    for (const auto& region : sc.neighbours()) {
      const auto& d = std::get<Disc>(region);
      CHECK(d.radius == 1.0);
      CHECK(std::hypot(d.center.x, d.center.y) < 2.0);
    }
  }
  const Scenario one = generate_random_scenario(1, 2.5, 9);
  const auto& d = std::get<Disc>(one.neighbours()[0]);
  CHECK(std::hypot(d.center.x, d.center.y) < 5.0);
}

TEST_CASE("random scenario generation is deterministic") {
  const Scenario a = generate_random_scenario(5, 1.5, 77);
  const Scenario b = generate_random_scenario(5, 1.5, 77);
  CHECK(a == b);
  const Scenario c = generate_random_scenario(5, 1.5, 78);
  CHECK(!(a == c));
}

TEST_CASE("scenario construction validates regions and the neighbour cap") {
  CHECK_THROWS_AS(Scenario(Disc{{0, 0}, -1.0}, {}), InputError);
  CHECK_THROWS_AS(Scenario(Disc{{0, 0}, 1.0}, {Disc{{0, 0}, 0.0}}), InputError);

  RasterGrid bad;
  bad.cell_size = 1.0;
  bad.n_cols = 2;
  bad.n_rows = 2;
  bad.power = {1.0, 2.0, 3.0};  // one value short
  CHECK_THROWS_AS(Scenario(CoverageRegion{bad}, {}), InputError);

  std::vector<CoverageRegion> many(25, Disc{{0.0, 0.0}, 1.0});
  CHECK_THROWS_AS(Scenario(Disc{{0, 0}, 1.0}, many), CapacityError);
  CHECK_NOTHROW(Scenario(Disc{{0, 0}, 1.0}, many, {}, 25));
}

TEST_CASE("bounding boxes cover both region kinds") {
  const BoundingBox db = bounding_box(Disc{{1.0, -2.0}, 3.0});
  CHECK(db.lo == Point2D{-2.0, -5.0});
  CHECK(db.hi == Point2D{4.0, 1.0});

  RasterGrid g;
  g.origin = {10.0, 20.0};
  g.cell_size = 2.0;
  g.n_cols = 5;
  g.n_rows = 3;
  g.power.assign(15, -60.0);
  const BoundingBox rb = bounding_box(CoverageRegion{g});
  CHECK(rb.lo == Point2D{10.0, 20.0});
  CHECK(rb.hi == Point2D{20.0, 26.0});
}
