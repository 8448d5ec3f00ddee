#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "ltd/errors.hpp"
#include "ltd/scenario_io.hpp"

using namespace ltd;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("ltd_io_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("disc scenarios round-trip bit-exactly through JSON") {
  TempDir tmp;
  const Scenario original = generate_random_scenario(3, 1.25, 4242);
  const std::string path = tmp.file("scenario.json");
  save_scenario(original, path);
  const Scenario loaded = load_scenario(path);
  CHECK(loaded == original);

  // Saving the loaded scenario again reproduces the same bytes.
  const std::string path2 = tmp.file("scenario2.json");
  save_scenario(loaded, path2);
  std::ifstream a(path), b(path2);
  const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("raster scenarios round-trip cell-exactly through JSON") {
  TempDir tmp;
  RasterGrid g;
  g.origin = {2.5, -1.0};
  g.cell_size = 1.5;
  g.n_cols = 4;
  g.n_rows = 3;
  g.threshold = -70.0;
  g.power = {-60, -61, -62, -63, -64, -65, -66, -67, -68, -69, -70, -71};
  const Scenario original(CoverageRegion{g}, {CoverageRegion{g}}, {"bs1"});
  const std::string path = tmp.file("raster_scenario.json");
  save_scenario(original, path);
  CHECK(load_scenario(path) == original);
}

TEST_CASE("scenario parse errors name the offending field") {
  TempDir tmp;
  const std::string path = tmp.file("bad.json");

  write_text(path, R"({"serving": {"type":"disc","center":[0,0],"radius":-1},"neighbours":[]})");
  CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("radius"), ParseError);

  write_text(path, R"({"serving": {"type":"disc","center":[0,0]},"neighbours":[]})");
  CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("radius"), ParseError);

  write_text(path, R"({"neighbours":[]})");
  CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("serving"), ParseError);

  write_text(path,
             R"({"serving":{"type":"disc","center":[0,0],"radius":1},)"
             R"("neighbours":[{"type":"box"}]})");
  CHECK_THROWS_WITH_AS(load_scenario(path), doctest::Contains("neighbours[0]"), ParseError);

  write_text(path, "not json at all");
  CHECK_THROWS_AS(load_scenario(path), ParseError);

  CHECK_THROWS_AS(load_scenario(tmp.file("missing.json")), InputError);
}

TEST_CASE("scenario files over the neighbour cap raise a capacity error") {
  TempDir tmp;
  std::string neighbours;
  for (int i = 0; i < 25; ++i) {
    if (i) neighbours += ",";
    neighbours += R"({"type":"disc","center":[0.5,0],"radius":1})";
  }
  const std::string path = tmp.file("crowded.json");
  write_text(path, R"({"serving":{"type":"disc","center":[0,0],"radius":1},"neighbours":[)" +
                       neighbours + "]}");
  CHECK_THROWS_AS(load_scenario(path), CapacityError);
  CHECK_NOTHROW(load_scenario(path, 25));
}

TEST_CASE("power map files round-trip exactly") {
  TempDir tmp;
  const PowerMapStack stack = make_synthetic_raster(7);
  REQUIRE(stack.powers.size() == 5);
  REQUIRE(stack.labels[0] == "macro");
  const std::string path = tmp.file("maps.txt");
  write_power_maps(stack, path);
  const PowerMapStack loaded = load_power_maps(path);
  CHECK(loaded.n_cols == stack.n_cols);
  CHECK(loaded.n_rows == stack.n_rows);
  CHECK(loaded.cell_size == stack.cell_size);
  CHECK(loaded.origin == stack.origin);
  CHECK(loaded.labels == stack.labels);
  CHECK(loaded.powers == stack.powers);
}

TEST_CASE("raster files with missing data or headers fail to parse") {
  TempDir tmp;
  const std::string path = tmp.file("maps.txt");

  write_text(path, "ncols 2 nrows 2 cellsize 1 origin 0 0 nstations 1\nstation a\n1 2 3\n");
  CHECK_THROWS_WITH_AS(load_power_maps(path), doctest::Contains("dimension mismatch"), ParseError);

  write_text(path, "ncols 2 nrows 2 origin 0 0 nstations 1\nstation a\n1 2 3 4\n");
  CHECK_THROWS_WITH_AS(load_power_maps(path), doctest::Contains("cellsize"), ParseError);

  write_text(path, "ncols 2 nrows 2 cellsize 1 origin 0 0 nstations 2\nstation a\n1 2 3 4\n");
  CHECK_THROWS_AS(load_power_maps(path), ParseError);

  write_text(path,
             "ncols 2 nrows 2 cellsize 1 origin 0 0 nstations 1\nstation a\n1 2 3 4\nextra\n");
  CHECK_THROWS_WITH_AS(load_power_maps(path), doctest::Contains("trailing"), ParseError);
}

TEST_CASE("raster scenarios follow file order: first station serves") {
  TempDir tmp;
  write_text(tmp.file("maps.txt"),
             "ncols 2 nrows 1 cellsize 1 origin 0 0 nstations 3\n"
             "station macro\n0 0\n"
             "station a\n-65 -90\n"
             "station b\n-90 -65\n");
  const Scenario sc = load_raster_scenario(tmp.file("maps.txt"), -70.0);
  CHECK(sc.n_neighbours() == 2);
  CHECK(sc.labels() == std::vector<std::string>{"a", "b"});
  const auto& serving = std::get<RasterGrid>(sc.serving());
  CHECK(serving.covered_cells().size() == 2);
  CHECK(std::get<RasterGrid>(sc.neighbours()[0]).covered_cells() ==
        std::vector<std::pair<int, int>>{{0, 0}});
  CHECK(std::get<RasterGrid>(sc.neighbours()[1]).covered_cells() ==
        std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("a threshold below every physical power covers everything") {
  TempDir tmp;
  const std::string path = tmp.file("synthetic.txt");
  write_synthetic_raster(path, 99);
  const Scenario sc = load_raster_scenario(path, -200.0);
  const std::size_t cells = static_cast<std::size_t>(60) * 40;
  CHECK(std::get<RasterGrid>(sc.serving()).covered_cells().size() == cells);
  for (const auto& n : sc.neighbours())
    CHECK(std::get<RasterGrid>(n).covered_cells().size() == cells);
}

TEST_CASE("synthetic raster coverage grows monotonically as the threshold drops") {
  const PowerMapStack stack = make_synthetic_raster(5);
  std::size_t previous[5] = {0, 0, 0, 0, 0};
  for (double threshold : {-60.0, -70.0, -80.0, -90.0, -100.0}) {
    const Scenario sc = scenario_from_power_maps(stack, threshold);
    for (int s = 0; s <= 4; ++s) {
      const auto& g = s == 0 ? std::get<RasterGrid>(sc.serving())
                             : std::get<RasterGrid>(sc.neighbours()[s - 1]);
      const std::size_t covered = g.covered_cells().size();
      CHECK(covered >= previous[s]);
      previous[s] = covered;
    }
  }
  // The macro covers the whole extent even at the most conservative setting.
  const Scenario sc = scenario_from_power_maps(stack, -60.0);
  CHECK(std::get<RasterGrid>(sc.serving()).covered_cells().size() ==
        static_cast<std::size_t>(60) * 40);
}

TEST_CASE("synthetic raster generation is deterministic per seed") {
  const PowerMapStack a = make_synthetic_raster(31);
  const PowerMapStack b = make_synthetic_raster(31);
  const PowerMapStack c = make_synthetic_raster(32);
  CHECK(a.powers == b.powers);
  CHECK(a.powers != c.powers);
}
