#include "ltd/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ltd/errors.hpp"
#include "ltd/rng.hpp"

namespace ltd {

namespace {

using nlohmann::json;

Point2D parse_point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("scenario field '" + field + "': expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CoverageRegion parse_region(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("type"))
    throw ParseError("scenario field '" + field + "': expected an object with a 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "disc") {
    if (!j.contains("center") || !j.contains("radius"))
      throw ParseError("scenario field '" + field + "': disc needs 'center' and 'radius'");
    if (!j.at("radius").is_number())
      throw ParseError("scenario field '" + field + ".radius': expected a number");
    Disc d{parse_point(j.at("center"), field + ".center"), j.at("radius").get<double>()};
    if (!(d.radius > 0.0))
      throw ParseError("scenario field '" + field + ".radius': must be positive (got " +
                       std::to_string(d.radius) + ")");
    return d;
  }
  if (type == "raster") {
    for (const char* key : {"origin", "cell_size", "n_cols", "n_rows", "threshold", "power"})
      if (!j.contains(key))
        throw ParseError("scenario field '" + field + "': raster needs '" + key + "'");
    RasterGrid g;
    g.origin = parse_point(j.at("origin"), field + ".origin");
    g.cell_size = j.at("cell_size").get<double>();
    g.n_cols = j.at("n_cols").get<int>();
    g.n_rows = j.at("n_rows").get<int>();
    g.threshold = j.at("threshold").get<double>();
    if (!(g.cell_size > 0.0))
      throw ParseError("scenario field '" + field + ".cell_size': must be positive");
    if (g.n_cols < 1 || g.n_rows < 1)
      throw ParseError("scenario field '" + field + "': raster dimensions must be positive");
    const auto& rows = j.at("power");
    if (!rows.is_array() || static_cast<int>(rows.size()) != g.n_rows)
      throw ParseError("scenario field '" + field + ".power': expected " +
                       std::to_string(g.n_rows) + " rows");
    g.power.reserve(static_cast<std::size_t>(g.n_rows) * g.n_cols);
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != g.n_cols)
        throw ParseError("scenario field '" + field + ".power': every row needs " +
                         std::to_string(g.n_cols) + " values");
      for (const auto& v : row) g.power.push_back(v.get<double>());
    }
    return g;
  }
  throw ParseError("scenario field '" + field + ".type': unknown region type '" + type + "'");
}

json region_to_json(const CoverageRegion& region) {
  json j;
  if (const auto* d = std::get_if<Disc>(&region)) {
    j["type"] = "disc";
    j["center"] = {d->center.x, d->center.y};
    j["radius"] = d->radius;
    return j;
  }
  const auto& g = std::get<RasterGrid>(region);
  j["type"] = "raster";
  j["origin"] = {g.origin.x, g.origin.y};
  j["cell_size"] = g.cell_size;
  j["n_cols"] = g.n_cols;
  j["n_rows"] = g.n_rows;
  j["threshold"] = g.threshold;
  json rows = json::array();
  for (int r = 0; r < g.n_rows; ++r) {
    json row = json::array();
    for (int c = 0; c < g.n_cols; ++c) row.push_back(g.power_at(r, c));
    rows.push_back(std::move(row));
  }
  j["power"] = std::move(rows);
  return j;
}

}  // namespace

Scenario load_scenario(const std::string& path, int neighbour_cap) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("scenario file " + path + ": " + e.what());
  }
  if (!j.contains("serving")) throw ParseError("scenario file " + path + ": missing 'serving'");
  if (!j.contains("neighbours") || !j.at("neighbours").is_array())
    throw ParseError("scenario file " + path + ": missing 'neighbours' array");

  CoverageRegion serving = parse_region(j.at("serving"), "serving");
  std::vector<CoverageRegion> neighbours;
  const auto& arr = j.at("neighbours");
  neighbours.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    neighbours.push_back(parse_region(arr[i], "neighbours[" + std::to_string(i) + "]"));

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    try {
      labels = j.at("labels").get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw ParseError("scenario field 'labels': expected an array of strings");
    }
  }
  return Scenario(std::move(serving), std::move(neighbours), std::move(labels), neighbour_cap);
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  json j;
  j["serving"] = region_to_json(scenario.serving());
  json arr = json::array();
  for (const auto& n : scenario.neighbours()) arr.push_back(region_to_json(n));
  j["neighbours"] = std::move(arr);
  if (!scenario.labels().empty()) j["labels"] = scenario.labels();
  std::ofstream out(path);
  if (!out) throw InputError("cannot write scenario file: " + path);
  out << j.dump(2) << "\n";
}

PowerMapStack load_power_maps(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open raster file: " + path);

  auto expect_key = [&](const char* key) {
    std::string tok;
    if (!(in >> tok) || tok != key)
      throw ParseError("raster file " + path + ": expected header field '" + key + "'");
  };

  PowerMapStack stack;
  int n_stations = 0;
  expect_key("ncols");
  if (!(in >> stack.n_cols)) throw ParseError("raster file " + path + ": bad 'ncols' value");
  expect_key("nrows");
  if (!(in >> stack.n_rows)) throw ParseError("raster file " + path + ": bad 'nrows' value");
  expect_key("cellsize");
  if (!(in >> stack.cell_size)) throw ParseError("raster file " + path + ": bad 'cellsize' value");
  expect_key("origin");
  if (!(in >> stack.origin.x >> stack.origin.y))
    throw ParseError("raster file " + path + ": bad 'origin' values");
  expect_key("nstations");
  if (!(in >> n_stations)) throw ParseError("raster file " + path + ": bad 'nstations' value");

  if (stack.n_cols < 1 || stack.n_rows < 1)
    throw ParseError("raster file " + path + ": grid dimensions must be positive");
  if (!(stack.cell_size > 0.0))
    throw ParseError("raster file " + path + ": cellsize must be positive");
  if (n_stations < 1) throw ParseError("raster file " + path + ": need at least one station");

  const std::size_t cells = static_cast<std::size_t>(stack.n_cols) * stack.n_rows;
  for (int s = 0; s < n_stations; ++s) {
    std::string tok;
    if (!(in >> tok) || tok != "station")
      throw ParseError("raster file " + path + ": expected 'station' header for station " +
                       std::to_string(s));
    std::string label;
    if (!(in >> label))
      throw ParseError("raster file " + path + ": missing label for station " + std::to_string(s));
    std::vector<double> grid(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      if (!(in >> grid[i]))
        throw ParseError("raster file " + path + ": station '" + label + "' has " +
                         std::to_string(i) + " values, expected " + std::to_string(cells) +
                         " (grid dimension mismatch)");
    }
    stack.labels.push_back(std::move(label));
    stack.powers.push_back(std::move(grid));
  }
  std::string extra;
  if (in >> extra)
    throw ParseError("raster file " + path + ": trailing content after the last station ('" +
                     extra + "')");
  return stack;
}

void write_power_maps(const PowerMapStack& stack, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write raster file: " + path);
  char buf[64];
  auto g17 = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "ncols " << stack.n_cols << " nrows " << stack.n_rows << " cellsize "
      << g17(stack.cell_size) << " origin " << g17(stack.origin.x) << " " << g17(stack.origin.y)
      << " nstations " << stack.powers.size() << "\n";
  for (std::size_t s = 0; s < stack.powers.size(); ++s) {
    out << "station " << stack.labels[s] << "\n";
    for (int r = 0; r < stack.n_rows; ++r) {
      for (int c = 0; c < stack.n_cols; ++c) {
        if (c) out << " ";
        out << g17(stack.powers[s][static_cast<std::size_t>(r) * stack.n_cols + c]);
      }
      out << "\n";
    }
  }
}

Scenario scenario_from_power_maps(const PowerMapStack& stack, double threshold_dbm,
                                  int neighbour_cap) {
  if (stack.powers.empty()) throw ParseError("raster stack has no stations");
  auto to_region = [&](std::size_t s) {
    RasterGrid g;
    g.origin = stack.origin;
    g.cell_size = stack.cell_size;
    g.n_cols = stack.n_cols;
    g.n_rows = stack.n_rows;
    g.power = stack.powers[s];
    g.threshold = threshold_dbm;
    return g;
  };
  CoverageRegion serving = to_region(0);
  std::vector<CoverageRegion> neighbours;
  std::vector<std::string> labels;
  for (std::size_t s = 1; s < stack.powers.size(); ++s) {
    neighbours.push_back(to_region(s));
    labels.push_back(stack.labels[s]);
  }
  return Scenario(std::move(serving), std::move(neighbours), std::move(labels), neighbour_cap);
}

Scenario load_raster_scenario(const std::string& path, double threshold_dbm, int neighbour_cap) {
  return scenario_from_power_maps(load_power_maps(path), threshold_dbm, neighbour_cap);
}

PowerMapStack make_synthetic_raster(std::uint64_t seed, const SyntheticRasterParams& params) {
  PowerMapStack stack;
  stack.n_cols = params.n_cols;
  stack.n_rows = params.n_rows;
  stack.cell_size = params.cell_size;
  stack.origin = params.origin;

  const double width = params.n_cols * params.cell_size;
  const double height = params.n_rows * params.cell_size;
  const std::size_t cells = static_cast<std::size_t>(params.n_cols) * params.n_rows;

  stack.labels.push_back("macro");
  stack.powers.emplace_back(cells, params.macro_power_dbm);

  // Four stations near the quadrant centres, jittered per seed.
  const double fx[4] = {0.27, 0.73, 0.25, 0.74};
  const double fy[4] = {0.28, 0.31, 0.73, 0.70};
  Rng rng(seed);
  RasterGrid ref;
  ref.origin = params.origin;
  ref.cell_size = params.cell_size;
  ref.n_cols = params.n_cols;
  ref.n_rows = params.n_rows;
  for (int s = 0; s < 4; ++s) {
    const double jx = rng.uniform(-params.position_jitter_m, params.position_jitter_m);
    const double jy = rng.uniform(-params.position_jitter_m, params.position_jitter_m);
    const Point2D pos{params.origin.x + fx[s] * width + jx, params.origin.y + fy[s] * height + jy};
    std::vector<double> grid(cells);
    for (int r = 0; r < params.n_rows; ++r) {
      for (int c = 0; c < params.n_cols; ++c) {
        const Point2D centre = ref.cell_center(r, c);
        const double d = std::hypot(centre.x - pos.x, centre.y - pos.y);
        grid[static_cast<std::size_t>(r) * params.n_cols + c] =
            params.tx_dbm_at_1m - 10.0 * params.path_loss_exponent * std::log10(std::max(d, 1.0));
      }
    }
    stack.labels.push_back("bs" + std::to_string(s + 1));
    stack.powers.push_back(std::move(grid));
  }
  return stack;
}

void write_synthetic_raster(const std::string& path, std::uint64_t seed,
                            const SyntheticRasterParams& params) {
  write_power_maps(make_synthetic_raster(seed, params), path);
}

}  // namespace ltd
