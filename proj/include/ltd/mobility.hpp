#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ltd/geometry.hpp"
#include "ltd/rng.hpp"
#include "ltd/tile_measure.hpp"

namespace ltd {

struct Report {
  double time_s = 0.0;
  NeighborSet tile;
};

/// Lazily evaluated sequence of time-stamped tile reports. Report times are
/// strictly increasing. A stream is consumed by one simulation at a time;
/// independent trajectories use independent streams.
class ReportStream {
 public:
  virtual ~ReportStream() = default;
  virtual Report next() = 0;
  virtual int n_neighbours() const = 0;
};

/// I.i.d. tile draws with probabilities proportional to the tile measure,
/// one per report period (default one time unit).
class TeleportStream final : public ReportStream {
 public:
  TeleportStream(const TileMeasure& measure, std::uint64_t seed, double inter_report_s = 1.0);
  Report next() override;
  int n_neighbours() const override { return n_; }

 private:
  int n_;
  CategoricalSampler sampler_;
  Rng rng_;
  double inter_report_s_;
  std::uint64_t emitted_ = 0;
};

struct WalkConfig {
  double grid_step_m = 2.5;
  double step_period_s = 5.0;
  double inter_report_s = 360.0;  // must be >= step_period_s
};

/// Symmetric random walk on the lattice of grid cells whose centres lie in
/// the serving region: every step period one of the four axis neighbours is
/// proposed uniformly and the move is rejected (the walker stays) when it
/// would leave the region. The start cell is uniform over in-region cells.
/// The walk's time-average over cells is exactly uniform. A report is
/// emitted at each multiple of the inter-report time, the first one at
/// t = inter_report_s, and carries the tile of the walker's cell centre.
class RandomWalkStream final : public ReportStream {
 public:
  RandomWalkStream(const Scenario& scenario, const WalkConfig& config, std::uint64_t seed);
  Report next() override;
  int n_neighbours() const override { return scenario_->n_neighbours(); }
  Point2D position() const;

 private:
  void step();

  const Scenario* scenario_;
  WalkConfig config_;
  Rng rng_;
  int nx_ = 0, ny_ = 0;
  Point2D grid_lo_;
  std::vector<char> in_region_;  // nx * ny
  int cell_ = 0;                 // linear index, ix + nx * iy
  std::uint64_t steps_done_ = 0;
  std::uint64_t reports_done_ = 0;
};

struct StopRule {
  enum class Kind { kFullKnowledge, kDelta };
  Kind kind = Kind::kFullKnowledge;
  double delta = 1.0;

  static StopRule fk() { return {Kind::kFullKnowledge, 1.0}; }
  static StopRule delta_knowledge(double delta) { return {Kind::kDelta, delta}; }
};

inline constexpr std::uint64_t kDefaultMaxReports = 10'000'000;

struct SimResult {
  bool timed_out = false;
  std::uint64_t reports_used = 0;
  double wall_time_s = 0.0;
  NeighborSet terminal;  // knowledge when stopping (partial if timed out)
};

/// Folds reports into the knowledge set until the stop rule holds (checked
/// before the first report, so a start already satisfying it uses 0 reports)
/// or until max_reports, which yields a timed-out result carrying the partial
/// knowledge. The measure supplies the coverage fractions for delta rules.
SimResult simulate_until(ReportStream& stream, const TileMeasure& measure, StopRule stop,
                         std::uint64_t max_reports = kDefaultMaxReports);

/// Tile frequencies over the first `horizon` reports of the stream.
TileMeasure empirical_report_measure(ReportStream& stream, std::uint64_t horizon);

struct PoissonUsers {
  int n_users = 1;
  double report_prob = 0.0;  // per user per second, in (0, 1)
  double rate_per_s() const { return n_users * report_prob; }
};

/// Expected wall-clock seconds for a pool of sporadic reporters to deliver
/// `mean_reports` reports: mean_reports / (n * p).
double poisson_wallclock(double mean_reports, const PoissonUsers& users);

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::uint64_t reports = 0;
  double wall_s = 0.0;
  std::uint32_t terminal = 0;
  bool timed_out = false;
};

/// Independent teleport trajectories; trajectory i is seeded with
/// derive_seed(seed, i), so records do not depend on the job count.
std::vector<TrajectoryRecord> simulate_teleport_batch(const TileMeasure& measure, StopRule stop,
                                                      int n_trajectories, std::uint64_t seed,
                                                      std::uint64_t max_reports = kDefaultMaxReports,
                                                      int jobs = 0);

/// Independent walk trajectories over the scenario; the measure is used only
/// for the stop rule.
std::vector<TrajectoryRecord> simulate_walk_batch(const Scenario& scenario,
                                                  const TileMeasure& measure,
                                                  const WalkConfig& config, StopRule stop,
                                                  int n_trajectories, std::uint64_t seed,
                                                  std::uint64_t max_reports = kDefaultMaxReports,
                                                  int jobs = 0);

}  // namespace ltd
