#include "ltd/mobility.hpp"

#include <cassert>
#include <cmath>

#include "ltd/chain.hpp"
#include "ltd/errors.hpp"
#include "ltd/parallel.hpp"
#include "ltd/tessellation.hpp"

namespace ltd {

TeleportStream::TeleportStream(const TileMeasure& measure, std::uint64_t seed,
                               double inter_report_s)
    : n_(measure.n_neighbours()),
      sampler_(measure.masses()),
      rng_(seed),
      inter_report_s_(inter_report_s) {
  if (!(inter_report_s > 0.0)) throw InputError("teleport stream: report period must be positive");
}

Report TeleportStream::next() {
  ++emitted_;
  return {emitted_ * inter_report_s_,
          NeighborSet(static_cast<NeighborSet::mask_type>(sampler_.draw(rng_)))};
}

RandomWalkStream::RandomWalkStream(const Scenario& scenario, const WalkConfig& config,
                                   std::uint64_t seed)
    : scenario_(&scenario), config_(config), rng_(seed) {
  if (!(config.grid_step_m > 0.0) || !(config.step_period_s > 0.0) ||
      !(config.inter_report_s > 0.0))
    throw InputError("walk config: all periods and the grid step must be positive");
  if (config.inter_report_s < config.step_period_s)
    throw InputError("walk config: inter-report time must be >= step period");

  const BoundingBox box = bounding_box(scenario.serving());
  grid_lo_ = box.lo;
  nx_ = std::max(1, static_cast<int>(std::ceil((box.hi.x - box.lo.x) / config.grid_step_m)));
  ny_ = std::max(1, static_cast<int>(std::ceil((box.hi.y - box.lo.y) / config.grid_step_m)));

  in_region_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
  std::vector<int> cells;
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      const Point2D c{grid_lo_.x + (ix + 0.5) * config.grid_step_m,
                      grid_lo_.y + (iy + 0.5) * config.grid_step_m};
      if (contains(scenario.serving(), c)) {
        in_region_[ix + static_cast<std::size_t>(nx_) * iy] = 1;
        cells.push_back(ix + nx_ * iy);
      }
    }
  }
  if (cells.empty())
    throw DegenerateScenarioError("serving region contains no walk-grid cell centre");
  cell_ = cells[rng_.below(cells.size())];
}

Point2D RandomWalkStream::position() const {
  const int ix = cell_ % nx_;
  const int iy = cell_ / nx_;
  return {grid_lo_.x + (ix + 0.5) * config_.grid_step_m,
          grid_lo_.y + (iy + 0.5) * config_.grid_step_m};
}

void RandomWalkStream::step() {
  static constexpr int dx[4] = {1, -1, 0, 0};
  static constexpr int dy[4] = {0, 0, 1, -1};
  const int dir = static_cast<int>(rng_.below(4));
  const int ix = cell_ % nx_ + dx[dir];
  const int iy = cell_ / nx_ + dy[dir];
  if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;  // reflected: stay put
  if (!in_region_[ix + static_cast<std::size_t>(nx_) * iy]) return;
  cell_ = ix + nx_ * iy;
}

Report RandomWalkStream::next() {
  ++reports_done_;
  const double t = reports_done_ * config_.inter_report_s;
  // Steps land on multiples of the step period; a report sees the position
  // after every step at or before its epoch. The epsilon absorbs rounding
  // when the report period is an exact multiple of the step period.
  const double slack = config_.step_period_s * 1e-9;
  while ((steps_done_ + 1) * config_.step_period_s <= t + slack) {
    step();
    ++steps_done_;
  }
  const auto tile = classify_point(*scenario_, position());
  assert(tile.has_value());
  return {t, *tile};
}

namespace {

// Stop-rule evaluator shared across a batch; for delta rules it precomputes
// the coverage fraction of every state.
class StopEvaluator {
 public:
  StopEvaluator(const TileMeasure& measure, StopRule stop)
      : full_(measure.full()), kind_(stop.kind), delta_(stop.delta) {
    if (kind_ == StopRule::Kind::kDelta) {
      if (!(delta_ > 0.0 && delta_ <= 1.0)) throw InputError("stop rule: delta must be in (0, 1]");
      coverage_ = eigenvalues(measure);  // == coverage fraction per state
      coverage_[full_.bits()] = 1.0;
    }
  }

  bool stopped(NeighborSet knowledge) const {
    if (kind_ == StopRule::Kind::kFullKnowledge) return knowledge == full_;
    return coverage_[knowledge.bits()] >= delta_;
  }

 private:
  NeighborSet full_;
  StopRule::Kind kind_;
  double delta_;
  std::vector<double> coverage_;
};

SimResult run_trajectory(ReportStream& stream, const StopEvaluator& stop,
                         std::uint64_t max_reports) {
  NeighborSet knowledge;
  if (stop.stopped(knowledge)) return {false, 0, 0.0, knowledge};
  double last_time = 0.0;
  for (std::uint64_t used = 1; used <= max_reports; ++used) {
    const Report r = stream.next();
    last_time = r.time_s;
    knowledge |= r.tile;
    if (stop.stopped(knowledge)) return {false, used, r.time_s, knowledge};
  }
  return {true, max_reports, last_time, knowledge};
}

TrajectoryRecord to_record(const SimResult& r, std::uint64_t seed) {
  return {seed, r.reports_used, r.wall_time_s, r.terminal.bits(), r.timed_out};
}

}  // namespace

SimResult simulate_until(ReportStream& stream, const TileMeasure& measure, StopRule stop,
                         std::uint64_t max_reports) {
  return run_trajectory(stream, StopEvaluator(measure, stop), max_reports);
}

TileMeasure empirical_report_measure(ReportStream& stream, std::uint64_t horizon) {
  if (horizon < 1) throw InputError("empirical_report_measure: horizon must be >= 1");
  std::vector<std::uint64_t> counts(std::size_t{1} << stream.n_neighbours(), 0);
  for (std::uint64_t i = 0; i < horizon; ++i) ++counts[stream.next().tile.bits()];
  return TileMeasure::from_counts(stream.n_neighbours(), counts);
}

double poisson_wallclock(double mean_reports, const PoissonUsers& users) {
  if (!(mean_reports >= 0.0)) throw InputError("poisson_wallclock: mean reports must be >= 0");
  if (users.n_users < 1) throw InputError("poisson_wallclock: need at least one user");
  if (!(users.report_prob > 0.0 && users.report_prob < 1.0))
    throw InputError("poisson_wallclock: per-user report probability must be in (0, 1)");
  return mean_reports / users.rate_per_s();
}

std::vector<TrajectoryRecord> simulate_teleport_batch(const TileMeasure& measure, StopRule stop,
                                                      int n_trajectories, std::uint64_t seed,
                                                      std::uint64_t max_reports, int jobs) {
  if (n_trajectories < 1) throw InputError("simulate_teleport_batch: need >= 1 trajectory");
  const StopEvaluator evaluator(measure, stop);
  std::vector<TrajectoryRecord> records(n_trajectories);
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(seed, i);
    TeleportStream stream(measure, s);
    records[i] = to_record(run_trajectory(stream, evaluator, max_reports), s);
  });
  return records;
}

std::vector<TrajectoryRecord> simulate_walk_batch(const Scenario& scenario,
                                                  const TileMeasure& measure,
                                                  const WalkConfig& config, StopRule stop,
                                                  int n_trajectories, std::uint64_t seed,
                                                  std::uint64_t max_reports, int jobs) {
  if (n_trajectories < 1) throw InputError("simulate_walk_batch: need >= 1 trajectory");
  const StopEvaluator evaluator(measure, stop);
  std::vector<TrajectoryRecord> records(n_trajectories);
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    const std::uint64_t s = derive_seed(seed, i);
    RandomWalkStream stream(scenario, config, s);
    records[i] = to_record(run_trajectory(stream, evaluator, max_reports), s);
  });
  return records;
}

}  // namespace ltd
