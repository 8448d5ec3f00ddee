#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ltd/tile_measure.hpp"

namespace ltd {

/// Transition kernel of the knowledge chain induced by a tile measure.
/// Entries are computed on demand; nothing of size 2^N x 2^N is ever stored.
class KernelView {
 public:
  explicit KernelView(const TileMeasure& measure) : measure_(&measure) {}

  /// Probability that one report grows knowledge `from` into exactly `to`:
  /// the mass of tiles whose new content is to\from and whose rest is already
  /// known. Zero unless from is a subset of to; knowledge is never lost.
  double operator()(NeighborSet from, NeighborSet to) const;

  /// Full row sum, for on-demand stochasticity checks.
  double row_sum(NeighborSet from) const;

  const TileMeasure& measure() const { return *measure_; }

 private:
  const TileMeasure* measure_;
};

double transition_prob(const TileMeasure& measure, NeighborSet from, NeighborSet to);

/// The kernel is triangular, so its spectrum is its diagonal: the eigenvalue
/// of state k is the total mass of the tiles contained in k. Entry k is
/// summed in the same order as transition_prob(k, k), so the two agree
/// bit-exactly.
std::vector<double> eigenvalues(const TileMeasure& measure);

/// Second-largest eigenvalue of the full-knowledge chain: the maximum over
/// states missing exactly one neighbour. Equals 1 when some neighbour has no
/// discoverable mass, and 0 when all mass sits on the full tile (or N == 0).
double second_largest_eigenvalue(const TileMeasure& measure);

/// Reports sufficient to reach the absorbing state with probability >= 1-eps:
/// log(eps)/log(second_largest). 0 when the spectrum gap is total
/// (second_largest == 0); nullopt when no finite count gives the guarantee
/// (second_largest == 1).
std::optional<double> report_bound(double second_largest, double epsilon);

/// Upper bound on the probability that absorption takes more than t reports.
double tail_bound(double second_largest, std::int64_t t);

struct FkReachability {
  bool reachable = true;
  std::vector<int> undiscoverable;  // 1-based labels of neighbours with zero total mass
};

/// A neighbour is undiscoverable when no positive-mass tile contains it; full
/// knowledge is reachable iff there is none.
FkReachability fk_reachable(const TileMeasure& measure);

struct ChainSolution {
  NeighborSet start_state;  // defaults to the empty set
  std::vector<double> eigenvalues;
  double second_largest = 0.0;   // max eigenvalue over non-absorbing states
  std::vector<double> expected;  // reports to absorption per state; NaN when unreachable
  std::vector<double> variance;  // NaN when unreachable
  std::vector<bool> absorbing;
  std::vector<bool> reachable;

  std::optional<double> expected_steps(NeighborSet k) const;
  std::optional<double> expected_steps() const { return expected_steps(start_state); }
  std::optional<double> variance_at(NeighborSet k) const;
};

/// Expected reports (and variance) to absorption from every state, by
/// back-substitution over states in decreasing (cardinality, index) order.
/// The absorbing set must be non-empty and upward-closed. States that cannot
/// reach it are reported unreachable, not as an error.
ChainSolution expected_absorption_steps(const TileMeasure& measure,
                                        const std::vector<bool>& absorbing);

/// Absorbing set = the full state only.
ChainSolution solve_fk(const TileMeasure& measure);

/// Absorbing set = every state covering at least `delta` of the serving area.
/// For delta = 1 with all tile masses positive this coincides with solve_fk.
ChainSolution solve_delta(const TileMeasure& measure, double delta);

/// The absorbing-state aggregation backing solve_delta.
struct DeltaProblem {
  double delta = 1.0;
  std::vector<bool> absorbing;  // upward-closed; always contains the full state
  static DeltaProblem make(const TileMeasure& measure, double delta);
};

}  // namespace ltd
