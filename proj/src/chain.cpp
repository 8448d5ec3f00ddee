#include "ltd/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltd/errors.hpp"

namespace ltd {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double KernelView::operator()(NeighborSet from, NeighborSet to) const {
  if (!from.is_subset_of(to)) return 0.0;
  const NeighborSet gained = to.minus(from);
  double p = 0.0;
  for (NeighborSet known : subsets_of(from)) p += measure_->mass(known | gained);
  return std::min(p, 1.0);
}

double KernelView::row_sum(NeighborSet from) const {
  const NeighborSet rest = from.complement_in(measure_->n_neighbours());
  double sum = 0.0;
  for (NeighborSet gained : subsets_of(rest)) sum += (*this)(from, from | gained);
  return sum;
}

double transition_prob(const TileMeasure& measure, NeighborSet from, NeighborSet to) {
  return KernelView(measure)(from, to);
}

std::vector<double> eigenvalues(const TileMeasure& measure) {
  const std::size_t n_tiles = measure.n_tiles();
  std::vector<double> lambda(n_tiles);
  for (std::size_t k = 0; k < n_tiles; ++k) {
    double sum = 0.0;
    for (NeighborSet sub : subsets_of(NeighborSet(static_cast<NeighborSet::mask_type>(k))))
      sum += measure.mass(sub);
    lambda[k] = std::min(sum, 1.0);
  }
  return lambda;
}

double second_largest_eigenvalue(const TileMeasure& measure) {
  const int n = measure.n_neighbours();
  if (n == 0) return 0.0;  // no transient states
  const NeighborSet full = measure.full();
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const NeighborSet k = full.minus(NeighborSet::single(i));
    double sum = 0.0;
    for (NeighborSet sub : subsets_of(k)) sum += measure.mass(sub);
    best = std::max(best, sum);
  }
  return std::min(best, 1.0);
}

std::optional<double> report_bound(double second_largest, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InputError("report_bound: epsilon must be in (0, 1)");
  if (!(second_largest >= 0.0 && second_largest <= 1.0))
    throw InputError("report_bound: second-largest eigenvalue must be in [0, 1]");
  if (second_largest == 0.0) return 0.0;
  if (second_largest == 1.0) return std::nullopt;
  return std::log(epsilon) / std::log(second_largest);
}

double tail_bound(double second_largest, std::int64_t t) {
  if (t < 0) throw InputError("tail_bound: t must be >= 0");
  if (!(second_largest >= 0.0 && second_largest <= 1.0))
    throw InputError("tail_bound: second-largest eigenvalue must be in [0, 1]");
  return std::pow(second_largest, static_cast<double>(t));
}

FkReachability fk_reachable(const TileMeasure& measure) {
  NeighborSet discoverable;
  for (std::size_t j = 0; j < measure.n_tiles(); ++j)
    if (measure.masses()[j] > 0.0) discoverable |= NeighborSet(static_cast<NeighborSet::mask_type>(j));

  FkReachability out;
  for (int i = 0; i < measure.n_neighbours(); ++i)
    if (!discoverable.contains(i)) out.undiscoverable.push_back(i + 1);
  out.reachable = out.undiscoverable.empty();
  return out;
}

std::optional<double> ChainSolution::expected_steps(NeighborSet k) const {
  if (!reachable[k.bits()]) return std::nullopt;
  return expected[k.bits()];
}

std::optional<double> ChainSolution::variance_at(NeighborSet k) const {
  if (!reachable[k.bits()]) return std::nullopt;
  return variance[k.bits()];
}

ChainSolution expected_absorption_steps(const TileMeasure& measure,
                                        const std::vector<bool>& absorbing) {
  const int n = measure.n_neighbours();
  const std::size_t n_states = measure.n_tiles();
  if (absorbing.size() != n_states)
    throw std::invalid_argument("expected_absorption_steps: absorbing set has wrong size");

  bool any_absorbing = false;
  for (std::size_t k = 0; k < n_states; ++k) {
    if (!absorbing[k]) continue;
    any_absorbing = true;
    // Upward closure: adding any one neighbour must stay absorbing.
    for (int i = 0; i < n; ++i) {
      const std::size_t up = k | (std::size_t{1} << i);
      if (!absorbing[up])
        throw std::invalid_argument("expected_absorption_steps: absorbing set is not upward-closed");
    }
  }
  if (!any_absorbing)
    throw std::invalid_argument("expected_absorption_steps: absorbing set is empty");

  // Positive-mass tiles drive every transition; geometric tessellations have
  // few of them, so the solve costs O(2^N * |support|).
  std::vector<std::uint32_t> support;
  std::vector<double> support_mass;
  NeighborSet::mask_type discoverable = 0;
  const auto& mass = measure.masses();
  for (std::size_t j = 0; j < n_states; ++j) {
    if (mass[j] > 0.0) {
      support.push_back(static_cast<std::uint32_t>(j));
      support_mass.push_back(mass[j]);
      discoverable |= static_cast<NeighborSet::mask_type>(j);
    }
  }

  ChainSolution sol;
  sol.start_state = NeighborSet();
  sol.eigenvalues = eigenvalues(measure);
  sol.absorbing = absorbing;
  sol.reachable.assign(n_states, false);
  sol.expected.assign(n_states, kNaN);
  sol.variance.assign(n_states, kNaN);

  double second = 0.0;
  for (std::size_t k = 0; k < n_states; ++k) {
    // The almost-sure knowledge limit from k is k plus everything
    // discoverable; the absorbing set is reached iff that limit is in it.
    sol.reachable[k] = absorbing[k | discoverable];
    if (!absorbing[k]) second = std::max(second, sol.eigenvalues[k]);
  }
  sol.second_largest = std::min(second, 1.0);

  std::vector<double> second_moment(n_states, kNaN);
  const auto order = states_by_order(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::uint32_t k = *it;
    if (absorbing[k]) {
      sol.expected[k] = 0.0;
      sol.variance[k] = 0.0;
      second_moment[k] = 0.0;
      continue;
    }
    if (!sol.reachable[k]) continue;

    // One report from tile j moves k to k|j; only tiles adding new content
    // matter. Accumulating the leaving mass directly avoids cancellation in
    // 1 - P(k,k).
    double h_sum = 0.0, s_sum = 0.0, out_mass = 0.0;
    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::uint32_t j = support[s];
      if ((j & ~k) == 0) continue;
      const std::uint32_t to = k | j;
      h_sum += support_mass[s] * sol.expected[to];
      s_sum += support_mass[s] * second_moment[to];
      out_mass += support_mass[s];
    }
    const double h = (1.0 + h_sum) / out_mass;
    const double t_h = (1.0 - out_mass) * h + h_sum;
    const double s2 = (1.0 + 2.0 * t_h + s_sum) / out_mass;
    sol.expected[k] = h;
    second_moment[k] = s2;
    sol.variance[k] = s2 - h * h;
  }
  return sol;
}

ChainSolution solve_fk(const TileMeasure& measure) {
  std::vector<bool> absorbing(measure.n_tiles(), false);
  absorbing[measure.full().bits()] = true;
  return expected_absorption_steps(measure, absorbing);
}

DeltaProblem DeltaProblem::make(const TileMeasure& measure, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InputError("delta must be in (0, 1]");
  const auto lambda = eigenvalues(measure);  // eigenvalue of k == coverage fraction of k
  DeltaProblem p;
  p.delta = delta;
  p.absorbing.assign(measure.n_tiles(), false);
  for (std::size_t k = 0; k < lambda.size(); ++k) p.absorbing[k] = lambda[k] >= delta;
  p.absorbing[measure.full().bits()] = true;
  // Coverage is monotone in exact arithmetic; sweep to keep the set
  // upward-closed against last-ulp summation noise.
  for (int i = 0; i < measure.n_neighbours(); ++i)
    for (std::size_t k = 0; k < p.absorbing.size(); ++k)
      if (p.absorbing[k]) p.absorbing[k | (std::size_t{1} << i)] = true;
  return p;
}

ChainSolution solve_delta(const TileMeasure& measure, double delta) {
  return expected_absorption_steps(measure, DeltaProblem::make(measure, delta).absorbing);
}

}  // namespace ltd
