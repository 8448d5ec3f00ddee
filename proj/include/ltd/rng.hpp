#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace ltd {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Stable sub-seed for stream `stream` of a master seed. All fan-out into
/// chunks, trajectories or configs goes through this, so results never depend
/// on worker count or scheduling.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream ^ 0xD1B54A32D192ED03ull));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution. Hand-rolled so output bytes do not
  // depend on the standard library's distribution implementations.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t reject_below = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = eng_();
      if (r >= reject_below) return r % n;
    }
  }

  // Standard exponential via inversion.
  double exponential() { return -std::log(1.0 - uniform()); }

 private:
  std::mt19937_64 eng_;
};

/// Draws indices proportionally to a fixed non-negative weight vector.
/// Zero-weight indices are never drawn.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const std::vector<double>& weights) : cum_(weights.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      cum_[i] = acc;
    }
    if (!(acc > 0.0)) throw std::invalid_argument("CategoricalSampler: total weight must be positive");
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform() * cum_.back();
    return static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), u) - cum_.begin());
  }

 private:
  std::vector<double> cum_;
};

}  // namespace ltd
