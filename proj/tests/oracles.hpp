// Test-only oracles, kept independent of the library's solver path: a dense
// LU solve of the absorption system, closed-form geometry, simple random
// measures and a chi-square critical value.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ltd/chain.hpp"
#include "ltd/rng.hpp"
#include "ltd/tile_measure.hpp"

namespace oracles {

// Solves A x = b in place by LU with partial pivoting.
inline std::vector<double> lu_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      a[r][col] = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

struct DenseAbsorption {
  std::vector<std::uint32_t> transient_states;
  std::vector<double> expected;       // aligned with transient_states
  std::vector<double> second_moment;  // aligned with transient_states
};

// Builds the dense transient system I - Q from the kernel and solves for the
// expected absorption steps t = (I-Q)^{-1} 1 and the second moment
// (2(I-Q)^{-1} - I) t. Only valid when every transient state can reach the
// absorbing set.
inline DenseAbsorption dense_absorption(const ltd::TileMeasure& m,
                                        const std::vector<bool>& absorbing) {
  DenseAbsorption out;
  for (std::uint32_t s = 0; s < m.n_tiles(); ++s)
    if (!absorbing[s]) out.transient_states.push_back(s);

  const std::size_t n = out.transient_states.size();
  std::vector<std::vector<double>> i_minus_q(n, std::vector<double>(n, 0.0));
  const ltd::KernelView kernel(m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double p = kernel(ltd::NeighborSet(out.transient_states[r]),
                              ltd::NeighborSet(out.transient_states[c]));
      i_minus_q[r][c] = (r == c ? 1.0 : 0.0) - p;
    }
  }
  out.expected = lu_solve(i_minus_q, std::vector<double>(n, 1.0));
  std::vector<double> twice_n_t = lu_solve(i_minus_q, out.expected);
  out.second_moment.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.second_moment[i] = 2.0 * twice_n_t[i] - out.expected[i];
  return out;
}

inline std::vector<bool> fk_absorbing(const ltd::TileMeasure& m) {
  std::vector<bool> absorbing(m.n_tiles(), false);
  absorbing[m.full().bits()] = true;
  return absorbing;
}

// Strictly positive random measure (normalised exponentials).
inline ltd::TileMeasure random_measure(int n_neighbours, std::uint64_t seed) {
  ltd::Rng rng(seed);
  std::vector<double> mass(std::size_t{1} << n_neighbours);
  double sum = 0.0;
  for (double& v : mass) {
    v = rng.exponential() + 1e-9;
    sum += v;
  }
  for (double& v : mass) v /= sum;
  // Bring the total to 1 within the validator's tolerance.
  return ltd::TileMeasure::from_masses(n_neighbours, std::move(mass));
}

// Area of the intersection of two equal-radius discs at centre distance d.
inline double lens_area(double radius, double distance) {
  if (distance >= 2.0 * radius) return 0.0;
  return 2.0 * radius * radius * std::acos(distance / (2.0 * radius)) -
         0.5 * distance * std::sqrt(4.0 * radius * radius - distance * distance);
}

// Wilson-Hilferty approximation of the chi-square quantile.
inline double chi2_quantile(double dof, double z) {
  const double a = 2.0 / (9.0 * dof);
  const double inner = 1.0 - a + z * std::sqrt(a);
  return dof * inner * inner * inner;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (xs.size() - 1) / xs.size())};
}

}  // namespace oracles
