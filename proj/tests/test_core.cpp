#include <set>
#include <vector>

#include "doctest.h"
#include "ltd/neighbor_set.hpp"
#include "ltd/parallel.hpp"
#include "ltd/rng.hpp"

using namespace ltd;

TEST_CASE("NeighborSet basics") {
  const NeighborSet empty;
  CHECK(empty.empty());
  CHECK(empty.order() == 0);
  CHECK(empty.to_string() == "{}");

  const NeighborSet s = NeighborSet().with(0).with(2);
  CHECK(s.bits() == 0b101u);
  CHECK(s.order() == 2);
  CHECK(s.contains(0));
  CHECK(!s.contains(1));
  CHECK(s.to_string() == "{1,3}");
  CHECK(s.members() == std::vector<int>{0, 2});

  CHECK(NeighborSet::full(3).bits() == 0b111u);
  CHECK(NeighborSet::full(0).bits() == 0u);
  CHECK(empty.is_subset_of(s));
  CHECK(s.is_subset_of(NeighborSet::full(3)));
  CHECK(!NeighborSet::full(3).is_subset_of(s));
  CHECK(s.is_proper_subset_of(NeighborSet::full(3)));
  CHECK(!s.is_proper_subset_of(s));
  CHECK((s | NeighborSet::single(1)) == NeighborSet::full(3));
  CHECK(s.minus(NeighborSet::single(2)) == NeighborSet::single(0));
  CHECK(s.complement_in(4).bits() == 0b1010u);
}

TEST_CASE("subset enumeration is ascending and complete") {
  SUBCASE("empty mask") {
    std::vector<NeighborSet::mask_type> seen;
    for (NeighborSet s : subsets_of(NeighborSet())) seen.push_back(s.bits());
    CHECK(seen == std::vector<NeighborSet::mask_type>{0});
  }
  SUBCASE("explicit mask") {
    std::vector<NeighborSet::mask_type> seen;
    for (NeighborSet s : subsets_of(NeighborSet(0b101u))) seen.push_back(s.bits());
    CHECK(seen == std::vector<NeighborSet::mask_type>{0, 1, 4, 5});
  }
  SUBCASE("random masks against brute force") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const auto mask = static_cast<NeighborSet::mask_type>(rng.below(1u << 12));
      std::set<NeighborSet::mask_type> expected;
      for (NeighborSet::mask_type s = 0; s < (1u << 12); ++s)
        if ((s & mask) == s) expected.insert(s);
      std::vector<NeighborSet::mask_type> seen;
      for (NeighborSet s : subsets_of(NeighborSet(mask))) seen.push_back(s.bits());
      CHECK(seen.size() == expected.size());
      CHECK(std::set<NeighborSet::mask_type>(seen.begin(), seen.end()) == expected);
      for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
    }
  }
}

TEST_CASE("states_by_order is a cardinality-sorted permutation") {
  const auto order = states_by_order(5);
  REQUIRE(order.size() == 32);
  std::set<std::uint32_t> unique(order.begin(), order.end());
  CHECK(unique.size() == 32);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const int a = NeighborSet(order[i - 1]).order();
    const int b = NeighborSet(order[i]).order();
    CHECK(a <= b);
    if (a == b) CHECK(order[i - 1] < order[i]);
  }
  CHECK(order.front() == 0u);
  CHECK(order.back() == 31u);
}

TEST_CASE("derive_seed separates streams and is stable") {
  CHECK(derive_seed(42, 0) == derive_seed(42, 0));
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4096; ++s) seen.insert(derive_seed(42, s));
  CHECK(seen.size() == 4096);
  CHECK(derive_seed(42, 1) != derive_seed(43, 1));
}

TEST_CASE("Rng::below is unbiased enough and in range") {
  Rng rng(123);
  std::vector<int> counts(3, 0);
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.below(3);
    REQUIRE(v < 3);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - n / 3) < 500);
}

TEST_CASE("Rng::uniform stays in [0,1)") {
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("CategoricalSampler never draws zero-weight entries") {
  CategoricalSampler sampler(std::vector<double>{0.5, 0.0, 0.5});
  Rng rng(9);
  for (int i = 0; i < 20000; ++i) CHECK(sampler.draw(rng) != 1);
}

TEST_CASE("parallel_for covers every index once and propagates errors") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);

  CHECK_THROWS_AS(parallel_for(8, 4,
                               [&](std::size_t i) {
                                 if (i == 3) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}
