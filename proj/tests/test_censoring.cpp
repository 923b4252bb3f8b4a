#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "rpit/censoring.hpp"

using namespace rpit;
using rpit_test::all_permutations;
using rpit_test::random_interval_dataset;
using rpit_test::random_right_dataset;
using rpit_test::realizable_rank_sets;

namespace {

RightObs evt(double t) { return {t, true}; }
RightObs cens(double t) { return {t, false}; }

// Bounds must equal the min/max of realizable ranks, and every rank between
// them must be attained by some realizable permutation.
void check_bounds_against_oracle(const std::vector<IntervalObs>& obs,
                                 const std::vector<RankBounds>& bounds) {
  const auto oracle = realizable_rank_sets(obs);
  REQUIRE(oracle.any);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    int lo = 0, hi = 0;
    for (std::size_t r = 0; r < obs.size(); ++r) {
      if (oracle.attained[i][r]) {
        if (lo == 0) lo = static_cast<int>(r) + 1;
        hi = static_cast<int>(r) + 1;
      }
    }
    CAPTURE(i);
    CHECK(bounds[i].lo == lo);
    CHECK(bounds[i].hi == hi);
    for (int r = lo; r <= hi; ++r) CHECK(oracle.attained[i][static_cast<std::size_t>(r - 1)]);
  }
}

}  // namespace

TEST_CASE("rank_bounds_right: worked examples") {
  CHECK(rank_bounds_right({evt(3), evt(1), evt(2)}) ==
        std::vector<RankBounds>{{3, 3}, {1, 1}, {2, 2}});
  CHECK(rank_bounds_right({evt(2), cens(3), evt(1)}) ==
        std::vector<RankBounds>{{2, 2}, {3, 3}, {1, 1}});
  CHECK(rank_bounds_right({cens(1), evt(2)}) == std::vector<RankBounds>{{1, 2}, {1, 2}});
}

TEST_CASE("rank_bounds_right: errors") {
  CHECK_THROWS_AS(rank_bounds_right({}), InvalidDatasetError);
  CHECK_THROWS_AS(rank_bounds_right({{-1.0, true}}), InvalidDatasetError);
  CHECK_THROWS_AS(
      rank_bounds_right({{std::numeric_limits<double>::infinity(), true}}),
      InvalidDatasetError);
}

TEST_CASE("rank_bounds_interval: worked examples") {
  CHECK(rank_bounds_interval({IntervalObs::exact(1), IntervalObs::exact(2),
                              IntervalObs::exact(3)}) ==
        std::vector<RankBounds>{{1, 1}, {2, 2}, {3, 3}});
  CHECK(rank_bounds_interval({IntervalObs::left_censored(2), IntervalObs::exact(1)}) ==
        std::vector<RankBounds>{{1, 2}, {1, 2}});
  // Right-censored ranks are exchangeable.
  CHECK(rank_bounds_interval({IntervalObs::right_censored(5), IntervalObs::right_censored(7)}) ==
        std::vector<RankBounds>{{1, 2}, {1, 2}});
}

TEST_CASE("rank_bounds_interval: invariant violations rejected") {
  CHECK_THROWS_AS(rank_bounds_interval({}), InvalidDatasetError);
  CHECK_THROWS_AS(rank_bounds_interval({{1.0, 0.5, IntervalKind::Interval}}),
                  InvalidDatasetError);
  CHECK_THROWS_AS(rank_bounds_interval({{0.5, 2.0, IntervalKind::Left}}), InvalidDatasetError);
  CHECK_THROWS_AS(rank_bounds_interval({{0.0, 2.0, IntervalKind::Right}}), InvalidDatasetError);
  CHECK_THROWS_AS(rank_bounds_interval({{1.0, 2.0, IntervalKind::Exact}}), InvalidDatasetError);
}

TEST_CASE("realizable: worked examples") {
  CHECK(realizable({IntervalObs::exact(1), IntervalObs::exact(2)}, {1, 2}));
  CHECK_FALSE(realizable({IntervalObs::exact(2), IntervalObs::exact(1)}, {1, 2}));
  CHECK(realizable({IntervalObs::left_censored(2), IntervalObs::exact(1)}, {2, 1}));
  CHECK_THROWS_AS(realizable({IntervalObs::exact(1), IntervalObs::exact(2)}, {1, 3}),
                  ContractViolation);
  CHECK_THROWS_AS(realizable({IntervalObs::exact(1), IntervalObs::exact(2)}, {1}),
                  ContractViolation);
}

TEST_CASE("complete data yields singleton bounds equal to ordinary ranks") {
  SplitMix64 rng(7001);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const auto values = rpit_test::distinct_values(static_cast<std::size_t>(n), rng);
    const auto ranks = rpit_test::ranks_of(values);

    std::vector<RightObs> right;
    std::vector<IntervalObs> interval;
    for (double v : values) {
      right.push_back(evt(v));
      interval.push_back(IntervalObs::exact(v));
    }
    const auto rb = rank_bounds_right(right);
    const auto ib = rank_bounds_interval(interval);
    for (std::size_t i = 0; i < right.size(); ++i) {
      CHECK(rb[i] == RankBounds{ranks[i], ranks[i]});
      CHECK(ib[i] == RankBounds{ranks[i], ranks[i]});
    }
  }
}

TEST_CASE("bounds are equivariant under input reordering") {
  SplitMix64 rng(7002);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(4));
    const auto obs = random_interval_dataset(n, rng);
    const auto bounds = rank_bounds_interval(obs);

    const auto sigma = random_permutation(n, rng);
    std::vector<IntervalObs> shuffled(obs.size());
    std::vector<RankBounds> expected(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i) {
      shuffled[static_cast<std::size_t>(sigma[i] - 1)] = obs[i];
      expected[static_cast<std::size_t>(sigma[i] - 1)] = bounds[i];
    }
    CHECK(rank_bounds_interval(shuffled) == expected);
  }
}

TEST_CASE("oracle certification: interval bounds equal exhaustive realizable ranges") {
  SplitMix64 rng(7003);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));  // n in 2..6
    const auto obs = random_interval_dataset(n, rng);
    CAPTURE(trial);
    check_bounds_against_oracle(obs, rank_bounds_interval(obs));
  }
}

TEST_CASE("oracle certification: right-censored bounds equal exhaustive realizable ranges") {
  SplitMix64 rng(7004);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const auto obs = random_right_dataset(n, rng);
    CAPTURE(trial);
    check_bounds_against_oracle(as_intervals(obs), rank_bounds_right(obs));
  }
}

TEST_CASE("as_intervals maps events to exact points and censorings to open tails") {
  const auto mapped = as_intervals({evt(2.5), cens(4.0)});
  CHECK(mapped[0].kind == IntervalKind::Exact);
  CHECK(mapped[0].left == 2.5);
  CHECK(mapped[1].kind == IntervalKind::Right);
  CHECK(mapped[1].left == 4.0);
  CHECK(std::isinf(mapped[1].right));
}
