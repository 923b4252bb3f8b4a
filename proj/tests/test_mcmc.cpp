#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "rpit/diagnostics.hpp"
#include "rpit/mcmc.hpp"

using namespace rpit;
using rpit_test::empirical_distribution;
using rpit_test::random_interval_dataset;
using rpit_test::space_graph;

namespace {

struct Fixture {
  RestrictedSpace space;
  std::vector<RankVector> members;
};

// Spaces derived from random censored datasets, kept when the transposition
// graph is connected and non-bipartite (the regime where both walks have
// unique limiting laws).
std::vector<Fixture> fixture_corpus(int want, std::uint64_t seed, std::size_t max_size) {
  std::vector<Fixture> out;
  SplitMix64 rng(seed);
  while (static_cast<int>(out.size()) < want) {
    const int n = 4 + static_cast<int>(rng.below(4));  // n in 4..7
    const auto obs = random_interval_dataset(n, rng);
    RestrictedSpace space(rank_bounds_interval(obs));
    std::vector<RankVector> members;
    try {
      members = enumerate(space, max_size);
    } catch (const CapacityError&) {
      continue;
    }
    if (members.size() < 3) continue;
    const SimpleGraph graph = space_graph(members);
    if (!is_connected(graph) || is_bipartite(graph)) continue;
    out.push_back({std::move(space), std::move(members)});
  }
  return out;
}

std::size_t state_index(const std::vector<RankVector>& members, const RankVector& r) {
  return static_cast<std::size_t>(
      std::lower_bound(members.begin(), members.end(), r) - members.begin());
}

int hamming(const RankVector& a, const RankVector& b) {
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) ++diff;
  return diff;
}

// Path-shaped space with degrees (2, 1, 1); exercises both swap-acceptance
// branches of the coupled walk.
RestrictedSpace path_space() { return RestrictedSpace({{1, 2}, {1, 3}, {2, 3}}); }

}  // namespace

TEST_CASE("step_target: degenerate and forced moves") {
  const RestrictedSpace singleton({{1, 1}, {2, 2}});
  SplitMix64 rng(1);
  for (int i = 0; i < 50; ++i) CHECK(step_target(singleton, {1, 2}, rng) == RankVector{1, 2});

  const RestrictedSpace two({{1, 2}, {1, 2}});
  for (int i = 0; i < 50; ++i) CHECK(step_target(two, {1, 2}, rng) == RankVector{2, 1});

  const RestrictedSpace free3({{1, 3}, {1, 3}, {1, 3}});
  RankVector r{1, 2, 3};
  for (int i = 0; i < 50; ++i) {
    const RankVector next = step_target(free3, r, rng);
    CHECK(next != r);  // every transposition is feasible, stay probability 0
    r = next;
  }
}

TEST_CASE("step_degree: uniform neighbor law and isolated-node guard") {
  SplitMix64 rng(2);
  const RestrictedSpace two({{1, 2}, {1, 2}});
  CHECK(step_degree(two, {1, 2}, rng) == RankVector{2, 1});

  const RestrictedSpace free3({{1, 3}, {1, 3}, {1, 3}});
  const RankVector from{1, 2, 3};
  std::vector<int> counts(3, 0);
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) {
    const RankVector next = step_degree(free3, from, rng);
    CHECK(hamming(next, from) == 2);
    if (next == RankVector{2, 1, 3}) ++counts[0];
    if (next == RankVector{3, 2, 1}) ++counts[1];
    if (next == RankVector{1, 3, 2}) ++counts[2];
  }
  for (int c : counts)
    CHECK(std::abs(c / static_cast<double>(draws) - 1.0 / 3.0) < 0.01);

  const RestrictedSpace singleton({{1, 1}, {2, 2}});
  CHECK_THROWS_AS(step_degree(singleton, {1, 2}, rng), IsolatedNodeError);
}

TEST_CASE("step_target one-step law matches the exact transition row") {
  const auto fixtures = fixture_corpus(1, 9001, 120);
  const RestrictedSpace& space = fixtures[0].space;
  const auto& members = fixtures[0].members;
  const TransitionMatrix p = transition_matrix_target(space);

  const RankVector from = members[members.size() / 2];
  const std::size_t from_idx = state_index(members, from);
  SplitMix64 rng(3);
  const int draws = 100000;
  std::vector<int> counts(members.size(), 0);
  for (int i = 0; i < draws; ++i)
    ++counts[state_index(members, step_target(space, from, rng))];

  for (std::size_t v = 0; v < members.size(); ++v) {
    const double expected = p.at(from_idx, v);
    const double observed = counts[v] / static_cast<double>(draws);
    if (expected == 0.0) {
      CHECK(counts[v] == 0);
    } else {
      const double se = std::sqrt(expected * (1.0 - expected) / draws);
      CHECK(std::abs(observed - expected) <= 3.0 * se + 1e-9);
    }
  }
}

TEST_CASE("step_coupled one-step law matches the exact product-chain row") {
  const RestrictedSpace space = path_space();
  const auto members = enumerate(space, 10);
  REQUIRE(members.size() == 3);
  const TransitionMatrix coupled = transition_matrix_coupled(space);
  REQUIRE(coupled.dim == 9);

  const ChainPair start{members[1], members[0]};  // degrees 1 and 2: kappa = 1/2 branch
  const std::size_t row = state_index(members, start.v) * 3 + state_index(members, start.w);

  SplitMix64 rng(4);
  const int draws = 100000;
  std::vector<int> counts(9, 0);
  for (int i = 0; i < draws; ++i) {
    const ChainPair next = step_coupled(space, start, rng);
    ++counts[state_index(members, next.v) * 3 + state_index(members, next.w)];
  }
  for (std::size_t s = 0; s < 9; ++s) {
    const double expected = coupled.at(row, s);
    const double observed = counts[s] / static_cast<double>(draws);
    if (expected == 0.0) {
      CHECK(counts[s] == 0);
    } else {
      const double se = std::sqrt(expected * (1.0 - expected) / draws);
      CHECK(std::abs(observed - expected) <= 3.0 * se + 1e-9);
    }
  }
}

TEST_CASE("coupled walk on an equal-degree space always swaps") {
  const RestrictedSpace free3({{1, 3}, {1, 3}, {1, 3}});
  SplitMix64 rng(5);
  ChainPair pair{{1, 2, 3}, {1, 2, 3}};
  for (int i = 0; i < 300; ++i) {
    const ChainPair next = step_coupled(free3, pair, rng);
    // Accepted swap: the new v is the degree-move of w (one transposition
    // away), the new w is the target-move of v (zero or one transposition).
    CHECK(hamming(next.v, pair.w) == 2);
    CHECK(hamming(next.w, pair.v) <= 2);
    pair = next;
  }
}

TEST_CASE("transition matrices: worked examples") {
  const TransitionMatrix p2 = transition_matrix_target(RestrictedSpace({{1, 2}, {1, 2}}));
  REQUIRE(p2.dim == 2);
  CHECK(p2.at(0, 0) == 0.0);
  CHECK(p2.at(0, 1) == 1.0);
  CHECK(p2.at(1, 0) == 1.0);
  CHECK(p2.at(1, 1) == 0.0);

  const TransitionMatrix p6 = transition_matrix_target(RestrictedSpace({{1, 3}, {1, 3}, {1, 3}}));
  REQUIRE(p6.dim == 6);
  for (std::size_t u = 0; u < 6; ++u) {
    CHECK(p6.at(u, u) == 0.0);
    double row_sum = 0.0;
    int neighbors = 0;
    for (std::size_t v = 0; v < 6; ++v) {
      row_sum += p6.at(u, v);
      if (p6.at(u, v) > 0.0) {
        ++neighbors;
        CHECK(p6.at(u, v) == doctest::Approx(1.0 / 3.0));
        CHECK(hamming(p6.states[u], p6.states[v]) == 2);
      }
    }
    CHECK(neighbors == 3);
    CHECK(row_sum == doctest::Approx(1.0));
  }

  const TransitionMatrix p1 = transition_matrix_target(RestrictedSpace({{1, 1}, {2, 2}}));
  REQUIRE(p1.dim == 1);
  CHECK(p1.at(0, 0) == 1.0);

  CHECK_THROWS_AS(transition_matrix_degree(RestrictedSpace({{1, 1}, {2, 2}})),
                  IsolatedNodeError);
}

TEST_CASE("stationary laws: uniform for the target walk, degree-biased for the other") {
  const auto fixtures = fixture_corpus(4, 9002, 90);
  for (const Fixture& fx : fixtures) {
    const std::size_t m = fx.members.size();
    CAPTURE(m);

    const auto pi_p = stationary_distribution(transition_matrix_target(fx.space));
    for (double v : pi_p) CHECK(std::abs(v - 1.0 / static_cast<double>(m)) < 1e-12);

    const auto pi_q = stationary_distribution(transition_matrix_degree(fx.space));
    double total_degree = 0.0;
    for (const auto& r : fx.members) total_degree += degree(fx.space, r);
    for (std::size_t s = 0; s < m; ++s)
      CHECK(std::abs(pi_q[s] - degree(fx.space, fx.members[s]) / total_degree) < 1e-12);
  }

  TransitionMatrix one;
  one.dim = 1;
  one.probs = {1.0};
  CHECK(stationary_distribution(one) == std::vector<double>{1.0});
}

TEST_CASE("coupled chain keeps the target-slot marginal uniform") {
  const auto fixtures = fixture_corpus(2, 9003, 25);
  for (const Fixture& fx : fixtures) {
    const std::size_t m = fx.members.size();
    const auto pi = stationary_distribution(transition_matrix_coupled(fx.space));
    double tv = 0.0;
    for (std::size_t v = 0; v < m; ++v) {
      double marginal = 0.0;
      for (std::size_t w = 0; w < m; ++w) marginal += pi[v * m + w];
      tv += std::abs(marginal - 1.0 / static_cast<double>(m));
    }
    CHECK(0.5 * tv < 1e-10);
  }
}

TEST_CASE("sample_uniform: singleton space shortcut") {
  const RestrictedSpace singleton({{1, 1}, {2, 2}});
  SamplerConfig config;
  config.burn_in = 10;
  config.thin = 3;
  config.count = 7;
  config.seed = 11;
  const auto samples = sample_uniform(singleton, config);
  REQUIRE(samples.size() == 7);
  for (const auto& s : samples) CHECK(s == RankVector{1, 2});
}

TEST_CASE("sample_uniform: two-member space splits evenly") {
  const RestrictedSpace two({{1, 2}, {1, 2}});
  SamplerConfig config;
  config.burn_in = 2000;
  config.thin = 20;
  config.count = 20000;
  config.seed = 12;
  const auto samples = sample_uniform(two, config);
  int first = 0;
  for (const auto& s : samples)
    if (s == RankVector{1, 2}) ++first;
  CHECK(std::abs(first / 20000.0 - 0.5) < 0.015);
}

TEST_CASE("sample_uniform: empirical law close to uniform on a small free space") {
  const RestrictedSpace free4({{1, 4}, {1, 4}, {1, 4}, {1, 4}});
  const auto members = enumerate(free4, 30);
  SamplerConfig config;
  config.burn_in = 2000;
  config.thin = 5;
  config.count = 30000;
  config.seed = 13;
  const auto samples = sample_uniform(free4, config);
  const auto freq = empirical_distribution(members, samples);
  const std::vector<double> uniform(members.size(), 1.0 / static_cast<double>(members.size()));
  CHECK(tv_distance(freq, uniform) < 0.03);
}

TEST_CASE("sample_uniform: deterministic given seed") {
  const auto fixtures = fixture_corpus(1, 9004, 60);
  SamplerConfig config;
  config.burn_in = 500;
  config.thin = 7;
  config.count = 200;
  config.seed = 99;
  const auto a = sample_uniform(fixtures[0].space, config);
  const auto b = sample_uniform(fixtures[0].space, config);
  CHECK(a == b);
}

TEST_CASE("sampler config validation") {
  const RestrictedSpace two({{1, 2}, {1, 2}});
  SamplerConfig bad;
  bad.thin = 0;
  CHECK_THROWS_AS(sample_uniform(two, bad), DomainError);
  bad = SamplerConfig{};
  bad.count = 0;
  CHECK_THROWS_AS(sample_uniform(two, bad), DomainError);
  bad = SamplerConfig{};
  bad.burn_in = -1;
  CHECK_THROWS_AS(sample_uniform(two, bad), DomainError);
}
