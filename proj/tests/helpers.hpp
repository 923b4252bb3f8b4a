#pragma once

// Shared test utilities: independent reference implementations (oracles) and
// random fixture generators. Everything here is deliberately written from
// the definitions, not by calling the library paths under test.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "rpit/censoring.hpp"
#include "rpit/diagnostics.hpp"
#include "rpit/permspace.hpp"
#include "rpit/rng.hpp"

namespace rpit_test {

// Kendall's tau straight from the pairwise definition, O(n^2).
inline double kendall_tau_quadratic(const std::vector<int>& rx, const std::vector<int>& ry) {
  const std::size_t n = rx.size();
  long long sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int a = rx[i] < rx[j] ? 1 : -1;
      const int b = ry[i] < ry[j] ? 1 : -1;
      sum += a * b;
    }
  }
  return static_cast<double>(sum) / (static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0);
}

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Ranks (1-based) of a continuous sample, assuming no ties.
inline std::vector<int> ranks_of(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<int> ranks(n);
  for (std::size_t r = 0; r < n; ++r) ranks[idx[r]] = static_cast<int>(r) + 1;
  return ranks;
}

// Exhaustive per-observation realizable rank sets, via the brute-force
// feasibility oracle over all n! permutations.
struct RealizableRanks {
  std::vector<std::vector<bool>> attained;  // [i][rank-1]
  bool any = false;
};

inline RealizableRanks realizable_rank_sets(const std::vector<rpit::IntervalObs>& obs) {
  const int n = static_cast<int>(obs.size());
  RealizableRanks out;
  out.attained.assign(obs.size(), std::vector<bool>(obs.size(), false));
  for (const auto& perm : all_permutations(n)) {
    if (!rpit::realizable(obs, perm)) continue;
    out.any = true;
    for (std::size_t i = 0; i < obs.size(); ++i)
      out.attained[i][static_cast<std::size_t>(perm[i] - 1)] = true;
  }
  return out;
}

// Pool of pairwise-distinct positive values, deterministic given the rng.
inline std::vector<double> distinct_values(std::size_t count, rpit::SplitMix64& rng) {
  std::vector<double> values;
  while (values.size() < count) {
    const double v = 0.5 + 20.0 * rng.uniform01();
    bool clash = false;
    for (double u : values)
      if (std::abs(u - v) < 1e-6) clash = true;
    if (!clash) values.push_back(v);
  }
  return values;
}

inline std::vector<rpit::RightObs> random_right_dataset(int n, rpit::SplitMix64& rng,
                                                        double censor_prob = 0.4) {
  const std::vector<double> values = distinct_values(static_cast<std::size_t>(n), rng);
  std::vector<rpit::RightObs> obs;
  obs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    obs.push_back({values[static_cast<std::size_t>(i)], rng.uniform01() >= censor_prob});
  return obs;
}

// Random interval-censored dataset with pairwise-distinct finite endpoints
// (the fixture condition under which the feasibility oracle is exact).
inline std::vector<rpit::IntervalObs> random_interval_dataset(int n, rpit::SplitMix64& rng) {
  std::vector<double> pool = distinct_values(2 * static_cast<std::size_t>(n), rng);
  std::size_t next = 0;
  auto take = [&]() { return pool[next++]; };
  std::vector<rpit::IntervalObs> obs;
  obs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double roll = rng.uniform01();
    if (roll < 0.25) {
      obs.push_back(rpit::IntervalObs::left_censored(take()));
    } else if (roll < 0.5) {
      double a = take(), b = take();
      if (a > b) std::swap(a, b);
      obs.push_back(rpit::IntervalObs::interval(a, b));
    } else if (roll < 0.75) {
      obs.push_back(rpit::IntervalObs::right_censored(take()));
    } else {
      obs.push_back(rpit::IntervalObs::exact(take()));
    }
  }
  return obs;
}

// Transposition graph over enumerated members of a restricted space.
inline rpit::SimpleGraph space_graph(const std::vector<rpit::RankVector>& members) {
  rpit::SimpleGraph g;
  g.node_count = static_cast<int>(members.size());
  g.adjacency.resize(members.size());
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      int diff = 0;
      for (std::size_t i = 0; i < members[a].size(); ++i)
        if (members[a][i] != members[b][i]) ++diff;
      if (diff == 2) {
        g.adjacency[a].push_back(static_cast<int>(b));
        g.adjacency[b].push_back(static_cast<int>(a));
      }
    }
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
  return g;
}

// Empirical distribution of sampled rank vectors over an enumerated state
// list (states must be sorted lexicographically, as enumerate produces).
inline std::vector<double> empirical_distribution(const std::vector<rpit::RankVector>& states,
                                                  const std::vector<rpit::RankVector>& samples) {
  std::vector<double> freq(states.size(), 0.0);
  for (const auto& s : samples) {
    const auto it = std::lower_bound(states.begin(), states.end(), s);
    freq[static_cast<std::size_t>(it - states.begin())] += 1.0;
  }
  for (double& f : freq) f /= static_cast<double>(samples.size());
  return freq;
}

}  // namespace rpit_test
