#include "rpit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "rpit/errors.hpp"

namespace rpit {

namespace {

SimpleGraph from_edge_sets(int n, const std::vector<std::set<int>>& nbr) {
  SimpleGraph g;
  g.node_count = n;
  g.adjacency.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    g.adjacency[static_cast<std::size_t>(v)].assign(nbr[static_cast<std::size_t>(v)].begin(),
                                                    nbr[static_cast<std::size_t>(v)].end());
  validate(g);
  return g;
}

}  // namespace

bool SimpleGraph::adjacent(int u, int v) const {
  const auto& nb = adjacency[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

void validate(const SimpleGraph& g) {
  if (g.node_count <= 0 || g.adjacency.size() != static_cast<std::size_t>(g.node_count))
    throw DomainError("graph: adjacency size mismatch");
  for (int u = 0; u < g.node_count; ++u) {
    const auto& nb = g.adjacency[static_cast<std::size_t>(u)];
    if (!std::is_sorted(nb.begin(), nb.end()))
      throw DomainError("graph: neighbor list not sorted");
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw DomainError("graph: parallel edge");
    for (int v : nb) {
      if (v < 0 || v >= g.node_count) throw DomainError("graph: neighbor out of range");
      if (v == u) throw DomainError("graph: self-loop");
      if (!g.adjacent(v, u)) throw DomainError("graph: asymmetric adjacency");
    }
  }
}

bool is_connected(const SimpleGraph& g) {
  std::vector<bool> seen(static_cast<std::size_t>(g.node_count), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int visited = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : g.adjacency[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        ++visited;
        frontier.push(v);
      }
    }
  }
  return visited == g.node_count;
}

bool is_bipartite(const SimpleGraph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.node_count), -1);
  for (int start = 0; start < g.node_count; ++start) {
    if (color[static_cast<std::size_t>(start)] != -1) continue;
    color[static_cast<std::size_t>(start)] = 0;
    std::queue<int> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : g.adjacency[static_cast<std::size_t>(u)]) {
        if (color[static_cast<std::size_t>(v)] == -1) {
          color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
          frontier.push(v);
        } else if (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

SimpleGraph gen_circulant(int n, const std::vector<int>& jumps) {
  if (n < 2) throw DomainError("gen_circulant: need n >= 2");
  if (jumps.empty()) throw DomainError("gen_circulant: need at least one jump");
  std::vector<std::set<int>> nbr(static_cast<std::size_t>(n));
  for (int j : jumps) {
    if (j <= 0) throw DomainError("gen_circulant: jumps must be positive");
    const int jj = j % n;
    if (jj == 0) continue;  // full wrap, no edge
    for (int i = 0; i < n; ++i) {
      nbr[static_cast<std::size_t>(i)].insert((i + jj) % n);
      nbr[static_cast<std::size_t>(i)].insert((i - jj + n) % n);
    }
  }
  return from_edge_sets(n, nbr);
}

SimpleGraph gen_random_regular(int n, int k, SplitMix64& rng) {
  if (n < 2 || k < 1 || k >= n) throw DomainError("gen_random_regular: need 1 <= k < n");
  if ((static_cast<std::int64_t>(n) * k) % 2 != 0)
    throw DomainError("gen_random_regular: n*k must be even");

  constexpr int kMaxAttempts = 100000;
  std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (std::size_t s = 0; s < stubs.size(); ++s) stubs[s] = static_cast<int>(s) / k;
    // Fisher-Yates, then pair consecutive stubs.
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      const std::size_t j = rng.below(i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    std::vector<std::set<int>> nbr(static_cast<std::size_t>(n));
    bool simple = true;
    for (std::size_t s = 0; s + 1 < stubs.size() && simple; s += 2) {
      const int u = stubs[s];
      const int v = stubs[s + 1];
      if (u == v || nbr[static_cast<std::size_t>(u)].count(v)) {
        simple = false;
      } else {
        nbr[static_cast<std::size_t>(u)].insert(v);
        nbr[static_cast<std::size_t>(v)].insert(u);
      }
    }
    if (simple) return from_edge_sets(n, nbr);
  }
  throw NumericError("gen_random_regular: pairing model failed to produce a simple graph");
}

SimpleGraph gen_watts_strogatz(int n, int k, double p, SplitMix64& rng) {
  if (n < 3 || k < 2 || k % 2 != 0 || k >= n)
    throw DomainError("gen_watts_strogatz: need even k with 2 <= k < n");
  if (!(p >= 0.0) || !(p <= 1.0)) throw DomainError("gen_watts_strogatz: p must be in [0, 1]");

  std::vector<std::set<int>> nbr(static_cast<std::size_t>(n));
  for (int j = 1; j <= k / 2; ++j) {
    for (int i = 0; i < n; ++i) {
      nbr[static_cast<std::size_t>(i)].insert((i + j) % n);
      nbr[static_cast<std::size_t>((i + j) % n)].insert(i);
    }
  }
  // One-sided rewiring: each clockwise lattice edge may be detached from its
  // ring target and reattached to a uniform node, rejecting self-loops and
  // duplicates.
  for (int j = 1; j <= k / 2; ++j) {
    for (int i = 0; i < n; ++i) {
      if (rng.uniform01() >= p) continue;
      const int old_target = (i + j) % n;
      auto& ni = nbr[static_cast<std::size_t>(i)];
      if (!ni.count(old_target)) continue;  // already rewired away by the partner
      if (static_cast<int>(ni.size()) >= n - 1) continue;  // saturated, no target left
      int t;
      do {
        t = rng.below_int(n);
      } while (t == i || ni.count(t));
      ni.erase(old_target);
      nbr[static_cast<std::size_t>(old_target)].erase(i);
      ni.insert(t);
      nbr[static_cast<std::size_t>(t)].insert(i);
    }
  }
  return from_edge_sets(n, nbr);
}

int graph_step_target(const SimpleGraph& g, int state, SplitMix64& rng) {
  const int proposal = rng.below_int(g.node_count);
  return g.adjacent(state, proposal) ? proposal : state;
}

int graph_step_degree(const SimpleGraph& g, int state, SplitMix64& rng) {
  const auto& nb = g.adjacency[static_cast<std::size_t>(state)];
  if (nb.empty()) throw IsolatedNodeError("graph_step_degree: isolated node");
  return nb[rng.below(nb.size())];
}

std::pair<int, int> graph_step_coupled(const SimpleGraph& g, std::pair<int, int> state,
                                       SplitMix64& rng) {
  const int v = graph_step_target(g, state.first, rng);
  const int w = graph_step_degree(g, state.second, rng);
  const double ratio = static_cast<double>(g.degree(v)) / static_cast<double>(g.degree(w));
  if (rng.uniform01() <= ratio) return {w, v};
  return {v, w};
}

std::vector<double> graph_transition_target(const SimpleGraph& g) {
  const std::size_t n = static_cast<std::size_t>(g.node_count);
  std::vector<double> m(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (int v : g.adjacency[u]) m[u * n + static_cast<std::size_t>(v)] = 1.0 / static_cast<double>(n);
    m[u * n + u] = 1.0 - static_cast<double>(g.adjacency[u].size()) / static_cast<double>(n);
  }
  return m;
}

std::vector<double> graph_transition_degree(const SimpleGraph& g) {
  const std::size_t n = static_cast<std::size_t>(g.node_count);
  std::vector<double> m(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    if (g.adjacency[u].empty())
      throw IsolatedNodeError("graph_transition_degree: isolated node");
    const double p = 1.0 / static_cast<double>(g.adjacency[u].size());
    for (int v : g.adjacency[u]) m[u * n + static_cast<std::size_t>(v)] = p;
  }
  return m;
}

namespace {

void check_distribution_pair(const std::vector<double>& f, const std::vector<double>& g) {
  if (f.size() != g.size() || f.empty())
    throw DomainError("distance: distributions must have equal nonzero length");
  for (const auto* vec : {&f, &g}) {
    const double sum = std::accumulate(vec->begin(), vec->end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9)
      throw DomainError("distance: distribution does not sum to 1");
  }
}

}  // namespace

double sup_distance(const std::vector<double>& f, const std::vector<double>& g) {
  check_distribution_pair(f, g);
  double d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
  return d;
}

double tv_distance(const std::vector<double>& f, const std::vector<double>& g) {
  check_distribution_pair(f, g);
  double d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) d += std::abs(f[i] - g[i]);
  return 0.5 * d;
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t total) {
  if (total < 1) throw DomainError("geometric_checkpoints: total must be >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t c = 100; c < total; c *= 10) out.push_back(c);
  if (out.empty() || out.back() != total) out.push_back(total);
  return out;
}

namespace {

std::vector<TraceCheckpoint> trace_one_mode(const SimpleGraph& g, bool coupled,
                                            std::int64_t burn_in, std::int64_t thin,
                                            const std::vector<std::int64_t>& totals,
                                            std::uint64_t seed) {
  SplitMix64 rng(seed);
  int v = 0;
  int w = 0;
  auto step_pair = [&]() {
    if (coupled) {
      const auto next = graph_step_coupled(g, {v, w}, rng);
      v = next.first;
      w = next.second;
    } else {
      v = graph_step_target(g, v, rng);
      w = graph_step_degree(g, w, rng);
    }
  };

  for (std::int64_t t = 0; t < burn_in; ++t) step_pair();

  const std::size_t n = static_cast<std::size_t>(g.node_count);
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
  std::vector<std::int64_t> counts(n, 0);
  std::vector<TraceCheckpoint> trace;
  std::int64_t retained = 0;
  for (std::int64_t target : totals) {
    while (retained < target) {
      for (std::int64_t t = 0; t < thin; ++t) step_pair();
      ++counts[static_cast<std::size_t>(v)];
      ++retained;
    }
    std::vector<double> empirical(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      empirical[i] = static_cast<double>(counts[i]) / static_cast<double>(retained);
    trace.push_back(
        {retained, sup_distance(empirical, uniform), tv_distance(empirical, uniform)});
  }
  return trace;
}

}  // namespace

DistanceTrace mixing_report(const SimpleGraph& g, std::int64_t burn_in, std::int64_t thin,
                            const std::vector<std::int64_t>& totals, std::uint64_t seed) {
  validate(g);
  if (burn_in < 0 || thin < 1) throw DomainError("mixing_report: bad burn-in/thin");
  if (totals.empty()) throw DomainError("mixing_report: need at least one checkpoint");
  for (std::size_t i = 0; i < totals.size(); ++i) {
    if (totals[i] < 1 || (i > 0 && totals[i] <= totals[i - 1]))
      throw DomainError("mixing_report: checkpoints must be positive and increasing");
  }
  DistanceTrace trace;
  trace.independent = trace_one_mode(g, false, burn_in, thin, totals, derive_seed(seed, 0));
  trace.coupled = trace_one_mode(g, true, burn_in, thin, totals, derive_seed(seed, 1));
  return trace;
}

}  // namespace rpit
