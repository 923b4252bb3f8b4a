#pragma once

// Mixing study machinery: benchmark graph generators (circulant, random
// k-regular, Watts-Strogatz), the target / degree / coupled walks restated
// on an explicit graph, and distance traces of the target chain's empirical
// law against uniform. The graph walks mirror the permutation-space walks:
// the target walk proposes a uniform node and moves only along an edge
// (uniform limiting law), the degree walk moves to a uniform neighbor
// (degree-proportional limiting law), and the coupled pair swaps states with
// probability min{1, deg/deg}.

#include <cstdint>
#include <utility>
#include <vector>

#include "rpit/rng.hpp"

namespace rpit {

struct SimpleGraph {
  int node_count = 0;
  std::vector<std::vector<int>> adjacency;  // sorted neighbor lists

  int degree(int v) const { return static_cast<int>(adjacency[static_cast<std::size_t>(v)].size()); }
  bool adjacent(int u, int v) const;
};

// Structural validation: symmetric, no self-loops, no duplicates, sorted.
void validate(const SimpleGraph& g);

bool is_connected(const SimpleGraph& g);
bool is_bipartite(const SimpleGraph& g);

// Node i adjacent to (i +- j) mod n for each jump j.
SimpleGraph gen_circulant(int n, const std::vector<int>& jumps);

// Uniform pairing construction with restart on self-loops or duplicate
// edges. Requires n*k even and k < n.
SimpleGraph gen_random_regular(int n, int k, SplitMix64& rng);

// Ring lattice with k/2 neighbors per side, one-sided rewiring of each
// clockwise edge with probability p (new target resampled until simple).
SimpleGraph gen_watts_strogatz(int n, int k, double p, SplitMix64& rng);

// One step per walk. The degree walk throws IsolatedNodeError on a
// degree-zero node.
int graph_step_target(const SimpleGraph& g, int state, SplitMix64& rng);
int graph_step_degree(const SimpleGraph& g, int state, SplitMix64& rng);
std::pair<int, int> graph_step_coupled(const SimpleGraph& g, std::pair<int, int> state,
                                       SplitMix64& rng);

// Exact transition matrices (row-major n*n) of the two walks:
// target P(u,v) = 1/n on edges, P(u,u) = 1 - deg(u)/n;
// degree Q(u,v) = 1/deg(u) on edges.
std::vector<double> graph_transition_target(const SimpleGraph& g);
std::vector<double> graph_transition_degree(const SimpleGraph& g);

// max_v |f(v) - g(v)| and (1/2) sum_v |f(v) - g(v)| over probability vectors
// of equal length (each must sum to 1 within 1e-9).
double sup_distance(const std::vector<double>& f, const std::vector<double>& g);
double tv_distance(const std::vector<double>& f, const std::vector<double>& g);

struct TraceCheckpoint {
  std::int64_t retained = 0;  // retained samples so far (after burn-in/thinning)
  double d_sup = 0.0;
  double d_tv = 0.0;
};

struct DistanceTrace {
  std::vector<TraceCheckpoint> independent;
  std::vector<TraceCheckpoint> coupled;
};

// Default geometric checkpoint schedule 100, 1000, ... capped at `total`
// (with `total` itself appended).
std::vector<std::int64_t> geometric_checkpoints(std::int64_t total);

// Runs an independent target/degree pair and a Metropolis-coupled pair from
// node 0, with the given burn-in and thinning, and records both distances of
// the target chain's empirical distribution to uniform at every checkpoint
// (counted in retained samples; checkpoints must be positive and
// increasing). One sub-seed per mode.
DistanceTrace mixing_report(const SimpleGraph& g, std::int64_t burn_in, std::int64_t thin,
                            const std::vector<std::int64_t>& totals, std::uint64_t seed);

}  // namespace rpit
