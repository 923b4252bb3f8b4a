#pragma once

// Random walks on the transposition graph of a restricted permutation space.
// Three steppers are provided: the target walk (uniform limiting law), the
// degree-biased walk (limiting law proportional to node degree), and their
// Metropolis coupling, which swaps the two states with probability
// min{1, deg(target_state)/deg(degree_state)} to accelerate mixing of the
// target stream. Exact dense transition matrices over enumerable spaces back
// the correctness tests.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rpit/permspace.hpp"
#include "rpit/rng.hpp"

namespace rpit {

struct SamplerConfig {
  std::int64_t burn_in = 5000;  // steps discarded before retention starts
  std::int64_t thin = 100;      // one sample retained per `thin` steps
  std::int64_t count = 1;       // retained samples
  std::uint64_t seed = 0;

  void validate() const;
};

// Joint state of the coupled walk: v is the target-slot state, w the
// degree-slot state.
struct ChainPair {
  RankVector v;
  RankVector w;
};

// Dense row-stochastic transition matrix over an enumerated state list.
// For product-space (coupled) chains `states` is empty and row/column index
// p encodes the pair (states[p / m], states[p % m]) of the underlying
// enumeration of size m.
struct TransitionMatrix {
  std::vector<RankVector> states;
  std::size_t dim = 0;
  std::vector<double> probs;  // row-major dim x dim

  double at(std::size_t row, std::size_t col) const { return probs[row * dim + col]; }
  double& at(std::size_t row, std::size_t col) { return probs[row * dim + col]; }
};

// One step of the target walk: propose a uniform transposition out of the
// K = n(n-1)/2 unordered pairs; move when the result stays in the space,
// otherwise hold. Transition law: stay 1 - deg(r)/K, each neighbor 1/K.
RankVector step_target(const RestrictedSpace& space, const RankVector& r, SplitMix64& rng);

// One step of the degree-biased walk: re-propose transpositions until one is
// feasible, i.e. move to a uniformly chosen neighbor. Requires deg(r) >= 1;
// throws IsolatedNodeError otherwise (the resample loop would never end).
RankVector step_degree(const RestrictedSpace& space, const RankVector& r, SplitMix64& rng);

// One step of the Metropolis-coupled pair: advance v by the target rule and
// w by the degree rule to (R1, R2), then return (R2, R1) with probability
// min{1, deg(R1)/deg(R2)} and (R1, R2) otherwise.
ChainPair step_coupled(const RestrictedSpace& space, const ChainPair& pair, SplitMix64& rng);

// Uniform samples from the space: runs the coupled pair from the greedy
// initial member (both slots), discards `burn_in` steps, then retains the
// target-slot state once per `thin` steps until `count` samples are
// collected. A space whose start state has no neighbor is a singleton and
// yields `count` copies of its only member.
std::vector<RankVector> sample_uniform(const RestrictedSpace& space, const SamplerConfig& config,
                                       SplitMix64& rng);
std::vector<RankVector> sample_uniform(const RestrictedSpace& space, const SamplerConfig& config);

// Exact transition matrices over enumerate(space, limit) order.
TransitionMatrix transition_matrix_target(const RestrictedSpace& space, std::size_t limit = 5000);
TransitionMatrix transition_matrix_degree(const RestrictedSpace& space, std::size_t limit = 5000);

// Exact transition matrix of the coupled chain on the product space S x S
// (dim = |S|^2, pair encoding described at TransitionMatrix). Throws
// IsolatedNodeError when the space has a degree-zero member.
TransitionMatrix transition_matrix_coupled(const RestrictedSpace& space, std::size_t limit = 100);

// Left fixed probability vector (pi^T M = pi^T) by damped power iteration;
// the residual is measured against M itself, so the result is a genuine
// fixed vector even for periodic chains. Throws NumericError if the
// infinity-norm residual does not reach 1e-13.
std::vector<double> stationary_distribution(const TransitionMatrix& m);

}  // namespace rpit
