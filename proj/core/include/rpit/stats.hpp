#pragma once

// Rank statistics for the independence test: Kendall's tau on rank vectors,
// the restricted-permutation (RP) statistic averaging tau over sampled rank
// pairs, Oakes's tau for right-censored pairs, the permutation null obtained
// by relabeling one margin's indices, and the resulting p-values.

#include <cstdint>
#include <vector>

#include "rpit/censoring.hpp"
#include "rpit/permspace.hpp"
#include "rpit/rng.hpp"

namespace rpit {

// Kendall's tau of two rankings: (concordant - discordant) / (n(n-1)/2).
// O(n log n) by counting inversions of one ranking ordered by the other.
double kendall_tau(const RankVector& rx, const RankVector& ry);

// Entry (i, j): average over samples of sign(r_j - r_i), i.e. the mean
// concordance score of coordinate pair (i, j). Antisymmetric, row-major n*n.
std::vector<double> concordance_mean_matrix(const std::vector<RankVector>& samples);

// B matched rank samples per margin. `paired` selects the estimator:
// paired averages tau over the B (x_b, y_b) pairs; product combines the two
// concordance-mean matrices instead, an alternative unbiased estimate of the
// same space average under independent uniform sampling.
struct TauSamples {
  std::vector<RankVector> x_samples;
  std::vector<RankVector> y_samples;
  bool paired = true;
};

double rp_statistic(const TauSamples& samples);

// Oakes's tau for right-censored pairs: a pair scores +-1 only when its
// ordering is determined despite censoring, 0 otherwise (including time
// ties); normalized by n(n-1)/2 like the complete-data statistic.
double oakes_tau(const std::vector<RightObs>& x, const std::vector<RightObs>& y);

// Null draws: for each of `perms` uniformly random index relabelings eta,
// the statistic recomputed with every stored y sample relabeled
// coordinate-wise (y_b(eta)_i = y_b[eta(i)]). Draw p uses a sub-stream
// derived from one state draw of `rng` and index p, so results are
// deterministic and independent of the worker count.
std::vector<double> permutation_null(const TauSamples& samples, std::int64_t perms,
                                     SplitMix64& rng, int threads = 1);

// Same relabeling null for Oakes's tau on right-censored data.
std::vector<double> oakes_permutation_null(const std::vector<RightObs>& x,
                                           const std::vector<RightObs>& y, std::int64_t perms,
                                           SplitMix64& rng, int threads = 1);

struct PValues {
  double p_perm = 1.0;   // two-sided, add-one: (1 + #{|draw| >= |stat|}) / (perms + 1)
  double p_asym = 1.0;   // 2 * (1 - Phi(|stat| / sqrt(variance)))
  double variance = 0.0; // sample variance of the null draws
};

// Throws NumericError when the null draws are degenerate (zero variance).
PValues p_values(double statistic, const std::vector<double>& null_draws);

enum class Estimator { Paired, Product };

struct TestConfig {
  std::int64_t mc_samples = 1000;  // rank samples per margin (B)
  std::int64_t perms = 1000;       // permutation null draws
  std::int64_t burn_in = 5000;
  std::int64_t thin = 100;
  std::uint64_t seed = 1;
  Estimator estimator = Estimator::Paired;
  int threads = 1;

  void validate() const;
};

struct TestReport {
  double statistic = 0.0;
  double variance = 0.0;
  std::vector<double> null_draws;
  double p_perm = 1.0;
  double p_asym = 1.0;
  int n = 0;
  TestConfig config;
};

// Full pipeline: rank bounds per margin -> restricted spaces -> B uniform
// rank samples per margin (sub-seeds derived from config.seed, distinct per
// margin) -> statistic, permutation null, p-values. Deterministic given the
// seed.
TestReport test_independence(const BivariateRightData& data, const TestConfig& config);
TestReport test_independence(const BivariateIntervalData& data, const TestConfig& config);

}  // namespace rpit
