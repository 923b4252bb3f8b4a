#include "rpit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "rpit/errors.hpp"
#include "rpit/mcmc.hpp"
#include "rpit/parallel.hpp"

namespace rpit {

namespace {

// Bottom-up merge sort counting inversions; `a` is consumed.
std::uint64_t count_inversions(std::vector<int>& a, std::vector<int>& buf) {
  const std::size_t n = a.size();
  buf.resize(n);
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (a[i] <= a[j]) {
          buf[k++] = a[i++];
        } else {
          inversions += mid - i;
          buf[k++] = a[j++];
        }
      }
      while (i < mid) buf[k++] = a[i++];
      while (j < hi) buf[k++] = a[j++];
      std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                buf.begin() + static_cast<std::ptrdiff_t>(hi),
                a.begin() + static_cast<std::ptrdiff_t>(lo));
    }
  }
  return inversions;
}

// tau with caller-provided scratch; rx and ry are assumed permutations.
double kendall_tau_scratch(const RankVector& rx, const RankVector& ry, std::vector<int>& arranged,
                           std::vector<int>& buf) {
  const std::size_t n = rx.size();
  arranged.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    arranged[static_cast<std::size_t>(rx[i] - 1)] = ry[i];
  const std::uint64_t inv = count_inversions(arranged, buf);
  const double total = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  return 1.0 - static_cast<double>(inv) / total * 2.0;
}

void check_rank_pair(const RankVector& rx, const RankVector& ry) {
  if (rx.size() != ry.size()) throw ContractViolation("kendall_tau: length mismatch");
  if (rx.size() < 2) throw ContractViolation("kendall_tau: need n >= 2");
  if (!is_permutation(rx) || !is_permutation(ry))
    throw ContractViolation("kendall_tau: inputs must be permutations of 1..n");
}

double product_statistic(const std::vector<double>& a_mean, const std::vector<double>& b_mean,
                         std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += a_mean[i * n + j] * b_mean[i * n + j];
  const double total = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  return sum / total;
}

void check_samples(const TauSamples& samples) {
  if (samples.x_samples.empty() || samples.x_samples.size() != samples.y_samples.size())
    throw ContractViolation("TauSamples: need equal, nonempty sample lists");
  const std::size_t n = samples.x_samples.front().size();
  if (n < 2) throw ContractViolation("TauSamples: need n >= 2");
  for (const auto& s : samples.x_samples)
    if (s.size() != n) throw ContractViolation("TauSamples: ragged x sample");
  for (const auto& s : samples.y_samples)
    if (s.size() != n) throw ContractViolation("TauSamples: ragged y sample");
}

// Oakes pair score: +1 when the first observation is known to be the larger
// of the pair, -1 when known smaller, 0 when censoring (or a time tie)
// leaves the order undetermined.
int oakes_score(const RightObs& a, const RightObs& b) {
  if (a.time > b.time && b.event) return 1;
  if (a.time < b.time && a.event) return -1;
  return 0;
}

std::vector<signed char> oakes_score_matrix(const std::vector<RightObs>& obs) {
  const std::size_t n = obs.size();
  std::vector<signed char> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = static_cast<signed char>(oakes_score(obs[i], obs[j]));
  return m;
}

}  // namespace

double kendall_tau(const RankVector& rx, const RankVector& ry) {
  check_rank_pair(rx, ry);
  std::vector<int> arranged, buf;
  return kendall_tau_scratch(rx, ry, arranged, buf);
}

std::vector<double> concordance_mean_matrix(const std::vector<RankVector>& samples) {
  if (samples.empty()) throw ContractViolation("concordance_mean_matrix: no samples");
  const std::size_t n = samples.front().size();
  std::vector<std::int64_t> counts(n * n, 0);
  for (const RankVector& r : samples) {
    if (r.size() != n) throw ContractViolation("concordance_mean_matrix: ragged sample");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const int score = r[i] < r[j] ? 1 : -1;
        counts[i * n + j] += score;
        counts[j * n + i] -= score;
      }
  }
  std::vector<double> mean(n * n, 0.0);
  const double b = static_cast<double>(samples.size());
  for (std::size_t k = 0; k < n * n; ++k) mean[k] = static_cast<double>(counts[k]) / b;
  return mean;
}

double rp_statistic(const TauSamples& samples) {
  check_samples(samples);
  if (samples.paired) {
    std::vector<int> arranged, buf;
    double sum = 0.0;
    for (std::size_t b = 0; b < samples.x_samples.size(); ++b)
      sum += kendall_tau_scratch(samples.x_samples[b], samples.y_samples[b], arranged, buf);
    return sum / static_cast<double>(samples.x_samples.size());
  }
  const std::size_t n = samples.x_samples.front().size();
  return product_statistic(concordance_mean_matrix(samples.x_samples),
                           concordance_mean_matrix(samples.y_samples), n);
}

double oakes_tau(const std::vector<RightObs>& x, const std::vector<RightObs>& y) {
  if (x.size() != y.size()) throw ContractViolation("oakes_tau: length mismatch");
  if (x.size() < 2) throw ContractViolation("oakes_tau: need n >= 2");
  const std::size_t n = x.size();
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      sum += oakes_score(x[i], x[j]) * oakes_score(y[i], y[j]);
  const double total = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  return static_cast<double>(sum) / total;
}

std::vector<double> permutation_null(const TauSamples& samples, std::int64_t perms,
                                     SplitMix64& rng, int threads) {
  check_samples(samples);
  if (perms < 1) throw DomainError("permutation_null: perms must be >= 1");
  const std::size_t n = samples.x_samples.front().size();
  const std::uint64_t base = rng.next();
  std::vector<double> draws(static_cast<std::size_t>(perms), 0.0);

  if (samples.paired) {
    parallel_for(static_cast<std::size_t>(perms), threads, [&](std::size_t p) {
      SplitMix64 g(derive_seed(base, p));
      const std::vector<int> eta = random_permutation(static_cast<int>(n), g);
      std::vector<int> relabeled(n), arranged, buf;
      double sum = 0.0;
      for (std::size_t b = 0; b < samples.x_samples.size(); ++b) {
        const RankVector& y = samples.y_samples[b];
        for (std::size_t i = 0; i < n; ++i)
          relabeled[i] = y[static_cast<std::size_t>(eta[i] - 1)];
        sum += kendall_tau_scratch(samples.x_samples[b], relabeled, arranged, buf);
      }
      draws[p] = sum / static_cast<double>(samples.x_samples.size());
    });
    return draws;
  }

  const std::vector<double> a_mean = concordance_mean_matrix(samples.x_samples);
  const std::vector<double> b_mean = concordance_mean_matrix(samples.y_samples);
  const double total = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  parallel_for(static_cast<std::size_t>(perms), threads, [&](std::size_t p) {
    SplitMix64 g(derive_seed(base, p));
    const std::vector<int> eta = random_permutation(static_cast<int>(n), g);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ei = static_cast<std::size_t>(eta[i] - 1);
      for (std::size_t j = i + 1; j < n; ++j)
        sum += a_mean[i * n + j] *
               b_mean[ei * n + static_cast<std::size_t>(eta[j] - 1)];
    }
    draws[p] = sum / total;
  });
  return draws;
}

std::vector<double> oakes_permutation_null(const std::vector<RightObs>& x,
                                           const std::vector<RightObs>& y, std::int64_t perms,
                                           SplitMix64& rng, int threads) {
  if (x.size() != y.size()) throw ContractViolation("oakes_permutation_null: length mismatch");
  if (perms < 1) throw DomainError("oakes_permutation_null: perms must be >= 1");
  const std::size_t n = x.size();
  const std::vector<signed char> a = oakes_score_matrix(x);
  const std::vector<signed char> b = oakes_score_matrix(y);
  const double total = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  const std::uint64_t base = rng.next();
  std::vector<double> draws(static_cast<std::size_t>(perms), 0.0);
  parallel_for(static_cast<std::size_t>(perms), threads, [&](std::size_t p) {
    SplitMix64 g(derive_seed(base, p));
    const std::vector<int> eta = random_permutation(static_cast<int>(n), g);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ei = static_cast<std::size_t>(eta[i] - 1);
      for (std::size_t j = i + 1; j < n; ++j)
        sum += static_cast<int>(a[i * n + j]) *
               static_cast<int>(b[ei * n + static_cast<std::size_t>(eta[j] - 1)]);
    }
    draws[p] = static_cast<double>(sum) / total;
  });
  return draws;
}

PValues p_values(double statistic, const std::vector<double>& null_draws) {
  if (null_draws.size() < 2) throw ContractViolation("p_values: need >= 2 null draws");
  const double abs_stat = std::abs(statistic);
  std::size_t extreme = 0;
  double mean = 0.0;
  for (double d : null_draws) {
    if (std::abs(d) >= abs_stat) ++extreme;
    mean += d;
  }
  mean /= static_cast<double>(null_draws.size());
  double variance = 0.0;
  for (double d : null_draws) variance += (d - mean) * (d - mean);
  variance /= static_cast<double>(null_draws.size() - 1);
  if (variance <= 0.0)
    throw NumericError("p_values: degenerate permutation null (zero variance)");

  PValues out;
  out.variance = variance;
  out.p_perm = (1.0 + static_cast<double>(extreme)) /
               (static_cast<double>(null_draws.size()) + 1.0);
  out.p_asym = std::erfc(abs_stat / std::sqrt(2.0 * variance));
  return out;
}

void TestConfig::validate() const {
  if (mc_samples < 1) throw DomainError("test config: mc-samples must be >= 1");
  if (perms < 1) throw DomainError("test config: perms must be >= 1");
  if (burn_in < 0) throw DomainError("test config: burnin must be >= 0");
  if (thin < 1) throw DomainError("test config: thin must be >= 1");
}

namespace {

TestReport run_test(const std::vector<RankBounds>& bounds_x,
                    const std::vector<RankBounds>& bounds_y, const TestConfig& config) {
  config.validate();
  const RestrictedSpace space_x(bounds_x);
  const RestrictedSpace space_y(bounds_y);

  SamplerConfig sampler;
  sampler.burn_in = config.burn_in;
  sampler.thin = config.thin;
  sampler.count = config.mc_samples;

  TauSamples samples;
  samples.paired = config.estimator == Estimator::Paired;
  {
    SplitMix64 rng_x(derive_seed(config.seed, 1));
    samples.x_samples = sample_uniform(space_x, sampler, rng_x);
    SplitMix64 rng_y(derive_seed(config.seed, 2));
    samples.y_samples = sample_uniform(space_y, sampler, rng_y);
  }

  TestReport report;
  report.n = space_x.n();
  report.config = config;
  report.statistic = rp_statistic(samples);
  SplitMix64 rng_null(derive_seed(config.seed, 3));
  report.null_draws = permutation_null(samples, config.perms, rng_null, config.threads);
  const PValues pv = p_values(report.statistic, report.null_draws);
  report.p_perm = pv.p_perm;
  report.p_asym = pv.p_asym;
  report.variance = pv.variance;
  return report;
}

}  // namespace

TestReport test_independence(const BivariateRightData& data, const TestConfig& config) {
  if (data.x.size() != data.y.size())
    throw InvalidDatasetError("bivariate dataset: margins differ in length");
  return run_test(rank_bounds_right(data.x), rank_bounds_right(data.y), config);
}

TestReport test_independence(const BivariateIntervalData& data, const TestConfig& config) {
  if (data.x.size() != data.y.size())
    throw InvalidDatasetError("bivariate dataset: margins differ in length");
  return run_test(rank_bounds_interval(data.x), rank_bounds_interval(data.y), config);
}

}  // namespace rpit
