#include "rpit/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rpit/errors.hpp"

namespace rpit {

namespace {

// Hamming distance exactly 2 is equivalent to "one transposition apart" for
// two permutations of the same set.
bool one_transposition_apart(const RankVector& a, const RankVector& b) {
  int diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] && ++diff > 2) return false;
  }
  return diff == 2;
}

// Advances both slots in place and applies the swap rule. deg_w_in is the
// degree of w before the step, carried by the caller so each step costs two
// degree evaluations. Returns the degrees of the new (v, w).
std::pair<int, int> coupled_step_inplace(const RestrictedSpace& space, RankVector& v,
                                         RankVector& w, int deg_w_in, SplitMix64& rng) {
  const int n = space.n();

  {
    const auto [c, d] = rng.distinct_pair(n);
    if (swap_feasible(space, v, c, d))
      std::swap(v[static_cast<std::size_t>(c)], v[static_cast<std::size_t>(d)]);
  }

  if (deg_w_in < 1) throw IsolatedNodeError("step_degree: state has no neighbor");
  for (;;) {
    const auto [c, d] = rng.distinct_pair(n);
    if (swap_feasible(space, w, c, d)) {
      std::swap(w[static_cast<std::size_t>(c)], w[static_cast<std::size_t>(d)]);
      break;
    }
  }

  const int deg_v_next = detail::degree_unchecked(space, v);
  const int deg_w_next = detail::degree_unchecked(space, w);
  const double ratio = static_cast<double>(deg_v_next) / static_cast<double>(deg_w_next);
  if (rng.uniform01() <= ratio) {
    std::swap(v, w);
    return {deg_w_next, deg_v_next};
  }
  return {deg_v_next, deg_w_next};
}

}  // namespace

void SamplerConfig::validate() const {
  if (burn_in < 0) throw DomainError("sampler config: burn_in must be >= 0");
  if (thin < 1) throw DomainError("sampler config: thin must be >= 1");
  if (count < 1) throw DomainError("sampler config: count must be >= 1");
}

RankVector step_target(const RestrictedSpace& space, const RankVector& r, SplitMix64& rng) {
  const auto [c, d] = rng.distinct_pair(space.n());
  RankVector next = r;
  if (swap_feasible(space, next, c, d))
    std::swap(next[static_cast<std::size_t>(c)], next[static_cast<std::size_t>(d)]);
  return next;
}

RankVector step_degree(const RestrictedSpace& space, const RankVector& r, SplitMix64& rng) {
  if (degree(space, r) < 1) throw IsolatedNodeError("step_degree: state has no neighbor");
  RankVector next = r;
  for (;;) {
    const auto [c, d] = rng.distinct_pair(space.n());
    if (swap_feasible(space, next, c, d)) {
      std::swap(next[static_cast<std::size_t>(c)], next[static_cast<std::size_t>(d)]);
      return next;
    }
  }
}

ChainPair step_coupled(const RestrictedSpace& space, const ChainPair& pair, SplitMix64& rng) {
  ChainPair next = pair;
  coupled_step_inplace(space, next.v, next.w, degree(space, pair.w), rng);
  return next;
}

std::vector<RankVector> sample_uniform(const RestrictedSpace& space, const SamplerConfig& config,
                                       SplitMix64& rng) {
  config.validate();
  const RankVector start = space.initial();
  std::vector<RankVector> samples;
  samples.reserve(static_cast<std::size_t>(config.count));

  const int start_degree = degree(space, start);
  if (start_degree == 0) {
    // No feasible transposition from the sole member: the space is a
    // singleton (its transposition graph is connected), so sampling is
    // trivial.
    samples.assign(static_cast<std::size_t>(config.count), start);
    return samples;
  }

  RankVector v = start;
  RankVector w = start;
  int deg_w = start_degree;
  for (std::int64_t t = 0; t < config.burn_in; ++t)
    deg_w = coupled_step_inplace(space, v, w, deg_w, rng).second;
  while (samples.size() < static_cast<std::size_t>(config.count)) {
    for (std::int64_t t = 0; t < config.thin; ++t)
      deg_w = coupled_step_inplace(space, v, w, deg_w, rng).second;
    samples.push_back(v);
  }
  return samples;
}

std::vector<RankVector> sample_uniform(const RestrictedSpace& space, const SamplerConfig& config) {
  SplitMix64 rng(config.seed);
  return sample_uniform(space, config, rng);
}

TransitionMatrix transition_matrix_target(const RestrictedSpace& space, std::size_t limit) {
  TransitionMatrix m;
  m.states = enumerate(space, limit);
  m.dim = m.states.size();
  m.probs.assign(m.dim * m.dim, 0.0);
  const double k = static_cast<double>(space.n()) * (space.n() - 1) / 2.0;
  for (std::size_t u = 0; u < m.dim; ++u) {
    int deg_u = 0;
    for (std::size_t v = 0; v < m.dim; ++v) {
      if (u != v && one_transposition_apart(m.states[u], m.states[v])) {
        m.at(u, v) = 1.0 / k;
        ++deg_u;
      }
    }
    m.at(u, u) = 1.0 - static_cast<double>(deg_u) / k;
  }
  return m;
}

TransitionMatrix transition_matrix_degree(const RestrictedSpace& space, std::size_t limit) {
  TransitionMatrix m;
  m.states = enumerate(space, limit);
  m.dim = m.states.size();
  m.probs.assign(m.dim * m.dim, 0.0);
  for (std::size_t u = 0; u < m.dim; ++u) {
    int deg_u = 0;
    for (std::size_t v = 0; v < m.dim; ++v)
      if (u != v && one_transposition_apart(m.states[u], m.states[v])) ++deg_u;
    if (deg_u == 0)
      throw IsolatedNodeError("transition_matrix_degree: degree-zero state");
    for (std::size_t v = 0; v < m.dim; ++v)
      if (u != v && one_transposition_apart(m.states[u], m.states[v]))
        m.at(u, v) = 1.0 / static_cast<double>(deg_u);
  }
  return m;
}

TransitionMatrix transition_matrix_coupled(const RestrictedSpace& space, std::size_t limit) {
  const TransitionMatrix p = transition_matrix_target(space, limit);
  const TransitionMatrix q = transition_matrix_degree(space, limit);
  const std::size_t m_size = p.dim;

  std::vector<int> deg(m_size, 0);
  for (std::size_t u = 0; u < m_size; ++u) {
    int d = 0;
    for (std::size_t v = 0; v < m_size; ++v)
      if (q.at(u, v) > 0.0) ++d;
    deg[u] = d;
  }

  TransitionMatrix c;
  c.dim = m_size * m_size;
  c.probs.assign(c.dim * c.dim, 0.0);
  for (std::size_t v0 = 0; v0 < m_size; ++v0) {
    for (std::size_t w0 = 0; w0 < m_size; ++w0) {
      const std::size_t row = v0 * m_size + w0;
      for (std::size_t r1 = 0; r1 < m_size; ++r1) {
        const double pv = p.at(v0, r1);
        if (pv == 0.0) continue;
        for (std::size_t r2 = 0; r2 < m_size; ++r2) {
          const double qw = q.at(w0, r2);
          if (qw == 0.0) continue;
          const double prob = pv * qw;
          const double kappa =
              std::min(1.0, static_cast<double>(deg[r1]) / static_cast<double>(deg[r2]));
          c.probs[row * c.dim + (r2 * m_size + r1)] += prob * kappa;
          c.probs[row * c.dim + (r1 * m_size + r2)] += prob * (1.0 - kappa);
        }
      }
    }
  }
  return c;
}

std::vector<double> stationary_distribution(const TransitionMatrix& m) {
  const std::size_t n = m.dim;
  if (n == 0) throw ContractViolation("stationary_distribution: empty matrix");
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);

  constexpr double kTol = 1e-13;
  constexpr int kMaxIters = 2'000'000;
  double residual = 1.0;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      const double weight = pi[u];
      if (weight == 0.0) continue;
      const double* row = &m.probs[u * n];
      for (std::size_t v = 0; v < n; ++v) next[v] += weight * row[v];
    }
    residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) residual = std::max(residual, std::abs(next[v] - pi[v]));
    if (residual < kTol) return pi;
    // Damped update keeps the same fixed vectors but converges for periodic
    // chains as well.
    for (std::size_t v = 0; v < n; ++v) pi[v] = 0.5 * (pi[v] + next[v]);
  }
  throw NumericError("stationary_distribution: no convergence, residual " +
                     std::to_string(residual));
}

}  // namespace rpit
