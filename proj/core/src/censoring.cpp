#include "rpit/censoring.hpp"

#include <cmath>
#include <string>

namespace rpit {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

[[noreturn]] void bad_obs(std::size_t index, const std::string& reason) {
  throw InvalidDatasetError("observation " + std::to_string(index + 1) + ": " + reason);
}

}  // namespace

void validate(const std::vector<RightObs>& obs) {
  if (obs.empty()) throw InvalidDatasetError("empty dataset");
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (!finite_nonneg(obs[i].time)) bad_obs(i, "time must be finite and >= 0");
  }
}

void validate(const std::vector<IntervalObs>& obs) {
  if (obs.empty()) throw InvalidDatasetError("empty dataset");
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const IntervalObs& o = obs[i];
    switch (o.kind) {
      case IntervalKind::Exact:
        if (!finite_nonneg(o.left) || o.left != o.right)
          bad_obs(i, "exact observation requires finite left == right >= 0");
        break;
      case IntervalKind::Left:
        if (o.left != 0.0 || !std::isfinite(o.right) || o.right <= 0.0)
          bad_obs(i, "left-censored interval must be (0, r] with finite r > 0");
        break;
      case IntervalKind::Interval:
        if (!(o.left > 0.0) || !std::isfinite(o.left) || !std::isfinite(o.right) ||
            !(o.left < o.right))
          bad_obs(i, "interval censoring requires 0 < left < right < inf");
        break;
      case IntervalKind::Right:
        if (!finite_nonneg(o.left) || !std::isinf(o.right) || o.right < 0.0)
          bad_obs(i, "right-censored interval must be (l, inf) with finite l >= 0");
        break;
    }
  }
}

std::vector<RankBounds> rank_bounds_right(const std::vector<RightObs>& obs) {
  validate(obs);
  const std::size_t n = obs.size();
  std::vector<RankBounds> bounds(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = obs[i].time;
    int unc_below = 0;   // uncensored with x_j <  x_i
    int unc_below_eq = 0;  // uncensored with x_j <= x_i
    int cens_below = 0;  // right-censored with x_j < x_i
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = obs[j].time;
      if (obs[j].event) {
        if (xj < xi) ++unc_below;
        if (xj <= xi) ++unc_below_eq;
      } else if (xj < xi) {
        ++cens_below;
      }
    }
    if (obs[i].event) {
      bounds[i] = {unc_below + 1, unc_below_eq + cens_below};
    } else {
      bounds[i] = {unc_below_eq + 1, static_cast<int>(n)};
    }
  }
  return bounds;
}

std::vector<RankBounds> rank_bounds_interval(const std::vector<IntervalObs>& obs) {
  validate(obs);
  const std::size_t n = obs.size();

  // Counting rules per censoring class of observation i, with L_j = R_j = x_j
  // for exact observations:
  //   left:     lo = 1
  //             hi = #left + #{right: L_j < R_i} + #{exact: L_j < R_i}
  //                  + #{interval: L_j <= R_i}
  //   interval: lo = #{j not right: R_j <= L_i} + 1
  //             hi = #left + #{right or interval: L_j < R_i} + #{exact: L_j <= R_i}
  //   right:    lo = #{j not right: R_j <= L_i} + 1,  hi = n
  //   exact:    lo = #{j not right: R_j < L_i} + 1
  //             hi = #left + #{right or interval: L_j < R_i} + #{exact: L_j <= R_i}
  int n_left = 0;
  for (const IntervalObs& o : obs)
    if (o.kind == IntervalKind::Left) ++n_left;

  std::vector<RankBounds> bounds(n);
  for (std::size_t i = 0; i < n; ++i) {
    const IntervalObs& oi = obs[i];
    int lo = 1;
    int hi = static_cast<int>(n);

    if (oi.kind != IntervalKind::Left) {
      int below = 0;
      for (const IntervalObs& oj : obs) {
        if (oj.kind == IntervalKind::Right) continue;
        if (oi.kind == IntervalKind::Exact ? (oj.right < oi.left) : (oj.right <= oi.left))
          ++below;
      }
      lo = below + 1;
    }

    if (oi.kind != IntervalKind::Right) {
      int hi_count = n_left;
      for (const IntervalObs& oj : obs) {
        switch (oj.kind) {
          case IntervalKind::Left:
            break;  // already counted
          case IntervalKind::Right:
            if (oj.left < oi.right) ++hi_count;
            break;
          case IntervalKind::Interval:
            if (oi.kind == IntervalKind::Left ? (oj.left <= oi.right)
                                              : (oj.left < oi.right))
              ++hi_count;
            break;
          case IntervalKind::Exact:
            if (oi.kind == IntervalKind::Left ? (oj.left < oi.right)
                                              : (oj.left <= oi.right))
              ++hi_count;
            break;
        }
      }
      hi = hi_count;
    }

    bounds[i] = {lo, hi};
  }
  return bounds;
}

std::vector<IntervalObs> as_intervals(const std::vector<RightObs>& obs) {
  std::vector<IntervalObs> out;
  out.reserve(obs.size());
  for (const RightObs& o : obs) {
    out.push_back(o.event ? IntervalObs::exact(o.time)
                          : IntervalObs::right_censored(o.time));
  }
  return out;
}

bool realizable(const std::vector<IntervalObs>& obs, const std::vector<int>& r) {
  const std::size_t n = obs.size();
  if (r.size() != n) throw ContractViolation("realizable: rank vector length mismatch");
  std::vector<std::size_t> order(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const int rank = r[i];
    if (rank < 1 || static_cast<std::size_t>(rank) > n || order[static_cast<std::size_t>(rank - 1)] != n)
      throw ContractViolation("realizable: r is not a permutation of 1..n");
    order[static_cast<std::size_t>(rank - 1)] = i;
  }

  // Walk the observations in rank order, carrying the infimum of the last
  // placed value. Non-exact intervals are open at the left, so a value can
  // always be chosen arbitrarily close to (but above) the carried infimum;
  // minimizing each value greedily is therefore exact. Whether the infimum
  // itself was attained (exact predecessor) or not (interval predecessor)
  // leads to the same feasibility comparisons.
  double inf_value = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const IntervalObs& o = obs[order[k]];
    if (o.kind == IntervalKind::Exact) {
      if (!(o.left > inf_value)) return false;
      inf_value = o.left;
    } else {
      const double low = std::max(inf_value, o.left);
      if (!(low < o.right)) return false;
      inf_value = low;
    }
  }
  return true;
}

}  // namespace rpit
