#pragma once

// Censored observation types and the admissible rank ranges they induce.
// Each observation of a latent survival time constrains the rank that time
// can take among the full sample; for right- and case-2 interval-censored
// data that constraint is always a contiguous integer interval, so bounds
// are stored as [lo, hi] pairs.

#include <limits>
#include <vector>

#include "rpit/errors.hpp"

namespace rpit {

// One right-censored measurement: observed time plus event indicator
// (event = false means the latent time exceeds `time`).
struct RightObs {
  double time = 0.0;
  bool event = false;
};

enum class IntervalKind { Left, Interval, Right, Exact };

// One case-2 interval-censored measurement. The latent time lies in the
// half-open interval (left, right]; Exact pins it to a point, Right has
// right = +inf.
struct IntervalObs {
  double left = 0.0;
  double right = 0.0;
  IntervalKind kind = IntervalKind::Exact;

  static IntervalObs exact(double x) { return {x, x, IntervalKind::Exact}; }
  static IntervalObs left_censored(double r) { return {0.0, r, IntervalKind::Left}; }
  static IntervalObs interval(double l, double r) { return {l, r, IntervalKind::Interval}; }
  static IntervalObs right_censored(double l) {
    return {l, std::numeric_limits<double>::infinity(), IntervalKind::Right};
  }
};

// Contiguous admissible rank range of one observation, 1-based inclusive.
struct RankBounds {
  int lo = 1;
  int hi = 1;

  bool contains(int rank) const { return lo <= rank && rank <= hi; }
  friend bool operator==(const RankBounds&, const RankBounds&) = default;
};

// Paired censored samples for the two outcomes under test.
struct BivariateRightData {
  std::vector<RightObs> x;
  std::vector<RightObs> y;
};
struct BivariateIntervalData {
  std::vector<IntervalObs> x;
  std::vector<IntervalObs> y;
};

// Fail-fast validation; throws InvalidDatasetError naming the offending
// index. No silent repair.
void validate(const std::vector<RightObs>& obs);
void validate(const std::vector<IntervalObs>& obs);

// Admissible rank range of every observation in a right-censored sample.
// With U = uncensored indices and R = right-censored indices:
//   i in U:  lo = #{j in U : x_j < x_i} + 1
//            hi = #{j in U : x_j <= x_i} + #{j in R : x_j < x_i}
//   i in R:  lo = #{j in U : x_j <= x_i} + 1,  hi = n
// Ranks of tied observations are treated as exchangeable.
std::vector<RankBounds> rank_bounds_right(const std::vector<RightObs>& obs);

// Admissible rank range of every observation in a case-2 interval-censored
// sample, by censoring class (left / interval / right / exact), with the
// convention that an Exact observation has left = right = x. See the .cpp
// for the per-class counting rules.
std::vector<RankBounds> rank_bounds_interval(const std::vector<IntervalObs>& obs);

// View of right-censored data as intervals: event -> Exact(x),
// censored -> (x, inf).
std::vector<IntervalObs> as_intervals(const std::vector<RightObs>& obs);

// Brute-force feasibility check: can strictly increasing latent values be
// placed in the observations' intervals when visited in the order given by
// rank vector `r`? Greedy over rank positions, tracking the infimum of the
// last placed value; exact for datasets whose finite endpoints are pairwise
// distinct. Deliberately independent of rank_bounds_* so it can certify
// them.
bool realizable(const std::vector<IntervalObs>& obs, const std::vector<int>& r);

}  // namespace rpit
