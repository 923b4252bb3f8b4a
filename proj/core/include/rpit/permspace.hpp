#pragma once

// The restricted permutation space S induced by per-observation rank bounds,
// together with its transposition graph G = (S, E): two members are adjacent
// when one transposition of two coordinates turns one into the other. The
// graph is never materialized; membership, swap feasibility and degree are
// all answered from the bounds, and full enumeration is reserved for small
// spaces used by exact verification.

#include <cstddef>
#include <vector>

#include "rpit/censoring.hpp"
#include "rpit/errors.hpp"

namespace rpit {

// A candidate ranking: permutation of {1, ..., n} stored 1-based.
using RankVector = std::vector<int>;

bool is_permutation(const RankVector& r);

class RestrictedSpace {
public:
  // Validates the bounds and certifies non-emptiness by constructing the
  // greedy member; throws InfeasibleBoundsError when no permutation fits.
  explicit RestrictedSpace(std::vector<RankBounds> bounds);

  int n() const { return static_cast<int>(bounds_.size()); }
  const std::vector<RankBounds>& bounds() const { return bounds_; }
  const RankBounds& bound(std::size_t i) const { return bounds_[i]; }
  // Greedy feasible member computed at construction.
  const RankVector& initial() const { return initial_; }

private:
  std::vector<RankBounds> bounds_;
  RankVector initial_;
};

// True iff r is a permutation of 1..n with every coordinate inside its
// bound.
bool contains(const RestrictedSpace& space, const RankVector& r);

// Deterministic feasible member: ranks 1..n are assigned in increasing
// order, each to the unassigned observation with lo_i <= rank whose hi_i is
// smallest (ties broken by smallest index). Succeeds iff the space is
// nonempty.
RankVector initial_permutation(const RestrictedSpace& space);

// True iff swapping coordinates c and d of r (0-based indices) stays inside
// the space; only the two touched coordinates need checking.
bool swap_feasible(const RestrictedSpace& space, const RankVector& r, int c, int d);

// Number of feasible transpositions from r = degree of r in the
// transposition graph. O(n^2).
int degree(const RestrictedSpace& space, const RankVector& r);

// All members of the space in lexicographic order. Throws CapacityError as
// soon as more than `limit` members exist. Intended for small spaces.
std::vector<RankVector> enumerate(const RestrictedSpace& space, std::size_t limit);

namespace detail {
// degree() without the membership contract check, for sampler inner loops
// that maintain the membership invariant themselves.
int degree_unchecked(const RestrictedSpace& space, const RankVector& r);
}  // namespace detail

}  // namespace rpit
