#include "rpit/permspace.hpp"

#include <algorithm>
#include <string>

namespace rpit {

namespace {

// Greedy interval scheduling over the raw bounds; shared by the constructor
// and initial_permutation. By a Hall-type argument for interval constraints,
// assigning each rank to the live candidate with the tightest hi succeeds
// exactly when some member exists.
RankVector greedy_member(const std::vector<RankBounds>& bounds) {
  const int n = static_cast<int>(bounds.size());
  RankVector result(static_cast<std::size_t>(n), 0);
  std::vector<bool> assigned(static_cast<std::size_t>(n), false);
  for (int rank = 1; rank <= n; ++rank) {
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (assigned[static_cast<std::size_t>(i)]) continue;
      const RankBounds& b = bounds[static_cast<std::size_t>(i)];
      if (b.lo > rank) continue;
      if (pick < 0 || b.hi < bounds[static_cast<std::size_t>(pick)].hi) pick = i;
    }
    if (pick < 0 || bounds[static_cast<std::size_t>(pick)].hi < rank) {
      throw InfeasibleBoundsError(
          "rank bounds admit no permutation: rank " + std::to_string(rank) +
              " cannot be assigned",
          rank);
    }
    result[static_cast<std::size_t>(pick)] = rank;
    assigned[static_cast<std::size_t>(pick)] = true;
  }
  return result;
}

}  // namespace

bool is_permutation(const RankVector& r) {
  const std::size_t n = r.size();
  std::vector<bool> seen(n, false);
  for (int v : r) {
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v - 1)])
      return false;
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  return true;
}

RestrictedSpace::RestrictedSpace(std::vector<RankBounds> bounds)
    : bounds_(std::move(bounds)) {
  const int nn = static_cast<int>(bounds_.size());
  if (nn == 0) throw ContractViolation("RestrictedSpace: empty bounds");
  for (const RankBounds& b : bounds_) {
    if (b.lo < 1 || b.hi > nn || b.lo > b.hi)
      throw ContractViolation("RestrictedSpace: bound outside [1, n]");
  }
  initial_ = greedy_member(bounds_);
}

bool contains(const RestrictedSpace& space, const RankVector& r) {
  if (static_cast<int>(r.size()) != space.n())
    throw ContractViolation("contains: rank vector length mismatch");
  if (!is_permutation(r)) return false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!space.bound(i).contains(r[i])) return false;
  }
  return true;
}

RankVector initial_permutation(const RestrictedSpace& space) { return space.initial(); }

bool swap_feasible(const RestrictedSpace& space, const RankVector& r, int c, int d) {
  if (c == d) throw ContractViolation("swap_feasible: c == d");
  return space.bound(static_cast<std::size_t>(c)).contains(r[static_cast<std::size_t>(d)]) &&
         space.bound(static_cast<std::size_t>(d)).contains(r[static_cast<std::size_t>(c)]);
}

namespace detail {

int degree_unchecked(const RestrictedSpace& space, const RankVector& r) {
  const int n = space.n();
  int deg = 0;
  for (int c = 0; c < n; ++c) {
    const RankBounds& bc = space.bound(static_cast<std::size_t>(c));
    const int rc = r[static_cast<std::size_t>(c)];
    for (int d = c + 1; d < n; ++d) {
      if (bc.contains(r[static_cast<std::size_t>(d)]) &&
          space.bound(static_cast<std::size_t>(d)).contains(rc))
        ++deg;
    }
  }
  return deg;
}

}  // namespace detail

int degree(const RestrictedSpace& space, const RankVector& r) {
  if (!contains(space, r)) throw ContractViolation("degree: r not in space");
  return detail::degree_unchecked(space, r);
}

std::vector<RankVector> enumerate(const RestrictedSpace& space, std::size_t limit) {
  const int n = space.n();
  std::vector<RankVector> members;
  RankVector current(static_cast<std::size_t>(n), 0);
  std::vector<bool> used(static_cast<std::size_t>(n + 1), false);

  // Depth-first over coordinates with ascending rank choices yields
  // lexicographic order directly.
  auto recurse = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      if (members.size() == limit)
        throw CapacityError("enumerate: space larger than limit " + std::to_string(limit));
      members.push_back(current);
      return;
    }
    const RankBounds& b = space.bound(static_cast<std::size_t>(pos));
    for (int rank = b.lo; rank <= b.hi; ++rank) {
      if (used[static_cast<std::size_t>(rank)]) continue;
      used[static_cast<std::size_t>(rank)] = true;
      current[static_cast<std::size_t>(pos)] = rank;
      self(self, pos + 1);
      used[static_cast<std::size_t>(rank)] = false;
    }
  };
  recurse(recurse, 0);
  return members;
}

}  // namespace rpit
