#pragma once

#include <stdexcept>
#include <string>

namespace rpit {

// Base class for all recoverable rpit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unusable input data (bad CSV row, violated observation
// invariants, empty dataset).
class InvalidDatasetError : public Error {
public:
  using Error::Error;
};

// Rank bounds that admit no permutation. Carries the first rank the greedy
// assignment could not place.
class InfeasibleBoundsError : public Error {
public:
  InfeasibleBoundsError(const std::string& what, int rank)
      : Error(what), rank_(rank) {}
  int rank() const { return rank_; }

private:
  int rank_;
};

// Invalid parameter value (tau out of range, non-positive budget, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

// Enumeration would exceed the caller-supplied capacity.
class CapacityError : public Error {
public:
  using Error::Error;
};

// Degree-proportional walk started from a degree-zero node.
class IsolatedNodeError : public Error {
public:
  using Error::Error;
};

// Numeric procedure failed (power iteration did not converge, degenerate
// permutation null, ...).
class NumericError : public Error {
public:
  using Error::Error;
};

// Broken caller contract (mismatched lengths, non-permutation rank vector).
// Signals a programming error rather than bad data.
class ContractViolation : public std::logic_error {
public:
  explicit ContractViolation(const std::string& what)
      : std::logic_error(what) {}
};

}  // namespace rpit
