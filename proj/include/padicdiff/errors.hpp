#pragma once

#include <stdexcept>
#include <string>

namespace padicdiff {

/// Argument outside the domain of an operation (mismatched primes, |x| > 1,
/// zero increments, non-permutation generators, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Tracked precision ran out (division by an inexact zero, denominators
/// eating the whole precision budget).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A series or iteration failed to converge at the requested precision.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal data violates an invariant (non-bijective table, broken tower).
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace padicdiff
