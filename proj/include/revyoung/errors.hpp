#pragma once

#include <stdexcept>
#include <string>

namespace revyoung {

/// Argument outside the mathematical domain of a function (e.g. S(h) for h <= 0,
/// a matrix power of an indefinite matrix).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A theorem hypothesis or call contract was not met (unordered pair passed to an
/// ordered-pair checker, a > b in a convexity gap, mismatched dimensions).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative numerical routine failed (eigensolver non-convergence, a constructed
/// sample failing its own post-conditions).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace revyoung
