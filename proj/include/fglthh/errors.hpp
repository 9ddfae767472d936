#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fglthh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different generator tables, exterior algebras or flavors.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Adding homogeneous elements of different weights.
class WeightError : public Error {
 public:
  using Error::Error;
};

/// A computation needs coefficients beyond the available truncation bound.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Bad input: non-strict series, unsupported flavor, prime outside the guard, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A rewrite that must be integral (over Z or Z_(p)) was not.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

/// A cochain complex with d∘d ≠ 0, or any other broken identity.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent rational linear system.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// Consistent rational linear system without a unique solution.
class UnderdeterminedError : public Error {
 public:
  UnderdeterminedError(const std::string& what, std::size_t kernel_dim)
      : Error(what), kernel_dimension(kernel_dim) {}
  std::size_t kernel_dimension;
};

}  // namespace fglthh
