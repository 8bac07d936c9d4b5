#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nat {

/// Malformed input: bad table, unknown builtin name, dimension mismatch.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured limit (coset ceiling, tabulation limit, search budget) was hit.
class ResourceLimit : public std::runtime_error {
public:
  ResourceLimit(const std::string& what, std::size_t limit, std::size_t observed)
      : std::runtime_error(what), limit_(limit), observed_(observed) {}

  std::size_t limit() const noexcept { return limit_; }
  std::size_t observed() const noexcept { return observed_; }

private:
  std::size_t limit_;
  std::size_t observed_;
};

/// An operation was applied outside its mathematical domain.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Abelianization or quotient turned out to be infinite.
class InfiniteGroupError : public DomainError {
public:
  using DomainError::DomainError;
};

/// An internal consistency check failed. Always a bug; never swallowed.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace nat
