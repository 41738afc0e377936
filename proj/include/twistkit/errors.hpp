#pragma once

#include <stdexcept>
#include <string>

namespace twistkit {

/// Raised when operands do not fit together: order mismatch between series,
/// tensor arity mismatch, elements built over different Lie algebras, ...
class StructuralError : public std::logic_error {
public:
  explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

/// Raised when an operation's mathematical precondition fails (a head
/// coefficient is not invertible, a twist is not counital, ...).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace twistkit
