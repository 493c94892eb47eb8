#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mirrorjac {

namespace detail {
inline std::string tagged(std::string_view op, std::string_view what) {
  std::string msg(op);
  msg += ": ";
  msg += what;
  return msg;
}
}  // namespace detail

// Every error carries the name of the operation that raised it so that the
// CLI can report "<op>: <reason>" without further context.

/// Input values outside the operation's domain (non-finite, non-integer,
/// out-of-range lambda, ...).
class DomainError : public std::domain_error {
 public:
  DomainError(std::string_view op, std::string_view what)
      : std::domain_error(detail::tagged(op, what)), op_(op) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

/// A documented precondition does not hold (non-admissible potential,
/// a_j == 0 where a simple spectrum is required, M too small, ...).
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string_view op, std::string_view what)
      : std::invalid_argument(detail::tagged(op, what)), op_(op) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

/// Two quantities that must be distinct are closer than the degeneracy
/// threshold (mu/nu collision, coincident bridge momenta, zero factor).
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(std::string_view op, std::string_view what)
      : std::runtime_error(detail::tagged(op, what)), op_(op) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

/// An iterative routine failed or produced an internally inconsistent
/// result (root finder, unwrapping, bracketing).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string_view op, std::string_view what)
      : std::runtime_error(detail::tagged(op, what)), op_(op) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

}  // namespace mirrorjac
