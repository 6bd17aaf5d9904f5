#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nearvec {

enum class ErrorKind {
  InvalidArgument,   // bad parameters: non-prime p, n = 0, overflow, ...
  DegenerateModulus, // operation undefined for GF(2), where p^n - 1 = 1
  InvalidElement,    // value is not a canonical representative of G
  NonUnit,           // gcd(u, p^n - 1) != 1
  NotInPCoset,       // value is not a power of p modulo p^n - 1
  NotASubgroup,
  LengthMismatch,
  NotIsomorphic,
  Parse,
  BudgetExceeded,
  Internal,          // a counting identity failed; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when an exhaustive computation would exceed its configured budget.
/// `required` carries the amount of work that was requested.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t required,
              std::uint64_t budget)
      : Error(ErrorKind::BudgetExceeded, what),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultVerificationBudget = std::uint64_t{1} << 24;

namespace detail {

inline std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("NEARVEC_BUDGET");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return fallback;
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

/// Enumeration budget (number of suitable sequences), honouring NEARVEC_BUDGET.
inline std::uint64_t enumeration_budget() {
  return detail::budget_from_env(kDefaultEnumerationBudget);
}

/// Verification budget (number of action evaluations), honouring NEARVEC_BUDGET.
inline std::uint64_t verification_budget() {
  return detail::budget_from_env(kDefaultVerificationBudget);
}

}  // namespace nearvec
