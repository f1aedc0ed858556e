#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symsum {

// Machine-readable failure codes. The CLI prints the snake_case name on its
// diagnostic stream; the process exit code groups them (budget vs validation).
enum class errc {
  validation,
  not_prime,
  reducible,
  too_large,
  division_by_zero,
  not_additive,
  not_homogeneous,
  budget_exceeded,
  field_mismatch,
  mismatched_d,
  non_rational_result,
  not_stochastic,
  zero_vector,
  bad_multiset,
  bad_prime,
  already_balanced,
  not_found,
  unsupported_field,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::validation: return "validation";
    case errc::not_prime: return "not_prime";
    case errc::reducible: return "reducible";
    case errc::too_large: return "too_large";
    case errc::division_by_zero: return "division_by_zero";
    case errc::not_additive: return "not_additive";
    case errc::not_homogeneous: return "not_homogeneous";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::field_mismatch: return "field_mismatch";
    case errc::mismatched_d: return "mismatched_d";
    case errc::non_rational_result: return "non_rational_result";
    case errc::not_stochastic: return "not_stochastic";
    case errc::zero_vector: return "zero_vector";
    case errc::bad_multiset: return "bad_multiset";
    case errc::bad_prime: return "bad_prime";
    case errc::already_balanced: return "already_balanced";
    case errc::not_found: return "not_found";
    case errc::unsupported_field: return "unsupported_field";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Work guard tripped before an enumeration whose size exceeds the caller's
// budget. `required` is the point count the computation would have needed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(unsigned long long required, unsigned long long budget)
      : Error(errc::budget_exceeded,
              "computation requires " + std::to_string(required) +
                  " points, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}
  unsigned long long required_points() const noexcept { return required_; }
  unsigned long long budget() const noexcept { return budget_; }

 private:
  unsigned long long required_;
  unsigned long long budget_;
};

}  // namespace symsum
