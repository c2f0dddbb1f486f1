#pragma once
#include <stdexcept>
#include <string>

namespace henselkit {

// Every failure carries a stable code so front ends can map outcomes to exit
// codes without matching on prose.
class error : public std::runtime_error {
public:
  error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

#define HENSELKIT_DEFINE_ERROR(cls, code_str)                     \
  class cls : public error {                                       \
  public:                                                          \
    explicit cls(const std::string& what) : error(code_str, what) {} \
  }

HENSELKIT_DEFINE_ERROR(field_mismatch, "field-mismatch");
HENSELKIT_DEFINE_ERROR(zero_series, "zero-series");
HENSELKIT_DEFINE_ERROR(insufficient_precision, "insufficient-precision");
HENSELKIT_DEFINE_ERROR(not_a_multiple, "not-a-multiple");
HENSELKIT_DEFINE_ERROR(precision_too_low, "precision-too-low");
HENSELKIT_DEFINE_ERROR(dimension_mismatch, "dimension-mismatch");
HENSELKIT_DEFINE_ERROR(not_smooth_enough, "not-smooth-enough");
HENSELKIT_DEFINE_ERROR(precision_exhausted, "precision-exhausted");
HENSELKIT_DEFINE_ERROR(empty_decomposition, "empty-decomposition");
HENSELKIT_DEFINE_ERROR(search_budget_exceeded, "search-budget-exceeded");
HENSELKIT_DEFINE_ERROR(budget_exceeded, "budget-exceeded");
HENSELKIT_DEFINE_ERROR(trivial_extension, "trivial-extension");
HENSELKIT_DEFINE_ERROR(precondition_violated, "precondition-violated");
HENSELKIT_DEFINE_ERROR(duplicate_coefficient_class, "duplicate-coefficient-class");
HENSELKIT_DEFINE_ERROR(infeasible, "infeasible");
HENSELKIT_DEFINE_ERROR(refused_non_member, "refused-non-member");
HENSELKIT_DEFINE_ERROR(parse_error, "parse-error");

#undef HENSELKIT_DEFINE_ERROR

} // namespace henselkit
