#ifndef DIOLAB_ERRORS_HPP
#define DIOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diolab {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotDifferentiable : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnsupportedPsiClass : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidDegrees : std::domain_error {
  using std::domain_error::domain_error;
};

struct ThresholdViolation : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularMatrix : std::domain_error {
  using std::domain_error::domain_error;
};

struct UncertifiedPair : std::domain_error {
  using std::domain_error::domain_error;
};

struct CriterionMismatch : std::domain_error {
  using std::domain_error::domain_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyZeroSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace diolab

#endif
