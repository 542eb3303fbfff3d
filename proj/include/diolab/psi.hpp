#ifndef DIOLAB_PSI_HPP
#define DIOLAB_PSI_HPP

#include <optional>
#include <variant>
#include <vector>

#include "diolab/forms.hpp"

namespace diolab {

// coef * t^{-s} (log t)^{eps} past t_star, constant plateau below.
// t_star >= exp(max(1, eps/s)) keeps the tail nonincreasing.  The scalar
// coefficient keeps constant rescaling inside the decidable class; it never
// affects a criterion verdict.
struct PowerLog {
  double s = 1.0;
  double eps = 0.0;
  double t_star = 0.0; // 0 means "compute the default threshold"
  double coef = 1.0;
};

struct ConstantPsi {
  double c = 1.0;
};

// Piecewise linear in t between knots, right-constant past the last knot,
// left-constant before the first.
struct TabulatedPsi {
  std::vector<std::pair<double, double>> knots;
};

using PsiComponent = std::variant<PowerLog, ConstantPsi, TabulatedPsi>;

class Psi {
public:
  explicit Psi(std::vector<PsiComponent> components);

  static Psi power_log(double s, double eps);
  static Psi constant(double c);
  static Psi tabulated(std::vector<std::pair<double, double>> knots);

  int ell() const { return static_cast<int>(components_.size()); }
  const std::vector<PsiComponent>& components() const { return components_; }

  Eigen::VectorXd operator()(double t) const;
  // Single-component evaluation without the vector allocation; hot path for
  // the radial Monte Carlo scans.
  double component_value(int j, double t) const;
  // Pointwise scaling by c > 0.
  Psi scaled(double c) const;

private:
  std::vector<PsiComponent> components_;
};

Eigen::VectorXd eval_psi(const Psi& psi, double t);

// Largest b with b*psi(t) <= psi(a*t), validated on a log grid up to 1e9
// with the analytic tail bound a^{-s} for power-log components; nullopt
// when the ratio infimum collapses to 0 (no regularity certificate).
std::optional<double> regularity_certificate(const Psi& psi, double a);

enum class CriterionFamily { RegularZeroSet, Product, Max };
enum class XiBranch { ZeroShift, NonzeroShift };

struct CriterionVerdict {
  bool convergent = false;
  CriterionFamily family = CriterionFamily::RegularZeroSet;
  XiBranch xi_branch = XiBranch::ZeroShift;
};

// Exact convergence decision for the asymptotic integral criterion over the
// power-log class: the integrand reduces to t^A (log t)^B and the integral
// converges iff A < -1 or (A = -1 and B < -1).
CriterionVerdict asymptotic_criterion(const Form& form, const Psi& psi,
                                      const Eigen::VectorXd& xi,
                                      CriterionFamily family);

// Exact decision for the dyadic series with terms (2^{kC} k^D)^{1-r}.
CriterionVerdict uniform_series_criterion(const Form& form, const Psi& psi,
                                          const Eigen::VectorXd& xi,
                                          double r, CriterionFamily family);

// Exponents of the reduced integrand t^A (log t)^B; exposed for the numeric
// cross-check oracle in the tests.
std::pair<double, double> asymptotic_exponents(const Form& form, const Psi& psi,
                                               const Eigen::VectorXd& xi,
                                               CriterionFamily family);

} // namespace diolab

#endif
