#include "diolab/psi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diolab/errors.hpp"

namespace diolab {
namespace {

double eval_component(const PsiComponent& c, double t) {
  if (const auto* pl = std::get_if<PowerLog>(&c)) {
    double tt = std::max(t, pl->t_star);
    if (pl->eps == 0.0) return pl->coef * std::pow(tt, -pl->s);
    return pl->coef * std::pow(tt, -pl->s) * std::pow(std::log(tt), pl->eps);
  }
  if (const auto* cc = std::get_if<ConstantPsi>(&c)) return cc->c;
  const auto& knots = std::get<TabulatedPsi>(c).knots;
  if (t <= knots.front().first) return knots.front().second;
  if (t >= knots.back().first) return knots.back().second;
  auto it = std::upper_bound(knots.begin(), knots.end(), t,
                             [](double v, const auto& kn) { return v < kn.first; });
  const auto& [t1, v1] = *it;
  const auto& [t0, v0] = *(it - 1);
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

// (s, eps) exponents of a power-log/constant component; throws for tabulated.
std::pair<double, double> power_log_exponents(const PsiComponent& c) {
  if (const auto* pl = std::get_if<PowerLog>(&c)) return {pl->s, pl->eps};
  if (std::holds_alternative<ConstantPsi>(c)) return {0.0, 0.0};
  throw UnsupportedPsiClass("criterion decisions require power-log or constant psi");
}

bool xi_is_zero(const Eigen::VectorXd& xi) {
  for (int i = 0; i < xi.size(); ++i)
    if (xi[i] != 0.0) return false;
  return true;
}

// Validates family/form/psi/xi compatibility and returns the reduced-form
// ingredients shared by both criteria.
struct CriterionInputs {
  int n;
  bool xi_zero;
  std::vector<std::pair<double, double>> se; // (s_j, eps_j) per component
  double d = 0.0;                            // RegularZeroSet only
  double omega = 0.0;                        // Product only
  int p = 0;                                 // Max only
  double z = 0.0;                            // Max only
};

CriterionInputs prepare(const Form& form, const Psi& psi, const Eigen::VectorXd& xi,
                        CriterionFamily family) {
  if (psi.ell() != form.ell())
    throw DimensionMismatch("psi component count must match form output dimension");
  if (xi.size() != form.ell())
    throw DimensionMismatch("shift dimension must match form output dimension");

  CriterionInputs in;
  in.n = form.n();
  in.xi_zero = xi_is_zero(xi);
  for (const auto& c : psi.components()) in.se.push_back(power_log_exponents(c));

  switch (family) {
    case CriterionFamily::RegularZeroSet:
      in.d = form.total_degree();
      break;
    case CriterionFamily::Product: {
      if (form.ell() != 1 ||
          !std::holds_alternative<CoordinateProduct>(form.components()[0]))
        throw InvalidSpec("product family requires a scalar coordinate-product form");
      in.omega = std::get<CoordinateProduct>(form.components()[0]).omega;
      if (xi[0] < 0.0) throw InvalidSpec("product family requires xi >= 0");
      break;
    }
    case CriterionFamily::Max: {
      if (form.ell() != 1 ||
          !std::holds_alternative<CoordinateMax>(form.components()[0]))
        throw InvalidSpec("max family requires a scalar coordinate-max form");
      in.p = std::get<CoordinateMax>(form.components()[0]).p;
      in.z = form.max_criterion_exponent();
      if (xi[0] < 0.0) throw InvalidSpec("max family requires xi >= 0");
      break;
    }
  }
  return in;
}

} // namespace

Psi::Psi(std::vector<PsiComponent> components) : components_(std::move(components)) {
  if (components_.empty()) throw InvalidSpec("psi needs at least one component");
  for (auto& c : components_) {
    if (auto* pl = std::get_if<PowerLog>(&c)) {
      if (pl->s <= 0.0) throw InvalidSpec("power-log psi requires s > 0");
      if (pl->coef <= 0.0) throw InvalidSpec("power-log psi requires a positive coefficient");
      double floor = std::exp(std::max(1.0, pl->eps / pl->s));
      if (pl->t_star <= 0.0) pl->t_star = floor;
      else if (pl->t_star < floor - 1e-12)
        throw InvalidSpec("power-log threshold too small for a nonincreasing tail");
    } else if (const auto* cc = std::get_if<ConstantPsi>(&c)) {
      if (cc->c <= 0.0) throw InvalidSpec("constant psi requires c > 0");
    } else {
      const auto& knots = std::get<TabulatedPsi>(c).knots;
      if (knots.empty()) throw InvalidSpec("tabulated psi needs at least one knot");
      for (std::size_t i = 0; i < knots.size(); ++i) {
        if (knots[i].second <= 0.0) throw InvalidSpec("tabulated psi values must be positive");
        if (i > 0 && knots[i].first <= knots[i - 1].first)
          throw InvalidSpec("tabulated psi knots must be strictly increasing in t");
        if (i > 0 && knots[i].second > knots[i - 1].second)
          throw InvalidSpec("tabulated psi must be nonincreasing");
      }
    }
  }
}

Psi Psi::power_log(double s, double eps) {
  return Psi({PowerLog{s, eps, 0.0}});
}

Psi Psi::constant(double c) { return Psi({ConstantPsi{c}}); }

Psi Psi::tabulated(std::vector<std::pair<double, double>> knots) {
  return Psi({TabulatedPsi{std::move(knots)}});
}

Eigen::VectorXd Psi::operator()(double t) const {
  if (t < 0.0) throw InvalidSpec("psi is defined on t >= 0");
  Eigen::VectorXd out(ell());
  for (int j = 0; j < ell(); ++j) out[j] = eval_component(components_[j], t);
  return out;
}

double Psi::component_value(int j, double t) const {
  return eval_component(components_[static_cast<std::size_t>(j)], t);
}

Psi Psi::scaled(double c) const {
  if (c <= 0.0) throw InvalidSpec("psi scale must be positive");
  std::vector<PsiComponent> scaled;
  for (const auto& comp : components_) {
    if (const auto* pl = std::get_if<PowerLog>(&comp)) {
      PowerLog s = *pl;
      s.coef *= c;
      scaled.emplace_back(s);
    } else if (const auto* cc = std::get_if<ConstantPsi>(&comp)) {
      scaled.emplace_back(ConstantPsi{c * cc->c});
    } else {
      auto knots = std::get<TabulatedPsi>(comp).knots;
      for (auto& kn : knots) kn.second *= c;
      scaled.emplace_back(TabulatedPsi{std::move(knots)});
    }
  }
  return Psi(std::move(scaled));
}

Eigen::VectorXd eval_psi(const Psi& psi, double t) { return psi(t); }

std::optional<double> regularity_certificate(const Psi& psi, double a) {
  if (a <= 1.0) throw InvalidSpec("regularity certificate requires a > 1");
  double b = std::numeric_limits<double>::infinity();
  for (const auto& c : psi.components()) {
    double comp_b = std::numeric_limits<double>::infinity();
    if (const auto* pl = std::get_if<PowerLog>(&c)) {
      // Tail ratio psi(at)/psi(t) = a^{-s} (1 + log a / log t)^{eps}; for
      // eps >= 0 this decreases to a^{-s}, so the tail infimum is analytic.
      // For eps < 0 the infimum sits at small t and the grid below finds it.
      if (pl->eps >= 0.0) comp_b = std::pow(a, -pl->s);
    }
    const int grid = 4000;
    for (int i = 0; i <= grid; ++i) {
      double t = std::pow(10.0, 9.0 * i / grid);
      double ratio = eval_component(c, a * t) / eval_component(c, t);
      comp_b = std::min(comp_b, ratio);
    }
    if (comp_b < 1e-12) return std::nullopt;
    b = std::min(b, comp_b);
  }
  return b;
}

std::pair<double, double> asymptotic_exponents(const Form& form, const Psi& psi,
                                               const Eigen::VectorXd& xi,
                                               CriterionFamily family) {
  CriterionInputs in = prepare(form, psi, xi, family);
  double A = 0.0, B = 0.0;
  switch (family) {
    case CriterionFamily::RegularZeroSet: {
      // t^{n-(d+1)} prod_j psi_j(t)
      A = in.n - in.d - 1.0;
      for (auto [s, e] : in.se) {
        A -= s;
        B += e;
      }
      break;
    }
    case CriterionFamily::Product: {
      auto [s, e] = in.se[0];
      if (in.xi_zero) {
        A = -1.0 - s / in.omega;
        B = e / in.omega + (in.n - 2);
      } else {
        A = -1.0 - s;
        B = e + (in.n - 2);
      }
      break;
    }
    case CriterionFamily::Max: {
      auto [s, e] = in.se[0];
      if (in.xi_zero) {
        A = in.n - in.p - 1.0 - s * in.z;
        B = e * in.z;
      } else {
        A = in.n - in.p - 1.0 - s;
        B = e;
      }
      break;
    }
  }
  return {A, B};
}

CriterionVerdict asymptotic_criterion(const Form& form, const Psi& psi,
                                      const Eigen::VectorXd& xi,
                                      CriterionFamily family) {
  auto [A, B] = asymptotic_exponents(form, psi, xi, family);
  CriterionVerdict v;
  v.family = family;
  v.xi_branch = xi_is_zero(xi) ? XiBranch::ZeroShift : XiBranch::NonzeroShift;
  v.convergent = (A < -1.0) || (A == -1.0 && B < -1.0);
  return v;
}

CriterionVerdict uniform_series_criterion(const Form& form, const Psi& psi,
                                          const Eigen::VectorXd& xi,
                                          double r, CriterionFamily family) {
  if (r <= 1.0) throw InvalidSpec("series criterion requires r > 1");
  CriterionInputs in = prepare(form, psi, xi, family);
  if (family == CriterionFamily::RegularZeroSet && in.d >= in.n)
    throw InvalidDegrees("series criterion for the regular family requires d < n");

  // k-th term (2^{kC} k^D)^{1-r}
  double C = 0.0, D = 0.0;
  switch (family) {
    case CriterionFamily::RegularZeroSet: {
      C = in.n - in.d;
      for (auto [s, e] : in.se) {
        C -= s;
        D += e;
      }
      break;
    }
    case CriterionFamily::Product: {
      auto [s, e] = in.se[0];
      if (in.xi_zero) {
        C = -s / in.omega;
        D = in.n - 1.0 + e / in.omega;
      } else {
        C = -s;
        D = in.n - 1.0 + e;
      }
      break;
    }
    case CriterionFamily::Max: {
      auto [s, e] = in.se[0];
      if (in.xi_zero) {
        C = in.n - in.p - s * in.z;
        D = e * in.z;
      } else {
        C = in.n - in.p - s;
        D = e;
      }
      break;
    }
  }

  CriterionVerdict v;
  v.family = family;
  v.xi_branch = in.xi_zero ? XiBranch::ZeroShift : XiBranch::NonzeroShift;
  v.convergent = (C * (1.0 - r) < 0.0) || (C == 0.0 && D * (1.0 - r) < -1.0);
  return v;
}

} // namespace diolab
