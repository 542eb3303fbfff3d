#include "diolab/forms.hpp"

#include <cmath>

#include "diolab/errors.hpp"
#include "diolab/rng.hpp"

namespace diolab {
namespace {

double pow_abs(double x, double e) { return std::pow(std::fabs(x), e); }

Eigen::VectorXd random_unit(CounterRng& rng, int n) {
  Eigen::VectorXd u(n);
  double nrm = 0.0;
  while (nrm < 1e-12) {
    for (int i = 0; i < n; ++i) u[i] = rng.next_gaussian();
    nrm = u.norm();
  }
  return u / nrm;
}

} // namespace

Form::Form(int n, std::vector<FormComponent> components)
    : n_(n), components_(std::move(components)) {
  if (n_ < 2) throw InvalidSpec("form dimension must be >= 2");
  if (components_.empty()) throw InvalidSpec("form needs at least one component");
  for (const auto& c : components_) {
    if (const auto* gq = std::get_if<GeneralizedQuadratic>(&c)) {
      if (gq->p < 1 || gq->q < 1 || gq->p + gq->q != n_)
        throw InvalidSpec("generalized quadratic requires p >= 1, q >= 1, p + q = n");
      if (gq->beta <= 0.0) throw InvalidSpec("generalized quadratic requires beta > 0");
    } else if (const auto* cp = std::get_if<CoordinateProduct>(&c)) {
      if (cp->omega <= 0.0) throw InvalidSpec("coordinate product requires omega > 0");
    } else if (const auto* cm = std::get_if<CoordinateMax>(&c)) {
      if (cm->p < 1 || cm->p > n_ - 1)
        throw InvalidSpec("coordinate max requires 1 <= p <= n-1");
      if (static_cast<int>(cm->z.size()) != cm->p)
        throw InvalidSpec("coordinate max exponent vector must have length p");
      for (double zi : cm->z)
        if (zi <= 0.0) throw InvalidSpec("coordinate max exponents must be positive");
    } else if (const auto* lin = std::get_if<LinearComponent>(&c)) {
      if (lin->coeffs.size() != n_)
        throw InvalidSpec("linear component coefficient vector must have length n");
    }
  }
}

double Form::eval_component(int j, const Eigen::VectorXd& x) const {
  const FormComponent& c = components_[j];
  if (const auto* gq = std::get_if<GeneralizedQuadratic>(&c)) {
    double acc = 0.0;
    for (int i = 0; i < gq->p; ++i) acc += pow_abs(x[i], gq->beta);
    for (int i = gq->p; i < n_; ++i) acc -= pow_abs(x[i], gq->beta);
    return acc;
  }
  if (const auto* cp = std::get_if<CoordinateProduct>(&c)) {
    double prod = 1.0;
    for (int i = 0; i < n_; ++i) prod *= std::fabs(x[i]);
    return std::pow(prod, cp->omega);
  }
  if (std::holds_alternative<SignedProduct>(c)) {
    double prod = 1.0;
    for (int i = 0; i < n_; ++i) prod *= x[i];
    return prod;
  }
  if (const auto* cm = std::get_if<CoordinateMax>(&c)) {
    double best = 0.0;
    for (int i = 0; i < cm->p; ++i) best = std::max(best, pow_abs(x[i], cm->z[i]));
    return best;
  }
  return std::get<LinearComponent>(c).coeffs.dot(x);
}

Eigen::VectorXd Form::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw DimensionMismatch("point dimension does not match form");
  Eigen::VectorXd out(ell());
  for (int j = 0; j < ell(); ++j) out[j] = eval_component(j, x);
  return out;
}

Eigen::VectorXd Form::evaluate_shifted(const Eigen::VectorXd& xi,
                                       const Eigen::VectorXd& x) const {
  if (xi.size() != ell()) throw DimensionMismatch("shift dimension does not match form");
  return evaluate(x) - xi;
}

Eigen::MatrixXd Form::jacobian(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw DimensionMismatch("point dimension does not match form");
  Eigen::MatrixXd jac(ell(), n_);
  for (int j = 0; j < ell(); ++j) {
    const FormComponent& c = components_[j];
    if (const auto* gq = std::get_if<GeneralizedQuadratic>(&c)) {
      if (gq->beta <= 1.0)
        throw NotDifferentiable("generalized quadratic with beta <= 1 is not C^1");
      if (gq->beta < 2.0)
        for (int i = 0; i < n_; ++i)
          if (x[i] == 0.0)
            throw NotDifferentiable("generalized quadratic with beta < 2 at a zero coordinate");
      for (int i = 0; i < n_; ++i) {
        double sgn = (i < gq->p) ? 1.0 : -1.0;
        double d = (x[i] == 0.0) ? 0.0
                                 : gq->beta * pow_abs(x[i], gq->beta - 1.0) *
                                       (x[i] > 0 ? 1.0 : -1.0);
        jac(j, i) = sgn * d;
      }
    } else if (const auto* cp = std::get_if<CoordinateProduct>(&c)) {
      bool has_zero = false;
      for (int i = 0; i < n_; ++i) has_zero |= (x[i] == 0.0);
      if (has_zero) {
        if (cp->omega <= 1.0)
          throw NotDifferentiable("coordinate product with omega <= 1 on a coordinate hyperplane");
        jac.row(j).setZero();
      } else {
        double f = eval_component(j, x);
        for (int i = 0; i < n_; ++i) jac(j, i) = cp->omega * f / x[i];
      }
    } else if (std::holds_alternative<SignedProduct>(c)) {
      jac.row(j) = signed_branch_gradient(j, x);
    } else if (std::holds_alternative<CoordinateMax>(c)) {
      throw NotDifferentiable("coordinate max is non-smooth by construction");
    } else {
      jac.row(j) = std::get<LinearComponent>(c).coeffs.transpose();
    }
  }
  return jac;
}

std::optional<double> Form::degree(int j) const {
  const FormComponent& c = components_[j];
  if (const auto* gq = std::get_if<GeneralizedQuadratic>(&c)) return gq->beta;
  if (const auto* cp = std::get_if<CoordinateProduct>(&c)) return n_ * cp->omega;
  if (std::holds_alternative<SignedProduct>(c)) return static_cast<double>(n_);
  if (std::holds_alternative<CoordinateMax>(c)) return std::nullopt;
  return 1.0;
}

double Form::total_degree() const {
  double d = 0.0;
  for (int j = 0; j < ell(); ++j) {
    auto dj = degree(j);
    if (!dj) throw InvalidDegrees("coordinate max carries no degree; use the criterion exponent");
    d += *dj;
  }
  return d;
}

double Form::max_criterion_exponent() const {
  if (ell() != 1) throw InvalidSpec("criterion exponent is defined for scalar max forms");
  const auto* cm = std::get_if<CoordinateMax>(&components_[0]);
  if (!cm) throw InvalidSpec("criterion exponent is defined for coordinate max forms");
  double z = 0.0;
  for (double zi : cm->z) z += 1.0 / zi;
  return z;
}

double Form::eval_signed_branch(int j, const Eigen::VectorXd& x) const {
  if (std::holds_alternative<CoordinateProduct>(components_[j])) {
    double prod = 1.0;
    for (int i = 0; i < n_; ++i) prod *= x[i];
    return prod;
  }
  return eval_component(j, x);
}

Eigen::RowVectorXd Form::signed_branch_gradient(int j, const Eigen::VectorXd& x) const {
  const FormComponent& c = components_[j];
  Eigen::RowVectorXd g(n_);
  if (std::holds_alternative<CoordinateProduct>(c) ||
      std::holds_alternative<SignedProduct>(c)) {
    for (int i = 0; i < n_; ++i) {
      double prod = 1.0;
      for (int k = 0; k < n_; ++k)
        if (k != i) prod *= x[k];
      g[i] = prod;
    }
    return g;
  }
  if (const auto* gq = std::get_if<GeneralizedQuadratic>(&c)) {
    for (int i = 0; i < n_; ++i) {
      double sgn = (i < gq->p) ? 1.0 : -1.0;
      double d = (x[i] == 0.0) ? 0.0
                               : gq->beta * pow_abs(x[i], gq->beta - 1.0) *
                                     (x[i] > 0 ? 1.0 : -1.0);
      g[i] = sgn * d;
    }
    return g;
  }
  if (const auto* lin = std::get_if<LinearComponent>(&c)) return lin->coeffs.transpose();
  throw NotDifferentiable("no smooth branch for this component");
}

// Regularity sampling: locate zeros of the smooth signed branch on the unit
// sphere, then random-walk along the zero set looking for Jacobian rank
// drops.  The sampler is not guaranteed complete; the budget is `samples`
// independent starts.
struct RegularitySampler {
  const Form& form;
  CounterRng rng;
  double tol;
  double scale = 1.0; // largest Jacobian singular value seen on the zero set

  Eigen::VectorXd f_signed(const Eigen::VectorXd& x) const {
    Eigen::VectorXd v(form.ell());
    for (int j = 0; j < form.ell(); ++j) v[j] = form.eval_signed_branch(j, x);
    return v;
  }

  Eigen::MatrixXd jac_signed(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd jac(form.ell(), form.n());
    for (int j = 0; j < form.ell(); ++j) jac.row(j) = form.signed_branch_gradient(j, x);
    return jac;
  }

  double sigma_max(const Eigen::VectorXd& x) const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac_signed(x));
    return svd.singularValues()(0);
  }

  // Smallest singular value against the global scale: a rank drop for vector
  // forms, a vanishing gradient for scalar ones (where min = max locally).
  double sigma_ratio(const Eigen::VectorXd& x) const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac_signed(x));
    return svd.singularValues()(svd.singularValues().size() - 1) / scale;
  }

  // Newton correction toward {f_signed = 0} on the sphere.
  bool project_to_zero_set(Eigen::VectorXd& x) const {
    for (int it = 0; it < 40; ++it) {
      Eigen::VectorXd fv = f_signed(x);
      if (fv.lpNorm<Eigen::Infinity>() < 1e-12) return true;
      Eigen::MatrixXd jac = jac_signed(x);
      Eigen::VectorXd step =
          jac.completeOrthogonalDecomposition().solve(fv);
      step -= step.dot(x) * x; // stay tangent to the sphere
      double scale = 1.0;
      if (step.norm() > 0.5) scale = 0.5 / step.norm();
      x = (x - scale * step).normalized();
    }
    return f_signed(x).lpNorm<Eigen::Infinity>() < 1e-10;
  }

  // Scalar case: bisect the great-circle arc between points of opposite sign.
  Eigen::VectorXd bisect_geodesic(Eigen::VectorXd a, Eigen::VectorXd b) const {
    double fa = f_signed(a)(0);
    for (int it = 0; it < 200; ++it) {
      Eigen::VectorXd mid = (a + b).normalized();
      double fm = f_signed(mid)(0);
      if (std::fabs(fm) < 1e-14 || (a - b).norm() < 1e-15) return mid;
      if ((fm > 0) == (fa > 0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    return (a + b).normalized();
  }

  // Random tangent direction within the zero set at x (null space of the
  // Jacobian stacked with x^T).
  std::optional<Eigen::VectorXd> zero_set_tangent(const Eigen::VectorXd& x) {
    const int n = form.n();
    Eigen::MatrixXd stacked(form.ell() + 1, n);
    stacked.topRows(form.ell()) = jac_signed(x);
    stacked.bottomRows(1) = x.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
    int rank = 0;
    double smax = svd.singularValues()(0);
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-10 * smax) ++rank;
    if (rank >= n) return std::nullopt;
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
    for (int i = rank; i < n; ++i) dir += rng.next_gaussian() * svd.matrixV().col(i);
    double nrm = dir.norm();
    if (nrm < 1e-12) return std::nullopt;
    return dir / nrm;
  }

  // Walk along the zero set accepting steps that shrink the singular-value
  // ratio; returns a witness if the ratio drops below tol.
  std::optional<Eigen::VectorXd> hunt_singularity(Eigen::VectorXd x, int steps) {
    double ratio = sigma_ratio(x);
    double h = 0.1;
    for (int it = 0; it < steps; ++it) {
      if (ratio < tol) return x;
      auto dir = zero_set_tangent(x);
      if (!dir) break;
      bool moved = false;
      for (double sgn : {1.0, -1.0}) {
        Eigen::VectorXd cand = (x + sgn * h * (*dir)).normalized();
        if (!project_to_zero_set(cand)) continue;
        double cand_ratio = sigma_ratio(cand);
        if (cand_ratio < ratio) {
          x = cand;
          ratio = cand_ratio;
          moved = true;
          break;
        }
      }
      if (moved) {
        h = std::min(h * 1.5, 0.5);
      } else {
        h *= 0.5;
        if (h < 1e-12) break;
      }
    }
    return ratio < tol ? std::optional<Eigen::VectorXd>(x) : std::nullopt;
  }
};

RegularityResult Form::is_regular_on_zero_set(int samples, std::uint64_t seed,
                                              double tol) const {
  for (const auto& c : components_)
    if (std::holds_alternative<CoordinateMax>(c))
      return {RegularityStatus::NotApplicable, {}};
  if (samples <= 0) throw InvalidSpec("regularity check requires samples > 0");

  RegularitySampler sampler{*this, CounterRng(seed, 0x5245474cull), tol};
  std::vector<Eigen::VectorXd> zeros;

  if (ell() == 1) {
    std::optional<Eigen::VectorXd> pos, neg;
    for (int it = 0; it < samples && static_cast<int>(zeros.size()) < samples; ++it) {
      Eigen::VectorXd u = random_unit(sampler.rng, n_);
      double fu = sampler.f_signed(u)(0);
      if (fu > 0) pos = u;
      else if (fu < 0) neg = u;
      else zeros.push_back(u);
      if (pos && neg) {
        zeros.push_back(sampler.bisect_geodesic(*pos, *neg));
        pos.reset();
        neg.reset();
      }
    }
  } else {
    for (int it = 0; it < samples * 4 && static_cast<int>(zeros.size()) < samples; ++it) {
      Eigen::VectorXd x = random_unit(sampler.rng, n_);
      if (sampler.project_to_zero_set(x)) zeros.push_back(x);
    }
  }

  if (zeros.empty())
    throw EmptyZeroSet("no zero of the form found on the sphere within the sampling budget "
                       "(the zero set may be empty, or the budget too small)");

  double scale = 0.0;
  for (const auto& x : zeros) scale = std::max(scale, sampler.sigma_max(x));
  sampler.scale = std::max(scale, 1e-12);

  for (const auto& x : zeros) {
    if (sampler.sigma_ratio(x) < tol) return {RegularityStatus::SingularWitness, x};
  }
  int walks = std::min<int>(static_cast<int>(zeros.size()), 48);
  for (int i = 0; i < walks; ++i) {
    if (auto w = sampler.hunt_singularity(zeros[i], 160))
      return {RegularityStatus::SingularWitness, *w};
  }
  return {RegularityStatus::Regular, {}};
}

} // namespace diolab
