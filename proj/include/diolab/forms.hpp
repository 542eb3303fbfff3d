#ifndef DIOLAB_FORMS_HPP
#define DIOLAB_FORMS_HPP

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace diolab {

// Catalogue of scalar homogeneous components; a Form is a vector of these.

// sum_{j<=p} |x_j|^beta - sum_{k>p} |x_k|^beta, p + q = n, beta >= 1.
struct GeneralizedQuadratic {
  int p = 1;
  int q = 1;
  double beta = 2.0;
};

// (prod_i |x_i|)^omega, degree n*omega.
struct CoordinateProduct {
  double omega = 1.0;
};

// prod_i x_i without absolute values; smooth branch of the coordinate
// product, used by the regularity checker.
struct SignedProduct {};

// max{|x_i|^{z_i} : 1 <= i <= p}.  Not homogeneous of a single degree
// unless all z_i coincide; the criteria use z = sum 1/z_i instead.
struct CoordinateMax {
  int p = 1;
  std::vector<double> z;
};

struct LinearComponent {
  Eigen::VectorXd coeffs;
};

using FormComponent = std::variant<GeneralizedQuadratic, CoordinateProduct,
                                   SignedProduct, CoordinateMax, LinearComponent>;

enum class RegularityStatus { Regular, SingularWitness, NotApplicable };

struct RegularityResult {
  RegularityStatus status = RegularityStatus::Regular;
  Eigen::VectorXd witness; // set for SingularWitness
};

class Form {
public:
  Form(int n, std::vector<FormComponent> components);

  static Form scalar(int n, FormComponent c) {
    return Form(n, std::vector<FormComponent>{std::move(c)});
  }

  int n() const { return n_; }
  int ell() const { return static_cast<int>(components_.size()); }
  const std::vector<FormComponent>& components() const { return components_; }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;
  Eigen::VectorXd evaluate_shifted(const Eigen::VectorXd& xi,
                                   const Eigen::VectorXd& x) const;

  // Analytic ell x n Jacobian; throws NotDifferentiable for CoordinateMax
  // and at non-smooth points of the other kinds.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

  // Degree of component j, or nullopt for CoordinateMax.
  std::optional<double> degree(int j) const;
  // Sum of component degrees; throws InvalidDegrees if any CoordinateMax.
  double total_degree() const;
  // Criterion exponent z = sum_i 1/z_i of a scalar CoordinateMax form.
  double max_criterion_exponent() const;

  RegularityResult is_regular_on_zero_set(int samples, std::uint64_t seed,
                                          double tol = 1e-8) const;

private:
  int n_;
  std::vector<FormComponent> components_;

  double eval_component(int j, const Eigen::VectorXd& x) const;
  // Smooth sign-carrying branch used for root finding (coordinate products
  // drop the absolute values; other kinds evaluate as usual).
  double eval_signed_branch(int j, const Eigen::VectorXd& x) const;
  Eigen::RowVectorXd signed_branch_gradient(int j, const Eigen::VectorXd& x) const;
  friend struct RegularitySampler;
};

} // namespace diolab

#endif
