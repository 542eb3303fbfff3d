#ifndef DIOLAB_NORMS_HPP
#define DIOLAB_NORMS_HPP

#include <Eigen/Dense>

namespace diolab {

enum class NormKind { Euclidean, Sup, L1, Lp, Weighted };

/// A norm on R^n.  Weighted applies componentwise weights before the base
/// norm: nu(x) = base(w_1 x_1, ..., w_n x_n).
struct Norm {
  NormKind kind = NormKind::Euclidean;
  double p = 2.0;             // Lp only
  Eigen::VectorXd weights;    // Weighted only
  NormKind base = NormKind::Sup;

  static Norm euclidean() { return Norm{}; }
  static Norm sup() { return Norm{NormKind::Sup}; }
  static Norm l1() { return Norm{NormKind::L1}; }
  static Norm lp(double p);
  static Norm weighted(Eigen::VectorXd w, NormKind base);

  double operator()(const Eigen::VectorXd& x) const;

  // Constants (lo, hi) with lo * sup(x) <= nu(x) <= hi * sup(x).
  std::pair<double, double> sup_equivalence(int n) const;
};

double norm_eval(const Norm& nu, const Eigen::VectorXd& x);

// Certified upper bound on sup{nu(h x) : nu(x) <= 1}.  Exact for the
// Euclidean (largest singular value), sup (max row L1) and L1 (max column
// L1) norms; otherwise bounded through norm equivalence with the Euclidean
// operator norm, cross-checked against sampled directions.
double operator_norm(const Norm& nu, const Eigen::MatrixXd& h, int samples = 0);

} // namespace diolab

#endif
