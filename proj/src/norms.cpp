#include "diolab/norms.hpp"

#include <cmath>

#include "diolab/errors.hpp"
#include "diolab/rng.hpp"

namespace diolab {
namespace {

double base_eval(NormKind kind, double p, const Eigen::VectorXd& x) {
  switch (kind) {
    case NormKind::Euclidean:
      return x.norm();
    case NormKind::Sup:
      return x.lpNorm<Eigen::Infinity>();
    case NormKind::L1:
      return x.lpNorm<1>();
    case NormKind::Lp: {
      double acc = 0.0;
      for (int i = 0; i < x.size(); ++i) acc += std::pow(std::fabs(x[i]), p);
      return std::pow(acc, 1.0 / p);
    }
    default:
      throw InvalidSpec("weighted norm cannot be its own base");
  }
}

std::pair<double, double> base_sup_equivalence(NormKind kind, double p, int n) {
  switch (kind) {
    case NormKind::Euclidean:
      return {1.0, std::sqrt(static_cast<double>(n))};
    case NormKind::Sup:
      return {1.0, 1.0};
    case NormKind::L1:
      return {1.0, static_cast<double>(n)};
    case NormKind::Lp:
      return {1.0, std::pow(static_cast<double>(n), 1.0 / p)};
    default:
      throw InvalidSpec("weighted norm cannot be its own base");
  }
}

} // namespace

Norm Norm::lp(double p) {
  if (p < 1.0) throw InvalidSpec("Lp norm requires p >= 1");
  Norm nu;
  nu.kind = NormKind::Lp;
  nu.p = p;
  return nu;
}

Norm Norm::weighted(Eigen::VectorXd w, NormKind base) {
  if (base == NormKind::Weighted) throw InvalidSpec("weighted norm cannot be its own base");
  if (w.size() == 0 || w.minCoeff() <= 0.0)
    throw InvalidSpec("weighted norm requires positive weights");
  Norm nu;
  nu.kind = NormKind::Weighted;
  nu.weights = std::move(w);
  nu.base = base;
  return nu;
}

double Norm::operator()(const Eigen::VectorXd& x) const {
  if (kind == NormKind::Weighted) {
    if (x.size() != weights.size())
      throw DimensionMismatch("vector dimension does not match norm weights");
    return base_eval(base, p, weights.cwiseProduct(x));
  }
  return base_eval(kind, p, x);
}

std::pair<double, double> Norm::sup_equivalence(int n) const {
  if (kind == NormKind::Weighted) {
    auto [lo, hi] = base_sup_equivalence(base, p, n);
    return {lo * weights.minCoeff(), hi * weights.maxCoeff()};
  }
  return base_sup_equivalence(kind, p, n);
}

double norm_eval(const Norm& nu, const Eigen::VectorXd& x) { return nu(x); }

double operator_norm(const Norm& nu, const Eigen::MatrixXd& h, int samples) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n) throw DimensionMismatch("operator_norm requires a square matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h);
  double sigma_max = svd.singularValues()(0);
  double sigma_min = svd.singularValues()(n - 1);
  if (sigma_min < 1e-12 * sigma_max) throw SingularMatrix("matrix is numerically singular");

  switch (nu.kind) {
    case NormKind::Euclidean:
      return sigma_max;
    case NormKind::Sup:
      return h.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::L1:
      return h.cwiseAbs().colwise().sum().maxCoeff();
    default:
      break;
  }

  // nu(hx) <= hi*sup(hx) <= hi*|hx|_2 <= hi*sigma_max*|x|_2
  //        <= hi*sigma_max*sqrt(n)*sup(x) <= (hi*sigma_max*sqrt(n)/lo)*nu(x)
  auto [lo, hi] = nu.sup_equivalence(n);
  double bound = hi * sigma_max * std::sqrt(static_cast<double>(n)) / lo;

  // Sampled directions give a lower bound; the certified value is their max.
  double sampled = 0.0;
  CounterRng rng(0x6f706e6f726dull);
  Eigen::VectorXd u(n);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) u[i] = rng.next_gaussian();
    double nx = nu(u);
    if (nx > 0.0) sampled = std::max(sampled, nu(h * u) / nx);
  }
  return std::max(bound, sampled);
}

} // namespace diolab
