#include "diolab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "diolab/errors.hpp"

namespace diolab {
namespace {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > kDefaultBudget * 4 / base) return kDefaultBudget * 4;
    r *= base;
  }
  return r;
}

long mod_nonneg(long a, long q) {
  long m = a % q;
  return m < 0 ? m + q : m;
}

} // namespace

PointSet PointSet::primitive_congruence(long q) {
  if (q < 1) throw InvalidSpec("congruence modulus must be a positive integer");
  return {PointSetKind::PrimitiveCongruence, q};
}

bool point_in_set(const PointSet& ps, const Eigen::VectorXi& v) {
  switch (ps.kind) {
    case PointSetKind::AllInt:
      return true;
    case PointSetKind::NonzeroInt:
      return !v.isZero();
    case PointSetKind::Primitive:
    case PointSetKind::PrimitiveCongruence: {
      long g = 0;
      for (int i = 0; i < v.size(); ++i) g = std::gcd(g, static_cast<long>(std::abs(v[i])));
      if (g != 1) return false;
      if (ps.kind == PointSetKind::Primitive) return true;
      if (mod_nonneg(v[0] - 1, ps.q) != 0) return false;
      for (int i = 1; i < v.size(); ++i)
        if (mod_nonneg(v[i], ps.q) != 0) return false;
      return true;
    }
  }
  return false;
}

void enumerate_annulus(const PointSet& ps, const Norm& nu, double S, double T,
                       int n, const std::function<void(const Eigen::VectorXi&)>& yield,
                       long long budget) {
  if (S < 0.0 || S > T) throw InvalidSpec("annulus requires 0 <= S <= T");
  auto [lo, hi] = nu.sup_equivalence(n);
  long B = static_cast<long>(std::floor(T / lo + 1e-9));
  if (ipow(2 * B + 1, n) > budget)
    throw BudgetExceeded("enumeration bounding box exceeds the point budget");

  Eigen::VectorXi v(n);
  Eigen::VectorXd vd(n);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      for (int i = 0; i < n; ++i) vd[i] = v[i];
      double r = nu(vd);
      if (r > S && r <= T && point_in_set(ps, v)) yield(v);
      return;
    }
    for (long t = -B; t <= B; ++t) {
      v[k] = static_cast<int>(t);
      rec(k + 1);
    }
  };
  rec(0);
}

std::vector<Eigen::VectorXi> enumerate_annulus_vec(const PointSet& ps, const Norm& nu,
                                                   double S, double T, int n,
                                                   long long budget) {
  std::vector<Eigen::VectorXi> out;
  enumerate_annulus(ps, nu, S, T, n, [&](const Eigen::VectorXi& v) { out.push_back(v); },
                    budget);
  return out;
}

std::vector<long long> count_in_region_multi(const PointSet& ps, const GroupElement& g,
                                             const Region& region,
                                             const std::vector<double>& euclid_caps,
                                             long long budget) {
  const int n = region.form.n();
  if (g.h.rows() != n || g.h.cols() != n || g.z.size() != n)
    throw DimensionMismatch("group element dimension does not match region");
  if (euclid_caps.empty()) throw InvalidSpec("at least one ball cap required");
  if (!(region.T > 0.0) || !std::isfinite(region.T))
    throw InvalidSpec("counting requires a region with finite outer radius");

  auto [lo, hi] = region.nu.sup_equivalence(n);
  double R_w = (region.nu.kind == NormKind::Euclidean)
                   ? region.T
                   : std::sqrt(static_cast<double>(n)) * region.T / lo;
  double cap_max = *std::max_element(euclid_caps.begin(), euclid_caps.end());
  if (std::isfinite(cap_max)) R_w = std::min(R_w, cap_max);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.h);
  double sigma_min = svd.singularValues()(n - 1);
  if (sigma_min < 1e-12 * svd.singularValues()(0))
    throw SingularMatrix("group element matrix is numerically singular");
  long B = static_cast<long>(std::floor((R_w + g.z.norm()) / sigma_min + 1e-9));
  if (ipow(2 * B + 1, n - 1) > budget)
    throw BudgetExceeded("counting bounding box exceeds the point budget");

  const Eigen::VectorXd h_last = g.h.col(n - 1);
  const double a = h_last.squaredNorm();
  const double R2 = R_w * R_w;

  std::vector<long long> counts(euclid_caps.size(), 0);
  long long visited = 0;
  Eigen::VectorXi v(n);

  std::function<void(int, const Eigen::VectorXd&)> rec = [&](int k, const Eigen::VectorXd& wpart) {
    if (k == n - 1) {
      // |wpart + t*h_last|^2 <= R2, quadratic in t
      double b = 2.0 * wpart.dot(h_last);
      double c = wpart.squaredNorm() - R2;
      double disc = b * b - 4.0 * a * c;
      if (disc < 0.0) return;
      double sq = std::sqrt(disc);
      long t_lo = static_cast<long>(std::ceil((-b - sq) / (2.0 * a) - 1e-9));
      long t_hi = static_cast<long>(std::floor((-b + sq) / (2.0 * a) + 1e-9));
      for (long t = t_lo; t <= t_hi; ++t) {
        if (++visited > budget)
          throw BudgetExceeded("counting scan exceeded the point budget");
        v[n - 1] = static_cast<int>(t);
        if (!point_in_set(ps, v)) continue;
        Eigen::VectorXd w = wpart + static_cast<double>(t) * h_last;
        if (!region.contains(w)) continue;
        double wn = w.norm();
        for (std::size_t i = 0; i < euclid_caps.size(); ++i)
          if (wn <= euclid_caps[i]) ++counts[i];
      }
      return;
    }
    for (long t = -B; t <= B; ++t) {
      v[k] = static_cast<int>(t);
      rec(k + 1, wpart + static_cast<double>(t) * g.h.col(k));
    }
  };
  rec(0, g.z);
  return counts;
}

long long count_in_region(const PointSet& ps, const GroupElement& g,
                          const Region& region, long long budget) {
  return count_in_region_multi(ps, g, region,
                               {std::numeric_limits<double>::infinity()}, budget)[0];
}

void for_each_sup_shell(int n, long rho,
                        const std::function<bool(const Eigen::VectorXi&)>& visit) {
  Eigen::VectorXi v(n);
  bool stop = false;
  std::function<void(int, bool)> rec = [&](int k, bool touched) {
    if (stop) return;
    if (k == n) {
      if (touched && !visit(v)) stop = true;
      return;
    }
    if (k == n - 1 && !touched) {
      // only the two boundary values can complete a shell point
      v[k] = static_cast<int>(-rho);
      rec(k + 1, true);
      if (rho != 0) {
        v[k] = static_cast<int>(rho);
        rec(k + 1, true);
      }
      return;
    }
    for (long t = -rho; t <= rho; ++t) {
      v[k] = static_cast<int>(t);
      rec(k + 1, touched || std::labs(t) == rho);
    }
  };
  rec(0, false);
}

} // namespace diolab
