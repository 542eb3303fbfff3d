#include "diolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diolab/errors.hpp"
#include "diolab/geometry.hpp"
#include "diolab/parallel.hpp"
#include "diolab/rng.hpp"

namespace diolab {
namespace {

std::vector<long> prime_divisors(long q) {
  std::vector<long> out;
  for (long p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      out.push_back(p);
      while (q % p == 0) q /= p;
    }
  }
  if (q > 1) out.push_back(q);
  return out;
}

long long torus_box_count(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                          const Eigen::VectorXd& z) {
  long long c = 1;
  for (int i = 0; i < lo.size(); ++i) {
    long long axis = static_cast<long long>(std::floor(hi[i] - z[i])) -
                     static_cast<long long>(std::ceil(lo[i] - z[i])) + 1;
    if (axis <= 0) return 0;
    c *= axis;
  }
  return c;
}

} // namespace

double zeta(double s) {
  if (s <= 1.0) throw InvalidSpec("zeta requires s > 1");
  // Euler-Maclaurin with Bernoulli corrections through B8
  const int N = 24;
  double sum = 0.0;
  for (int k = 1; k < N; ++k) sum += std::pow(k, -s);
  double Ns = std::pow(N, -s);
  sum += Ns * N / (s - 1.0) + 0.5 * Ns;
  const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30};
  double rising = s;          // s (s+1) ... (s+2k-2)
  double fact = 2.0;          // (2k)!
  double Npow = Ns / N;       // N^{-s-2k+1}
  for (int k = 1; k <= 4; ++k) {
    sum += bern[k - 1] / fact * rising * Npow;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    Npow /= static_cast<double>(N) * N;
  }
  return sum;
}

double zeta_q(double s, long q) {
  if (q < 1) throw InvalidSpec("zeta_q requires q >= 1");
  double z = zeta(s);
  for (long p : prime_divisors(q)) z *= 1.0 - std::pow(p, -s);
  return z;
}

double siegel_constant(const PointSet& ps, int n, GroupKind group) {
  if (n < 2) throw InvalidSpec("siegel constant requires n >= 2");
  switch (group) {
    case GroupKind::ASLn:
      if (ps.kind == PointSetKind::AllInt) return 1.0;
      break;
    case GroupKind::Torus:
      if (ps.kind == PointSetKind::AllInt) return 1.0;
      break;
    case GroupKind::SLn:
      if (ps.kind == PointSetKind::NonzeroInt) return 1.0;
      if (ps.kind == PointSetKind::Primitive) return 1.0 / zeta(n);
      if (ps.kind == PointSetKind::PrimitiveCongruence) {
        if (ps.q == 1) return 1.0 / zeta(n);
        if (n >= 3) return 1.0 / (std::pow(ps.q, n) * zeta_q(n, ps.q));
      }
      break;
  }
  throw UncertifiedPair("no certified mean-value constant for this group/point-set pair");
}

TorusMeanResult torus_siegel_mean_test(const Eigen::VectorXd& box_lo,
                                       const Eigen::VectorXd& box_hi,
                                       long long samples, std::uint64_t seed) {
  const int n = static_cast<int>(box_lo.size());
  if (box_hi.size() != n) throw DimensionMismatch("box bounds must have equal length");
  if (samples <= 0) throw InvalidSpec("mean test requires samples > 0");
  double measure = 1.0;
  for (int i = 0; i < n; ++i) {
    if (box_hi[i] < box_lo[i]) throw InvalidSpec("box bounds must satisfy lo <= hi");
    measure *= box_hi[i] - box_lo[i];
  }

  const long long chunk_size = 16384;
  const std::size_t n_chunks =
      static_cast<std::size_t>((samples + chunk_size - 1) / chunk_size);
  std::vector<double> sums(n_chunks, 0.0), sqsums(n_chunks, 0.0);
  parallel_chunks(n_chunks, [&](std::size_t c) {
    CounterRng rng(seed, 0x746f727573ull + c);
    long long lo = static_cast<long long>(c) * chunk_size;
    long long hi = std::min(samples, lo + chunk_size);
    Eigen::VectorXd z(n);
    double s = 0.0, sq = 0.0;
    for (long long i = lo; i < hi; ++i) {
      for (int j = 0; j < n; ++j) z[j] = rng.next_double();
      double cnt = static_cast<double>(torus_box_count(box_lo, box_hi, z));
      s += cnt;
      sq += cnt * cnt;
    }
    sums[c] = s;
    sqsums[c] = sq;
  });

  double s = 0.0, sq = 0.0;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    s += sums[c];
    sq += sqsums[c];
  }
  TorusMeanResult res;
  res.samples = samples;
  res.measure = measure;
  res.empirical_mean = s / samples;
  double var = std::max(0.0, sq / samples - res.empirical_mean * res.empirical_mean);
  res.stderr_ = std::sqrt(var / samples);
  res.z_score = res.stderr_ > 0.0 ? (res.empirical_mean - measure) / res.stderr_ : 0.0;
  return res;
}

CriterionFamily default_family(const Form& form) {
  if (form.ell() == 1) {
    if (std::holds_alternative<CoordinateProduct>(form.components()[0]))
      return CriterionFamily::Product;
    if (std::holds_alternative<CoordinateMax>(form.components()[0]))
      return CriterionFamily::Max;
  }
  return CriterionFamily::RegularZeroSet;
}

std::uint64_t group_sample_seed(std::uint64_t seed, int i) {
  return seed + 1099511628211ull * static_cast<std::uint64_t>(i + 1);
}

GroupElement sample_group(GroupKind group, int n, std::uint64_t seed, int i) {
  std::uint64_t s = group_sample_seed(seed, i);
  switch (group) {
    case GroupKind::SLn:
      return sample_sl(n, s);
    case GroupKind::ASLn:
      return sample_asl(n, s);
    case GroupKind::Torus:
      return sample_torus(n, s);
  }
  throw InvalidSpec("unknown group kind");
}

std::vector<CountRecord> counting_ratio_experiment(
    const Form& form, const Eigen::VectorXd& xi, const Psi& psi, const Norm& nu,
    const PointSet& ps, GroupKind group, const std::vector<double>& T_schedule,
    int g_samples, std::uint64_t seed, long long mc_samples, long long budget) {
  if (T_schedule.empty()) throw InvalidSpec("empty T schedule");
  if (!std::is_sorted(T_schedule.begin(), T_schedule.end()))
    throw InvalidSpec("T schedule must be increasing");
  if (g_samples <= 0) throw InvalidSpec("need at least one group sample");
  if (asymptotic_criterion(form, psi, xi, default_family(form)).convergent)
    throw CriterionMismatch("counting experiment requires the divergent regime");
  double c = siegel_constant(ps, form.n(), group);

  const int n = form.n();
  double cap_max = T_schedule.back();
  auto [lo, hi] = nu.sup_equivalence(n);
  Region region{form, xi, ABound{psi}, nu, 0.0, hi * cap_max};

  auto volumes = mc_volume_multi(region, T_schedule, mc_samples, seed ^ 0x766f6c);

  std::vector<CountRecord> out;
  for (int i = 0; i < g_samples; ++i) {
    GroupElement g = sample_group(group, n, seed, i);
    auto counts = count_in_region_multi(ps, g, region, T_schedule, budget);
    for (std::size_t k = 0; k < T_schedule.size(); ++k) {
      CountRecord rec;
      rec.g_id = i;
      rec.seed = group_sample_seed(seed, i);
      rec.T = T_schedule[k];
      rec.count = counts[k];
      rec.predicted = c * volumes[k].value;
      rec.ratio_defined = rec.predicted > 0.0;
      rec.ratio = rec.ratio_defined ? rec.count / rec.predicted
                                    : std::numeric_limits<double>::quiet_NaN();
      out.push_back(rec);
    }
  }
  return out;
}

std::vector<long long> solution_counts(const Form& form, const Eigen::VectorXd& xi,
                                       const Psi& psi, const Norm& nu,
                                       const PointSet& ps, const GroupElement& g,
                                       const std::vector<double>& Ts,
                                       long long budget) {
  if (Ts.empty()) throw InvalidSpec("no thresholds given");
  if (!std::is_sorted(Ts.begin(), Ts.end()))
    throw InvalidSpec("thresholds must be sorted");
  const int n = form.n();
  std::vector<long long> counts(Ts.size(), 0);
  enumerate_annulus(ps, nu, 0.0, Ts.back(), n,
                    [&](const Eigen::VectorXi& v) {
                      Eigen::VectorXd vd = v.cast<double>();
                      double r = nu(vd);
                      Eigen::VectorXd dev =
                          (form.evaluate(g.apply(vd)) - xi).cwiseAbs();
                      if (((dev - psi(r)).array() <= 0.0).all())
                        for (std::size_t i = 0; i < Ts.size(); ++i)
                          if (r <= Ts[i]) ++counts[i];
                    },
                    budget);
  return counts;
}

std::vector<FinitenessRecord> finiteness_experiment(
    const Form& form, const Eigen::VectorXd& xi, const Psi& psi, const Norm& nu,
    const PointSet& ps, GroupKind group, double T_max, int g_samples,
    std::uint64_t seed, long long budget) {
  if (g_samples <= 0) throw InvalidSpec("need at least one group sample");
  if (!(T_max > 0.0)) throw InvalidSpec("T_max must be positive");
  if (!asymptotic_criterion(form, psi, xi, default_family(form)).convergent)
    throw CriterionMismatch("finiteness experiment requires the convergent regime");
  const int n = form.n();

  std::vector<FinitenessRecord> out;
  for (int i = 0; i < g_samples; ++i) {
    GroupElement g = sample_group(group, n, seed, i);
    auto counts = solution_counts(form, xi, psi, nu, ps, g, {0.5 * T_max, T_max}, budget);
    long long half = counts[0], full = counts[1];
    FinitenessRecord rec;
    rec.g_id = i;
    rec.seed = group_sample_seed(seed, i);
    rec.count_half = half;
    rec.count_full = full;
    rec.stabilized = (half == full);
    out.push_back(rec);
  }
  return out;
}

std::vector<UniformRecord> uniform_experiment(
    const Form& form, const Eigen::VectorXd& xi, const Psi& psi, const Norm& nu,
    const PointSet& ps, GroupKind group, int k_lo, int k_hi, int g_samples,
    std::uint64_t seed, long long budget) {
  if (k_lo > k_hi || k_lo < 0) throw InvalidSpec("invalid dyadic range");
  if (g_samples <= 0) throw InvalidSpec("need at least one group sample");
  if (!uniform_series_criterion(form, psi, xi, 2.0, default_family(form)).convergent)
    throw CriterionMismatch("uniform experiment requires the convergent series regime");
  const int n = form.n();
  auto [lo, hi] = nu.sup_equivalence(n);

  std::vector<UniformRecord> out;
  for (int i = 0; i < g_samples; ++i) {
    GroupElement g = sample_group(group, n, seed, i);
    for (int k = k_lo; k <= k_hi; ++k) {
      double T = std::pow(2.0, k);
      Eigen::VectorXd eps = psi(T);
      long rho_max = static_cast<long>(std::floor(T / lo + 1e-9));
      bool found = false;
      long long visited = 0;
      for (long rho = 0; rho <= rho_max && !found; ++rho) {
        for_each_sup_shell(n, rho, [&](const Eigen::VectorXi& v) {
          if (++visited > budget)
            throw BudgetExceeded("uniform witness scan exceeded the point budget");
          Eigen::VectorXd vd = v.cast<double>();
          if (nu(vd) > T || !point_in_set(ps, v)) return true;
          Eigen::VectorXd dev = (form.evaluate(g.apply(vd)) - xi).cwiseAbs();
          if (((dev - eps).array() <= 0.0).all()) {
            found = true;
            return false;
          }
          return true;
        });
      }
      out.push_back({i, group_sample_seed(seed, i), k, found});
    }
  }
  return out;
}

double dyadic_bridge_factor(double a, double b) {
  if (a <= 1.0 || a > 2.0) throw InvalidSpec("bridge requires 1 < a <= 2");
  if (b <= 0.0 || b > 1.0) throw InvalidSpec("bridge requires 0 < b <= 1");
  double m = std::ceil(std::log(2.0) / std::log(a) - 1e-12);
  return std::pow(b, -m);
}

} // namespace diolab
