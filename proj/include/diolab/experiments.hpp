#ifndef DIOLAB_EXPERIMENTS_HPP
#define DIOLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <vector>

#include "diolab/lattice.hpp"
#include "diolab/psi.hpp"
#include "diolab/sampling.hpp"

namespace diolab {

enum class GroupKind { SLn, ASLn, Torus };

double zeta(double s);
// zeta restricted to integers coprime to q: zeta(s) * prod_{p | q} (1 - p^{-s}).
double zeta_q(double s, long q);

// Exact mean-value constant for the certified (group, point set) pairs;
// throws UncertifiedPair otherwise.
double siegel_constant(const PointSet& ps, int n, GroupKind group);

struct TorusMeanResult {
  double empirical_mean = 0.0;
  double measure = 0.0;
  double stderr_ = 0.0;
  double z_score = 0.0;
  long long samples = 0;
};

// Mean of #((z + Z^n) cap E) over uniform z, vs m(E), for an axis box E.
TorusMeanResult torus_siegel_mean_test(const Eigen::VectorXd& box_lo,
                                       const Eigen::VectorXd& box_hi,
                                       long long samples, std::uint64_t seed);

struct CountRecord {
  int g_id = 0;
  std::uint64_t seed = 0;
  double T = 0.0;
  long long count = 0;
  double predicted = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;
};

struct FinitenessRecord {
  int g_id = 0;
  std::uint64_t seed = 0;
  long long count_half = 0;
  long long count_full = 0;
  bool stabilized = false;
};

struct UniformRecord {
  int g_id = 0;
  std::uint64_t seed = 0;
  int k = 0;
  bool nonempty = false;
};

// Criterion family matching the form kind (coordinate product -> Product,
// coordinate max -> Max, everything else -> RegularZeroSet).
CriterionFamily default_family(const Form& form);

// Per-seed deterministic group element for sample index i.
GroupElement sample_group(GroupKind group, int n, std::uint64_t seed, int i);
std::uint64_t group_sample_seed(std::uint64_t seed, int i);

// Counts of gP in the A-region capped by Euclidean balls of radius t, against
// c_P times the Monte Carlo region volume; divergent criterion required.
std::vector<CountRecord> counting_ratio_experiment(
    const Form& form, const Eigen::VectorXd& xi, const Psi& psi, const Norm& nu,
    const PointSet& ps, GroupKind group, const std::vector<double>& T_schedule,
    int g_samples, std::uint64_t seed, long long mc_samples = 2'000'000,
    long long budget = kDefaultBudget);

// Counts of v in the point set with nu(v) <= T and |f(g v) - xi| <= psi(nu(v))
// componentwise, one cumulative count per threshold in Ts (must be sorted).
std::vector<long long> solution_counts(const Form& form, const Eigen::VectorXd& xi,
                                       const Psi& psi, const Norm& nu,
                                       const PointSet& ps, const GroupElement& g,
                                       const std::vector<double>& Ts,
                                       long long budget = kDefaultBudget);

// Solution counts at T_max/2 and T_max (conditions on nu(v) with psi(nu(v)));
// convergent criterion required.
std::vector<FinitenessRecord> finiteness_experiment(
    const Form& form, const Eigen::VectorXd& xi, const Psi& psi, const Norm& nu,
    const PointSet& ps, GroupKind group, double T_max, int g_samples,
    std::uint64_t seed, long long budget = kDefaultBudget);

// Dyadic B-set nonemptiness: some v in P with nu(v) <= 2^k and
// |f(gv) - xi| <= psi(2^k); early exit on the first witness.
std::vector<UniformRecord> uniform_experiment(
    const Form& form, const Eigen::VectorXd& xi, const Psi& psi, const Norm& nu,
    const PointSet& ps, GroupKind group, int k_lo, int k_hi, int g_samples,
    std::uint64_t seed, long long budget = kDefaultBudget);

// Scale factor b' = b^{-ceil(log_a 2)} for bridging dyadic witnesses to all
// T in [2^k, 2^{k+1}]: a k-witness for psi lies in B(b' psi(T), T).
double dyadic_bridge_factor(double a, double b);

} // namespace diolab

#endif
