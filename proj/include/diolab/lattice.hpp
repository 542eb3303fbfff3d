#ifndef DIOLAB_LATTICE_HPP
#define DIOLAB_LATTICE_HPP

#include <functional>
#include <vector>

#include "diolab/geometry.hpp"
#include "diolab/norms.hpp"
#include "diolab/sampling.hpp"

namespace diolab {

enum class PointSetKind { NonzeroInt, Primitive, PrimitiveCongruence, AllInt };

struct PointSet {
  PointSetKind kind = PointSetKind::NonzeroInt;
  long q = 1; // PrimitiveCongruence modulus; q = 1 degenerates to Primitive

  static PointSet nonzero() { return {PointSetKind::NonzeroInt, 1}; }
  static PointSet primitive() { return {PointSetKind::Primitive, 1}; }
  static PointSet primitive_congruence(long q);
  static PointSet all() { return {PointSetKind::AllInt, 1}; }
};

bool point_in_set(const PointSet& ps, const Eigen::VectorXi& v);

inline constexpr long long kDefaultBudget = 2'000'000'000;

// Streams the v in the point set with S < nu(v) <= T, lexicographic by
// coordinates (first coordinate slowest, each from low to high).
void enumerate_annulus(const PointSet& ps, const Norm& nu, double S, double T,
                       int n, const std::function<void(const Eigen::VectorXi&)>& yield,
                       long long budget = kDefaultBudget);

std::vector<Eigen::VectorXi> enumerate_annulus_vec(const PointSet& ps, const Norm& nu,
                                                   double S, double T, int n,
                                                   long long budget = kDefaultBudget);

// Counts w = g(v), v in the point set, lying in the region and within each
// Euclidean ball |w|_2 <= cap (one cumulative count per cap).  The scan
// covers the exact integer preimage of the outer ball, with the innermost
// coordinate range solved from the ball quadratic.
std::vector<long long> count_in_region_multi(const PointSet& ps, const GroupElement& g,
                                             const Region& region,
                                             const std::vector<double>& euclid_caps,
                                             long long budget = kDefaultBudget);

long long count_in_region(const PointSet& ps, const GroupElement& g,
                          const Region& region, long long budget = kDefaultBudget);

// Integer points with sup norm exactly rho, lexicographic order; used for
// inside-out witness scans.
void for_each_sup_shell(int n, long rho,
                        const std::function<bool(const Eigen::VectorXi&)>& visit);

} // namespace diolab

#endif
