#ifndef DIOLAB_GEOMETRY_HPP
#define DIOLAB_GEOMETRY_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "diolab/forms.hpp"
#include "diolab/norms.hpp"
#include "diolab/psi.hpp"

namespace diolab {

// A-type bound: |xi - f(x)| <= psi(nu(x)) componentwise.
struct ABound {
  Psi psi;
};

// B-type bound: |xi - f(x)| <= eps componentwise, nu(x) <= T.
struct BBound {
  Eigen::VectorXd eps;
};

struct Region {
  Form form;
  Eigen::VectorXd xi;
  std::variant<ABound, BBound> bound;
  Norm nu;
  double S = 0.0; // annulus (S, T]; ignored for B-type (which uses nu <= T)
  double T = 0.0;

  bool contains(const Eigen::VectorXd& x) const;
  // Componentwise slack min_j (bound_j - |f_j(x) - xi_j|) at radius nu(x);
  // nonnegative iff the bound holds (annulus not included).
  double bound_slack(const Eigen::VectorXd& x) const;
};

enum class VolumeMethod { ClosedForm, MonteCarlo, NumericQuadrature };

struct VolumeEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  VolumeMethod method = VolumeMethod::MonteCarlo;
  long long samples = 0;
};

// Sup-norm slab volume of {|prod |x_i|| <= psi(sup x)} over S < sup(x) <= T:
// 2^n n Int_S^T (psi(t)/t) sum_{i<=n-2} log^i(t^n/psi(t))/i! dt.
double volume_product_closed_form(int n, const Psi& psi, double S, double T);

// Sup-norm slab volume for the max form: 2^n (n-p) Int_S^T psi(t)^z t^{n-p-1} dt
// with z = sum_i 1/z_i.
double volume_max_closed_form(int n, int p, const std::vector<double>& z,
                              const Psi& psi, double S, double T);

// Monte Carlo volume via uniform sphere directions with the exact radial
// measure along each ray (grid scan plus bisection at indicator boundaries).
VolumeEstimate mc_volume(const Region& region, long long samples, std::uint64_t seed);

// Shares direction samples across several Euclidean-ball cutoffs; returns one
// estimate of m(region intersected with {|x|_2 <= t}) per cutoff.
std::vector<VolumeEstimate> mc_volume_multi(const Region& region,
                                            const std::vector<double>& euclid_caps,
                                            long long samples, std::uint64_t seed);

// Model value T^{n-d} prod_j psi_j(T); correct only up to a form-dependent
// constant, so use it for ratio tests, never as an absolute prediction.
double regular_volume_asymptotic(const Form& form, const Psi& psi, double T);

// sigma({u on the unit sphere : |f(u)| <= eps componentwise}) / prod_j 2 eps_j,
// with sigma the normalized surface probability measure.
double sphere_preimage_ratio(const Form& form, const Eigen::VectorXd& eps_box,
                             long long samples, std::uint64_t seed);

} // namespace diolab

#endif
