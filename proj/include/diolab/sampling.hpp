#ifndef DIOLAB_SAMPLING_HPP
#define DIOLAB_SAMPLING_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace diolab {

// Affine unimodular map x -> z + h x with det(h) = 1.
struct GroupElement {
  Eigen::MatrixXd h;
  Eigen::VectorXd z;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return z + h * x; }
  static GroupElement identity(int n) {
    return {Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Zero(n)};
  }
};

// h = M / |det M|^{1/n} with iid standard Gaussian M, rows swapped to fix
// orientation; law absolutely continuous w.r.t. Haar on SL_n.  z = 0.
GroupElement sample_sl(int n, std::uint64_t seed);

// h as sample_sl, z uniform on [0,1)^n.
GroupElement sample_asl(int n, std::uint64_t seed);

// h = identity, z uniform on [0,1)^n: exact Haar on the torus.
GroupElement sample_torus(int n, std::uint64_t seed);

} // namespace diolab

#endif
