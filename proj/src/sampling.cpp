#include "diolab/sampling.hpp"

#include <cmath>

#include "diolab/errors.hpp"
#include "diolab/rng.hpp"

namespace diolab {
namespace {

constexpr std::uint64_t kSlStream = 0x534c5f6d6174ull;
constexpr std::uint64_t kShiftStream = 0x7368696674ull;

Eigen::MatrixXd gaussian_sl(int n, std::uint64_t seed) {
  if (n < 2) throw InvalidSpec("group sampling requires n >= 2");
  CounterRng rng(seed, kSlStream);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.next_gaussian();
    double det = m.determinant();
    if (std::fabs(det) < 1e-8) continue;
    if (det < 0.0) m.row(0).swap(m.row(1));
    return m / std::pow(std::fabs(det), 1.0 / n);
  }
  throw InvalidSpec("could not draw a well-conditioned Gaussian matrix in 1000 attempts");
}

Eigen::VectorXd uniform_shift(int n, std::uint64_t seed) {
  CounterRng rng(seed, kShiftStream);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z[i] = rng.next_double();
  return z;
}

} // namespace

GroupElement sample_sl(int n, std::uint64_t seed) {
  return {gaussian_sl(n, seed), Eigen::VectorXd::Zero(n)};
}

GroupElement sample_asl(int n, std::uint64_t seed) {
  return {gaussian_sl(n, seed), uniform_shift(n, seed)};
}

GroupElement sample_torus(int n, std::uint64_t seed) {
  if (n < 2) throw InvalidSpec("group sampling requires n >= 2");
  return {Eigen::MatrixXd::Identity(n, n), uniform_shift(n, seed)};
}

} // namespace diolab
