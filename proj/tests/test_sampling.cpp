#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "diolab/rng.hpp"
#include "diolab/sampling.hpp"

using namespace diolab;

TEST_CASE("counter rng is deterministic and splittable") {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, stream_differs = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.next_u64();
    if (x != b.next_u64()) all_equal = false;
    if (x != c.next_u64()) stream_differs = true;
  }
  CHECK(all_equal);
  CHECK(stream_differs);
  CounterRng d(42, 7);
  for (int i = 0; i < 1000; ++i) {
    double u = d.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("sl samples are unimodular") {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t seed : {1ull, 2ull, 99ull, 123456ull}) {
      GroupElement g = sample_sl(n, seed);
      CHECK(std::fabs(g.h.determinant() - 1.0) <= 1e-9);
      CHECK(g.z.norm() == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("sampling is reproducible") {
  GroupElement a = sample_asl(3, 777);
  GroupElement b = sample_asl(3, 777);
  CHECK((a.h - b.h).norm() == doctest::Approx(0.0));
  CHECK((a.z - b.z).norm() == doctest::Approx(0.0));
  GroupElement c = sample_asl(3, 778);
  CHECK((a.h - c.h).norm() > 1e-6);
}

TEST_CASE("torus samples fix the identity matrix") {
  GroupElement g = sample_torus(4, 31337);
  CHECK((g.h - Eigen::MatrixXd::Identity(4, 4)).norm() == doctest::Approx(0.0));
  for (int i = 0; i < 4; ++i) {
    CHECK(g.z[i] >= 0.0);
    CHECK(g.z[i] < 1.0);
  }
  Eigen::VectorXd x(4);
  x << 1, -2, 0, 3;
  CHECK((g.apply(x) - (g.z + x)).norm() == doctest::Approx(0.0));
}

TEST_CASE("shift coordinates look uniform") {
  // KS distance of pooled z-coordinates against U[0,1)
  std::vector<double> vals;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GroupElement g = sample_torus(2, seed);
    vals.push_back(g.z[0]);
    vals.push_back(g.z[1]);
  }
  std::sort(vals.begin(), vals.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double ecdf_hi = double(i + 1) / vals.size();
    double ecdf_lo = double(i) / vals.size();
    ks = std::max(ks, std::max(std::fabs(ecdf_hi - vals[i]), std::fabs(vals[i] - ecdf_lo)));
  }
  CHECK(ks <= 0.05);
}

TEST_CASE("matrix entries vary across seeds") {
  // crude spread check: determinant normalization must not collapse entries
  double mean = 0.0, sq = 0.0;
  const int N = 500;
  for (int i = 0; i < N; ++i) {
    GroupElement g = sample_sl(2, 1000 + i);
    mean += g.h(0, 0);
    sq += g.h(0, 0) * g.h(0, 0);
  }
  mean /= N;
  sq = sq / N - mean * mean;
  CHECK(std::fabs(mean) < 0.3);
  CHECK(sq > 0.1);
}
