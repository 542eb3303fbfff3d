#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "diolab/errors.hpp"
#include "diolab/lattice.hpp"

using namespace diolab;

namespace {

using IntVec = std::vector<int>;

std::set<IntVec> to_set(const std::vector<Eigen::VectorXi>& pts) {
  std::set<IntVec> out;
  for (const auto& v : pts) out.insert(IntVec(v.data(), v.data() + v.size()));
  return out;
}

// Naive reference: scan the full integer box and filter.
std::set<IntVec> brute_force(const PointSet& ps, const Norm& nu, double S, double T,
                             int n) {
  int M = static_cast<int>(std::floor(T)) + 1;
  std::set<IntVec> out;
  Eigen::VectorXi v(n);
  std::vector<int> idx(n, -M);
  while (true) {
    for (int i = 0; i < n; ++i) v[i] = idx[i];
    double r = nu(v.cast<double>());
    if (r > S && r <= T && point_in_set(ps, v))
      out.insert(IntVec(v.data(), v.data() + n));
    int i = n - 1;
    while (i >= 0 && idx[i] == M) idx[i--] = -M;
    if (i < 0) break;
    ++idx[i];
  }
  return out;
}

Eigen::VectorXd dvec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<int>(v.size()));
  int i = 0;
  for (double t : v) x[i++] = t;
  return x;
}

Region square_region(double eps, double T) {
  // |x1^2 - x2^2| <= eps on the sup ball of radius T
  return Region{Form::scalar(2, GeneralizedQuadratic{1, 1, 2.0}),
                Eigen::VectorXd::Zero(1), BBound{dvec({eps})}, Norm::sup(), 0.0, T};
}

} // namespace

TEST_CASE("membership predicates") {
  Eigen::VectorXi v(3);
  v << 2, 4, 6;
  CHECK(point_in_set(PointSet::nonzero(), v));
  CHECK(!point_in_set(PointSet::primitive(), v));
  v << 2, 4, 7;
  CHECK(point_in_set(PointSet::primitive(), v));
  v << 0, 0, 0;
  CHECK(!point_in_set(PointSet::nonzero(), v));
  CHECK(point_in_set(PointSet::all(), v));
  v << 3, 2, -4;
  CHECK(point_in_set(PointSet::primitive_congruence(2), v));
  v << 3, 2, -3;
  CHECK(!point_in_set(PointSet::primitive_congruence(2), v)); // v3 odd
  v << -1, 2, 4;
  CHECK(point_in_set(PointSet::primitive_congruence(2), v)); // -1 = 1 mod 2
  CHECK_THROWS_AS(PointSet::primitive_congruence(0), InvalidSpec);
}

TEST_CASE("small exact point lists") {
  CHECK(enumerate_annulus_vec(PointSet::nonzero(), Norm::sup(), 0.0, 1.0, 2).size() == 8);
  // the annulus is strict at S, so the origin is excluded even for all-int
  CHECK(enumerate_annulus_vec(PointSet::all(), Norm::sup(), 0.0, 1.0, 2).size() == 8);
  CHECK(enumerate_annulus_vec(PointSet::primitive(), Norm::sup(), 0.0, 1.0, 2).size() == 8);
  CHECK(enumerate_annulus_vec(PointSet::nonzero(), Norm::sup(), 1.0, 2.0, 2).size() == 16);

  auto pts = enumerate_annulus_vec(PointSet::primitive_congruence(2), Norm::euclidean(),
                                   0.0, 2.3, 2);
  std::set<IntVec> expect = {{-1, -2}, {-1, 0}, {-1, 2}, {1, -2}, {1, 0}, {1, 2}};
  CHECK(to_set(pts) == expect);
}

TEST_CASE("enumeration order is lexicographic") {
  auto pts = enumerate_annulus_vec(PointSet::nonzero(), Norm::sup(), 0.0, 2.0, 2);
  auto lex = pts;
  std::sort(lex.begin(), lex.end(), [](const auto& a, const auto& b) {
    for (int i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(pts[i] == lex[i]);
}

TEST_CASE("streaming enumeration equals brute force") {
  std::vector<PointSet> sets = {PointSet::nonzero(), PointSet::primitive(),
                                PointSet::primitive_congruence(3), PointSet::all()};
  std::vector<Norm> norms = {Norm::sup(), Norm::euclidean(), Norm::l1(),
                             Norm::weighted(dvec({1.0, 2.0}), NormKind::Sup)};
  for (const auto& ps : sets) {
    for (const auto& nu : norms) {
      if (nu.kind == NormKind::Weighted) {
        CHECK(to_set(enumerate_annulus_vec(ps, nu, 1.5, 6.0, 2)) ==
              brute_force(ps, nu, 1.5, 6.0, 2));
        continue;
      }
      CHECK(to_set(enumerate_annulus_vec(ps, nu, 0.0, 5.0, 2)) ==
            brute_force(ps, nu, 0.0, 5.0, 2));
      CHECK(to_set(enumerate_annulus_vec(ps, nu, 2.0, 4.5, 3)) ==
            brute_force(ps, nu, 2.0, 4.5, 3));
    }
  }
}

TEST_CASE("annuli decompose disjointly") {
  auto a = enumerate_annulus_vec(PointSet::nonzero(), Norm::euclidean(), 0.0, 3.0, 3);
  auto b = enumerate_annulus_vec(PointSet::nonzero(), Norm::euclidean(), 3.0, 7.0, 3);
  auto full = enumerate_annulus_vec(PointSet::nonzero(), Norm::euclidean(), 0.0, 7.0, 3);
  auto sa = to_set(a), sb = to_set(b);
  std::set<IntVec> merged = sa;
  merged.insert(sb.begin(), sb.end());
  CHECK(sa.size() + sb.size() == merged.size());
  CHECK(merged == to_set(full));
}

TEST_CASE("point sets are symmetric under negation except congruence") {
  for (const auto& ps : {PointSet::nonzero(), PointSet::primitive(), PointSet::all()}) {
    auto s = to_set(enumerate_annulus_vec(ps, Norm::sup(), 0.0, 3.0, 2));
    for (const auto& v : s) {
      IntVec neg(v);
      for (int& c : neg) c = -c;
      CHECK(s.count(neg) == 1);
    }
  }
}

TEST_CASE("q = 1 congruence degenerates to primitive") {
  CHECK(to_set(enumerate_annulus_vec(PointSet::primitive_congruence(1), Norm::sup(),
                                     0.0, 4.0, 3)) ==
        to_set(enumerate_annulus_vec(PointSet::primitive(), Norm::sup(), 0.0, 4.0, 3)));
}

TEST_CASE("counting in a region, identity element") {
  GroupElement id = GroupElement::identity(2);
  // |x^2 - y^2| <= 0.5 on the closed unit sup ball: the four corners
  CHECK(count_in_region(PointSet::nonzero(), id, square_region(0.5, 1.0)) == 4);
  CHECK(count_in_region(PointSet::all(), id, square_region(0.5, 1.0)) == 5);
  // shrink the band below every nonzero value
  Region tight = square_region(0.5, 1.0);
  std::get<BBound>(tight.bound).eps[0] = 0.0;
  CHECK(count_in_region(PointSet::nonzero(), id, tight) == 4); // corners are exact zeros
}

TEST_CASE("counting matches enumeration for shifted and sheared elements") {
  Eigen::MatrixXd shear(2, 2);
  shear << 1, 1, 0, 1;
  std::vector<GroupElement> gs = {
      GroupElement{Eigen::MatrixXd::Identity(2, 2), dvec({0.25, -0.4})},
      GroupElement{shear, dvec({0.0, 0.0})},
      GroupElement{shear, dvec({0.1, 0.7})}};
  Region reg = square_region(0.8, 4.0);
  reg.nu = Norm::euclidean();
  for (const auto& g : gs) {
    long long expect = 0;
    // the preimage of the Euclidean 4-ball under these g fits in a sup-20 box
    enumerate_annulus(PointSet::nonzero(), Norm::sup(), 0.0, 20.0, 2,
                      [&](const Eigen::VectorXi& v) {
                        if (reg.contains(g.apply(v.cast<double>()))) ++expect;
                      });
    CHECK(count_in_region(PointSet::nonzero(), g, reg) == expect);
  }
}

TEST_CASE("multi-cap counts are cumulative and consistent") {
  GroupElement id = GroupElement::identity(2);
  Region reg = square_region(0.5, 6.0);
  reg.nu = Norm::euclidean();
  std::vector<double> caps = {1.5, 3.0, 6.0};
  auto counts = count_in_region_multi(PointSet::nonzero(), id, reg, caps);
  REQUIRE(counts.size() == 3);
  CHECK(counts[0] <= counts[1]);
  CHECK(counts[1] <= counts[2]);
  for (std::size_t k = 0; k < caps.size(); ++k) {
    long long expect = 0;
    enumerate_annulus(PointSet::nonzero(), Norm::sup(), 0.0, 10.0, 2,
                      [&](const Eigen::VectorXi& v) {
                        Eigen::VectorXd w = v.cast<double>();
                        if (reg.contains(w) && w.norm() <= caps[k]) ++expect;
                      });
    CHECK(counts[k] == expect);
  }
  // the largest cap dominates the plain count
  CHECK(counts[2] == count_in_region(PointSet::nonzero(), id, reg));
}

TEST_CASE("budget limits raise") {
  CHECK_THROWS_AS(enumerate_annulus_vec(PointSet::nonzero(), Norm::sup(), 0.0, 1000.0,
                                        3, 10),
                  BudgetExceeded);
  GroupElement id = GroupElement::identity(2);
  CHECK_THROWS_AS(count_in_region(PointSet::nonzero(), id, square_region(0.5, 50.0), 10),
                  BudgetExceeded);
}

TEST_CASE("sup shells partition the box") {
  for (int n : {2, 3}) {
    long long total = 0;
    for (long rho = 0; rho <= 3; ++rho) {
      long long shell = 0;
      for_each_sup_shell(n, rho, [&](const Eigen::VectorXi& v) {
        CHECK(v.cast<double>().lpNorm<Eigen::Infinity>() == doctest::Approx(double(rho)));
        ++shell;
        return true;
      });
      long long expect = (rho == 0) ? 1
                                    : static_cast<long long>(std::pow(2 * rho + 1, n)) -
                                          static_cast<long long>(std::pow(2 * rho - 1, n));
      CHECK(shell == expect);
      total += shell;
    }
    CHECK(total == static_cast<long long>(std::pow(7, n)));
  }
}

TEST_CASE("shell scan stops early") {
  int visited = 0;
  for_each_sup_shell(2, 5, [&](const Eigen::VectorXi&) {
    ++visited;
    return visited < 3;
  });
  CHECK(visited == 3);
}
