#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "diolab/errors.hpp"
#include "diolab/psi.hpp"
#include "diolab/rng.hpp"

using namespace diolab;

namespace {

Eigen::VectorXd xi0() { return Eigen::VectorXd::Zero(1); }

Eigen::VectorXd xi(double v) {
  Eigen::VectorXd x(1);
  x[0] = v;
  return x;
}

} // namespace

TEST_CASE("power-log evaluation and plateau") {
  Psi p2 = Psi::power_log(2.0, 0.0); // t_star = e
  CHECK(p2(std::exp(1.0))[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  // below the threshold the value plateaus at psi(t_star)
  Psi p1 = Psi::power_log(1.0, 0.0);
  CHECK(p1(1.0)[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(p1(0.0)[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(Psi::constant(0.3)(12345.0)[0] == doctest::Approx(0.3));
  // log factor
  Psi pl({PowerLog{1.0, 2.0, 0.0}}); // t_star = e^2
  double t = 100.0;
  CHECK(pl(t)[0] == doctest::Approx(std::pow(std::log(t), 2.0) / t).epsilon(1e-12));
}

TEST_CASE("tabulated evaluation interpolates and clamps") {
  Psi tab = Psi::tabulated({{1.0, 1.0}, {2.0, 0.5}, {4.0, 0.5}});
  CHECK(tab(0.5)[0] == doctest::Approx(1.0));
  CHECK(tab(1.5)[0] == doctest::Approx(0.75));
  CHECK(tab(3.0)[0] == doctest::Approx(0.5));
  CHECK(tab(100.0)[0] == doctest::Approx(0.5));
}

TEST_CASE("psi is nonincreasing") {
  std::vector<Psi> fams = {Psi::power_log(0.5, 0.0), Psi::power_log(1.0, 3.0),
                           Psi({PowerLog{2.0, -1.5, 0.0}}), Psi::constant(0.2),
                           Psi::tabulated({{1.0, 2.0}, {5.0, 1.0}, {9.0, 0.1}})};
  CounterRng rng(21, 4);
  for (const Psi& psi : fams) {
    for (int i = 0; i < 10000; ++i) {
      double t1 = 1e6 * rng.next_double();
      double t2 = t1 + 1e4 * rng.next_double();
      CHECK(psi(t1)[0] + 1e-12 >= psi(t2)[0]);
    }
  }
}

TEST_CASE("invalid psi specs") {
  CHECK_THROWS_AS(Psi::power_log(0.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(Psi::power_log(-1.0, 0.0), InvalidSpec);
  CHECK_THROWS_AS(Psi::constant(0.0), InvalidSpec);
  CHECK_THROWS_AS(Psi({PowerLog{1.0, 0.0, 0.0, -2.0}}), InvalidSpec);
  CHECK_THROWS_AS(Psi({PowerLog{1.0, 5.0, 2.0}}), InvalidSpec); // t_star below e^5
  CHECK_THROWS_AS(Psi::tabulated({{1.0, 1.0}, {2.0, 1.5}}), InvalidSpec);
  CHECK_THROWS_AS(Psi::tabulated({{2.0, 1.0}, {1.0, 0.5}}), InvalidSpec);
  CHECK_THROWS_AS(Psi::tabulated({{1.0, -1.0}}), InvalidSpec);
  CHECK_THROWS_AS(Psi::tabulated({}), InvalidSpec);
}

TEST_CASE("regularity certificates") {
  // constant psi: ratio is identically one
  auto b1 = regularity_certificate(Psi::constant(0.7), 2.0);
  REQUIRE(b1.has_value());
  CHECK(*b1 == doctest::Approx(1.0));

  // t^{-2}: psi(2t)/psi(t) = 1/4 in the tail
  auto b2 = regularity_certificate(Psi::power_log(2.0, 0.0), 2.0);
  REQUIRE(b2.has_value());
  CHECK(*b2 == doctest::Approx(0.25).epsilon(1e-6));

  // exponential decay sampled into a table has no positive certificate
  std::vector<std::pair<double, double>> knots;
  for (int i = 0; i <= 80; ++i) knots.emplace_back(double(i + 1), std::exp(-double(i + 1)));
  CHECK(!regularity_certificate(Psi::tabulated(knots), 2.0).has_value());

  CHECK_THROWS_AS(regularity_certificate(Psi::constant(1.0), 1.0), InvalidSpec);
}

TEST_CASE("psi scaling stays in class") {
  Psi p = Psi::power_log(1.5, 2.0);
  Psi q = p.scaled(3.0);
  CHECK(q(50.0)[0] == doctest::Approx(3.0 * p(50.0)[0]).epsilon(1e-12));
  // still decidable: no UnsupportedPsiClass
  Form f = Form::scalar(3, GeneralizedQuadratic{2, 1, 2.0});
  CHECK_NOTHROW(asymptotic_criterion(f, q, xi0(), CriterionFamily::RegularZeroSet));
}

TEST_CASE("asymptotic criterion for the regular family") {
  Form f = Form::scalar(3, GeneralizedQuadratic{2, 1, 2.0}); // n = 3, d = 2
  // A = n - d - 1 - s = -s
  CHECK(!asymptotic_criterion(f, Psi::power_log(0.5, 0.0), xi0(),
                              CriterionFamily::RegularZeroSet).convergent);
  CHECK(asymptotic_criterion(f, Psi::power_log(1.5, 0.0), xi0(),
                             CriterionFamily::RegularZeroSet).convergent);
  // boundary A = -1: log exponent decides
  CHECK(!asymptotic_criterion(f, Psi::power_log(1.0, 0.0), xi0(),
                              CriterionFamily::RegularZeroSet).convergent);
  CHECK(!asymptotic_criterion(f, Psi::power_log(1.0, -1.0), xi0(),
                              CriterionFamily::RegularZeroSet).convergent);
  CHECK(asymptotic_criterion(f, Psi::power_log(1.0, -1.5), xi0(),
                             CriterionFamily::RegularZeroSet).convergent);
  // constant psi diverges (A = n - d - 1 = 0)
  CHECK(!asymptotic_criterion(f, Psi::constant(0.1), xi0(),
                              CriterionFamily::RegularZeroSet).convergent);
}

TEST_CASE("asymptotic criterion for product and max families") {
  Form prod = Form::scalar(3, CoordinateProduct{2.0});
  // xi = 0: A = -1 - s/omega, B = eps/omega + n - 2
  CHECK(asymptotic_criterion(prod, Psi::power_log(0.5, 0.0), xi0(),
                             CriterionFamily::Product).convergent);
  // constant psi: A = -1, B = n - 2 >= 0, so the integral diverges
  CHECK(!asymptotic_criterion(prod, Psi::constant(0.1), xi0(),
                              CriterionFamily::Product).convergent);
  // xi > 0 branch uses s, not s/omega
  auto v = asymptotic_criterion(prod, Psi::power_log(0.5, 0.0), xi(0.7),
                                CriterionFamily::Product);
  CHECK(v.xi_branch == XiBranch::NonzeroShift);
  CHECK(v.convergent);

  Form mx = Form::scalar(3, CoordinateMax{2, {1.0, 2.0}}); // p = 2, z = 1.5
  // xi = 0: A = n - p - 1 - s z = -s z
  CHECK(!asymptotic_criterion(mx, Psi::power_log(0.5, 0.0), xi0(),
                              CriterionFamily::Max).convergent);
  CHECK(asymptotic_criterion(mx, Psi::power_log(1.0, 0.0), xi0(),
                             CriterionFamily::Max).convergent);
  // xi > 0: A = n - p - 1 - s
  CHECK(!asymptotic_criterion(mx, Psi::power_log(1.0, 0.0), xi(0.3),
                              CriterionFamily::Max).convergent);
  CHECK(asymptotic_criterion(mx, Psi::power_log(1.5, 0.0), xi(0.3),
                             CriterionFamily::Max).convergent);
}

TEST_CASE("uniform series criterion") {
  Form f = Form::scalar(3, GeneralizedQuadratic{2, 1, 2.0}); // n = 3, d = 2
  // C = n - d - s = 1 - s; terms (2^{kC} k^D)^{1-r}
  CHECK(uniform_series_criterion(f, Psi::power_log(0.5, 0.0), xi0(), 2.0,
                                 CriterionFamily::RegularZeroSet).convergent);
  CHECK(!uniform_series_criterion(f, Psi::power_log(1.0, 0.0), xi0(), 2.0,
                                  CriterionFamily::RegularZeroSet).convergent);
  CHECK(!uniform_series_criterion(f, Psi::power_log(1.5, 0.0), xi0(), 2.0,
                                  CriterionFamily::RegularZeroSet).convergent);
  // C = 0 boundary: D(1-r) < -1
  CHECK(uniform_series_criterion(f, Psi({PowerLog{1.0, 2.0, 0.0}}), xi0(), 2.0,
                                 CriterionFamily::RegularZeroSet).convergent);
  CHECK(!uniform_series_criterion(f, Psi({PowerLog{1.0, 0.5, 0.0}}), xi0(), 2.0,
                                  CriterionFamily::RegularZeroSet).convergent);
  CHECK_THROWS_AS(uniform_series_criterion(f, Psi::power_log(1.0, 0.0), xi0(), 1.0,
                                           CriterionFamily::RegularZeroSet),
                  InvalidSpec);
}

TEST_CASE("series criterion requires d < n for the regular family") {
  Form f = Form::scalar(3, CoordinateProduct{1.0}); // d = 3 = n
  CHECK_THROWS_AS(uniform_series_criterion(f, Psi::power_log(1.0, 0.0),
                                           Eigen::VectorXd::Zero(1), 2.0,
                                           CriterionFamily::RegularZeroSet),
                  InvalidDegrees);
}

TEST_CASE("criterion preconditions") {
  Form f = Form::scalar(3, GeneralizedQuadratic{2, 1, 2.0});
  CHECK_THROWS_AS(asymptotic_criterion(f, Psi::tabulated({{1.0, 0.5}}), xi0(),
                                       CriterionFamily::RegularZeroSet),
                  UnsupportedPsiClass);
  CHECK_THROWS_AS(asymptotic_criterion(f, Psi::power_log(1.0, 0.0), xi0(),
                                       CriterionFamily::Product),
                  InvalidSpec);
  Form prod = Form::scalar(2, CoordinateProduct{1.0});
  CHECK_THROWS_AS(asymptotic_criterion(prod, Psi::power_log(1.0, 0.0), xi(-0.5),
                                       CriterionFamily::Product),
                  InvalidSpec);
  CHECK_THROWS_AS(asymptotic_criterion(f, Psi::power_log(1.0, 0.0),
                                       Eigen::VectorXd::Zero(2),
                                       CriterionFamily::RegularZeroSet),
                  DimensionMismatch);
}

TEST_CASE("scaling immunity of verdicts") {
  struct Case {
    Form form;
    Psi psi;
    Eigen::VectorXd shift;
    CriterionFamily fam;
  };
  std::vector<Case> cases = {
      {Form::scalar(3, GeneralizedQuadratic{2, 1, 2.0}), Psi::power_log(0.7, 1.0),
       xi0(), CriterionFamily::RegularZeroSet},
      {Form::scalar(3, GeneralizedQuadratic{2, 1, 2.0}), Psi::power_log(1.0, -2.0),
       xi0(), CriterionFamily::RegularZeroSet},
      {Form::scalar(3, CoordinateProduct{2.0}), Psi::power_log(0.5, 0.0), xi(0.4),
       CriterionFamily::Product},
      {Form::scalar(3, CoordinateMax{2, {1.0, 2.0}}), Psi::power_log(1.0, 0.0),
       xi0(), CriterionFamily::Max},
  };
  for (double c : {0.01, 0.5, 3.0, 1e4}) {
    for (const Case& cs : cases) {
      auto a = asymptotic_criterion(cs.form, cs.psi, cs.shift, cs.fam);
      auto b = asymptotic_criterion(cs.form, cs.psi.scaled(c), cs.shift, cs.fam);
      CHECK(a.convergent == b.convergent);
      if (cs.fam != CriterionFamily::RegularZeroSet ||
          cs.form.total_degree() < cs.form.n()) {
        auto u = uniform_series_criterion(cs.form, cs.psi, cs.shift, 2.0, cs.fam);
        auto w = uniform_series_criterion(cs.form, cs.psi.scaled(c), cs.shift, 2.0, cs.fam);
        CHECK(u.convergent == w.convergent);
      }
    }
  }
}
