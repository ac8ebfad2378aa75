#include "doctest.h"

#include <cmath>
#include <random>

#include "seqir/demography.hpp"
#include "test_helpers.hpp"

using namespace seqir;

TEST_SUITE("demography") {

TEST_CASE("survival with constant mortality is the exact exponential") {
  GridPtr g = AgeGrid::make(400.0, 4001);
  Demography d(Profile::constant(g, 0.02), Profile::constant(g, 0.02));
  Profile pi = survival(d);
  // node 500 sits at age 50; the cumulative of a constant is exact
  CHECK(pi[500] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(pi[0] == 1.0);
}

TEST_CASE("zero mortality is rejected") {
  GridPtr g = AgeGrid::make(100.0, 501);
  CHECK_THROWS_AS(Demography(Profile::zero(g), Profile::constant(g, 0.02)),
                  DegenerateDemography);
}

TEST_CASE("negative rates are rejected") {
  GridPtr g = AgeGrid::make(100.0, 501);
  CHECK_THROWS_AS(Demography(Profile::constant(g, -0.1), Profile::zero(g)),
                  InvalidParameter);
  CHECK_THROWS_AS(Demography(Profile::constant(g, 0.1), Profile::constant(g, -1.0)),
                  InvalidParameter);
}

TEST_CASE("linearly increasing mortality gives the quadratic survival") {
  GridPtr g = AgeGrid::make(150.0, 1501);
  Demography d(Profile::sample(g, [](double a) { return a / 500.0; }),
               Profile::constant(g, 0.02));
  Profile pi = survival(d);
  // cumulative of a linear profile is exact for the trapezoid rule
  CHECK(pi[1000] == doctest::Approx(std::exp(-10.0)).epsilon(1e-12));
  CHECK(d.survival_tail_ok());
}

TEST_CASE("survival is non-increasing and in (0, 1]") {
  std::mt19937 rng(23);
  GridPtr g = AgeGrid::make(120.0, 601);
  Profile mu = test::random_positive_profile(g, rng, 0.05, 0.3);
  Demography d(mu, Profile::constant(g, 0.02));
  Profile pi = survival(d);
  for (int k = 0; k < g->size(); ++k) {
    CHECK(pi[k] > 0.0);
    CHECK(pi[k] <= 1.0);
    if (k > 0) CHECK(pi[k] <= pi[k - 1]);
  }
}

TEST_CASE("stable age distribution integrates to exactly 1") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    GridPtr g = AgeGrid::make(150.0, 1001);
    Profile mu = test::random_positive_profile(g, rng, 0.05, 0.25);
    Demography d(mu, Profile::constant(g, 0.02));
    Profile U = stable_age_distribution(d);
    CHECK(std::fabs(integrate(U) - 1.0) <= 1e-10);
  }
}

TEST_CASE("stable age distribution shape for constant mortality") {
  GridPtr g = AgeGrid::make(400.0, 2001);
  Demography d(Profile::constant(g, 0.02), Profile::constant(g, 0.02));
  Profile U = stable_age_distribution(d);
  // U(a)/U(0) = exp(-mu a) pointwise, and U(0) is close to mu for large a_max
  for (int k : {100, 500, 1500})
    CHECK(U[k] / U[0] == doctest::Approx(std::exp(-0.02 * g->node(k))).epsilon(1e-12));
  CHECK(U[0] == doctest::Approx(0.02).epsilon(1e-3));
}

TEST_CASE("beta0 for quadratic survival matches a 10x-resolution quadrature") {
  GridPtr g = AgeGrid::make(150.0, 601);
  auto mu_fn = [](double a) { return a / 500.0; };
  Demography d(Profile::sample(g, mu_fn), Profile::constant(g, 0.02));
  Profile U = stable_age_distribution(d);
  double beta0 = U[0];

  GridPtr fine = AgeGrid::make(150.0, 6001);
  Demography dfine(Profile::sample(fine, mu_fn), Profile::constant(fine, 0.02));
  double beta0_fine = stable_age_distribution(dfine)[0];
  CHECK(beta0 == doctest::Approx(beta0_fine).epsilon(1e-5));
}

TEST_CASE("net reproduction rate") {
  GridPtr g = AgeGrid::make(400.0, 2001);
  SUBCASE("beta = mu constant gives 1 within truncation") {
    Demography d(Profile::constant(g, 0.02), Profile::constant(g, 0.02));
    CHECK(std::fabs(net_reproduction_rate(d) - 1.0) <= 1e-3);
  }
  SUBCASE("no fertility gives 0") {
    Demography d(Profile::constant(g, 0.02), Profile::zero(g));
    CHECK(net_reproduction_rate(d) == 0.0);
  }
  SUBCASE("beta/mu = 1.5 for constants") {
    Demography d(Profile::constant(g, 0.02), Profile::constant(g, 0.03));
    CHECK(net_reproduction_rate(d) == doctest::Approx(1.5).epsilon(1e-3));
  }
}

TEST_CASE("survival tail flag reflects truncation quality") {
  GridPtr coarse = AgeGrid::make(100.0, 501);
  Demography weak(Profile::constant(coarse, 0.02), Profile::constant(coarse, 0.02));
  CHECK_FALSE(weak.survival_tail_ok());  // exp(-2) of the cohort still alive

  GridPtr wide = AgeGrid::make(1000.0, 2001);
  Demography strong(Profile::constant(wide, 0.02), Profile::constant(wide, 0.02));
  CHECK(strong.survival_tail_ok());
}

}  // TEST_SUITE
