#include "doctest.h"

#include <cmath>

#include "seqir/lyapunov.hpp"
#include "seqir/steady_state.hpp"
#include "test_helpers.hpp"

using namespace seqir;

namespace {

// Crank-Nicolson residual of T' - rate*T + g = 0 on interior panels.
double ode_residual_sup(const Profile& T, const Profile& g, double rate) {
  double da = T.grid()->spacing();
  double sup = 0.0;
  for (int k = 0; k + 1 < T.size(); ++k) {
    double r = (T[k + 1] - T[k]) / da - rate * 0.5 * (T[k] + T[k + 1]) +
               0.5 * (g[k] + g[k + 1]);
    sup = std::max(sup, std::fabs(r));
  }
  return sup;
}

}  // namespace

TEST_SUITE("lyapunov") {

TEST_CASE("no transmission kernel zeroes all weights") {
  auto sc = test::base_scenario(100.0, 501);
  EpiParams dead = sc.params.with_k2_scaled(0.0);
  LyapunovWeights w = compute_weights(dead, sc.U);
  CHECK(w.alpha1.max_abs() == 0.0);
  CHECK(w.alpha2.max_abs() == 0.0);
  CHECK(w.alpha3.max_abs() == 0.0);
}

TEST_CASE("alpha3 matches the closed-form tail integral for constants") {
  // Use the analytic stationary density mu*exp(-mu a) directly, as in the
  // constant-parameter reduction.
  GridPtr g = AgeGrid::make(100.0, 2001);
  const double mu = 0.02, gamma = 0.1;
  Profile U = Profile::sample(g, [&](double a) { return mu * std::exp(-mu * a); });
  EpiParams p(0.2, 0.1, 0.05, 0.1, gamma, Profile::constant(g, 1.0),
              Profile::constant(g, 1.0));
  LyapunovWeights w = compute_weights(p, U);

  // truncated tail: mu/(mu+gamma) (e^{-mu a} - e^{gamma a} e^{-(mu+gamma) a_max})
  auto exact = [&](double a) {
    return mu / (mu + gamma) *
           (std::exp(-mu * a) - std::exp(gamma * a - (mu + gamma) * g->a_max()));
  };
  for (int k : {0, 100, 1000, 1999})
    CHECK(w.alpha3[k] == doctest::Approx(exact(g->node(k))).epsilon(2e-6));
  CHECK(w.alpha3[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-4));
  CHECK(w.alpha3[g->size() - 1] == 0.0);
}

TEST_CASE("weights are nonnegative and vanish at a_max") {
  auto sc = test::base_scenario();
  LyapunovWeights w = compute_weights(sc.params, sc.U);
  for (const Profile* p : {&w.alpha1, &w.alpha2, &w.alpha3}) {
    CHECK(p->min_value() >= 0.0);
    CHECK((*p)[sc.grid->size() - 1] == 0.0);
  }
}

TEST_CASE("weights satisfy their defining ODEs to 1e-6") {
  auto sc = test::base_scenario();
  const EpiParams& p = sc.params;
  LyapunovWeights w = compute_weights(p, sc.U);
  Profile k2U = p.k2 * sc.U;
  CHECK(ode_residual_sup(w.alpha3, k2U, p.gamma) <= 1e-6);
  CHECK(ode_residual_sup(w.alpha2, p.gamma1 * w.alpha3, p.gamma1 + p.gamma2) <= 1e-6);
  CHECK(ode_residual_sup(w.alpha1, p.q1 * w.alpha2 + p.mu1 * w.alpha3,
                         p.mu1 + p.q1) <= 1e-6);
}

TEST_CASE("V basics") {
  auto sc = test::base_scenario(100.0, 501);
  LyapunovWeights w = compute_weights(sc.params, sc.U);
  SUBCASE("disease-free value is zero") {
    CHECK(evaluate_V(EpiState::disease_free(sc.grid), w) == 0.0);
  }
  SUBCASE("V is linear in the infected compartments") {
    EpiState seeded = seeded_initial_state(sc.grid, sc.U, SeedSpec{});
    SeedSpec twice;
    twice.mass = 2e-4;
    EpiState seeded2 = seeded_initial_state(sc.grid, sc.U, twice);
    double v1 = evaluate_V(seeded, w);
    CHECK(v1 > 0.0);
    CHECK(evaluate_V(seeded2, w) == doctest::Approx(2.0 * v1).epsilon(1e-12));
  }
}

TEST_CASE("V agrees with a 10x-resolution evaluation") {
  auto coarse = test::base_scenario(100.0, 501);
  auto fine = test::base_scenario(100.0, 5001);
  SeedSpec seed;
  double vc = evaluate_V(seeded_initial_state(coarse.grid, coarse.U, seed),
                         compute_weights(coarse.params, coarse.U));
  double vf = evaluate_V(seeded_initial_state(fine.grid, fine.U, seed),
                         compute_weights(fine.params, fine.U));
  CHECK(vc == doctest::Approx(vf).epsilon(1e-4));
}

TEST_CASE("V decreases along subcritical trajectories") {
  auto sc = test::base_scenario();
  double r0_base = r0_quadrature(sc.params, sc.U);
  EpiParams p = sc.params.with_k2_scaled(0.9 / r0_base);
  double r0 = r0_quadrature(p, sc.U);
  LyapunovWeights w = compute_weights(p, sc.U);
  EpiState init = seeded_initial_state(sc.grid, sc.U, SeedSpec{});
  Trajectory traj = simulate(init, p, sc.U, 150.0, 20);
  DecreaseReport rep = verify_decrease(traj, w, p, sc.U, r0);
  CHECK(rep.pass);
  CHECK(rep.max_violation <= 1e-4);
  for (std::size_t k = 1; k < rep.samples.size(); ++k)
    CHECK(rep.samples[k].V <= rep.samples[k - 1].V + 1e-4);
}

TEST_CASE("disease-free trajectory passes trivially with V = 0") {
  auto sc = test::base_scenario(100.0, 501);
  LyapunovWeights w = compute_weights(sc.params, sc.U);
  Trajectory traj = simulate(EpiState::disease_free(sc.grid), sc.params, sc.U,
                             20.0, 50);
  DecreaseReport rep =
      verify_decrease(traj, w, sc.params, sc.U, r0_quadrature(sc.params, sc.U));
  CHECK(rep.pass);
  for (const DecreaseSample& s : rep.samples) {
    CHECK(s.V == 0.0);
    CHECK(s.bound == 0.0);
  }
}

TEST_CASE("V grows near the disease-free state when R0 > 1") {
  auto sc = test::base_scenario();
  double r0_base = r0_quadrature(sc.params, sc.U);
  EpiParams p = sc.params.with_k2_scaled(2.0 / r0_base);
  LyapunovWeights w = compute_weights(p, sc.U);
  EpiState init = seeded_initial_state(sc.grid, sc.U, SeedSpec{});
  Trajectory traj = simulate(init, p, sc.U, 15.0, 10);
  DecreaseReport rep =
      verify_decrease(traj, w, p, sc.U, r0_quadrature(p, sc.U));
  REQUIRE(rep.samples.size() >= 11);
  for (std::size_t k = 0; k < 10; ++k) {
    double dv = (rep.samples[k + 1].V - rep.samples[k].V) /
                (rep.samples[k + 1].t - rep.samples[k].t);
    CHECK(dv > 0.0);
  }
}

}  // TEST_SUITE
