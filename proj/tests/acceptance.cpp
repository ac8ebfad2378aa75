// End-to-end acceptance suite: one numbered check per line, every tolerance
// pinned in code. Exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "seqir/demography.hpp"
#include "seqir/lyapunov.hpp"
#include "seqir/steady_state.hpp"
#include "seqir/transient.hpp"
#include "seqir/vaccination.hpp"

using namespace seqir;

namespace {

int g_failures = 0;
std::vector<std::pair<int, std::string>> g_lines;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& detail) {
  g_lines.push_back({criterion, std::string(pass ? "PASS" : "FAIL") + "  " + detail});
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

struct Setup {
  GridPtr grid;
  Demography demography;
  EpiParams params;
  Profile U;
};

Setup make_setup(double a_max, int n) {
  GridPtr grid = AgeGrid::make(a_max, n);
  Demography demo(Profile::constant(grid, 0.02), Profile::constant(grid, 0.02));
  EpiParams params(0.2, 0.1, 0.05, 0.1, 0.1, Profile::constant(grid, 1.0),
                   Profile::constant(grid, 1.0));
  Profile U = stable_age_distribution(demo);
  return Setup{grid, std::move(demo), std::move(params), std::move(U)};
}

// --------------------------------------------------------------------------
// 1. Closed-form R0 reproduction at n = 2001, a_max = 400.
// --------------------------------------------------------------------------
void criterion_1() {
  Timer timer;
  Setup s = make_setup(400.0, 2001);
  double quad = r0_quadrature(s.params, s.U);
  R0Breakdown closed = r0_closed_form(0.02, 0.1, 0.2, 0.1, 0.05, 0.1, 1.0);
  double gap = std::fabs(quad - closed.r0) / closed.r0;

  EpiParams seir(0.2, 0.0, 0.0, 0.0, 0.1, s.params.k1, s.params.k2);
  double quad_seir = r0_quadrature(seir, s.U);
  double closed_seir = 1.0 * 0.2 / ((0.02 + 0.1) * (0.02 + 0.2));
  double gap_seir = std::fabs(quad_seir - closed_seir) / closed_seir;
  double elapsed = timer.seconds();

  bool pass = gap <= 1e-3 && gap_seir <= 1e-3 && elapsed < 1.0;
  report(1, pass,
         fmt("closed-form R0: gap %.3g (SEQIR), %.3g (SEIR), tol 1e-3, %.2fs",
             gap, gap_seir, elapsed));
}

// --------------------------------------------------------------------------
// 2. Threshold dichotomy across R0 in {0.5, 0.9, 1.1, 2.0}.
// --------------------------------------------------------------------------
void criterion_2() {
  Timer timer;
  Setup s = make_setup(100.0, 2001);
  double base = r0_quadrature(s.params, s.U);
  bool pass = true;
  double worst_g = 0.0;
  for (double target : {0.5, 0.9, 1.1, 2.0}) {
    EpiParams p = s.params.with_k2_scaled(target / base);
    auto endemic = solve_endemic(p, s.U);
    if (target <= 1.0) {
      pass = pass && !endemic.has_value();
    } else {
      if (!endemic || endemic->h <= 0.0) {
        pass = false;
        continue;
      }
      double g = std::fabs(characteristic_value(endemic->h, p, s.U) - 1.0);
      worst_g = std::max(worst_g, g);
      pass = pass && g <= 1e-10;
    }
  }
  double elapsed = timer.seconds();
  pass = pass && elapsed < 5.0;
  report(2, pass,
         fmt("threshold dichotomy: none below 1, endemic above, worst |G-1| = "
             "%.3g (tol 1e-10), %.2fs",
             worst_g, elapsed));
}

// --------------------------------------------------------------------------
// 3. Lyapunov decrease for R0 = 0.9; growth near disease-free for R0 = 2.
// --------------------------------------------------------------------------
void criterion_3() {
  Timer timer;
  Setup s = make_setup(100.0, 2001);
  double base = r0_quadrature(s.params, s.U);

  EpiParams sub = s.params.with_k2_scaled(0.9 / base);
  double r0_sub = r0_quadrature(sub, s.U);
  LyapunovWeights w_sub = compute_weights(sub, s.U);
  EpiState init = seeded_initial_state(s.grid, s.U, SeedSpec{});
  Trajectory traj = simulate(init, sub, s.U, 300.0, 20);
  bool monotone = true;
  DecreaseReport rep = verify_decrease(traj, w_sub, sub, s.U, r0_sub);
  for (std::size_t k = 1; k < rep.samples.size(); ++k)
    monotone = monotone && rep.samples[k].V <= rep.samples[k - 1].V + 1e-4;

  EpiParams super = s.params.with_k2_scaled(2.0 / base);
  double r0_super = r0_quadrature(super, s.U);
  LyapunovWeights w_super = compute_weights(super, s.U);
  Trajectory traj2 = simulate(init, super, s.U, 11.0, 10);
  DecreaseReport rep2 = verify_decrease(traj2, w_super, super, s.U, r0_super);
  bool growing = rep2.samples.size() >= 11;
  for (std::size_t k = 0; growing && k < 10; ++k) {
    double dv = (rep2.samples[k + 1].V - rep2.samples[k].V) /
                (rep2.samples[k + 1].t - rep2.samples[k].t);
    growing = dv > 0.0;
  }
  double elapsed = timer.seconds();
  bool pass = monotone && rep.pass && growing && elapsed < 30.0;
  report(3, pass,
         fmt("Lyapunov: R0=0.9 decrease (max violation %.3g, tol 1e-4), R0=2 "
             "growth at first 10 samples %s, %.2fs",
             rep.max_violation, growing ? "yes" : "no", elapsed));
}

// --------------------------------------------------------------------------
// 4. Average age of infection for constant mu = 0.02, phi = 0.08.
// --------------------------------------------------------------------------
void criterion_4() {
  Setup s = make_setup(100.0, 2001);
  SteadyState ss = steady_profiles(0.08, s.params);
  double age = average_age_of_infection(ss, s.demography);
  double gap = std::fabs(age - 10.0) / 10.0;
  report(4, gap <= 1e-3,
         fmt("average age of infection: %.5f vs 1/(phi+mu) = 10 (rel gap %.3g, "
             "tol 1e-3)",
             age, gap));
}

// --------------------------------------------------------------------------
// 5 & 9. Conservation over a 10^4-step run and transient/steady consistency.
// --------------------------------------------------------------------------
void criteria_5_and_9() {
  Timer timer;
  Setup s = make_setup(100.0, 2001);  // dt = 0.05, t = 500 -> 10^4 steps
  double base = r0_quadrature(s.params, s.U);
  EpiParams p2 = s.params.with_k2_scaled(2.0 / base);
  EpiState init = seeded_initial_state(s.grid, s.U, SeedSpec{});
  Trajectory traj = simulate(init, p2, s.U, 500.0, 20);

  double max_defect = 0.0;
  for (const EpiState& st : traj.states)
    for (int k = 0; k < s.grid->size(); ++k) {
      double sum = st.s[k] + st.e[k] + st.q[k] + st.i[k] + st.r[k];
      max_defect = std::max(max_defect, std::fabs(sum - 1.0));
    }
  report(5, max_defect <= 1e-8,
         fmt("conservation over 10^4 steps: max |s+e+q+i+r-1| = %.3g (tol 1e-8)",
             max_defect));

  auto endemic = solve_endemic(p2, s.U);
  double sup = std::numeric_limits<double>::infinity();
  if (endemic) {
    sup = 0.0;
    const EpiState& fin = traj.back();
    for (int k = 0; k < s.grid->size(); ++k)
      sup = std::max({sup, std::fabs(fin.s[k] - endemic->s[k]),
                      std::fabs(fin.e[k] - endemic->e[k]),
                      std::fabs(fin.q[k] - endemic->q[k]),
                      std::fabs(fin.i[k] - endemic->i[k]),
                      std::fabs(fin.r[k] - endemic->r[k])});
  }
  report(9, sup <= 1e-3,
         fmt("transient at t=500 vs endemic profiles: sup gap %.3g (tol 1e-3), "
             "%.1fs for the run",
             sup, timer.seconds()));
}

// --------------------------------------------------------------------------
// 6. Integration-order invariance for 5 random parameter draws.
// --------------------------------------------------------------------------
void criterion_6() {
  std::mt19937 rng(20260808u);
  std::uniform_real_distribution<double> rate(0.02, 0.5);
  std::uniform_real_distribution<double> level(0.3, 1.8);
  GridPtr grid = AgeGrid::make(100.0, 2001);
  Demography demo(Profile::constant(grid, 0.02), Profile::constant(grid, 0.02));
  Profile U = stable_age_distribution(demo);
  double worst = 0.0;
  for (int draw = 0; draw < 5; ++draw) {
    double b1 = level(rng), a1 = 0.5 * b1 * level(rng) / 1.8, f1 = rate(rng);
    double b2 = level(rng), a2 = 0.5 * b2 * level(rng) / 1.8, f2 = rate(rng);
    EpiParams p(rate(rng), rate(rng), rate(rng), rate(rng), rate(rng),
                Profile::sample(grid, [&](double a) {
                  return b1 + a1 * std::sin(f1 * a);
                }),
                Profile::sample(grid, [&](double a) {
                  return b2 + a2 * std::cos(f2 * a);
                }));
    worst = std::max(worst, std::fabs(r0_quadrature(p, U) -
                                      r0_quadrature_reversed(p, U)));
  }
  report(6, worst <= 1e-10,
         fmt("integration-order invariance: worst |forward - reversed| = %.3g "
             "(tol 1e-10)",
             worst));
}

// --------------------------------------------------------------------------
// 7. Optimizer soundness across loose/medium/tight prevalence caps.
// --------------------------------------------------------------------------
double brute_force_best_cost(const VaccKernels& k, double freq) {
  if (freq <= 0.0) return 0.0;
  const int n_ages = 50, n_levels = 8;
  const int n = k.grid->size();
  std::vector<int> ages(n_ages);
  for (int j = 0; j < n_ages; ++j)
    ages[j] = static_cast<int>(std::llround(double(j) * (n - 1) / (n_ages - 1)));
  std::vector<double> levels(n_levels);
  for (int l = 0; l < n_levels; ++l) levels[l] = double(l + 1) / n_levels;

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double cost, double f, double q) {
    if (f >= freq && q <= 1.0 + 1e-12) best = std::min(best, cost);
  };
  for (int i1 = 0; i1 < n_ages; ++i1)
    for (double w1 : levels) {
      consider(w1 * k.C1[ages[i1]], w1 * k.F1[ages[i1]], w1);
      for (int i2 = i1 + 1; i2 < n_ages; ++i2)
        for (double w2 : levels) {
          double c2 = w1 * k.C1[ages[i1]] + w2 * k.C1[ages[i2]];
          double f2 = w1 * k.F1[ages[i1]] + w2 * k.F1[ages[i2]];
          if (w1 + w2 <= 1.0 + 1e-12) consider(c2, f2, w1 + w2);
          for (int i3 = i2 + 1; i3 < n_ages; ++i3)
            for (double w3 : levels) {
              double q3 = w1 + w2 + w3;
              if (q3 > 1.0 + 1e-12) break;
              consider(c2 + w3 * k.C1[ages[i3]], f2 + w3 * k.F1[ages[i3]], q3);
            }
        }
    }
  return best;
}

void criterion_7() {
  Setup s = make_setup(100.0, 2001);
  EpiParams qfree = s.params.without_quarantine();
  auto endemic = solve_endemic(qfree, s.U);
  if (!endemic) {
    report(7, false, "optimizer: unexpected subcritical baseline");
    return;
  }
  CostWeights probe(Profile::constant(s.grid, 1.0), Profile::constant(s.grid, 1.0),
                    Profile::constant(s.grid, 1.0), 1.0);
  VaccKernels k = build_kernels(endemic->h, s.params, s.demography, probe);

  bool pass = true;
  std::string detail = "optimizer vs brute force:";
  double prev_cost = -1.0;
  for (double fraction : {0.6, 0.3, 0.1}) {  // loose / medium / tight caps
    Timer timer;
    CostWeights w(probe.g1, probe.g2, probe.f, fraction * k.F0);
    OptimizeResult res = optimize(k, w);
    double freq = k.F0 - w.F_bar;
    double brute = brute_force_best_cost(k, freq);
    double elapsed = timer.seconds();
    bool atoms_ok = res.policy.atoms.size() <= 3;
    bool kkt_ok = res.kkt.pass;
    bool beats = res.value.cost <= brute + 1e-12 * (1.0 + brute);
    bool monotone = res.value.cost >= prev_cost - 1e-12;
    bool fast = elapsed < 60.0;
    prev_cost = res.value.cost;
    pass = pass && atoms_ok && kkt_ok && beats && monotone && fast;
    detail += fmt(" [F_bar=%.2gF0: cost %.4g vs %.4g, %zu atoms, kkt %s, %.1fs]",
                  fraction, res.value.cost, brute, res.policy.atoms.size(),
                  kkt_ok ? "ok" : "FAIL", elapsed);
  }
  report(7, pass, detail);
}

// --------------------------------------------------------------------------
// 8. D(a)/psi identities for 100 random policies plus the kernel check.
// --------------------------------------------------------------------------
void criterion_8() {
  std::mt19937 rng(97);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> age(0.5, 99.5);
  std::uniform_real_distribution<double> intensity(0.1, 3.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  bool identical = true;
  for (int t = 0; t < 100; ++t) {
    int m = count(rng);
    std::vector<double> ages(m);
    for (double& a : ages) a = age(rng);
    std::sort(ages.begin(), ages.end());
    bool distinct = true;
    for (int j = 1; j < m; ++j) distinct = distinct && ages[j] > ages[j - 1];
    if (!distinct) {
      --t;
      continue;
    }
    std::vector<VaccinationPolicy::Atom> atoms;
    for (int j = 0; j < m; ++j) {
      bool deplete = (j == m - 1) && coin(rng) < 0.3;
      atoms.push_back({ages[j], deplete ? 0.0 : intensity(rng), deplete});
    }
    VaccinationPolicy policy(std::move(atoms));
    identical = identical &&
                survivor_function(policy) == survivor_function(policy_to_psi(policy));
  }

  // the affine kernel certification runs inside build_kernels at 1e-6
  Setup s = make_setup(100.0, 2001);
  CostWeights probe(Profile::constant(s.grid, 1.0), Profile::constant(s.grid, 1.0),
                    Profile::constant(s.grid, 1.0), 1.0);
  bool cert = true;
  try {
    build_kernels(0.1, s.params, s.demography, probe);
  } catch (const KernelMismatch&) {
    cert = false;
  }
  report(8, identical && cert,
         fmt("D(a)/psi representations identical for 100 random policies: %s; "
             "affine kernel certification at 1e-6: %s",
             identical ? "yes" : "no", cert ? "pass" : "fail"));
}

}  // namespace

int main() {
  std::printf("acceptance suite (constant-parameter baseline mu=0.02, gamma=0.1, "
              "mu1=0.2, q1=0.1, gamma1=0.05, gamma2=0.1)\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criteria_5_and_9();
  criterion_6();
  criterion_7();
  criterion_8();
  std::sort(g_lines.begin(), g_lines.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [criterion, line] : g_lines)
    std::printf("[%d/9] %s\n", criterion, line.c_str());
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
