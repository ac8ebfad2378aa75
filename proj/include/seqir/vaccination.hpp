#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "seqir/demography.hpp"
#include "seqir/params.hpp"

namespace seqir {

/// Delta-peak vaccination policy: up to three (age, intensity) atoms with
/// strictly increasing ages. An atom may instead carry the "deplete" flag
/// (infinite intensity: everyone reaching that age is vaccinated); only the
/// last atom may deplete.
struct VaccinationPolicy {
  struct Atom {
    double age;
    double intensity;  // ignored when deplete is set
    bool deplete = false;
  };

  VaccinationPolicy() = default;
  explicit VaccinationPolicy(std::vector<Atom> atoms);

  std::vector<Atom> atoms;

  bool empty() const { return atoms.empty(); }
};

/// The policy pushed through the substitution psi = exp(-integral of v) * v:
/// point masses whose weights are the susceptible-survivor drops at each
/// atom. remaining_after[j] = exp(-(c_1+...+c_{j+1})) is carried explicitly
/// so the piecewise-constant functions exp(-integral of v) and
/// 1 - integral of psi share one representation.
struct PsiMeasure {
  struct Atom {
    double age;
    double weight;
    double remaining_after;
  };

  std::vector<Atom> atoms;

  double total_mass() const;  // Q(psi)
};

PsiMeasure policy_to_psi(const VaccinationPolicy& policy);
VaccinationPolicy policy_from_psi(const PsiMeasure& psi);

/// Measure from raw (age, weight) pairs; weights must be positive with total
/// mass at most 1. A final remainder below 1e-15 is snapped to exact zero
/// (total depletion).
PsiMeasure make_psi(const std::vector<std::pair<double, double>>& atoms);

/// Piecewise-constant survivor function e^{-integral of v} as
/// (breakpoints, value after each breakpoint); starts at 1 before the first
/// breakpoint.
struct PiecewiseConstant {
  std::vector<double> breaks;
  std::vector<double> values;

  bool operator==(const PiecewiseConstant&) const = default;
};

PiecewiseConstant survivor_function(const VaccinationPolicy& policy);
/// 1 - integral of psi, from the measure's carried survivor ladder.
PiecewiseConstant survivor_function(const PsiMeasure& psi);

/// Cost and impact weights of the optimization problem.
struct CostWeights {
  CostWeights(Profile g1, Profile g2, Profile f, double F_bar);

  Profile g1;     // cost of immunizing one susceptible at age a
  Profile g2;     // cost of immunizing one exposed at age a
  Profile f;      // social impact of one diseased case at age a
  double F_bar;   // cap on the weighted prevalence
};

/// Linear response kernels of cost, weighted prevalence and force of
/// infection to the measure psi, all at a fixed ambient force amplitude h:
///   cost        C(psi)       =        integral of psi * C1
///   prevalence  F~(v)        = F0  -  integral of psi * F1
///   force       H~(v)        = H0  -  integral of psi * H1
struct VaccKernels {
  GridPtr grid;
  Profile C1, F1, H1;
  double F0;  // weighted prevalence with no vaccination
  double H0;  // integral of k2*U*i with no vaccination
  double h;   // ambient force-of-infection amplitude the kernels assume
};

/// Steady profiles with vaccination folded in as exact multiplicative jumps
/// of the susceptible and exposed fractions (quarantine-free system).
struct VaccinatedState {
  Profile s, e, i, r, vacc;
};

VaccinatedState vaccinated_profiles(double h, const VaccinationPolicy& policy,
                                    const EpiParams& params, const Profile& U);

/// Builds C1, F1, H1 by linearizing the prevalence and force functionals in
/// psi, then certifies the affine identity against independently computed
/// vaccinated profiles for 20 random single-atom policies (KernelMismatch on
/// failure). The quarantine route is absent during vaccination, so q1,
/// gamma1, gamma2 of params are not used here.
VaccKernels build_kernels(double h, const EpiParams& params, const Demography& d,
                          const CostWeights& w);

/// C, F, H, Q of a measure under the kernels (linear interpolation between
/// nodes for off-node atom ages).
struct PolicyValue {
  double cost;         // C(psi)
  double f_reduction;  // F(psi)
  double h_reduction;  // H(psi)
  double mass;         // Q(psi)
};

PolicyValue evaluate_policy(const PsiMeasure& psi, const VaccKernels& k);

struct Multipliers {
  double lambda1 = 0.0;  // prevalence constraint
  double lambda2 = 0.0;  // mass cap Q <= 1
  double lambda3 = 0.0;  // force-of-infection equality (when imposed)
};

struct KktReport {
  double tolerance;
  double scale;
  double stationarity_max;     // max over grid of l1*F1 + l2 + l3*H1 - C1
  double attainment_defect;    // max gap between that max and the atom ages
  double slack_f;              // |l1 * (F(psi) - (F0 - F_bar))|
  double slack_q;              // |l2 * (Q(psi) - 1)|
  double zero_sum;             // |C - l1*F - l2*Q - l3*H|
  bool stationarity_ok;
  bool attained_at_atoms;
  bool slackness_ok;
  bool zero_sum_ok;
  bool pass;
};

KktReport kkt_residuals(const VaccinationPolicy& policy, const Multipliers& m,
                        const VaccKernels& k, double F_bar,
                        std::optional<double> h_equality = std::nullopt,
                        double tolerance = 1e-5);

struct OptimizeResult {
  VaccinationPolicy policy;
  PsiMeasure psi;
  PolicyValue value;
  Multipliers multipliers;
  KktReport kkt;
  double prevalence;  // achieved weighted prevalence F0 - F(psi)
  double h_ambient;   // the h the kernels were built at
};

/// Minimum-cost policy subject to F(psi) >= F0 - F_bar and Q(psi) <= 1,
/// optionally pinned to reproduce a given force amplitude through
/// H(psi) = H0 - h_equality. Off-node atoms add nothing over splitting their
/// weight onto the two neighbouring nodes (the kernels are interpolated
/// linearly), so the search space is the exact node-mass linear program; its
/// optimal basis has at most one atom per constraint row and the simplex
/// duals certify the Kuhn-Tucker conditions. Throws Infeasible when no
/// policy meets the constraints.
OptimizeResult optimize(const VaccKernels& k, const CostWeights& w,
                        std::optional<double> h_equality = std::nullopt);

struct SelfConsistentResult {
  VaccinationPolicy policy;
  double h;
  int iterations;
  std::vector<double> h_history;
  OptimizeResult opt;
  double r0_unvaccinated;
  double h_unvaccinated;
};

/// Outer fixed point closing the loop between the policy and the force of
/// infection: h_{k+1} = H0(h_k) - H(psi*), damped by 0.5, until the change
/// is below target_tol. Throws NotConverged (with the h sequence) after 100
/// iterations.
SelfConsistentResult solve_self_consistent(const EpiParams& params,
                                           const Demography& d,
                                           const CostWeights& w,
                                           double target_tol = 1e-8);

void write_policy_json(std::ostream& os, const SelfConsistentResult& result,
                       bool converged = true);

}  // namespace seqir
