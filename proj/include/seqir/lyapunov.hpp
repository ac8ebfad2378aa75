#pragma once

#include <iosfwd>
#include <vector>

#include "seqir/transient.hpp"

namespace seqir {

/// Age-dependent weights making V = integral of (a1*e + a2*q + a3*i)
/// non-increasing along trajectories whenever R0 <= 1.
struct LyapunovWeights {
  Profile alpha1, alpha2, alpha3;
};

/// alpha3 first (tail integral of k2*U with decay gamma), then alpha2 from
/// alpha3, then alpha1 from both; all by backward decayed integrals.
LyapunovWeights compute_weights(const EpiParams& params, const Profile& U);

/// V(state) = integral of alpha1*e + alpha2*q + alpha3*i.
double evaluate_V(const EpiState& state, const LyapunovWeights& w);

struct DecreaseSample {
  double t;
  double V;
  double bound;  // (R0 - 1) * integral of k2 * i * U at this time
};

struct DecreaseReport {
  double r0;
  double max_violation;  // max over sample pairs of dV/dt minus the bound
  bool pass;             // max_violation <= tolerance
  double tolerance;
  std::vector<DecreaseSample> samples;
};

/// Finite-difference check of dV/dt <= (R0-1) * integral of k2*i*U along a
/// stored trajectory; the 1e-4 default tolerance budgets the integrator's
/// discretization error.
DecreaseReport verify_decrease(const Trajectory& traj, const LyapunovWeights& w,
                               const EpiParams& params, const Profile& U,
                               double r0, double tolerance = 1e-4);

void write_decrease_json(std::ostream& os, const DecreaseReport& report);

}  // namespace seqir
