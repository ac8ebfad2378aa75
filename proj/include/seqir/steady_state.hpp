#pragma once

#include <iosfwd>
#include <optional>

#include "seqir/demography.hpp"
#include "seqir/params.hpp"

namespace seqir {

/// Steady state of the normalized system under the separable force of
/// infection phi(a) = h * k1(a).
struct SteadyState {
  double h;
  Profile phi;
  Profile s, e, q, i, r;

  const GridPtr& grid() const { return s.grid(); }
};

/// R0 split into its two entry routes into the infected class.
struct R0Breakdown {
  double r1;  // direct E -> I route
  double r2;  // quarantined E -> Q -> I route
  double r0;  // r1 + r2
};

/// Steady profiles for a given force-of-infection amplitude h >= 0, computed
/// by the same exponential-trapezoidal age march the transient solver uses,
/// so a converged simulation and this function agree node for node.
SteadyState steady_profiles(double h, const EpiParams& params);

/// G(h) = (integral of k2*U*i_h) / h, extended continuously to G(0) = R0.
/// The endemic amplitude solves G(h) = 1; G is strictly decreasing in h
/// wherever k1 carries mass.
double characteristic_value(double h, const EpiParams& params, const Profile& U);

/// R0 by nested quadrature (outer age integral, inner cumulative cascades).
double r0_quadrature(const EpiParams& params, const Profile& U);

/// Same value split by route; r0 = r1 + r2 exactly.
R0Breakdown r0_quadrature_breakdown(const EpiParams& params, const Profile& U);

/// R0 with the nesting order reversed (innermost age variable outermost,
/// evaluated by transposed tail cascades). Agrees with r0_quadrature to
/// rounding; exercised as the integration-order-invariance check.
double r0_quadrature_reversed(const EpiParams& params, const Profile& U);

/// Closed form for age-independent parameters (k1 = 1, constant mortality).
/// Evaluates only the cancelled final expressions, which are free of the
/// removable singularities in the intermediate algebra. Throws
/// DegenerateDemography when mu = 0.
R0Breakdown r0_closed_form(double mu, double gamma, double mu1, double q1,
                           double gamma1, double gamma2, double k2);

/// Endemic steady state, or nullopt when R0 <= 1. Brackets G(h) = 1 by
/// doubling and bisects to |G(h*) - 1| <= 1e-10; throws NoBracket if no
/// ceiling below 1e6 suppresses transmission.
std::optional<SteadyState> solve_endemic(const EpiParams& params, const Profile& U);

/// Mean age at which a birth cohort leaves the susceptible class,
/// integral of a*phi*s*pi over integral of phi*s*pi. Throws NoInfection
/// when h = 0.
double average_age_of_infection(const SteadyState& ss, const Demography& d);

/// CSV with columns a,s,e,q,i,r.
void write_steady_csv(std::ostream& os, const SteadyState& ss);

}  // namespace seqir
