#include "seqir/steady_state.hpp"

#include <cmath>
#include <ostream>

#include "seqir/io.hpp"

namespace seqir {

namespace {

constexpr double kEndemicTol = 1e-10;
constexpr double kBracketCeiling = 1e6;

/// Susceptible fraction under phi = h*k1: exp(-h * cumulative of k1).
Profile susceptible_profile(double h, const EpiParams& params) {
  Profile cum = cumulative_integral(params.k1);
  std::vector<double> v(cum.size());
  for (int k = 0; k < cum.size(); ++k) v[k] = std::exp(-h * cum[k]);
  return Profile(params.grid(), std::move(v));
}

struct UnitCascade {
  Profile e, q, i;  // profiles per unit h
};

/// e, q, i divided through by h: the steady system is linear in the source
/// h*k1*s, so these cascades carry all of the h-dependence except s itself.
UnitCascade unit_cascade(double h, const EpiParams& params) {
  Profile s = susceptible_profile(h, params);
  Profile e = decayed_cumulative(params.k1 * s, params.mu1 + params.q1);
  Profile q = decayed_cumulative(e, params.gamma1 + params.gamma2).scaled(params.q1);
  Profile i = decayed_cumulative(params.mu1 * e + params.gamma1 * q, params.gamma);
  return {std::move(e), std::move(q), std::move(i)};
}

}  // namespace

SteadyState steady_profiles(double h, const EpiParams& params) {
  if (!(h >= 0.0) || !std::isfinite(h))
    throw InvalidParameter("steady_profiles: h must be finite and >= 0");
  const GridPtr& grid = params.grid();
  Profile s = susceptible_profile(h, params);
  UnitCascade c = unit_cascade(h, params);
  Profile e = c.e.scaled(h);
  Profile q = c.q.scaled(h);
  Profile i = c.i.scaled(h);
  std::vector<double> r(grid->size());
  for (int k = 0; k < grid->size(); ++k) {
    double rest = 1.0 - s[k] - e[k] - q[k] - i[k];
    r[k] = (rest < 0.0 && rest > -1e-12) ? 0.0 : rest;
  }
  return SteadyState{h, params.k1.scaled(h), std::move(s), std::move(e),
                     std::move(q), std::move(i), Profile(grid, std::move(r))};
}

double characteristic_value(double h, const EpiParams& params, const Profile& U) {
  if (!(h >= 0.0) || !std::isfinite(h))
    throw InvalidParameter("characteristic_value: h must be finite and >= 0");
  require_same_grid(params.k1, U);
  UnitCascade c = unit_cascade(h, params);
  return integrate(params.k2 * U * c.i);
}

R0Breakdown r0_quadrature_breakdown(const EpiParams& params, const Profile& U) {
  require_same_grid(params.k1, U);
  Profile e = decayed_cumulative(params.k1, params.mu1 + params.q1);
  Profile q = decayed_cumulative(e, params.gamma1 + params.gamma2).scaled(params.q1);
  Profile i_direct = decayed_cumulative(params.mu1 * e, params.gamma);
  Profile i_quarantine = decayed_cumulative(params.gamma1 * q, params.gamma);
  double r1 = integrate(params.k2 * U * i_direct);
  double r2 = integrate(params.k2 * U * i_quarantine);
  return {r1, r2, r1 + r2};
}

double r0_quadrature(const EpiParams& params, const Profile& U) {
  return characteristic_value(0.0, params, U);
}

double r0_quadrature_reversed(const EpiParams& params, const Profile& U) {
  require_same_grid(params.k1, U);
  const GridPtr& grid = params.grid();
  // Outermost integral becomes the innermost variable: fold the trapezoid
  // weights of the k2*U integral into the seed, then run the transposed
  // cascades outward. Each reversed pass is the exact transpose of the
  // forward decayed cumulative, so the two nesting orders reassociate the
  // same sum.
  std::vector<double> w = trapezoid_weights(*grid);
  Profile k2U = params.k2 * U;
  std::vector<double> seed(grid->size());
  for (int k = 0; k < grid->size(); ++k) seed[k] = w[k] * k2U[k];
  Profile t_gamma = decayed_cumulative_transpose(Profile(grid, std::move(seed)),
                                                 params.gamma);

  const double lam_e = params.mu1 + params.q1;
  const double lam_q = params.gamma1 + params.gamma2;
  Profile direct = decayed_cumulative_transpose(t_gamma.scaled(params.mu1), lam_e);
  Profile via_q = decayed_cumulative_transpose(
      decayed_cumulative_transpose(t_gamma.scaled(params.gamma1), lam_q)
          .scaled(params.q1),
      lam_e);

  double sum = 0.0, carry = 0.0;
  for (int k = 0; k < grid->size(); ++k) {
    double y = params.k1[k] * (direct[k] + via_q[k]) - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

R0Breakdown r0_closed_form(double mu, double gamma, double mu1, double q1,
                           double gamma1, double gamma2, double k2) {
  for (double v : {mu, gamma, mu1, q1, gamma1, gamma2, k2})
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InvalidParameter("r0_closed_form: parameters must be finite and >= 0");
  if (mu == 0.0)
    throw DegenerateDemography("r0_closed_form: mu must be positive");
  double r1 = k2 * mu1 / ((mu + gamma) * (mu + mu1 + q1));
  double r2 = k2 * gamma1 * q1 /
              ((mu + gamma) * (mu + gamma1 + gamma2) * (mu + mu1 + q1));
  return {r1, r2, r1 + r2};
}

std::optional<SteadyState> solve_endemic(const EpiParams& params, const Profile& U) {
  double r0 = characteristic_value(0.0, params, U);
  if (r0 <= 1.0) return std::nullopt;

  double lo = 0.0;
  double hi = 1.0;
  while (characteristic_value(hi, params, U) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCeiling)
      throw NoBracket("solve_endemic: G(h) stays above 1 up to h = 1e6");
  }
  double h = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    double g = characteristic_value(h, params, U);
    if (std::fabs(g - 1.0) <= kEndemicTol) break;
    (g > 1.0 ? lo : hi) = h;
    h = 0.5 * (lo + hi);
  }
  return steady_profiles(h, params);
}

double average_age_of_infection(const SteadyState& ss, const Demography& d) {
  if (ss.h <= 0.0)
    throw NoInfection("average_age_of_infection: no infection at h = 0");
  require_same_grid(ss.s, d.mortality());
  Profile pi = survival(d);
  Profile leaving = ss.phi * ss.s * pi;
  double denom = integrate(leaving);
  if (denom <= 0.0)
    throw NoInfection("average_age_of_infection: infection rate has no mass");
  return integrate(Profile::ages(ss.grid()) * leaving) / denom;
}

void write_steady_csv(std::ostream& os, const SteadyState& ss) {
  os << "a,s,e,q,i,r\n";
  const GridPtr& grid = ss.grid();
  for (int k = 0; k < grid->size(); ++k) {
    os << fmt17(grid->node(k)) << ',' << fmt17(ss.s[k]) << ',' << fmt17(ss.e[k])
       << ',' << fmt17(ss.q[k]) << ',' << fmt17(ss.i[k]) << ',' << fmt17(ss.r[k])
       << '\n';
  }
}

}  // namespace seqir
