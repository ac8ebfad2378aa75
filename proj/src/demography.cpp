#include "seqir/demography.hpp"

#include <cmath>

namespace seqir {

namespace {

Profile exp_neg_cumulative(const Profile& rate) {
  Profile cum = cumulative_integral(rate);
  std::vector<double> v(cum.size());
  for (int k = 0; k < cum.size(); ++k) v[k] = std::exp(-cum[k]);
  return Profile(rate.grid(), std::move(v));
}

}  // namespace

Demography::Demography(Profile mu, Profile beta)
    : mu_(std::move(mu)), beta_(std::move(beta)), tail_(0.0) {
  require_same_grid(mu_, beta_);
  if (mu_.min_value() < 0.0)
    throw InvalidParameter("Demography: mortality rate must be >= 0");
  if (beta_.min_value() < 0.0)
    throw InvalidParameter("Demography: fertility rate must be >= 0");
  Profile pi = exp_neg_cumulative(mu_);
  tail_ = pi[pi.size() - 1];
  if (tail_ > 0.5)
    throw DegenerateDemography(
        "Demography: mortality leaves more than half the cohort alive at "
        "a_max; extend a_max or raise mu");
}

Profile survival(const Demography& d) { return exp_neg_cumulative(d.mortality()); }

Profile stable_age_distribution(const Demography& d) {
  Profile pi = survival(d);
  double beta0 = 1.0 / integrate(pi);
  return pi.scaled(beta0);
}

double net_reproduction_rate(const Demography& d) {
  return integrate(d.fertility() * survival(d));
}

}  // namespace seqir
