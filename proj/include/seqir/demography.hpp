#pragma once

#include "seqir/grid.hpp"

namespace seqir {

/// Stationary demography: age-dependent mortality and fertility rates.
///
/// The age axis is truncated at a_max, standing in for an infinite axis with
/// integrable-to-infinity mortality. Construction rejects negative rates and
/// mortality so weak that more than half the cohort survives to a_max; a
/// residual survival above 1e-6 is reported through survival_tail_ok() so
/// callers can surface the truncation-error warning without being blocked.
class Demography {
 public:
  Demography(Profile mu, Profile beta);

  const Profile& mortality() const { return mu_; }
  const Profile& fertility() const { return beta_; }
  const GridPtr& grid() const { return mu_.grid(); }

  /// Survival fraction remaining at a_max.
  double survival_at_max() const { return tail_; }
  /// True when the truncated tail mass is below 1e-6.
  bool survival_tail_ok() const { return tail_ <= 1e-6; }

 private:
  Profile mu_;
  Profile beta_;
  double tail_;
};

/// pi(a) = exp(-integral of mu over [0, a]); pi(0) = 1, non-increasing.
Profile survival(const Demography& d);

/// U(a) = beta0 * pi(a) normalized so the library quadrature of U is exactly 1.
Profile stable_age_distribution(const Demography& d);

/// Integral of beta(a) * pi(a); the stationary-population theory assumes 1.
double net_reproduction_rate(const Demography& d);

/// |net_reproduction_rate - 1| beyond which the CLI warns.
inline constexpr double kNetReproductionTolerance = 1e-3;

}  // namespace seqir
