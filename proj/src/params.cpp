#include "seqir/params.hpp"

#include <cmath>

namespace seqir {

EpiParams::EpiParams(double mu1, double q1, double gamma1, double gamma2,
                     double gamma, Profile k1, Profile k2)
    : mu1(mu1),
      q1(q1),
      gamma1(gamma1),
      gamma2(gamma2),
      gamma(gamma),
      k1(std::move(k1)),
      k2(std::move(k2)) {
  for (double r : {mu1, q1, gamma1, gamma2, gamma})
    if (!(r >= 0.0) || !std::isfinite(r))
      throw InvalidParameter("EpiParams: rates must be finite and >= 0");
  require_same_grid(this->k1, this->k2);
  if (this->k1.min_value() < 0.0 || this->k2.min_value() < 0.0)
    throw InvalidParameter("EpiParams: contact kernels must be >= 0");
}

EpiParams EpiParams::without_quarantine() const {
  return EpiParams(mu1, 0.0, 0.0, 0.0, gamma, k1, k2);
}

EpiParams EpiParams::with_k2_scaled(double factor) const {
  return EpiParams(mu1, q1, gamma1, gamma2, gamma, k1, k2.scaled(factor));
}

}  // namespace seqir
