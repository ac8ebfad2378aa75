#pragma once

#include "seqir/grid.hpp"

namespace seqir {

/// Epidemiological rates and the separable contact kernel k(a,b) = k1(a)k2(b).
///
/// mu1    progression rate from exposure to onset of symptoms (per year)
/// q1     quarantine recruitment rate of exposed individuals (per year)
/// gamma1 infection rate out of quarantine (per year)
/// gamma2 recovery rate out of quarantine (per year)
/// gamma  recovery rate of infected individuals (per year)
struct EpiParams {
  EpiParams(double mu1, double q1, double gamma1, double gamma2, double gamma,
            Profile k1, Profile k2);

  double mu1;
  double q1;
  double gamma1;
  double gamma2;
  double gamma;
  Profile k1;
  Profile k2;

  const GridPtr& grid() const { return k1.grid(); }

  /// Copy with the quarantine route removed (q1 = gamma1 = gamma2 = 0).
  EpiParams without_quarantine() const;
  /// Copy with k2 multiplied by factor.
  EpiParams with_k2_scaled(double factor) const;
};

}  // namespace seqir
