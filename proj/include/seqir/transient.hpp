#pragma once

#include <iosfwd>
#include <vector>

#include "seqir/params.hpp"

namespace seqir {

/// Normalized compartment fractions at one instant. s+e+q+i+r = 1 at every
/// node (within 1e-8) and the boundary cohort is fully susceptible.
struct EpiState {
  EpiState(Profile s, Profile e, Profile q, Profile i, Profile r, double t);

  Profile s, e, q, i, r;
  double t;

  /// Fully susceptible population at time t.
  static EpiState disease_free(const GridPtr& grid, double t = 0.0);

  const GridPtr& grid() const { return s.grid(); }
};

/// Where the initial perturbation of the disease-free state goes.
enum class SeedCompartment { exposed, infected };
enum class SeedShape { gaussian, box };

/// Gaussian or box perturbation. mass is the population fraction seeded,
/// i.e. the U-weighted integral of the seeded compartment.
struct SeedSpec {
  SeedCompartment compartment = SeedCompartment::exposed;
  SeedShape shape = SeedShape::gaussian;
  double mass = 1e-4;
  double center = 25.0;  // gaussian center / box midpoint (years)
  double width = 5.0;    // gaussian sigma / box half-width (years)
};

/// Disease-free state perturbed by the seed; the boundary node stays exactly
/// disease-free.
EpiState seeded_initial_state(const GridPtr& grid, const Profile& U,
                              const SeedSpec& seed);

/// phi(a) = k1(a) * integral of k2 * U * i.
Profile force_of_infection(const EpiState& state, const EpiParams& params,
                           const Profile& U);

/// One characteristics-aligned step (dt must equal the grid spacing).
///
/// Each node inherits from its upwind neighbour with exact exponential decay
/// of the linear sinks and a trapezoidal rule for the source terms; the force
/// of infection is evaluated once from the incoming state. r is closed by
/// conservation, and the defect of r's own update beyond 1e-6 raises
/// ConservationViolation.
EpiState step(const EpiState& state, const EpiParams& params, const Profile& U,
              double dt);

struct Trajectory {
  std::vector<EpiState> states;

  const EpiState& front() const { return states.front(); }
  const EpiState& back() const { return states.back(); }
  std::size_t size() const { return states.size(); }
};

/// Repeated step up to t_end, storing every stride-th state (plus the initial
/// and final states). stride < 1 stores only the endpoints.
Trajectory simulate(const EpiState& initial, const EpiParams& params,
                    const Profile& U, double t_end, int stride = 1);

/// CSV with columns t,a,s,e,q,i,r; one row per node per stored state.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace seqir
