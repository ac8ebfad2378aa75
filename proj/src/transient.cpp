#include "seqir/transient.hpp"

#include <cmath>
#include <ostream>

#include "seqir/io.hpp"

namespace seqir {

namespace {

constexpr double kConservationTol = 1e-8;
constexpr double kStepDefectTol = 1e-6;
constexpr double kClampBand = 1e-10;

void validate_state(const Profile& s, const Profile& e, const Profile& q,
                    const Profile& i, const Profile& r) {
  require_same_grid(s, e);
  require_same_grid(s, q);
  require_same_grid(s, i);
  require_same_grid(s, r);
  const int n = s.size();
  for (const Profile* p : {&s, &e, &q, &i, &r}) {
    if (p->min_value() < -kClampBand)
      throw InvalidParameter("EpiState: negative compartment fraction");
    if (p->max_abs() > 1.0 + kClampBand)
      throw InvalidParameter("EpiState: compartment fraction above 1");
  }
  for (int k = 0; k < n; ++k) {
    double sum = s[k] + e[k] + q[k] + i[k] + r[k];
    if (std::fabs(sum - 1.0) > kConservationTol)
      throw InvalidParameter("EpiState: s+e+q+i+r must equal 1 at every node");
  }
  if (s[0] != 1.0 || e[0] != 0.0 || q[0] != 0.0 || i[0] != 0.0 || r[0] != 0.0)
    throw InvalidParameter("EpiState: boundary node must be fully susceptible");
}

// The conservation closure r = 1 - s - e - q - i can undershoot zero by the
// O(dt^3) step defect; fold anything inside the step tolerance back onto the
// boundary and treat larger excursions as conservation failures.
double clamp_unit(double v, double t, int node) {
  if (v < 0.0) {
    if (v >= -kStepDefectTol) return 0.0;
    throw ConservationViolation("step: compartment fraction went negative", t,
                                node, -v);
  }
  if (v > 1.0) {
    if (v <= 1.0 + kStepDefectTol) return 1.0;
    throw ConservationViolation("step: compartment fraction exceeded 1", t, node,
                                v - 1.0);
  }
  return v;
}

}  // namespace

EpiState::EpiState(Profile s, Profile e, Profile q, Profile i, Profile r, double t)
    : s(std::move(s)),
      e(std::move(e)),
      q(std::move(q)),
      i(std::move(i)),
      r(std::move(r)),
      t(t) {
  validate_state(this->s, this->e, this->q, this->i, this->r);
}

EpiState EpiState::disease_free(const GridPtr& grid, double t) {
  return EpiState(Profile::constant(grid, 1.0), Profile::zero(grid),
                  Profile::zero(grid), Profile::zero(grid), Profile::zero(grid), t);
}

EpiState seeded_initial_state(const GridPtr& grid, const Profile& U,
                              const SeedSpec& seed) {
  if (!(seed.mass >= 0.0) || !(seed.width > 0.0))
    throw InvalidParameter("seed: mass must be >= 0 and width > 0");
  std::vector<double> bump(grid->size(), 0.0);
  for (int k = 1; k < grid->size(); ++k) {
    double a = grid->node(k);
    if (seed.shape == SeedShape::gaussian) {
      double z = (a - seed.center) / seed.width;
      bump[k] = std::exp(-0.5 * z * z);
    } else {
      bump[k] = (std::fabs(a - seed.center) <= seed.width) ? 1.0 : 0.0;
    }
  }
  Profile shape(grid, std::move(bump));
  double norm = integrate(shape * U);
  if (norm <= 0.0) throw InvalidParameter("seed: shape has no mass on the grid");
  Profile seeded = shape.scaled(seed.mass / norm);

  std::vector<double> s(grid->size());
  for (int k = 0; k < grid->size(); ++k) s[k] = 1.0 - seeded[k];
  Profile sp(grid, std::move(s));
  Profile zero = Profile::zero(grid);
  if (seed.compartment == SeedCompartment::exposed)
    return EpiState(sp, seeded, zero, zero, zero, 0.0);
  return EpiState(sp, zero, zero, seeded, zero, 0.0);
}

Profile force_of_infection(const EpiState& state, const EpiParams& params,
                           const Profile& U) {
  require_same_grid(state.s, params.k1);
  require_same_grid(state.s, U);
  double b = integrate(params.k2 * U * state.i);
  return params.k1.scaled(b);
}

EpiState step(const EpiState& state, const EpiParams& params, const Profile& U,
              double dt) {
  const GridPtr& grid = state.grid();
  const double da = grid->spacing();
  if (std::fabs(dt - da) > 1e-12 * da)
    throw InvalidParameter("step: dt must equal the grid spacing");

  const Profile phi = force_of_infection(state, params, U);
  const int n = grid->size();
  const double lam_e = params.mu1 + params.q1;
  const double lam_q = params.gamma1 + params.gamma2;
  const double de = std::exp(-lam_e * dt);
  const double dq = std::exp(-lam_q * dt);
  const double di = std::exp(-params.gamma * dt);

  std::vector<double> s(n), e(n), q(n), i(n), r(n);
  s[0] = 1.0;
  e[0] = q[0] = i[0] = r[0] = 0.0;

  double max_defect = 0.0;
  int defect_node = 0;
  for (int k = 1; k < n; ++k) {
    const int u = k - 1;  // upwind node
    const double phi_bar = 0.5 * (phi[u] + phi[k]);
    s[k] = state.s[u] * std::exp(-phi_bar * dt);

    const double src_e0 = phi[u] * state.s[u];
    const double src_e1 = phi[k] * s[k];
    e[k] = state.e[u] * de + 0.5 * dt * (src_e0 * de + src_e1);

    const double src_q0 = params.q1 * state.e[u];
    const double src_q1 = params.q1 * e[k];
    q[k] = state.q[u] * dq + 0.5 * dt * (src_q0 * dq + src_q1);

    const double src_i0 = params.mu1 * state.e[u] + params.gamma1 * state.q[u];
    const double src_i1 = params.mu1 * e[k] + params.gamma1 * q[k];
    i[k] = state.i[u] * di + 0.5 * dt * (src_i0 * di + src_i1);

    // r by its own equation, used only as a conservation residual.
    const double src_r0 = params.gamma * state.i[u] + params.gamma2 * state.q[u];
    const double src_r1 = params.gamma * i[k] + params.gamma2 * q[k];
    const double r_ode = state.r[u] + 0.5 * dt * (src_r0 + src_r1);

    r[k] = 1.0 - s[k] - e[k] - q[k] - i[k];
    const double defect = std::fabs(r_ode - r[k]);
    if (defect > max_defect) {
      max_defect = defect;
      defect_node = k;
    }
    const double t_new = state.t + dt;
    s[k] = clamp_unit(s[k], t_new, k);
    e[k] = clamp_unit(e[k], t_new, k);
    q[k] = clamp_unit(q[k], t_new, k);
    i[k] = clamp_unit(i[k], t_new, k);
    if (r[k] < 0.0) {
      if (r[k] < -kStepDefectTol)
        throw ConservationViolation("step: compartment fraction went negative",
                                    t_new, k, -r[k]);
      // renormalize so the closure keeps s+e+q+i+r = 1 exactly
      const double total = s[k] + e[k] + q[k] + i[k];
      s[k] /= total;
      e[k] /= total;
      q[k] /= total;
      i[k] /= total;
      r[k] = 0.0;
    } else {
      r[k] = clamp_unit(r[k], t_new, k);
    }
  }
  if (max_defect > kStepDefectTol)
    throw ConservationViolation("step: conservation defect exceeds 1e-6",
                                state.t + dt, defect_node, max_defect);

  return EpiState(Profile(grid, std::move(s)), Profile(grid, std::move(e)),
                  Profile(grid, std::move(q)), Profile(grid, std::move(i)),
                  Profile(grid, std::move(r)), state.t + dt);
}

Trajectory simulate(const EpiState& initial, const EpiParams& params,
                    const Profile& U, double t_end, int stride) {
  if (t_end < 0.0) throw InvalidParameter("simulate: t_end must be >= 0");
  const double dt = initial.grid()->spacing();
  const long steps = std::lround(t_end / dt);

  Trajectory traj;
  traj.states.push_back(initial);
  EpiState current = initial;
  for (long k = 1; k <= steps; ++k) {
    current = step(current, params, U, dt);
    if ((stride > 0 && k % stride == 0) || k == steps)
      traj.states.push_back(current);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,a,s,e,q,i,r\n";
  for (const EpiState& st : traj.states) {
    const GridPtr& grid = st.grid();
    for (int k = 0; k < grid->size(); ++k) {
      os << fmt17(st.t) << ',' << fmt17(grid->node(k)) << ',' << fmt17(st.s[k])
         << ',' << fmt17(st.e[k]) << ',' << fmt17(st.q[k]) << ','
         << fmt17(st.i[k]) << ',' << fmt17(st.r[k]) << '\n';
    }
  }
}

}  // namespace seqir
