#include "seqir/lyapunov.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"

namespace seqir {

LyapunovWeights compute_weights(const EpiParams& params, const Profile& U) {
  require_same_grid(params.k1, U);
  Profile alpha3 = decayed_tail(params.k2 * U, params.gamma);
  Profile alpha2 =
      decayed_tail(alpha3.scaled(params.gamma1), params.gamma1 + params.gamma2);
  Profile alpha1 = decayed_tail(params.q1 * alpha2 + params.mu1 * alpha3,
                                params.mu1 + params.q1);
  return {std::move(alpha1), std::move(alpha2), std::move(alpha3)};
}

double evaluate_V(const EpiState& state, const LyapunovWeights& w) {
  require_same_grid(state.e, w.alpha1);
  return integrate(w.alpha1 * state.e + w.alpha2 * state.q + w.alpha3 * state.i);
}

DecreaseReport verify_decrease(const Trajectory& traj, const LyapunovWeights& w,
                               const EpiParams& params, const Profile& U,
                               double r0, double tolerance) {
  if (traj.states.empty())
    throw InvalidParameter("verify_decrease: empty trajectory");

  DecreaseReport report;
  report.r0 = r0;
  report.tolerance = tolerance;
  report.samples.reserve(traj.size());
  for (const EpiState& st : traj.states) {
    double b = (r0 - 1.0) * integrate(params.k2 * st.i * U);
    report.samples.push_back({st.t, evaluate_V(st, w), b});
  }

  double max_violation = 0.0;
  for (std::size_t k = 0; k + 1 < report.samples.size(); ++k) {
    const DecreaseSample& a = report.samples[k];
    const DecreaseSample& b = report.samples[k + 1];
    double dt = b.t - a.t;
    if (dt <= 0.0)
      throw InvalidParameter("verify_decrease: non-increasing timestamps");
    double rate = (b.V - a.V) / dt;
    double bound = 0.5 * (a.bound + b.bound);
    max_violation = std::max(max_violation, rate - bound);
  }
  report.max_violation = max_violation;
  report.pass = max_violation <= tolerance;
  return report;
}

void write_decrease_json(std::ostream& os, const DecreaseReport& report) {
  nlohmann::json j;
  j["r0"] = report.r0;
  j["max_violation"] = report.max_violation;
  j["pass"] = report.pass;
  j["tolerance"] = report.tolerance;
  nlohmann::json samples = nlohmann::json::array();
  for (const DecreaseSample& s : report.samples)
    samples.push_back({{"t", s.t}, {"V", s.V}, {"bound", s.bound}});
  j["samples"] = std::move(samples);
  os << j.dump(2) << '\n';
}

}  // namespace seqir
