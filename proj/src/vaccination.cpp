#include "seqir/vaccination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "json.hpp"
#include "seqir/steady_state.hpp"

namespace seqir {

namespace {

constexpr double kKernelCertTol = 1e-6;
constexpr double kDepleteSnap = 1e-15;

Profile exp_neg_scaled_cumulative(double h, const Profile& k1) {
  Profile cum = cumulative_integral(k1);
  std::vector<double> v(cum.size());
  for (int k = 0; k < cum.size(); ++k) v[k] = std::exp(-h * cum[k]);
  return Profile(k1.grid(), std::move(v));
}

}  // namespace

VaccinationPolicy::VaccinationPolicy(std::vector<Atom> atoms_in)
    : atoms(std::move(atoms_in)) {
  if (atoms.size() > 3)
    throw InvalidParameter("VaccinationPolicy: at most three age classes");
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const Atom& a = atoms[j];
    if (!(a.age >= 0.0) || !std::isfinite(a.age))
      throw InvalidParameter("VaccinationPolicy: atom age must be finite and >= 0");
    if (j > 0 && !(atoms[j - 1].age < a.age))
      throw InvalidParameter("VaccinationPolicy: atom ages must be strictly increasing");
    if (a.deplete) {
      if (j + 1 != atoms.size())
        throw InvalidParameter("VaccinationPolicy: only the last atom may deplete");
    } else if (!(a.intensity > 0.0) || !std::isfinite(a.intensity)) {
      throw InvalidParameter("VaccinationPolicy: intensity must be finite and > 0");
    }
  }
}

double PsiMeasure::total_mass() const {
  double q = 0.0;
  for (const Atom& a : atoms) q += a.weight;
  return q;
}

PsiMeasure policy_to_psi(const VaccinationPolicy& policy) {
  PsiMeasure psi;
  double cum_intensity = 0.0;
  double prev = 1.0;
  for (const VaccinationPolicy::Atom& a : policy.atoms) {
    double remaining;
    if (a.deplete) {
      remaining = 0.0;
    } else {
      cum_intensity += a.intensity;
      remaining = std::exp(-cum_intensity);
    }
    double weight = prev - remaining;
    if (weight > 0.0) psi.atoms.push_back({a.age, weight, remaining});
    prev = remaining;
  }
  return psi;
}

PsiMeasure make_psi(const std::vector<std::pair<double, double>>& atoms) {
  PsiMeasure psi;
  double prev = 1.0;
  for (const auto& [age, weight] : atoms) {
    if (!(weight > 0.0))
      throw InvalidParameter("make_psi: weights must be positive");
    double remaining = prev - weight;
    if (remaining < -1e-12)
      throw InvalidParameter("make_psi: total mass exceeds 1");
    if (remaining < kDepleteSnap) remaining = 0.0;
    psi.atoms.push_back({age, weight, remaining});
    prev = remaining;
  }
  return psi;
}

VaccinationPolicy policy_from_psi(const PsiMeasure& psi) {
  std::vector<VaccinationPolicy::Atom> atoms;
  double prev = 1.0;
  for (const PsiMeasure::Atom& a : psi.atoms) {
    if (a.remaining_after <= 0.0) {
      atoms.push_back({a.age, 0.0, true});
    } else {
      atoms.push_back({a.age, std::log(prev / a.remaining_after), false});
    }
    prev = a.remaining_after;
  }
  return VaccinationPolicy(std::move(atoms));
}

PiecewiseConstant survivor_function(const VaccinationPolicy& policy) {
  PiecewiseConstant f;
  double cum_intensity = 0.0;
  for (const VaccinationPolicy::Atom& a : policy.atoms) {
    f.breaks.push_back(a.age);
    if (a.deplete) {
      f.values.push_back(0.0);
    } else {
      cum_intensity += a.intensity;
      f.values.push_back(std::exp(-cum_intensity));
    }
  }
  return f;
}

PiecewiseConstant survivor_function(const PsiMeasure& psi) {
  PiecewiseConstant f;
  for (const PsiMeasure::Atom& a : psi.atoms) {
    f.breaks.push_back(a.age);
    f.values.push_back(a.remaining_after);
  }
  return f;
}

CostWeights::CostWeights(Profile g1_in, Profile g2_in, Profile f_in, double F_bar)
    : g1(std::move(g1_in)), g2(std::move(g2_in)), f(std::move(f_in)), F_bar(F_bar) {
  require_same_grid(g1, g2);
  require_same_grid(g1, f);
  if (g1.min_value() < 0.0 || g2.min_value() < 0.0 || f.min_value() < 0.0)
    throw InvalidParameter("CostWeights: weight profiles must be >= 0");
  if (!(F_bar > 0.0) || !std::isfinite(F_bar))
    throw InvalidParameter("CostWeights: F_bar must be finite and > 0");
}

VaccinatedState vaccinated_profiles(double h, const VaccinationPolicy& policy,
                                    const EpiParams& params, const Profile& U) {
  require_same_grid(params.k1, U);
  if (!(h >= 0.0) || !std::isfinite(h))
    throw InvalidParameter("vaccinated_profiles: h must be finite and >= 0");
  const GridPtr& grid = params.grid();
  const int n = grid->size();
  const double mu1 = params.mu1;
  const double gamma = params.gamma;
  const Profile& k1 = params.k1;

  struct Jump {
    double age;
    double factor;  // e^{-c}, 0 for deplete
  };
  std::vector<Jump> jumps;
  for (const VaccinationPolicy::Atom& a : policy.atoms) {
    if (a.age >= grid->a_max())
      throw InvalidParameter("vaccinated_profiles: atom age beyond a_max");
    jumps.push_back({a.age, a.deplete ? 0.0 : std::exp(-a.intensity)});
  }

  std::vector<double> s(n), e(n), i(n), r(n), vacc(n);
  double sv = 1.0, ev = 0.0, iv = 0.0, rv = 0.0, vv = 0.0;

  auto apply_jump = [&](double factor) {
    vv += (1.0 - factor) * (sv + ev);
    sv *= factor;
    ev *= factor;
  };

  // Advance the cohort from age p to age q (kernel values supplied at the
  // endpoints so node positions use exact node samples).
  auto advance = [&](double p, double q, double k1p, double k1q) {
    double len = q - p;
    if (len <= 0.0) return;
    double s_new = sv * std::exp(-0.5 * h * (k1p + k1q) * len);
    double de = std::exp(-mu1 * len);
    double e_new = ev * de + 0.5 * len * (h * k1p * sv * de + h * k1q * s_new);
    double di = std::exp(-gamma * len);
    double i_new = iv * di + 0.5 * len * (mu1 * ev * di + mu1 * e_new);
    double r_new = rv + 0.5 * len * gamma * (iv + i_new);
    sv = s_new;
    ev = e_new;
    iv = i_new;
    rv = r_new;
  };

  std::size_t next = 0;
  while (next < jumps.size() && jumps[next].age <= 0.0)
    apply_jump(jumps[next++].factor);
  s[0] = sv;
  e[0] = ev;
  i[0] = iv;
  r[0] = rv;
  vacc[0] = vv;

  for (int k = 1; k < n; ++k) {
    double p = grid->node(k - 1);
    double k1p = k1[k - 1];
    const double node_age = grid->node(k);
    while (next < jumps.size() && jumps[next].age <= node_age) {
      double q = jumps[next].age;
      double k1q = (q == node_age) ? k1[k] : k1.at_age(q);
      advance(p, q, k1p, k1q);
      apply_jump(jumps[next].factor);
      p = q;
      k1p = k1q;
      ++next;
    }
    if (p < node_age) advance(p, node_age, k1p, k1[k]);
    s[k] = sv;
    e[k] = ev;
    i[k] = iv;
    r[k] = rv;
    vacc[k] = vv;
  }

  return VaccinatedState{Profile(grid, std::move(s)), Profile(grid, std::move(e)),
                         Profile(grid, std::move(i)), Profile(grid, std::move(r)),
                         Profile(grid, std::move(vacc))};
}

VaccKernels build_kernels(double h, const EpiParams& params, const Demography& d,
                          const CostWeights& w) {
  if (!(h >= 0.0) || !std::isfinite(h))
    throw InvalidParameter("build_kernels: h must be finite and >= 0");
  require_same_grid(params.k1, d.mortality());
  require_same_grid(params.k1, w.g1);
  const GridPtr& grid = params.grid();
  const int n = grid->size();

  Profile U = stable_age_distribution(d);
  Profile x = exp_neg_scaled_cumulative(h, params.k1);
  Profile w_e = decayed_cumulative((h * params.k1) * x, params.mu1);
  Profile i0 = decayed_cumulative(params.mu1 * w_e, params.gamma);

  Profile fU = w.f * U;
  Profile k2U = params.k2 * U;
  double F0 = integrate(fU * i0);
  double H0 = integrate(k2U * i0);
  Profile C1 = U * (w.g1 * x + w.g2 * w_e);

  std::vector<double> wt = trapezoid_weights(*grid);
  const double da = grid->spacing();
  const double decay = std::exp(-params.gamma * da);
  // Transposed response of the outer integral to the source mu1*e at each
  // node, split into the node's left- and right-endpoint panel roles. An atom
  // at a node suppresses the source from that node on, except in the panel it
  // terminates, whose right endpoint still sees the unvaccinated cohort;
  // subtracting the right-endpoint share keeps the kernel exact against the
  // marched profiles and second-order against the continuum tail integral.
  auto response_kernel = [&](const Profile& outer) {
    std::vector<double> v(n), total(n), right(n);
    for (int k = 0; k < n; ++k) v[k] = wt[k] * outer[k];
    double p = 0.0;  // sum over k > j of decay^{k-j} v[k]
    for (int j = n - 1; j >= 0; --j) {
      total[j] = (j == 0) ? 0.5 * da * p : da * p + 0.5 * da * v[j];
      right[j] = (j == 0) ? 0.0 : 0.5 * da * (v[j] + p);
      if (j > 0) p = decay * (v[j] + p);
    }
    std::vector<double> kernel(n);
    double acc = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      acc += params.mu1 * w_e[k] * total[k];
      kernel[k] = acc - params.mu1 * w_e[k] * right[k];
    }
    return Profile(grid, std::move(kernel));
  };
  Profile F1 = response_kernel(fU);
  Profile H1 = response_kernel(k2U);

  VaccKernels kernels{grid, std::move(C1), std::move(F1), std::move(H1), F0, H0, h};

  // Certify the linearization: the prevalence and force functionals must be
  // exactly affine in the atom weights, so an independently marched profile
  // has to reproduce F0 - w*F1(A) to quadrature precision.
  if (F0 > 0.0 || H0 > 0.0) {
    std::mt19937 rng(20260808u);
    std::uniform_int_distribution<int> pick_node(1, n - 2);
    std::uniform_real_distribution<double> pick_weight(0.01, 0.99);
    for (int trial = 0; trial < 20; ++trial) {
      int node = pick_node(rng);
      double weight = pick_weight(rng);
      double intensity = -std::log1p(-weight);
      VaccinationPolicy pol({{grid->node(node), intensity, false}});
      double realized = policy_to_psi(pol).atoms.at(0).weight;
      VaccinatedState vs = vaccinated_profiles(h, pol, params, U);
      double f_direct = integrate(fU * vs.i);
      double h_direct = integrate(k2U * vs.i);
      double f_affine = F0 - realized * kernels.F1[node];
      double h_affine = H0 - realized * kernels.H1[node];
      if (std::fabs(f_direct - f_affine) > kKernelCertTol * std::max(F0, 1e-300) ||
          std::fabs(h_direct - h_affine) > kKernelCertTol * std::max(H0, 1e-300))
        throw KernelMismatch(
            "build_kernels: affine kernel identity failed certification");
    }
  }
  return kernels;
}

PolicyValue evaluate_policy(const PsiMeasure& psi, const VaccKernels& k) {
  PolicyValue v{0.0, 0.0, 0.0, 0.0};
  for (const PsiMeasure::Atom& a : psi.atoms) {
    if (a.age < 0.0 || a.age > k.grid->a_max())
      throw InvalidParameter("evaluate_policy: atom age outside the grid");
    v.cost += a.weight * k.C1.at_age(a.age);
    v.f_reduction += a.weight * k.F1.at_age(a.age);
    v.h_reduction += a.weight * k.H1.at_age(a.age);
    v.mass += a.weight;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Node-mass linear program.
// ---------------------------------------------------------------------------

namespace {

struct LpProblem {
  int nstruct;
  std::vector<std::vector<double>> rows;  // m x nstruct
  std::vector<double> rhs;                // all >= 0
  std::vector<char> kind;                 // 'G', 'L', 'E'
};

struct LpOutcome {
  bool feasible = false;
  std::vector<double> x;      // structural values
  std::vector<double> duals;  // one per row
  double objective = 0.0;
};

// Dense two-phase simplex specialized for very few rows and many columns.
// Columns: [0, nstruct) structural, then one slack per inequality row, then
// one artificial per G/E row. Bland's rule keeps it cycle-free and breaks
// ties toward the youngest age.
class Simplex {
 public:
  explicit Simplex(const LpProblem& lp) : lp_(lp), m_(static_cast<int>(lp.rows.size())) {
    slack_col_.assign(m_, -1);
    slack_sign_.assign(m_, 0.0);
    art_col_.assign(m_, -1);
    int col = lp_.nstruct;
    for (int r = 0; r < m_; ++r) {
      if (lp_.kind[r] == 'G') {
        slack_col_[r] = col++;
        slack_sign_[r] = -1.0;
      } else if (lp_.kind[r] == 'L') {
        slack_col_[r] = col++;
        slack_sign_[r] = 1.0;
      }
    }
    first_art_ = col;
    for (int r = 0; r < m_; ++r)
      if (lp_.kind[r] != 'L') art_col_[r] = col++;
    ncols_ = col;
  }

  LpOutcome solve(const std::vector<double>& cost) {
    basis_.assign(m_, -1);
    for (int r = 0; r < m_; ++r)
      basis_[r] = (lp_.kind[r] == 'L') ? slack_col_[r] : art_col_[r];

    // Phase 1: minimize the artificial total.
    std::vector<double> phase1(ncols_, 0.0);
    for (int r = 0; r < m_; ++r)
      if (art_col_[r] >= 0) phase1[art_col_[r]] = 1.0;
    run(phase1, ncols_);

    double art_total = 0.0;
    std::vector<double> xb = basic_values();
    for (int r = 0; r < m_; ++r)
      if (basis_[r] >= first_art_) art_total += xb[r];
    double rhs_scale = 1.0;
    for (double b : lp_.rhs) rhs_scale = std::max(rhs_scale, std::fabs(b));
    LpOutcome out;
    if (art_total > 1e-9 * rhs_scale) return out;  // infeasible

    drive_out_artificials();

    // Phase 2: original objective, artificials barred.
    std::vector<double> phase2(ncols_, 0.0);
    for (int j = 0; j < lp_.nstruct; ++j) phase2[j] = cost[j];
    run(phase2, first_art_);

    out.feasible = true;
    out.x.assign(lp_.nstruct, 0.0);
    xb = basic_values();
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < lp_.nstruct) out.x[basis_[r]] = std::max(0.0, xb[r]);
    out.duals = duals(phase2);
    out.objective = 0.0;
    for (int j = 0; j < lp_.nstruct; ++j) out.objective += cost[j] * out.x[j];
    return out;
  }

 private:
  double entry(int r, int col) const {
    if (col < lp_.nstruct) return lp_.rows[r][col];
    for (int rr = 0; rr < m_; ++rr) {
      if (slack_col_[rr] == col) return rr == r ? slack_sign_[rr] : 0.0;
      if (art_col_[rr] == col) return rr == r ? 1.0 : 0.0;
    }
    return 0.0;
  }

  // Solve A z = b for the current basis matrix (m <= 3).
  std::vector<double> solve_basis(std::vector<double> b, bool transpose) const {
    std::vector<std::vector<double>> a(m_, std::vector<double>(m_));
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < m_; ++c)
        a[r][c] = transpose ? entry(c, basis_[r]) : entry(r, basis_[c]);
    // Gaussian elimination with partial pivoting.
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      for (int r = c + 1; r < m_; ++r)
        if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
      std::swap(a[c], a[piv]);
      std::swap(b[c], b[piv]);
      if (a[c][c] == 0.0) throw Error("optimize: singular basis");
      for (int r = c + 1; r < m_; ++r) {
        double f = a[r][c] / a[c][c];
        for (int cc = c; cc < m_; ++cc) a[r][cc] -= f * a[c][cc];
        b[r] -= f * b[c];
      }
    }
    for (int r = m_ - 1; r >= 0; --r) {
      for (int c = r + 1; c < m_; ++c) b[r] -= a[r][c] * b[c];
      b[r] /= a[r][r];
    }
    return b;
  }

  std::vector<double> basic_values() const { return solve_basis(lp_.rhs, false); }

  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> cb(m_);
    for (int r = 0; r < m_; ++r) cb[r] = cost[basis_[r]];
    return solve_basis(std::move(cb), true);
  }

  void run(const std::vector<double>& cost, int max_col) {
    double scale = 1.0;
    for (double c : cost) scale = std::max(scale, std::fabs(c));
    const double eps_enter = 1e-12 * scale;
    for (int iter = 0; iter < 50000; ++iter) {
      std::vector<double> y = duals(cost);
      int enter = -1;
      for (int j = 0; j < ncols_ && enter < 0; ++j) {
        if (j >= max_col) break;
        bool basic = false;
        for (int r = 0; r < m_; ++r) basic = basic || basis_[r] == j;
        if (basic) continue;
        double reduced = cost[j];
        for (int r = 0; r < m_; ++r) reduced -= y[r] * entry(r, j);
        if (reduced < -eps_enter) enter = j;
      }
      if (enter < 0) return;

      std::vector<double> col(m_);
      for (int r = 0; r < m_; ++r) col[r] = entry(r, enter);
      std::vector<double> dir = solve_basis(std::move(col), false);
      std::vector<double> xb = basic_values();
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        if (dir[r] > 1e-11) {
          double ratio = std::max(0.0, xb[r]) / dir[r];
          if (ratio < best - 1e-15 ||
              (ratio < best + 1e-15 && (leave < 0 || basis_[r] < basis_[leave]))) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) throw Error("optimize: linear program is unbounded");
      basis_[leave] = enter;
    }
    throw Error("optimize: simplex failed to terminate");
  }

  // A basic artificial stuck at zero after phase 1 distorts the duals; pivot
  // it out on any usable column.
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < first_art_) continue;
      std::vector<double> e(m_, 0.0);
      e[r] = 1.0;
      std::vector<double> row = solve_basis(std::move(e), true);
      for (int j = 0; j < first_art_; ++j) {
        bool basic = false;
        for (int rr = 0; rr < m_; ++rr) basic = basic || basis_[rr] == j;
        if (basic) continue;
        double v = 0.0;
        for (int rr = 0; rr < m_; ++rr) v += row[rr] * entry(rr, j);
        if (std::fabs(v) > 1e-9) {
          basis_[r] = j;
          break;
        }
      }
    }
  }

  const LpProblem& lp_;
  int m_;
  int ncols_ = 0;
  int first_art_ = 0;
  std::vector<int> basis_;
  std::vector<int> slack_col_;
  std::vector<double> slack_sign_;
  std::vector<int> art_col_;
};

Multipliers least_squares_multipliers(const PsiMeasure& psi, const VaccKernels& k,
                                      bool active_f, bool active_q, bool active_h,
                                      const Multipliers& duals) {
  std::vector<int> cols;  // 0 -> lambda1, 1 -> lambda2, 2 -> lambda3
  if (active_f) cols.push_back(0);
  if (active_q) cols.push_back(1);
  if (active_h) cols.push_back(2);
  const std::size_t unknowns = cols.size();
  if (unknowns == 0) return Multipliers{};
  if (psi.atoms.size() < unknowns) return duals;

  // Normal equations of stationarity at the atom ages:
  //   l1*F1(A) + l2 + l3*H1(A) = C1(A).
  double ata[3][3] = {{0}};
  double atb[3] = {0};
  for (const PsiMeasure::Atom& a : psi.atoms) {
    double row[3] = {k.F1.at_age(a.age), 1.0, k.H1.at_age(a.age)};
    double rhs = k.C1.at_age(a.age);
    for (std::size_t p = 0; p < unknowns; ++p) {
      for (std::size_t q = 0; q < unknowns; ++q)
        ata[p][q] += row[cols[p]] * row[cols[q]];
      atb[p] += row[cols[p]] * rhs;
    }
  }
  // Tiny Gaussian solve; fall back to the simplex duals when singular.
  double a[3][4];
  for (std::size_t p = 0; p < unknowns; ++p) {
    for (std::size_t q = 0; q < unknowns; ++q) a[p][q] = ata[p][q];
    a[p][unknowns] = atb[p];
  }
  for (std::size_t c = 0; c < unknowns; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < unknowns; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    if (std::fabs(a[c][c]) < 1e-14 * (1.0 + std::fabs(ata[c][c]))) return duals;
    for (std::size_t r = 0; r < unknowns; ++r) {
      if (r == c) continue;
      double f = a[r][c] / a[c][c];
      for (std::size_t cc = c; cc <= unknowns; ++cc) a[r][cc] -= f * a[c][cc];
    }
  }
  double sol[3] = {0, 0, 0};
  for (std::size_t p = 0; p < unknowns; ++p) sol[cols[p]] = a[p][unknowns] / a[p][p];
  Multipliers m{sol[0], sol[1], sol[2]};
  if (m.lambda1 < 0.0) {
    if (m.lambda1 > -1e-12) m.lambda1 = 0.0;
    else return duals;
  }
  return m;
}

}  // namespace

KktReport kkt_residuals(const VaccinationPolicy& policy, const Multipliers& m,
                        const VaccKernels& k, double F_bar,
                        std::optional<double> h_equality, double tolerance) {
  PsiMeasure psi = policy_to_psi(policy);
  PolicyValue pv = evaluate_policy(psi, k);

  const int n = k.grid->size();
  double max_gap = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double gap = m.lambda1 * k.F1[j] + m.lambda2 + m.lambda3 * k.H1[j] - k.C1[j];
    max_gap = std::max(max_gap, gap);
  }

  KktReport rep;
  rep.tolerance = tolerance;
  rep.scale = std::max({k.C1.max_abs(), std::fabs(m.lambda1) * k.F1.max_abs(),
                        std::fabs(m.lambda2), std::fabs(m.lambda3) * k.H1.max_abs(),
                        1e-12});
  rep.stationarity_max = max_gap;
  rep.stationarity_ok = max_gap <= tolerance * rep.scale;

  rep.attainment_defect = 0.0;
  for (const PsiMeasure::Atom& a : psi.atoms) {
    double gap = m.lambda1 * k.F1.at_age(a.age) + m.lambda2 +
                 m.lambda3 * k.H1.at_age(a.age) - k.C1.at_age(a.age);
    rep.attainment_defect = std::max(rep.attainment_defect, max_gap - gap);
  }
  rep.attained_at_atoms = rep.attainment_defect <= tolerance * rep.scale;

  double freq = k.F0 - F_bar;
  rep.slack_f = std::fabs(m.lambda1 * (pv.f_reduction - freq));
  rep.slack_q = std::fabs(m.lambda2 * (pv.mass - 1.0));
  double slack_scale =
      std::max({rep.scale, std::fabs(m.lambda1) * std::max(std::fabs(freq), k.F0),
                std::fabs(m.lambda2)});
  rep.slackness_ok = rep.slack_f <= tolerance * slack_scale &&
                     rep.slack_q <= tolerance * slack_scale;
  if (h_equality) {
    double h_target = std::max(0.0, k.H0 - *h_equality);
    double eq_residual = std::fabs(pv.h_reduction - h_target);
    rep.slackness_ok = rep.slackness_ok &&
                       eq_residual <= tolerance * std::max({1.0, k.H0, h_target});
  }

  rep.zero_sum = std::fabs(pv.cost - m.lambda1 * pv.f_reduction -
                           m.lambda2 * pv.mass - m.lambda3 * pv.h_reduction);
  double zs_scale = std::max({std::fabs(pv.cost),
                              std::fabs(m.lambda1 * pv.f_reduction),
                              std::fabs(m.lambda2 * pv.mass),
                              std::fabs(m.lambda3 * pv.h_reduction), 1e-12});
  rep.zero_sum_ok = rep.zero_sum <= tolerance * zs_scale;

  rep.pass = rep.stationarity_ok && rep.attained_at_atoms && rep.slackness_ok &&
             rep.zero_sum_ok;
  return rep;
}

OptimizeResult optimize(const VaccKernels& k, const CostWeights& w,
                        std::optional<double> h_equality) {
  const int n = k.grid->size();
  const double freq = k.F0 - w.F_bar;
  const bool need_f = freq > 0.0;
  const bool need_h = h_equality.has_value();

  OptimizeResult res;
  res.h_ambient = k.h;
  if (!need_f && !need_h) {
    res.value = PolicyValue{0.0, 0.0, 0.0, 0.0};
    res.multipliers = Multipliers{};
    res.kkt = kkt_residuals(res.policy, res.multipliers, k, w.F_bar, h_equality);
    res.prevalence = k.F0;
    return res;
  }

  if (need_f) {
    double best = k.F1.max_abs();
    if (freq > best * (1.0 + 1e-12))
      throw Infeasible(
          "optimize: the prevalence cap is below what full vaccination at the "
          "best age can achieve");
  }

  LpProblem lp;
  lp.nstruct = n;
  std::vector<int> row_id;  // 0 = F, 1 = Q, 2 = H
  if (need_f) {
    lp.rows.push_back(k.F1.values());
    lp.rhs.push_back(freq);
    lp.kind.push_back('G');
    row_id.push_back(0);
  }
  lp.rows.push_back(std::vector<double>(n, 1.0));
  lp.rhs.push_back(1.0);
  lp.kind.push_back('L');
  row_id.push_back(1);
  if (need_h) {
    double h_target = k.H0 - *h_equality;
    if (h_target < -1e-12 * std::max(1.0, k.H0))
      throw Infeasible("optimize: force-of-infection equality target is negative");
    lp.rows.push_back(k.H1.values());
    lp.rhs.push_back(std::max(0.0, h_target));
    lp.kind.push_back('E');
    row_id.push_back(2);
  }

  Simplex simplex(lp);
  LpOutcome sol = simplex.solve(k.C1.values());
  if (!sol.feasible)
    throw Infeasible("optimize: no policy satisfies the constraints");

  std::vector<std::pair<double, double>> atoms;
  for (int j = 0; j < n; ++j)
    if (sol.x[j] > 1e-14) atoms.push_back({k.grid->node(j), sol.x[j]});
  res.psi = make_psi(atoms);
  res.policy = policy_from_psi(res.psi);
  res.value = evaluate_policy(res.psi, k);
  res.prevalence = k.F0 - res.value.f_reduction;

  Multipliers duals;
  for (std::size_t r = 0; r < row_id.size(); ++r) {
    if (row_id[r] == 0) duals.lambda1 = std::max(0.0, sol.duals[r]);
    if (row_id[r] == 1) duals.lambda2 = sol.duals[r];
    if (row_id[r] == 2) duals.lambda3 = sol.duals[r];
  }
  // Zero out the mass multiplier when the cap is slack (complementarity).
  if (res.value.mass < 1.0 - 1e-10) duals.lambda2 = 0.0;
  if (need_f && res.value.f_reduction > freq * (1.0 + 1e-10)) duals.lambda1 = 0.0;

  bool active_f = need_f &&
                  std::fabs(res.value.f_reduction - freq) <=
                      1e-8 * std::max({1.0, k.F0, std::fabs(freq)});
  bool active_q = std::fabs(res.value.mass - 1.0) <= 1e-10;
  res.multipliers =
      least_squares_multipliers(res.psi, k, active_f, active_q, need_h, duals);
  res.kkt = kkt_residuals(res.policy, res.multipliers, k, w.F_bar, h_equality);
  if (!res.kkt.pass) {
    KktReport dual_rep = kkt_residuals(res.policy, duals, k, w.F_bar, h_equality);
    if (dual_rep.pass) {
      res.multipliers = duals;
      res.kkt = dual_rep;
    }
  }
  return res;
}

SelfConsistentResult solve_self_consistent(const EpiParams& params,
                                           const Demography& d,
                                           const CostWeights& w,
                                           double target_tol) {
  if (!(target_tol > 0.0))
    throw InvalidParameter("solve_self_consistent: target_tol must be > 0");
  EpiParams qfree = params.without_quarantine();
  Profile U = stable_age_distribution(d);
  double r0 = r0_quadrature(qfree, U);
  double h = 0.0;
  if (r0 > 1.0) h = solve_endemic(qfree, U)->h;

  SelfConsistentResult result;
  result.r0_unvaccinated = r0;
  result.h_unvaccinated = h;
  result.h_history.push_back(h);

  for (int iter = 1; iter <= 100; ++iter) {
    VaccKernels kernels = build_kernels(h, params, d, w);
    OptimizeResult opt = optimize(kernels, w);
    double h_raw = std::max(0.0, kernels.H0 - opt.value.h_reduction);
    double h_next = 0.5 * h + 0.5 * h_raw;
    result.h_history.push_back(h_next);
    double delta = std::fabs(h_next - h);
    h = h_next;
    if (delta <= target_tol) {
      result.policy = opt.policy;
      result.h = h;
      result.iterations = iter;
      result.opt = std::move(opt);
      return result;
    }
  }
  throw NotConverged("solve_self_consistent: h iteration did not converge in 100 steps",
                     result.h_history);
}

void write_policy_json(std::ostream& os, const SelfConsistentResult& result,
                       bool converged) {
  nlohmann::json j;
  nlohmann::json atoms = nlohmann::json::array();
  PsiMeasure psi = policy_to_psi(result.policy);
  for (std::size_t idx = 0; idx < result.policy.atoms.size(); ++idx) {
    const VaccinationPolicy::Atom& a = result.policy.atoms[idx];
    nlohmann::json ja;
    ja["age"] = a.age;
    if (a.deplete)
      ja["intensity"] = nullptr;
    else
      ja["intensity"] = a.intensity;
    ja["deplete"] = a.deplete;
    ja["weight"] = idx < psi.atoms.size() ? psi.atoms[idx].weight : 0.0;
    atoms.push_back(std::move(ja));
  }
  j["atoms"] = std::move(atoms);
  j["cost"] = result.opt.value.cost;
  j["prevalence"] = result.opt.prevalence;
  j["h"] = result.h;
  j["r0_unvaccinated"] = result.r0_unvaccinated;
  j["h_unvaccinated"] = result.h_unvaccinated;
  j["multipliers"] = {{"lambda1", result.opt.multipliers.lambda1},
                      {"lambda2", result.opt.multipliers.lambda2},
                      {"lambda3", result.opt.multipliers.lambda3}};
  j["kkt"] = {{"stationarity_max", result.opt.kkt.stationarity_max},
              {"attainment_defect", result.opt.kkt.attainment_defect},
              {"slack_f", result.opt.kkt.slack_f},
              {"slack_q", result.opt.kkt.slack_q},
              {"zero_sum", result.opt.kkt.zero_sum},
              {"pass", result.opt.kkt.pass}};
  j["converged"] = converged;
  j["iterations"] = result.iterations;
  j["h_history"] = result.h_history;
  os << j.dump(2) << '\n';
}

}  // namespace seqir
