#include "seqir/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqir {

GridPtr AgeGrid::make(double a_max, int n) {
  if (!(a_max > 0.0) || !std::isfinite(a_max))
    throw InvalidParameter("AgeGrid: a_max must be positive and finite");
  if (n < 3) throw InvalidParameter("AgeGrid: need at least 3 nodes");
  return GridPtr(new AgeGrid(a_max, n));
}

int AgeGrid::panel(double a) const {
  int k = static_cast<int>(std::floor(a / da_));
  return std::clamp(k, 0, n_ - 2);
}

Profile::Profile(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidParameter("Profile: null grid");
  if (static_cast<int>(values_.size()) != grid_->size())
    throw InvalidParameter("Profile: value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidParameter("Profile: non-finite value");
}

Profile Profile::zero(const GridPtr& grid) {
  return Profile(grid, std::vector<double>(grid->size(), 0.0));
}

Profile Profile::constant(const GridPtr& grid, double value) {
  return Profile(grid, std::vector<double>(grid->size(), value));
}

Profile Profile::sample(const GridPtr& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid->size());
  for (int k = 0; k < grid->size(); ++k) v[k] = f(grid->node(k));
  return Profile(grid, std::move(v));
}

Profile Profile::ages(const GridPtr& grid) {
  std::vector<double> v(grid->size());
  for (int k = 0; k < grid->size(); ++k) v[k] = grid->node(k);
  return Profile(grid, std::move(v));
}

double Profile::at_age(double a) const {
  const AgeGrid& g = *grid_;
  if (a <= 0.0) return values_.front();
  if (a >= g.a_max()) return values_.back();
  int k = g.panel(a);
  double theta = (a - g.node(k)) / g.spacing();
  return values_[k] + theta * (values_[k + 1] - values_[k]);
}

double Profile::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double Profile::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values_) m = std::min(m, v);
  return m;
}

Profile Profile::scaled(double factor) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= factor;
  return Profile(grid_, std::move(v));
}

void require_same_grid(const Profile& a, const Profile& b) {
  if (a.grid().get() == b.grid().get()) return;
  if (!a.grid()->compatible(*b.grid()))
    throw GridMismatch("profiles live on different age grids");
}

namespace {

template <class Op>
Profile zip(const Profile& a, const Profile& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = op(a[k], b[k]);
  return Profile(a.grid(), std::move(v));
}

}  // namespace

Profile operator+(const Profile& a, const Profile& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

Profile operator-(const Profile& a, const Profile& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}

Profile operator*(const Profile& a, const Profile& b) {
  return zip(a, b, [](double x, double y) { return x * y; });
}

Profile operator*(double s, const Profile& p) { return p.scaled(s); }

double integrate(const Profile& p) {
  const int n = p.size();
  const double da = p.grid()->spacing();
  // Kahan summation keeps reassociation error well below the 1e-10
  // tolerances asserted on nested-integral identities.
  double sum = 0.0, carry = 0.0;
  auto add = [&](double term) {
    double y = term - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  };
  add(0.5 * p[0]);
  for (int k = 1; k + 1 < n; ++k) add(p[k]);
  add(0.5 * p[n - 1]);
  return da * sum;
}

Profile cumulative_integral(const Profile& p) {
  const int n = p.size();
  const double da = p.grid()->spacing();
  std::vector<double> out(n);
  out[0] = 0.0;
  for (int k = 1; k < n; ++k) out[k] = out[k - 1] + 0.5 * da * (p[k - 1] + p[k]);
  return Profile(p.grid(), std::move(out));
}

Profile decayed_cumulative(const Profile& p, double rate) {
  if (rate < 0.0) throw InvalidParameter("decayed_cumulative: rate must be >= 0");
  const int n = p.size();
  const double da = p.grid()->spacing();
  const double d = std::exp(-rate * da);
  std::vector<double> out(n);
  out[0] = 0.0;
  for (int k = 1; k < n; ++k)
    out[k] = d * out[k - 1] + 0.5 * da * (d * p[k - 1] + p[k]);
  return Profile(p.grid(), std::move(out));
}

Profile decayed_tail(const Profile& p, double rate) {
  if (rate < 0.0) throw InvalidParameter("decayed_tail: rate must be >= 0");
  const int n = p.size();
  const double da = p.grid()->spacing();
  const double d = std::exp(-rate * da);
  std::vector<double> out(n);
  out[n - 1] = 0.0;
  for (int k = n - 2; k >= 0; --k)
    out[k] = d * out[k + 1] + 0.5 * da * (p[k] + d * p[k + 1]);
  return Profile(p.grid(), std::move(out));
}

Profile decayed_cumulative_transpose(const Profile& v, double rate) {
  if (rate < 0.0)
    throw InvalidParameter("decayed_cumulative_transpose: rate must be >= 0");
  const int n = v.size();
  const double da = v.grid()->spacing();
  const double d = std::exp(-rate * da);
  // p[j] = sum_{k>j} d^{k-j} v[k]; the transpose rows then carry the
  // half-weight that the forward rule assigns to the panel ends.
  std::vector<double> out(n);
  double p = 0.0;
  for (int j = n - 1; j >= 0; --j) {
    out[j] = (j == 0) ? 0.5 * da * p : da * p + 0.5 * da * v[j];
    if (j > 0) p = d * (v[j] + p);
  }
  return Profile(v.grid(), std::move(out));
}

std::vector<double> trapezoid_weights(const AgeGrid& grid) {
  std::vector<double> w(grid.size(), grid.spacing());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double dot(const Profile& a, const Profile& b) {
  require_same_grid(a, b);
  double sum = 0.0, carry = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    double y = a[k] * b[k] - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace seqir
