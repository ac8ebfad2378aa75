#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "seqir/errors.hpp"

namespace seqir {

class AgeGrid;
using GridPtr = std::shared_ptr<const AgeGrid>;

/// Uniform discretization of the age axis [0, a_max].
///
/// Every profile in the library lives on one of these meshes. The grid is
/// uniform so that transient characteristics pass exactly through nodes
/// (dt = da). Nodes are a_k = k * da with da = a_max / (n - 1).
class AgeGrid {
 public:
  static GridPtr make(double a_max, int n);

  double a_max() const { return a_max_; }
  int size() const { return n_; }
  double spacing() const { return da_; }
  double node(int k) const { return k * da_; }

  /// Index of the panel containing age a, clamped to [0, n-2].
  int panel(double a) const;

  bool compatible(const AgeGrid& other) const {
    return n_ == other.n_ && a_max_ == other.a_max_;
  }

 private:
  AgeGrid(double a_max, int n) : a_max_(a_max), n_(n), da_(a_max / (n - 1)) {}

  double a_max_;
  int n_;
  double da_;
};

/// A real-valued function of age sampled on an AgeGrid.
///
/// Values are immutable after construction and must all be finite. Units
/// depend on the role (density per year, rate per year, or dimensionless).
class Profile {
 public:
  Profile(GridPtr grid, std::vector<double> values);

  static Profile zero(const GridPtr& grid);
  static Profile constant(const GridPtr& grid, double value);
  static Profile sample(const GridPtr& grid, const std::function<double(double)>& f);
  /// Profile whose value at node k is the node age itself.
  static Profile ages(const GridPtr& grid);

  const GridPtr& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int k) const { return values_[k]; }
  const std::vector<double>& values() const { return values_; }

  /// Linear interpolation between nodes; a is clamped to [0, a_max].
  double at_age(double a) const;

  double max_abs() const;
  double min_value() const;

  Profile scaled(double factor) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

Profile operator+(const Profile& a, const Profile& b);
Profile operator-(const Profile& a, const Profile& b);
Profile operator*(const Profile& a, const Profile& b);
Profile operator*(double s, const Profile& p);

void require_same_grid(const Profile& a, const Profile& b);

/// Composite trapezoidal approximation of the integral of p over [0, a_max].
double integrate(const Profile& p);

/// F with F(a_k) = integral of p over [0, a_k]; F(0) = 0, exact for linear p.
Profile cumulative_integral(const Profile& p);

/// F(a_k) = integral over [0, a_k] of p(s) * exp(-rate * (a_k - s)) ds,
/// trapezoidal in the source, exact in the exponential decay. rate >= 0.
Profile decayed_cumulative(const Profile& p, double rate);

/// T(a_k) = integral over [a_k, a_max] of p(s) * exp(-rate * (s - a_k)) ds.
Profile decayed_tail(const Profile& p, double rate);

/// Exact algebraic transpose of decayed_cumulative: for any v, g,
/// dot(v, decayed_cumulative(g, rate)) == dot(decayed_cumulative_transpose(v, rate), g)
/// up to rounding. Used to evaluate nested integrals in the reversed order.
Profile decayed_cumulative_transpose(const Profile& v, double rate);

/// Plain trapezoid weights (da/2 at the ends, da inside).
std::vector<double> trapezoid_weights(const AgeGrid& grid);

double dot(const Profile& a, const Profile& b);

}  // namespace seqir
