#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace seqir {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Profiles living on different age grids were combined.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Mortality fails to deplete the population, or mu = 0 where a closed form
/// requires mu > 0.
class DegenerateDemography : public Error {
 public:
  using Error::Error;
};

/// s+e+q+i+r drifted from 1 beyond tolerance during a transient step.
class ConservationViolation : public Error {
 public:
  ConservationViolation(const std::string& what, double time, int node, double defect)
      : Error(what), time(time), node(node), defect(defect) {}
  double time;
  int node;
  double defect;
};

/// Endemic root bracketing exceeded the force-of-infection ceiling.
class NoBracket : public Error {
 public:
  using Error::Error;
};

/// Average age of infection requested for a disease-free steady state.
class NoInfection : public Error {
 public:
  using Error::Error;
};

/// Affine kernel certification failed while building vaccination kernels.
class KernelMismatch : public Error {
 public:
  using Error::Error;
};

/// No vaccination policy satisfies the constraints.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Outer force-of-infection iteration failed to converge.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, std::vector<double> history)
      : Error(what), h_history(std::move(history)) {}
  std::vector<double> h_history;
};

/// Scenario configuration is invalid; carries every diagnostic found.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::vector<std::string> diags)
      : Error(what), diagnostics(std::move(diags)) {}
  std::vector<std::string> diagnostics;
};

}  // namespace seqir
