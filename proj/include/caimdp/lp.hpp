#pragma once

#include "caimdp/types.hpp"

namespace caimdp {

/// maximize objective·x
/// s.t.  a_ub x <= b_ub,  a_eq x == b_eq,  lower <= x <= upper.
///
/// Bounds may be +-infinity. Empty `lower`/`upper` mean x >= 0.
struct LinearProgram {
  Vector objective;
  Matrix a_ub;
  Vector b_ub;
  Matrix a_eq;
  Vector b_eq;
  Vector lower;
  Vector upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vector x;
  long pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule.
/// `feasibility_tol` is the phase-one residual accepted as feasible.
LpSolution simplex_lp_max(const LinearProgram& lp, double feasibility_tol = 1e-9);

}  // namespace caimdp
