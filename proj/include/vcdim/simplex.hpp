#pragma once

#include <limits>
#include <vector>

#include "vcdim/types.hpp"

namespace vcdim {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearConstraint {
  Vector coeffs;
  Relation relation = Relation::LessEqual;
  real rhs = 0;
};

/// maximize <objective, x> subject to the constraints and lower <= x <= upper.
/// Bounds may be infinite; the default is x >= 0.
struct LinearProgram {
  Vector objective;
  std::vector<LinearConstraint> constraints;
  Vector lower;
  Vector upper;

  explicit LinearProgram(int n = 0)
      : objective(Vector::Zero(n)),
        lower(Vector::Zero(n)),
        upper(Vector::Constant(n, std::numeric_limits<real>::infinity())) {}

  int num_vars() const { return static_cast<int>(objective.size()); }

  void add(Vector coeffs, Relation rel, real rhs) {
    constraints.push_back({std::move(coeffs), rel, rhs});
  }
  void set_free(int j) {
    lower(j) = -std::numeric_limits<real>::infinity();
    upper(j) = std::numeric_limits<real>::infinity();
  }
  void set_bounds(int j, real lo, real hi) {
    lower(j) = lo;
    upper(j) = hi;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector solution;
  real value = 0;
  int pivots = 0;
};

struct LpOptions {
  real tolerance = 1e-9;
  int max_pivots = 10000;
};

/// Two-phase dense tableau simplex with Bland's rule. Deterministic.
/// Throws IterationLimit past `max_pivots`.
LpResult lp_solve(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace vcdim
