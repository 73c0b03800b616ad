#include "vcdim/simplex.hpp"

#include <cmath>
#include <string>

namespace vcdim {
namespace {

constexpr real kPivotEps = 1e-11;

// x_k = offset + y[pos] - y[neg], with y >= 0. Negative indices mean "absent".
struct VarMap {
  real offset = 0;
  int pos = -1;
  int neg = -1;
};

struct Tableau {
  Matrix t;                // rows x (cols + 1); last column is the right-hand side
  Matrix original;         // the same system before any pivot
  std::vector<int> basis;  // basic column per row
  int pivots = 0;

  int rows() const { return static_cast<int>(t.rows()); }
  int cols() const { return static_cast<int>(t.cols()) - 1; }
  real rhs(int i) const { return t(i, cols()); }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const real f = t(i, c);
      if (f != 0) t.row(i) -= f * t.row(r);
    }
    clamp();
    basis[static_cast<std::size_t>(r)] = c;
    ++pivots;
  }

  void clamp() {
    for (int i = 0; i < rows(); ++i) {
      if (t(i, cols()) < 0 && t(i, cols()) > -kPivotEps) t(i, cols()) = 0;
    }
  }

  // Recomputes B^{-1} [A | b] from the untouched system to shed the rounding
  // error accumulated by long pivot sequences.
  void refactor() {
    Matrix b(rows(), rows());
    for (int i = 0; i < rows(); ++i) b.col(i) = original.col(basis[static_cast<std::size_t>(i)]);
    Eigen::PartialPivLU<Matrix> lu(b);
    if (!(std::abs(lu.determinant()) > 0)) return;
    t = lu.solve(original);
    for (int i = 0; i < rows(); ++i) {
      // basic columns are exact unit vectors by definition
      t.col(basis[static_cast<std::size_t>(i)]) = Vector::Unit(rows(), i);
    }
    clamp();
  }
};

enum class RunStatus { Optimal, Unbounded };

constexpr int kRefactorEvery = 64;
constexpr int kDegenerateStreak = 32;

// Maximizes cost . y over the current tableau, entering only columns with
// allowed[j] set. Steepest reduced cost while progress is being made; after a
// streak of degenerate pivots it switches to Bland's rule (lowest index on
// both the entering and leaving choice) until the objective moves again.
RunStatus run(Tableau& tab, const Vector& cost, const std::vector<bool>& allowed,
              const LpOptions& opt) {
  const int m = tab.rows();
  const int n = tab.cols();
  std::vector<bool> basic(static_cast<std::size_t>(n));
  int streak = 0;
  int since_refactor = 0;
  bool refreshed = false;
  while (true) {
    std::fill(basic.begin(), basic.end(), false);
    for (int b : tab.basis) basic[static_cast<std::size_t>(b)] = true;
    const bool bland = streak >= kDegenerateStreak;

    Vector duals(m);
    for (int i = 0; i < m; ++i) duals(i) = cost(tab.basis[static_cast<std::size_t>(i)]);
    int enter = -1;
    real best_reduced = opt.tolerance;
    for (int j = 0; j < n; ++j) {
      if (basic[static_cast<std::size_t>(j)] || !allowed[static_cast<std::size_t>(j)]) continue;
      const real reduced = cost(j) - duals.dot(tab.t.col(j).head(m));
      if (reduced > best_reduced) {
        enter = j;
        if (bland) break;
        best_reduced = reduced;
      }
    }
    if (enter < 0) {
      if (refreshed || tab.pivots == 0) return RunStatus::Optimal;
      // confirm optimality on a freshly factored tableau
      tab.refactor();
      refreshed = true;
      since_refactor = 0;
      continue;
    }
    refreshed = false;

    int leave = -1;
    real best = 0;
    for (int i = 0; i < m; ++i) {
      const real a = tab.t(i, enter);
      if (a <= kPivotEps) continue;
      const real ratio = tab.rhs(i) / a;
      if (leave < 0 || ratio < best - 1e-12 * (1 + std::abs(best))) {
        leave = i;
        best = ratio;
      } else if (ratio <= best + 1e-12 * (1 + std::abs(best)) &&
                 tab.basis[static_cast<std::size_t>(i)] < tab.basis[static_cast<std::size_t>(leave)]) {
        leave = i;
        best = std::min(best, ratio);
      }
    }
    if (leave < 0) return RunStatus::Unbounded;

    if (tab.pivots >= opt.max_pivots) {
      throw IterationLimit("lp_solve: pivot limit of " + std::to_string(opt.max_pivots) +
                           " reached");
    }
    streak = best <= kPivotEps ? streak + 1 : 0;
    tab.pivot(leave, enter);
    if (++since_refactor >= kRefactorEvery) {
      tab.refactor();
      since_refactor = 0;
    }
  }
}

}  // namespace

LpResult lp_solve(const LinearProgram& lp, const LpOptions& opt) {
  const int nx = lp.num_vars();
  if (lp.lower.size() != nx || lp.upper.size() != nx) {
    throw DimensionMismatch("lp_solve: bound vectors do not match the objective");
  }
  for (const auto& c : lp.constraints) {
    if (c.coeffs.size() != nx) throw DimensionMismatch("lp_solve: constraint row length");
    if (!c.coeffs.allFinite() || !std::isfinite(c.rhs)) {
      throw InvalidInput("lp_solve: non-finite constraint");
    }
  }
  if (!lp.objective.allFinite()) throw InvalidInput("lp_solve: non-finite objective");

  LpResult result;

  // Substitute bounded/free variables by nonnegative ones.
  std::vector<VarMap> map(static_cast<std::size_t>(nx));
  std::vector<LinearConstraint> rows;
  int ny = 0;
  std::vector<std::pair<int, real>> upper_rows;  // (y column, range)
  for (int k = 0; k < nx; ++k) {
    const real lo = lp.lower(k), hi = lp.upper(k);
    auto& v = map[static_cast<std::size_t>(k)];
    if (std::isfinite(lo)) {
      if (std::isfinite(hi) && hi < lo) return result;  // empty box
      v.offset = lo;
      v.pos = ny++;
      if (std::isfinite(hi)) upper_rows.emplace_back(v.pos, hi - lo);
    } else if (std::isfinite(hi)) {
      v.offset = hi;
      v.neg = ny++;
    } else {
      v.pos = ny++;
      v.neg = ny++;
    }
  }

  auto to_y = [&](const Vector& coeffs, real rhs) {
    Vector row = Vector::Zero(ny);
    for (int k = 0; k < nx; ++k) {
      const auto& v = map[static_cast<std::size_t>(k)];
      if (v.pos >= 0) row(v.pos) += coeffs(k);
      if (v.neg >= 0) row(v.neg) -= coeffs(k);
      rhs -= coeffs(k) * v.offset;
    }
    return LinearConstraint{row, Relation::LessEqual, rhs};
  };

  for (const auto& c : lp.constraints) {
    auto r = to_y(c.coeffs, c.rhs);
    r.relation = c.relation;
    rows.push_back(std::move(r));
  }
  for (auto [col, range] : upper_rows) {
    rows.push_back({Vector::Unit(ny, col), Relation::LessEqual, range});
  }
  for (auto& r : rows) {
    // rhs = 0 ">=" rows flip too, so they start with a slack instead of an artificial.
    if (r.rhs < 0 || (r.rhs == 0 && r.relation == Relation::GreaterEqual)) {
      r.coeffs = -r.coeffs;
      r.rhs = -r.rhs;
      if (r.relation == Relation::LessEqual) {
        r.relation = Relation::GreaterEqual;
      } else if (r.relation == Relation::GreaterEqual) {
        r.relation = Relation::LessEqual;
      }
    }
  }

  // Column layout: [y | slack/surplus | artificial].
  const int m = static_cast<int>(rows.size());
  int n_slack = 0, n_art = 0;
  for (const auto& r : rows) {
    if (r.relation != Relation::Equal) ++n_slack;
    if (r.relation != Relation::LessEqual) ++n_art;
  }
  const int n = ny + n_slack + n_art;
  Tableau tab;
  tab.t = Matrix::Zero(m, n + 1);
  tab.basis.assign(static_cast<std::size_t>(m), -1);
  int s = ny, a = ny + n_slack;
  for (int i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    tab.t.row(i).head(ny) = r.coeffs.transpose();
    tab.t(i, n) = r.rhs;
    if (r.relation == Relation::LessEqual) {
      tab.t(i, s) = 1;
      tab.basis[static_cast<std::size_t>(i)] = s++;
    } else if (r.relation == Relation::GreaterEqual) {
      tab.t(i, s++) = -1;
      tab.t(i, a) = 1;
      tab.basis[static_cast<std::size_t>(i)] = a++;
    } else {
      tab.t(i, a) = 1;
      tab.basis[static_cast<std::size_t>(i)] = a++;
    }
  }
  const int first_art = ny + n_slack;
  tab.original = tab.t;

  // Phase 1: drive the artificial variables to zero.
  if (n_art > 0) {
    Vector cost = Vector::Zero(n);
    cost.tail(n_art).setConstant(-1);
    std::vector<bool> allowed(static_cast<std::size_t>(n), true);
    run(tab, cost, allowed, opt);
    real infeas = 0;
    real scale = 1;
    for (int i = 0; i < m; ++i) {
      scale = std::max(scale, std::abs(rows[static_cast<std::size_t>(i)].rhs));
      if (tab.basis[static_cast<std::size_t>(i)] >= first_art) infeas += tab.rhs(i);
    }
    if (infeas > opt.tolerance * scale) {
      result.status = LpStatus::Infeasible;
      result.pivots = tab.pivots;
      return result;
    }
    // Pivot remaining (zero-valued) artificials out where possible; rows where
    // that is impossible are redundant and stay inert.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[static_cast<std::size_t>(i)] < first_art) continue;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(tab.t(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2.
  Vector cost = Vector::Zero(n);
  for (int k = 0; k < nx; ++k) {
    const auto& v = map[static_cast<std::size_t>(k)];
    if (v.pos >= 0) cost(v.pos) += lp.objective(k);
    if (v.neg >= 0) cost(v.neg) -= lp.objective(k);
  }
  std::vector<bool> allowed(static_cast<std::size_t>(n), true);
  for (int j = first_art; j < n; ++j) allowed[static_cast<std::size_t>(j)] = false;
  const auto status = run(tab, cost, allowed, opt);
  result.pivots = tab.pivots;
  if (status == RunStatus::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  Vector y = Vector::Zero(n);
  for (int i = 0; i < m; ++i) y(tab.basis[static_cast<std::size_t>(i)]) = tab.rhs(i);
  result.solution.resize(nx);
  for (int k = 0; k < nx; ++k) {
    const auto& v = map[static_cast<std::size_t>(k)];
    real x = v.offset;
    if (v.pos >= 0) x += y(v.pos);
    if (v.neg >= 0) x -= y(v.neg);
    result.solution(k) = x;
  }
  result.value = lp.objective.dot(result.solution);
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace vcdim
