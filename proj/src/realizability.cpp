#include "vcdim/realizability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vcdim/linalg.hpp"
#include "vcdim/simplex.hpp"

namespace vcdim {

LabeledPointSet::LabeledPointSet(PointSet points, Subset labels)
    : points_(std::move(points)), labels_(labels) {
  if (points_.size() > kMaxMaskPoints) {
    throw InvalidInput("LabeledPointSet: more than 63 points");
  }
  if (points_.has_duplicates()) throw InvalidInput("LabeledPointSet: duplicate points");
  if (!points_.coords().allFinite()) throw InvalidInput("LabeledPointSet: non-finite coordinate");
  if ((labels_ & ~full_subset(points_.size())) != 0) {
    throw InvalidInput("LabeledPointSet: label bit outside the point range");
  }
}

namespace {

enum class Mode { Quadric, Ellipsoid };

// Affine preconditioning u = (x - center) / scale, so the LP sees points in
// the unit ball regardless of the caller's units.
struct Normalization {
  Vector center;
  real scale = 1;

  explicit Normalization(const PointSet& x) : center(x.centroid()) {
    real r = 0;
    for (int j = 0; j < x.size(); ++j) r = std::max(r, (x.point(j) - center).norm());
    if (r > 0) scale = r;
  }

  Matrix lifted(const PointSet& x) const {
    const PointSet u((x.coords().colwise() - center) / scale);
    return lift_points(u);
  }

  // s^2 * p_n((x - m)/s) written back as a quadric in x.
  QuadricMatrices restore(const QuadricMatrices& n) const {
    QuadricMatrices out;
    out.A = n.A;
    out.b = scale * n.b - 2 * n.A * center;
    out.c = scale * scale * n.c - scale * n.b.dot(center) + center.dot(n.A * center);
    return out;
  }
};

struct LpLayout {
  int dim;
  int lifted;
  int c_index() const { return lifted; }
  int t_index() const { return lifted + 1; }
  int vars() const { return lifted + 2; }
};

LinearProgram margin_program(const LabeledPointSet& l, const Matrix& lifted, Mode mode,
                             const std::vector<Vector>& cuts) {
  const LpLayout lay{l.dim(), static_cast<int>(lifted.cols())};
  const LiftedIndex idx(l.dim());
  LinearProgram lp(lay.vars());
  lp.objective(lay.t_index()) = 1;
  for (int k = 0; k < lay.vars(); ++k) lp.set_free(k);

  if (mode == Mode::Quadric) {
    for (int k = 0; k <= lay.c_index(); ++k) lp.set_bounds(k, -1, 1);
  } else {
    Vector trace = Vector::Zero(lay.vars());
    for (int i = 0; i < l.dim(); ++i) trace(idx.square(i)) = 1;
    lp.add(trace, Relation::Equal, l.dim());
    const int nq = static_cast<int>(cuts.empty() ? 0 : cuts.front().size());
    for (const auto& u : cuts) {
      Vector row = Vector::Zero(lay.vars());
      row.head(nq) = u;
      row(lay.t_index()) = -1;
      lp.add(row, Relation::GreaterEqual, 0);
    }
  }

  for (int j = 0; j < l.size(); ++j) {
    Vector row = Vector::Zero(lay.vars());
    row.head(lay.lifted) = lifted.row(j).transpose();
    row(lay.c_index()) = 1;
    if (l.inside(j)) {
      row(lay.t_index()) = 1;
      lp.add(row, Relation::LessEqual, 0);
    } else {
      lp.add(row, Relation::GreaterEqual, 0);
    }
  }
  return lp;
}

QuadricMatrices normalized_quadric(const Vector& sol, int d) {
  const LiftedIndex idx(d);
  QuadricMatrices m{Matrix::Zero(d, d), Vector::Zero(d), sol(idx.size())};
  for (int i = 0; i < d; ++i) {
    m.A(i, i) = sol(idx.square(i));
    for (int j = i + 1; j < d; ++j) m.A(i, j) = m.A(j, i) = sol(idx.cross(i, j)) / 2;
    m.b(i) = sol(idx.linear(i));
  }
  return m;
}

// Shifts the constant by half the margin so both sides clear zero strictly,
// maps back to original coordinates, and fills every certificate field.
MarginCertificate make_certificate(const LabeledPointSet& l, const Normalization& norm,
                                   const Vector& sol, real lp_t, real margin_n, Mode mode,
                                   int iterations, int cuts, const Tolerances& tol) {
  const int d = l.dim();
  QuadricMatrices n = normalized_quadric(sol, d);
  n.c += margin_n / 2;
  const QuadricMatrices x = norm.restore(n);
  MarginCertificate cert{quadric_from_matrix(x), std::nullopt, 0, lp_t, 0, 0, Vector(l.size()),
                         iterations, cuts, tol};
  cert.min_eigenvalue = sym_eigen(x.A, tol.eigen_offdiag).values(0);

  real in = std::numeric_limits<real>::infinity();
  real out = std::numeric_limits<real>::infinity();
  for (int j = 0; j < l.size(); ++j) {
    const real p = quadric_eval(cert.quadric, l.points().point(j));
    cert.slacks(j) = l.inside(j) ? -p : p;
    if (l.inside(j)) {
      in = std::min(in, -p);
    } else {
      out = std::min(out, p);
    }
  }
  cert.out_slack = out;
  cert.margin = mode == Mode::Ellipsoid ? std::min(in, cert.min_eigenvalue) : in;

  if (mode == Mode::Ellipsoid) {
    auto e = ellipsoid_from_quadric(cert.quadric, tol.pd);
    if (!std::holds_alternative<Ellipsoid>(e)) {
      throw CertificateFailure("realizable_by_ellipsoid: certificate describes the empty set");
    }
    cert.ellipsoid = std::get<Ellipsoid>(std::move(e));
  }
  if (!verify_certificate(l, cert, tol)) {
    throw CertificateFailure("realizability: certificate failed pointwise re-verification");
  }
  return cert;
}

void require_nontrivial(const LabeledPointSet& l, const char* who) {
  if (l.trivial()) {
    throw InvalidInput(std::string(who) + ": trivial labeling; use trivial_witness");
  }
}

}  // namespace

RealizabilityResult realizable_by_quadric(const LabeledPointSet& l, const Tolerances& tol) {
  require_nontrivial(l, "realizable_by_quadric");
  const Normalization norm(l.points());
  const Matrix lifted = norm.lifted(l.points());
  const auto lp = margin_program(l, lifted, Mode::Quadric, {});
  const auto res = lp_solve(lp, {tol.lp, tol.lp_max_pivots});
  if (res.status != LpStatus::Optimal) {
    throw Error("realizable_by_quadric: margin LP did not reach an optimum");
  }
  const LpLayout lay{l.dim(), static_cast<int>(lifted.cols())};
  const real t = res.solution(lay.t_index());
  if (t > tol.feasibility) {
    return make_certificate(l, norm, res.solution, t, t, Mode::Quadric, 1, 0, tol);
  }
  return InfeasibilityReport{t, 1, 0, false, tol};
}

RealizabilityResult realizable_by_ellipsoid(const LabeledPointSet& l, const Tolerances& tol) {
  require_nontrivial(l, "realizable_by_ellipsoid");
  const int d = l.dim();
  const Normalization norm(l.points());
  const Matrix lifted = norm.lifted(l.points());
  const LpLayout lay{d, static_cast<int>(lifted.cols())};

  // Seed cuts: coordinate axes and the pairwise diagonals.
  std::vector<Vector> cuts;
  for (int i = 0; i < d; ++i) cuts.push_back(lift_quadratic(Vector(Vector::Unit(d, i))));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (real sign : {1.0, -1.0}) {
        Vector u = Vector::Zero(d);
        u(i) = 1 / std::sqrt(2.0);
        u(j) = sign / std::sqrt(2.0);
        cuts.push_back(lift_quadratic(u));
      }
    }
  }
  const int seeded = static_cast<int>(cuts.size());

  Vector best_sol;
  real best_margin = -std::numeric_limits<real>::infinity();
  real best_t = 0;
  Vector sol;
  real t = 0;
  real lambda = 0;
  int iterations = 0;
  bool settled = false;

  while (true) {
    ++iterations;
    const auto lp = margin_program(l, lifted, Mode::Ellipsoid, cuts);
    const auto res = lp_solve(lp, {tol.lp, tol.lp_max_pivots});
    if (res.status != LpStatus::Optimal) {
      throw Error("realizable_by_ellipsoid: margin LP did not reach an optimum");
    }
    sol = res.solution;
    t = sol(lay.t_index());
    if (t < -tol.feasibility) {
      settled = true;
      break;
    }
    const auto m = normalized_quadric(sol, d);
    const auto eig = sym_eigen(m.A, tol.eigen_offdiag);
    lambda = eig.values(0);
    const real margin = std::min(t, lambda);
    if (margin > best_margin) {
      best_margin = margin;
      best_sol = sol;
      best_t = t;
    }
    if (lambda >= t - tol.cut) {
      settled = true;
      break;
    }
    // One cut per eigenvector that violates lambda >= t.
    for (int k = 0; k < d && eig.values(k) < t - tol.cut; ++k) {
      if (static_cast<int>(cuts.size()) - seeded >= tol.max_cuts) break;
      cuts.push_back(lift_quadratic(Vector(eig.vectors.col(k))));
    }
    if (static_cast<int>(cuts.size()) - seeded >= tol.max_cuts) break;
  }

  const int added = static_cast<int>(cuts.size()) - seeded;
  if (settled) {
    if (t > tol.feasibility) {
      return make_certificate(l, norm, sol, t, std::min(t, lambda), Mode::Ellipsoid, iterations,
                              added, tol);
    }
    return InfeasibilityReport{t, iterations, added, std::abs(t) <= tol.feasibility, tol};
  }
  // Cut budget exhausted: decide only if one side is already certain.
  if (best_margin > tol.feasibility) {
    return make_certificate(l, norm, best_sol, best_t, best_margin, Mode::Ellipsoid, iterations,
                            added, tol);
  }
  if (t <= tol.feasibility) {
    return InfeasibilityReport{t, iterations, added, std::abs(t) <= tol.feasibility, tol};
  }
  throw CutLimit("realizable_by_ellipsoid: cut limit reached on a numerically marginal instance");
}

Ellipsoid trivial_witness(const PointSet& x, Subset labels) {
  const int d = x.dim();
  const bool all = labels == full_subset(x.size());
  if (labels != 0 && !all) throw InvalidInput("trivial_witness: labeling is neither empty nor full");
  const real diam = x.diameter();
  Vector center = x.centroid();
  Matrix shape = Matrix::Identity(d, d);
  if (all && !x.empty()) {
    const real radius = 2 * diam + 1;
    shape /= radius * radius;
  } else {
    center(0) += 3 * diam + 3;
  }
  Ellipsoid e(center, shape);
  for (int j = 0; j < x.size(); ++j) {
    if (e.contains(x.point(j)) != contains(labels, j)) {
      throw CertificateFailure("trivial_witness: pointwise check failed");
    }
  }
  return e;
}

bool analytic_interval_oracle(const LabeledPointSet& l) {
  if (l.dim() != 1) throw DimensionMismatch("analytic_interval_oracle: requires d = 1");
  if (l.trivial()) return true;
  std::vector<int> order(static_cast<std::size_t>(l.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return l.points().point(a)(0) < l.points().point(b)(0); });
  int first = -1, last = -1;
  for (int k = 0; k < l.size(); ++k) {
    if (l.inside(order[static_cast<std::size_t>(k)])) {
      if (first < 0) first = k;
      last = k;
    }
  }
  for (int k = first; k <= last; ++k)
    if (!l.inside(order[static_cast<std::size_t>(k)])) return false;
  return true;
}

bool verify_certificate(const LabeledPointSet& l, const MarginCertificate& cert,
                        const Tolerances& tol) {
  if (!(cert.margin > 0)) return false;
  for (int j = 0; j < l.size(); ++j) {
    const real p = quadric_eval(cert.quadric, l.points().point(j));
    if (l.inside(j)) {
      if (!(p < 0) || p > -cert.margin + tol.verify) return false;
    } else if (!(p >= 0)) {
      return false;
    }
  }
  if (cert.ellipsoid) {
    const auto m = quadric_to_matrix(cert.quadric);
    if (!cholesky_pd_check(m.A, tol.pd)) return false;
    if (sym_eigen(m.A, tol.eigen_offdiag).values(0) < cert.margin - tol.verify) return false;
    for (int j = 0; j < l.size(); ++j) {
      if (cert.ellipsoid->contains(l.points().point(j)) != l.inside(j)) return false;
    }
  }
  return true;
}

LabelOracle ellipsoid_oracle(const Tolerances& tol) {
  return [tol](const PointSet& x, Subset y) {
    const LabeledPointSet l(x, y);
    if (l.trivial()) {
      trivial_witness(x, y);
      return true;
    }
    return is_realizable(realizable_by_ellipsoid(l, tol));
  };
}

LabelOracle quadric_oracle(const Tolerances& tol) {
  return [tol](const PointSet& x, Subset y) {
    const LabeledPointSet l(x, y);
    if (l.trivial()) return true;
    return is_realizable(realizable_by_quadric(l, tol));
  };
}

LabelOracle interval_oracle() {
  return [](const PointSet& x, Subset y) { return analytic_interval_oracle(LabeledPointSet(x, y)); };
}

}  // namespace vcdim
