#pragma once

// Small dense kernels: Cholesky PD test, cyclic Jacobi eigensolver, and
// partial-pivoting LU solve. Matrix orders here never exceed a few dozen.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "vcdim/types.hpp"

namespace vcdim {

template <class Derived>
typename Derived::Scalar inf_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) return Scalar(0);
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

template <class Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

/// Lower Cholesky factor of `m` if every pivot exceeds `rel_tol` times the
/// largest diagonal entry, otherwise nullopt. The zero matrix is not PD.
template <class Derived>
std::optional<matrix<typename Derived::Scalar>> cholesky_pd_check(
    const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar rel_tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) return std::nullopt;
  const Eigen::Index n = m.rows();
  if (n == 0) return std::nullopt;
  if (!m.allFinite()) return std::nullopt;

  const Scalar max_diag = m.diagonal().maxCoeff();
  if (!(max_diag > Scalar(0))) return std::nullopt;
  const Scalar threshold = rel_tol * max_diag;

  matrix<Scalar> l = matrix<Scalar>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Scalar pivot = m(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot > threshold)) return std::nullopt;
    const Scalar ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
  }
  return l;
}

template <class Scalar>
struct SymEigen {
  vector<Scalar> values;   // ascending
  matrix<Scalar> vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
template <class Derived>
SymEigen<typename Derived::Scalar> sym_eigen(const Eigen::MatrixBase<Derived>& m,
                                             typename Derived::Scalar rel_tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw DimensionMismatch("sym_eigen: matrix is not square");
  if (m.rows() > 64) throw DimensionMismatch("sym_eigen: order exceeds 64");
  const Eigen::Index n = m.rows();

  matrix<Scalar> a = m;
  matrix<Scalar> v = matrix<Scalar>::Identity(n, n);
  const Scalar norm = a.norm();
  // The stopping point is well below rel_tol so the eigenpair residual
  // contract holds with room to spare.
  const Scalar target = std::min(rel_tol, Scalar(1e-15)) * norm;

  auto off_norm = [&] {
    Scalar s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweeps = 0;
  while (sweeps < 100 && off_norm() > target) {
    ++sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (2 * apq);
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1));
        const Scalar c = 1 / std::sqrt(t * t + 1);
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymEigen<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweeps;
  return out;
}

/// Solves m x = rhs by Gaussian elimination with partial pivoting.
/// Throws SingularMatrix when a pivot falls below `rel_tol` times its row scale.
template <class DerivedM, class DerivedV>
vector<typename DerivedM::Scalar> solve_linear(const Eigen::MatrixBase<DerivedM>& m,
                                               const Eigen::MatrixBase<DerivedV>& rhs,
                                               typename DerivedM::Scalar rel_tol = 1e-12) {
  using Scalar = typename DerivedM::Scalar;
  if (m.rows() != m.cols()) throw DimensionMismatch("solve_linear: matrix is not square");
  if (rhs.size() != m.rows()) throw DimensionMismatch("solve_linear: right-hand side length");
  const Eigen::Index n = m.rows();

  matrix<Scalar> a = m;
  vector<Scalar> b = rhs;
  vector<Scalar> scale = a.cwiseAbs().rowwise().maxCoeff();

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (!(std::abs(a(piv, k)) > rel_tol * scale(piv)) || scale(piv) == Scalar(0)) {
      throw SingularMatrix("solve_linear: matrix is singular to working precision");
    }
    if (piv != k) {
      a.row(k).swap(a.row(piv));
      std::swap(b(k), b(piv));
      std::swap(scale(k), scale(piv));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / a(k, k);
      if (f == Scalar(0)) continue;
      a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
      b(i) -= f * b(k);
    }
  }
  vector<Scalar> x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    x(i) = (b(i) - a.row(i).tail(n - i - 1).dot(x.tail(n - i - 1))) / a(i, i);
  }
  return x;
}

/// Inverse through repeated solves; used only for tiny matrices.
template <class Derived>
matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m,
                                         typename Derived::Scalar rel_tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  matrix<Scalar> out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.col(j) = solve_linear(m, vector<Scalar>::Unit(n, j), rel_tol);
  }
  return out;
}

}  // namespace vcdim
