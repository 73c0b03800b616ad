#pragma once

// Quadratic lifting x -> (x_1^2..x_d^2, x_1x_2, x_1x_3, .., x_{d-1}x_d, x_1..x_d)
// and the conversions between lifted coefficients, (A, b, c) triples and
// ellipsoids {x : (x-mu)^T A (x-mu) < 1}.

#include <variant>

#include "vcdim/linalg.hpp"
#include "vcdim/types.hpp"

namespace vcdim {

constexpr int lift_dimension(int d) { return d * (d + 3) / 2; }

/// Slot layout of the lifted space R^B.
struct LiftedIndex {
  int d = 0;

  explicit constexpr LiftedIndex(int dim) : d(dim) {}

  constexpr int size() const { return lift_dimension(d); }
  constexpr int num_cross() const { return d * (d - 1) / 2; }
  constexpr int square(int i) const { return i; }
  /// Slot of x_i x_j for i < j, lexicographic pair order.
  constexpr int cross(int i, int j) const { return d + i * (2 * d - i - 1) / 2 + (j - i - 1); }
  constexpr int linear(int i) const { return d + num_cross() + i; }
};

template <class Derived>
vector<typename Derived::Scalar> lift_point(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const int d = static_cast<int>(x.size());
  const LiftedIndex idx(d);
  vector<Scalar> out(idx.size());
  for (int i = 0; i < d; ++i) {
    out(idx.square(i)) = x(i) * x(i);
    out(idx.linear(i)) = x(i);
    for (int j = i + 1; j < d; ++j) out(idx.cross(i, j)) = x(i) * x(j);
  }
  return out;
}

/// Quadratic part only: (x_1^2..x_d^2, x_1x_2, ..). <a_quad, lift_quadratic(u)> = u^T A u.
template <class Derived>
vector<typename Derived::Scalar> lift_quadratic(const Eigen::MatrixBase<Derived>& x) {
  const int d = static_cast<int>(x.size());
  return lift_point(x).head(d + d * (d - 1) / 2);
}

/// n x B matrix whose rows are the lifted points.
Matrix lift_points(const PointSet& x);

/// {x : <a, phi(x)> + c < 0}, i.e. p_a(x) + c < 0.
class Quadric {
 public:
  Quadric(Vector a, real c);

  int dim() const { return dim_; }
  const Vector& coeffs() const { return a_; }
  real constant() const { return c_; }
  LiftedIndex index() const { return LiftedIndex(dim_); }

 private:
  Vector a_;
  real c_ = 0;
  int dim_ = 0;
};

real quadric_eval(const Quadric& q, const Eigen::Ref<const Vector>& x);

/// x^T A x + b^T x + c with A symmetric.
struct QuadricMatrices {
  Matrix A;
  Vector b;
  real c = 0;
};

QuadricMatrices quadric_to_matrix(const Quadric& q);
Quadric quadric_from_matrix(const QuadricMatrices& m);

class Ellipsoid {
 public:
  /// Throws NotPositiveDefinite unless `shape` passes cholesky_pd_check.
  Ellipsoid(Vector center, Matrix shape);

  int dim() const { return static_cast<int>(center_.size()); }
  const Vector& center() const { return center_; }
  const Matrix& shape() const { return shape_; }

  /// (x - mu)^T A (x - mu); membership is form(x) < 1.
  real form(const Eigen::Ref<const Vector>& x) const;
  bool contains(const Eigen::Ref<const Vector>& x) const { return form(x) < 1; }

 private:
  Vector center_;
  Matrix shape_;
};

/// The zero set {x : p(x) < 0} is empty; `interior_value` is min p >= 0.
struct EmptySet {
  real interior_value = 0;
};

using EllipsoidOrEmpty = std::variant<Ellipsoid, EmptySet>;

/// Throws NotPositiveDefinite when the quadratic part is not PD.
EllipsoidOrEmpty ellipsoid_from_quadric(const Quadric& q, real pd_tol = 1e-12);
Quadric ellipsoid_to_quadric(const Ellipsoid& e);

}  // namespace vcdim
