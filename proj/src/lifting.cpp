#include "vcdim/lifting.hpp"

namespace vcdim {
namespace {

int dim_from_lifted(Eigen::Index b) {
  for (int d = 1; lift_dimension(d) <= b; ++d)
    if (lift_dimension(d) == b) return d;
  throw DimensionMismatch("Quadric: coefficient length " + std::to_string(b) +
                          " is not (d^2+3d)/2 for any d");
}

}  // namespace

Matrix lift_points(const PointSet& x) {
  const LiftedIndex idx(x.dim());
  Matrix out(x.size(), idx.size());
  for (int j = 0; j < x.size(); ++j) out.row(j) = lift_point(x.point(j)).transpose();
  return out;
}

Quadric::Quadric(Vector a, real c) : a_(std::move(a)), c_(c), dim_(dim_from_lifted(a_.size())) {
  if (!a_.allFinite() || !std::isfinite(c_)) throw InvalidInput("Quadric: non-finite coefficient");
  if (a_.isZero(0)) throw InvalidInput("Quadric: coefficient vector is zero");
}

real quadric_eval(const Quadric& q, const Eigen::Ref<const Vector>& x) {
  const int d = q.dim();
  require_dim(static_cast<int>(x.size()), d, "quadric_eval");
  const auto idx = q.index();
  const auto& a = q.coeffs();
  // q_a(x) + linear part + c, accumulated monomial by monomial.
  real quad = 0, lin = 0;
  for (int i = 0; i < d; ++i) {
    quad += a(idx.square(i)) * x(i) * x(i);
    for (int j = i + 1; j < d; ++j) quad += a(idx.cross(i, j)) * x(i) * x(j);
    lin += a(idx.linear(i)) * x(i);
  }
  return quad + lin + q.constant();
}

QuadricMatrices quadric_to_matrix(const Quadric& q) {
  const int d = q.dim();
  const auto idx = q.index();
  const auto& a = q.coeffs();
  QuadricMatrices m{Matrix::Zero(d, d), Vector::Zero(d), q.constant()};
  for (int i = 0; i < d; ++i) {
    m.A(i, i) = a(idx.square(i));
    for (int j = i + 1; j < d; ++j) m.A(i, j) = m.A(j, i) = a(idx.cross(i, j)) / 2;
    m.b(i) = a(idx.linear(i));
  }
  return m;
}

Quadric quadric_from_matrix(const QuadricMatrices& m) {
  const int d = static_cast<int>(m.A.rows());
  require_dim(static_cast<int>(m.A.cols()), d, "quadric_from_matrix");
  require_dim(static_cast<int>(m.b.size()), d, "quadric_from_matrix");
  const LiftedIndex idx(d);
  Vector a(idx.size());
  for (int i = 0; i < d; ++i) {
    a(idx.square(i)) = m.A(i, i);
    for (int j = i + 1; j < d; ++j) a(idx.cross(i, j)) = m.A(i, j) + m.A(j, i);
    a(idx.linear(i)) = m.b(i);
  }
  return Quadric(std::move(a), m.c);
}

Ellipsoid::Ellipsoid(Vector center, Matrix shape) : center_(std::move(center)), shape_(std::move(shape)) {
  require_dim(static_cast<int>(shape_.rows()), dim(), "Ellipsoid");
  require_dim(static_cast<int>(shape_.cols()), dim(), "Ellipsoid");
  if (!center_.allFinite()) throw InvalidInput("Ellipsoid: non-finite center");
  if (!cholesky_pd_check(shape_)) throw NotPositiveDefinite("Ellipsoid: shape matrix is not positive definite");
}

real Ellipsoid::form(const Eigen::Ref<const Vector>& x) const {
  require_dim(static_cast<int>(x.size()), dim(), "Ellipsoid::form");
  const Vector r = x - center_;
  return r.dot(shape_ * r);
}

EllipsoidOrEmpty ellipsoid_from_quadric(const Quadric& q, real pd_tol) {
  const auto m = quadric_to_matrix(q);
  if (!cholesky_pd_check(m.A, pd_tol)) {
    throw NotPositiveDefinite("ellipsoid_from_quadric: quadratic part is not positive definite");
  }
  const Vector center = -0.5 * solve_linear(m.A, m.b);
  const real v = quadric_eval(q, center);
  if (v >= 0) return EmptySet{v};
  return Ellipsoid(center, m.A / (-v));
}

Quadric ellipsoid_to_quadric(const Ellipsoid& e) {
  const Matrix& A = e.shape();
  const Vector& mu = e.center();
  return quadric_from_matrix({A, -2 * A * mu, mu.dot(A * mu) - 1});
}

}  // namespace vcdim
