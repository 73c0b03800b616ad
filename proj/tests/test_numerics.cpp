#include <cmath>

#include "doctest.h"
#include "test_util.hpp"
#include "vcdim/linalg.hpp"
#include "vcdim/simplex.hpp"

using namespace vcdim;
using vcdim::testing::random_matrix;
using vcdim::testing::random_symmetric;
using vcdim::testing::random_vector;

TEST_CASE("cholesky_pd_check on small cases") {
  CHECK(cholesky_pd_check(Matrix::Identity(3, 3)).has_value());
  Matrix m(2, 2);
  m << 1, 2, 2, 1;  // eigenvalues 3 and -1
  CHECK_FALSE(cholesky_pd_check(m).has_value());
  CHECK_FALSE(cholesky_pd_check(Matrix::Zero(2, 2)).has_value());

  Matrix s(2, 2);
  s << 4, 2, 2, 3;
  auto l = cholesky_pd_check(s);
  REQUIRE(l);
  CHECK((*l * l->transpose() - s).norm() < 1e-14);
}

TEST_CASE("sym_eigen on small cases") {
  Matrix d = Vector(Vector::LinSpaced(2, 2, 3)).asDiagonal();
  auto e = sym_eigen(d);
  CHECK(e.values(0) == doctest::Approx(2));
  CHECK(e.values(1) == doctest::Approx(3));

  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;  // characteristic polynomial l^2 - 1
  e = sym_eigen(swap);
  CHECK(e.values(0) == doctest::Approx(-1));
  CHECK(e.values(1) == doctest::Approx(1));

  e = sym_eigen(Matrix::Identity(4, 4));
  for (int k = 0; k < 4; ++k) CHECK(e.values(k) == 1.0);

  CHECK_THROWS_AS(sym_eigen(Matrix::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("sym_eigen residuals on random symmetric matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 12;
    const Matrix m = random_symmetric(rng, n);
    const auto e = sym_eigen(m);
    const double norm = m.norm();
    const Matrix rotated = e.vectors.transpose() * m * e.vectors;
    const Matrix off = rotated - Matrix(rotated.diagonal().asDiagonal());
    CHECK(off.norm() <= 1e-12 * norm + 1e-300);
    CHECK((e.vectors.transpose() * e.vectors - Matrix::Identity(n, n)).norm() < 1e-12);
    for (int k = 0; k < n; ++k) {
      CHECK((m * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm() <= 1e-10 * norm);
      if (k > 0) CHECK(e.values(k - 1) <= e.values(k));
    }
  }
}

TEST_CASE("PD check agrees with the minimum eigenvalue") {
  std::mt19937_64 rng(99);
  int pd = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 10;
    Matrix m = random_symmetric(rng, n);
    // shift so roughly half are PD
    m += (0.5 * n / 2.0) * Matrix::Identity(n, n) * (trial % 2 ? 1.0 : 0.3);
    const bool chol = cholesky_pd_check(m).has_value();
    const double thr = 1e-12 * m.diagonal().maxCoeff();
    const bool eig = m.diagonal().maxCoeff() > 0 && sym_eigen(m).values(0) > thr;
    CHECK(chol == eig);
    pd += chol;
  }
  CHECK(pd > 200);
  CHECK(pd < 1800);
}

TEST_CASE("solve_linear small cases") {
  Vector v(2);
  v << 1, 2;
  CHECK((solve_linear(Matrix::Identity(2, 2), v) - v).norm() == 0);

  Matrix d(2, 2);
  d << 2, 0, 0, 4;
  Vector w(2);
  w << 2, 4;
  CHECK((solve_linear(d, w) - Vector::Ones(2)).norm() == 0);

  Matrix s(2, 2);
  s << 1, 1, 2, 2;
  Vector bad(2);
  bad << 1, 0;
  CHECK_THROWS_AS(solve_linear(s, bad), SingularMatrix);
  CHECK_THROWS_AS(solve_linear(Matrix::Zero(2, 3), bad), DimensionMismatch);
}

TEST_CASE("solve_linear residual on random well-conditioned systems") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 15;
    Matrix m = random_matrix(rng, n, n) + n * Matrix::Identity(n, n);
    const Vector v = random_vector(rng, n, -10, 10);
    const Vector x = solve_linear(m, v);
    const double bound = 1e-9 * (inf_norm(m) * x.cwiseAbs().maxCoeff() + v.cwiseAbs().maxCoeff());
    CHECK((m * x - v).cwiseAbs().maxCoeff() <= bound);
  }
}

TEST_CASE("lp_solve small cases") {
  LinearProgram box(1);
  box.objective(0) = 1;
  box.set_bounds(0, 0, 1);
  auto r = lp_solve(box);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(1));
  CHECK(r.solution(0) == doctest::Approx(1));

  LinearProgram contra(1);
  contra.objective(0) = 1;
  contra.add(Vector::Ones(1), Relation::LessEqual, -1);
  CHECK(lp_solve(contra).status == LpStatus::Infeasible);

  LinearProgram open(1);
  open.objective(0) = 1;
  CHECK(lp_solve(open).status == LpStatus::Unbounded);
}

TEST_CASE("lp_solve equality and >= rows") {
  // max x + y s.t. x + 2y = 4, x >= 1, y free, x <= 3
  LinearProgram lp(2);
  lp.objective << 1, 1;
  lp.set_bounds(0, 1, 3);
  lp.set_free(1);
  Vector row(2);
  row << 1, 2;
  lp.add(row, Relation::Equal, 4);
  auto r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.solution(0) == doctest::Approx(3));
  CHECK(r.solution(1) == doctest::Approx(0.5));

  // min-type through negation: max -(x+y) s.t. x + y >= 2, x,y >= 0
  LinearProgram ge(2);
  ge.objective << -1, -1;
  ge.add(Vector::Ones(2), Relation::GreaterEqual, 2);
  r = lp_solve(ge);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(-2));
}

TEST_CASE("lp_solve box-constrained objectives hit the analytic vertex") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    LinearProgram lp(n);
    lp.objective = random_vector(rng, n, -3, 3);
    const Vector lo = random_vector(rng, n, -5, 0);
    const Vector hi = lo + random_vector(rng, n, 0.1, 4);
    double expected = 0;
    for (int k = 0; k < n; ++k) {
      lp.set_bounds(k, lo(k), hi(k));
      expected += lp.objective(k) * (lp.objective(k) > 0 ? hi(k) : lo(k));
    }
    // a redundant coupling row keeps the tableau non-trivial
    lp.add(Vector::Ones(n), Relation::LessEqual, hi.sum() + 1);
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(std::abs(r.value - expected) <= 1e-9);
    for (int k = 0; k < n; ++k) {
      CHECK(r.solution(k) >= lo(k) - 1e-9);
      CHECK(r.solution(k) <= hi(k) + 1e-9);
    }
  }
}

TEST_CASE("lp_solve solutions satisfy random feasible polytopes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 5;
    const int m = n + trial % 7;
    LinearProgram lp(n);
    lp.objective = random_vector(rng, n);
    for (int k = 0; k < n; ++k) lp.set_bounds(k, -10, 10);
    const Vector interior = random_vector(rng, n);
    for (int i = 0; i < m; ++i) {
      const Vector a = random_vector(rng, n);
      lp.add(a, i % 3 == 0 ? Relation::GreaterEqual : Relation::LessEqual,
             a.dot(interior) + (i % 3 == 0 ? -0.5 : 0.5));
    }
    const auto r = lp_solve(lp);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value >= lp.objective.dot(interior) - 1e-9);
    for (const auto& c : lp.constraints) {
      const double lhs = c.coeffs.dot(r.solution);
      if (c.relation == Relation::LessEqual) CHECK(lhs <= c.rhs + 1e-9);
      if (c.relation == Relation::GreaterEqual) CHECK(lhs >= c.rhs - 1e-9);
    }
  }
}

TEST_CASE("lp_solve respects the pivot cap") {
  LinearProgram lp(3);
  lp.objective << 1, 1, 1;
  for (int k = 0; k < 3; ++k) lp.set_bounds(k, 0, 1);
  CHECK_THROWS_AS(lp_solve(lp, {1e-9, 1}), IterationLimit);
}
