#include <algorithm>
#include <set>

#include "doctest.h"
#include "test_util.hpp"
#include "vcdim/realizability.hpp"

using namespace vcdim;
using vcdim::testing::random_matrix;
using vcdim::testing::random_vector;

namespace {

PointSet line(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return PointSet(1, rows);
}

PointSet square_corners() { return PointSet(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

// d = 1 set with minimum gap, so every realizable labeling has a margin far above 1e-7.
PointSet separated_line(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  while (true) {
    std::vector<double> xs;
    for (int k = 0; k < n; ++k) xs.push_back(u(rng));
    auto sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    bool ok = true;
    for (int k = 1; k < n; ++k) ok = ok && sorted[static_cast<std::size_t>(k)] - sorted[static_cast<std::size_t>(k - 1)] > 0.05;
    if (!ok) continue;
    std::vector<std::vector<double>> rows;
    for (double x : xs) rows.push_back({x});
    return PointSet(1, rows);
  }
}

}  // namespace

TEST_CASE("LabeledPointSet rejects duplicates and stray bits") {
  CHECK_THROWS_AS(LabeledPointSet(line({0, 1, 0}), 1), InvalidInput);
  CHECK_THROWS_AS(LabeledPointSet(line({0, 1}), 4), InvalidInput);
}

TEST_CASE("quadric oracle examples") {
  auto r = realizable_by_quadric(LabeledPointSet(line({0, 1, 2}), 0b010));
  CHECK(is_realizable(r));
  // p(x) = 0.5 - (x - 1)^2 realizes the endpoints with a concave quadratic part
  r = realizable_by_quadric(LabeledPointSet(line({0, 1, 2}), 0b101));
  REQUIRE(is_realizable(r));
  CHECK(std::get<MarginCertificate>(r).min_eigenvalue < 0);
  CHECK(std::get<MarginCertificate>(r).margin > 0);

  r = realizable_by_quadric(LabeledPointSet(PointSet(2, {{0, 0}, {1, 0}, {2, 0}}), 0b101));
  REQUIRE(is_realizable(r));
  CHECK(std::get<MarginCertificate>(r).margin > 0);

  CHECK_THROWS_AS(realizable_by_quadric(LabeledPointSet(line({0, 1}), 0)), InvalidInput);
}

TEST_CASE("ellipsoid oracle examples") {
  auto r = realizable_by_ellipsoid(LabeledPointSet(line({0, 1, 2}), 0b010));
  REQUIRE(is_realizable(r));
  const auto& cert = std::get<MarginCertificate>(r);
  REQUIRE(cert.ellipsoid);
  CHECK(cert.ellipsoid->contains(Vector::Constant(1, 1.0)));
  CHECK_FALSE(cert.ellipsoid->contains(Vector::Constant(1, 0.0)));
  CHECK_FALSE(cert.ellipsoid->contains(Vector::Constant(1, 2.0)));

  r = realizable_by_ellipsoid(LabeledPointSet(line({0, 1, 2}), 0b101));
  REQUIRE_FALSE(is_realizable(r));
  CHECK(std::get<InfeasibilityReport>(r).lp_margin <= 1e-7);
  CHECK_FALSE(std::get<InfeasibilityReport>(r).indeterminate);

  // main diagonal of the unit square: thin ellipse along (1,1)
  const auto sq = square_corners();
  r = realizable_by_ellipsoid(LabeledPointSet(sq, 0b1001));
  REQUIRE(is_realizable(r));
  const auto& diag = std::get<MarginCertificate>(r);
  CHECK(diag.ellipsoid->contains(sq.point(0)));
  CHECK(diag.ellipsoid->contains(sq.point(3)));
  CHECK_FALSE(diag.ellipsoid->contains(sq.point(1)));
  CHECK_FALSE(diag.ellipsoid->contains(sq.point(2)));
  CHECK(verify_certificate(LabeledPointSet(sq, 0b1001), diag));
}

TEST_CASE("hand-built thin ellipse realizes the square diagonal") {
  // A = [[1,-0.9],[-0.9,1]]: eigenvalue 0.1 along (1,1), 1.9 across it.
  Matrix a(2, 2);
  a << 1, -0.9, -0.9, 1;
  const Ellipsoid e(Vector::Constant(2, 0.5), a / 0.2);
  const auto sq = square_corners();
  CHECK(e.form(sq.point(0)) == doctest::Approx(0.25));
  CHECK(e.form(sq.point(3)) == doctest::Approx(0.25));
  CHECK(e.form(sq.point(1)) == doctest::Approx(4.75));
  CHECK(e.form(sq.point(2)) == doctest::Approx(4.75));
}

TEST_CASE("trivial_witness") {
  const auto two = line({0, 1});
  auto e = trivial_witness(two, 0b11);
  CHECK(e.contains(two.point(0)));
  CHECK(e.contains(two.point(1)));
  e = trivial_witness(two, 0);
  CHECK_FALSE(e.contains(two.point(0)));
  CHECK_FALSE(e.contains(two.point(1)));
  const auto one = line({3.5});
  CHECK(trivial_witness(one, 1).contains(one.point(0)));
  CHECK_THROWS_AS(trivial_witness(two, 0b01), InvalidInput);
}

TEST_CASE("analytic interval oracle") {
  CHECK(analytic_interval_oracle(LabeledPointSet(line({0, 1, 2}), 0b010)));
  CHECK_FALSE(analytic_interval_oracle(LabeledPointSet(line({0, 1, 2}), 0b101)));
  CHECK(analytic_interval_oracle(LabeledPointSet(line({0, 1, 2, 3}), 0b0110)));
  // unsorted input
  CHECK(analytic_interval_oracle(LabeledPointSet(line({2, 0, 1}), 0b101)));
  CHECK_THROWS_AS(analytic_interval_oracle(LabeledPointSet(square_corners(), 1)), DimensionMismatch);
}

TEST_CASE("certificates re-verify and dominate the quadric relaxation") {
  std::mt19937_64 rng(77);
  int realizable = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 1 + trial % 3;
    const int n = d + 2 + trial % 3;
    const PointSet x(random_matrix(rng, d, n));
    const Subset y = 1 + rng() % (full_subset(n) - 1);
    const LabeledPointSet l(x, y);
    const auto e = realizable_by_ellipsoid(l);
    if (is_realizable(e)) {
      ++realizable;
      const auto& cert = std::get<MarginCertificate>(e);
      CHECK(verify_certificate(l, cert));
      for (int j = 0; j < n; ++j) {
        const double p = quadric_eval(cert.quadric, x.point(j));
        if (l.inside(j)) {
          CHECK(p <= -cert.margin + 1e-9);
        } else {
          CHECK(p >= -1e-9);
        }
      }
      CHECK(cert.min_eigenvalue >= cert.margin - 1e-9);
      CHECK(is_realizable(realizable_by_quadric(l)));
    }
  }
  CHECK(realizable > 20);
}

TEST_CASE("d = 1 oracle matches the interval oracle") {
  std::mt19937_64 rng(4242);
  const auto oracle = ellipsoid_oracle();
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 4;
    const auto x = separated_line(rng, n);
    for (Subset y = 0; y <= full_subset(n); ++y) {
      CHECK(oracle(x, y) == analytic_interval_oracle(LabeledPointSet(x, y)));
    }
  }
}

TEST_CASE("realizability is invariant under invertible affine maps") {
  std::mt19937_64 rng(555);
  int agree = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const PointSet x(random_matrix(rng, 2, 5));
    const Subset y = 1 + rng() % 30;
    Matrix t = random_matrix(rng, 2, 2);
    while (std::abs(t.determinant()) < 0.3) t = random_matrix(rng, 2, 2);
    const PointSet tx((t * x.coords()).colwise() + random_vector(rng, 2, -5, 5));
    const bool a = is_realizable(realizable_by_ellipsoid(LabeledPointSet(x, y)));
    const bool b = is_realizable(realizable_by_ellipsoid(LabeledPointSet(tx, y)));
    CHECK(a == b);
    agree += a == b;
  }
  CHECK(agree == 40);
}
