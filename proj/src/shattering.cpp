#include "vcdim/shattering.hpp"

#include <cmath>
#include <random>

#include "vcdim/linalg.hpp"
#include "vcdim/parallel.hpp"

namespace vcdim {
namespace {

Vector sphere_point(std::mt19937_64& rng, int d) {
  std::normal_distribution<real> g;
  Vector v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = g(rng);
  } while (v.norm() == 0);
  return v / v.norm();
}

std::vector<char> label_outcomes(const PointSet& x, const LabelOracle& oracle, unsigned threads) {
  if (x.size() > 20) throw InvalidInput("labeling enumeration is limited to 20 points");
  const std::size_t count = std::size_t{1} << x.size();
  std::vector<char> ok(count, 0);
  parallel_for(count, threads, [&](std::size_t y) { ok[y] = oracle(x, static_cast<Subset>(y)) ? 1 : 0; });
  return ok;
}

}  // namespace

SpanningPoints construct_spanning_sphere_points(int d, std::uint64_t seed) {
  if (d < 1 || d > 6) throw InvalidInput("construct_spanning_sphere_points: need 1 <= d <= 6");
  const int b = lift_dimension(d);
  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= 100; ++attempt) {
    PointSet s(d);
    if (d == 1) {
      // S^0 has exactly two points.
      s.push_back(Vector::Constant(1, -1.0));
      s.push_back(Vector::Constant(1, 1.0));
    } else {
      for (int j = 0; j < b; ++j) s.push_back(sphere_point(rng, d));
    }
    const Matrix m = lift_points(s);
    try {
      const Matrix inv = inverse(m);
      const real cond = inf_norm(m) * inf_norm(inv);
      if (!(cond < 1e12)) continue;
      return {std::move(s), m, cond, attempt};
    } catch (const SingularMatrix&) {
      continue;
    }
  }
  throw ConstructionFailure("construct_spanning_sphere_points: 100 attempts gave a singular lifted matrix");
}

namespace {

HalfspaceWitness solve_witness(const Matrix& m, real inv_norm, Subset y, real epsilon) {
  const int b = static_cast<int>(m.rows());
  const real delta = std::min(epsilon, real(1)) / (2 * inv_norm);
  Vector v(b);
  for (int j = 0; j < b; ++j) v(j) = contains(y, j) ? 1 - delta : 1 + delta;
  return {solve_linear(m, v), delta};
}

}  // namespace

HalfspaceWitness halfspace_witness(const PointSet& s, Subset y, real epsilon) {
  if (!(epsilon > 0 && epsilon < 1)) throw InvalidInput("halfspace_witness: need 0 < epsilon < 1");
  const Matrix m = lift_points(s);
  require_dim(static_cast<int>(m.rows()), static_cast<int>(m.cols()), "halfspace_witness");
  return solve_witness(m, inf_norm(inverse(m)), y, epsilon);
}

ShatterWitness build_shatter_witness(int d, std::uint64_t seed, unsigned threads,
                                     const Tolerances& tol) {
  if (d < 1 || d > 4) throw InvalidInput("build_shatter_witness: need 1 <= d <= 4");
  auto span = construct_spanning_sphere_points(d, seed);
  const int b = lift_dimension(d);
  const Matrix inv = inverse(span.lifted);
  const real inv_norm = inf_norm(inv);

  ShatterWitness w;
  w.dim = d;
  w.points = span.points;
  w.epsilon = real(1) / (d + 1);
  w.condition = span.condition;
  w.gershgorin_bound = (1 - w.epsilon) - (d - 1) * w.epsilon / 2;
  w.seed = seed;
  w.tolerances = tol;

  Vector base = Vector::Zero(b);
  base.head(d).setOnes();

  const std::size_t count = std::size_t{1} << b;
  w.coefficients.resize(count);
  w.min_eigenvalues.resize(count);
  w.slacks.resize(count);
  std::vector<std::optional<Ellipsoid>> ellipsoids(count);

  parallel_for(count, threads, [&](std::size_t idx) {
    const Subset y = idx;
    const auto hw = solve_witness(span.lifted, inv_norm, y, w.epsilon);
    if (hw.b.isZero(0) || (hw.b - base).cwiseAbs().maxCoeff() >= w.epsilon) {
      throw CertificateFailure("build_shatter_witness: coefficient left the epsilon box");
    }
    const Quadric q(hw.b, -1);
    const auto mats = quadric_to_matrix(q);
    const real lambda = sym_eigen(mats.A, tol.eigen_offdiag).values(0);
    if (!cholesky_pd_check(mats.A, tol.pd) || lambda < w.gershgorin_bound - tol.verify) {
      throw CertificateFailure("build_shatter_witness: quadratic part below the Gershgorin bound");
    }
    auto e = ellipsoid_from_quadric(q, tol.pd);
    if (!std::holds_alternative<Ellipsoid>(e)) {
      throw CertificateFailure("build_shatter_witness: witness quadric has an empty zero set");
    }
    real slack = std::numeric_limits<real>::infinity();
    for (int j = 0; j < b; ++j) {
      slack = std::min(slack, std::abs(hw.b.dot(span.lifted.row(j)) - 1));
    }
    w.coefficients[idx] = hw.b;
    w.min_eigenvalues[idx] = lambda;
    w.slacks[idx] = slack;
    ellipsoids[idx] = std::get<Ellipsoid>(std::move(e));
    if (idx == 0) w.delta = hw.delta;
  });

  w.ellipsoids.reserve(count);
  for (auto& e : ellipsoids) w.ellipsoids.push_back(std::move(*e));

  const auto report = verify_shattering(w.points, w.ellipsoids);
  if (!report.shattered) {
    throw CertificateFailure("build_shatter_witness: some witness ellipsoid cuts out the wrong subset");
  }
  return w;
}

ShatterReport verify_shattering(const PointSet& x, const std::vector<Ellipsoid>& witnesses) {
  ShatterReport r;
  const std::size_t count = x.size() >= 64 ? 0 : std::size_t{1} << x.size();
  if (witnesses.size() != count) {
    throw InvalidInput("verify_shattering: need one witness per subset");
  }
  for (std::size_t y = 0; y < count; ++y) {
    ++r.checked;
    bool ok = true;
    for (int j = 0; j < x.size() && ok; ++j) {
      ok = witnesses[y].contains(x.point(j)) == contains(static_cast<Subset>(y), j);
    }
    if (!ok) {
      r.shattered = false;
      r.failures.push_back(static_cast<Subset>(y));
    }
  }
  return r;
}

ShatterReport verify_shattering(const PointSet& x, const LabelOracle& oracle, unsigned threads) {
  ShatterReport r;
  if (x.empty()) {
    r.checked = 1;
    return r;
  }
  const auto ok = label_outcomes(x, oracle, threads);
  r.checked = ok.size();
  for (std::size_t y = 0; y < ok.size(); ++y) {
    if (!ok[y]) {
      r.shattered = false;
      r.failures.push_back(static_cast<Subset>(y));
    }
  }
  return r;
}

RadonCertificate radon_partition(const Matrix& points) {
  const int k = static_cast<int>(points.rows());
  const int m = static_cast<int>(points.cols());
  if (m < k + 2) throw InvalidInput("radon_partition: need at least k + 2 points");

  Matrix h(k + 1, m);
  h.topRows(k) = points;
  h.row(k).setOnes();
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullV);
  Vector lambda = svd.matrixV().col(m - 1);

  const real cutoff = 1e-12 * lambda.cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i) {
    if (std::abs(lambda(i)) > cutoff) {
      if (lambda(i) < 0) lambda = -lambda;
      break;
    }
  }

  RadonCertificate c;
  real pos = 0, neg = 0;
  for (int i = 0; i < m; ++i) {
    if (lambda(i) < -cutoff) {
      c.second.push_back(i);
      neg -= lambda(i);
    } else {
      c.first.push_back(i);
      if (lambda(i) > cutoff) pos += lambda(i);
    }
  }
  if (!(pos > 0) || !(neg > 0)) {
    throw DegenerateDependence("radon_partition: affine dependence has a single sign");
  }
  c.first_weights.resize(static_cast<Eigen::Index>(c.first.size()));
  c.second_weights.resize(static_cast<Eigen::Index>(c.second.size()));
  Vector p1 = Vector::Zero(k), p2 = Vector::Zero(k);
  for (std::size_t i = 0; i < c.first.size(); ++i) {
    const real l = lambda(c.first[i]);
    const real wgt = l > cutoff ? l / pos : 0;
    c.first_weights(static_cast<Eigen::Index>(i)) = wgt;
    p1 += wgt * points.col(c.first[i]);
  }
  for (std::size_t i = 0; i < c.second.size(); ++i) {
    const real wgt = -lambda(c.second[i]) / neg;
    c.second_weights(static_cast<Eigen::Index>(i)) = wgt;
    p2 += wgt * points.col(c.second[i]);
  }
  c.point = (p1 + p2) / 2;
  return c;
}

bool verify_radon(const Matrix& points, const RadonCertificate& c, real tol) {
  const int m = static_cast<int>(points.cols());
  std::vector<int> seen(static_cast<std::size_t>(m), 0);
  for (int i : c.first) {
    if (i < 0 || i >= m) return false;
    ++seen[static_cast<std::size_t>(i)];
  }
  for (int i : c.second) {
    if (i < 0 || i >= m) return false;
    ++seen[static_cast<std::size_t>(i)];
  }
  for (int s : seen)
    if (s != 1) return false;
  if (c.first.empty() || c.second.empty()) return false;
  if (c.first_weights.size() != static_cast<Eigen::Index>(c.first.size()) ||
      c.second_weights.size() != static_cast<Eigen::Index>(c.second.size())) {
    return false;
  }
  if (c.first_weights.minCoeff() < 0 || c.second_weights.minCoeff() < 0) return false;
  if (std::abs(c.first_weights.sum() - 1) > 1e-12 || std::abs(c.second_weights.sum() - 1) > 1e-12) {
    return false;
  }
  Vector p1 = Vector::Zero(points.rows()), p2 = Vector::Zero(points.rows());
  for (std::size_t i = 0; i < c.first.size(); ++i) {
    p1 += c.first_weights(static_cast<Eigen::Index>(i)) * points.col(c.first[i]);
  }
  for (std::size_t i = 0; i < c.second.size(); ++i) {
    p2 += c.second_weights(static_cast<Eigen::Index>(i)) * points.col(c.second[i]);
  }
  const real scale = std::max(real(1), points.cwiseAbs().maxCoeff());
  return (p1 - c.point).cwiseAbs().maxCoeff() <= tol * scale &&
         (p2 - c.point).cwiseAbs().maxCoeff() <= tol * scale;
}

Matrix trace_rotation(int d) {
  const int b = lift_dimension(d);
  Vector u = Vector::Zero(b);
  u.head(d).setConstant(1 / std::sqrt(real(d)));
  const Vector w = u - Vector::Unit(b, b - 1);
  return Matrix::Identity(b, b) - 2 * w * w.transpose() / w.squaredNorm();
}

RefutationCertificate find_unrealizable_labeling(const PointSet& x, const Tolerances& tol) {
  const int d = x.dim();
  const int b = lift_dimension(d);
  if (x.size() != b + 1) {
    throw InvalidInput("find_unrealizable_labeling: need exactly " + std::to_string(b + 1) +
                       " points in dimension " + std::to_string(d));
  }
  if (x.has_duplicates()) throw InvalidInput("find_unrealizable_labeling: duplicate points");

  RefutationCertificate cert;
  cert.points = x;
  const Matrix rotated = trace_rotation(d) * lift_points(x).transpose();  // B x (B+1)
  cert.projected = rotated.topRows(b - 1);
  cert.heights = rotated.row(b - 1).transpose();

  const real scale = std::max(real(1), cert.projected.cwiseAbs().maxCoeff());
  for (int i = 0; i <= b && cert.higher < 0; ++i) {
    for (int j = i + 1; j <= b; ++j) {
      if ((cert.projected.col(i) - cert.projected.col(j)).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
        cert.kind = RefutationKind::EqualProjection;
        const bool i_higher = cert.heights(i) > cert.heights(j);
        cert.higher = i_higher ? i : j;
        cert.lower = i_higher ? j : i;
        cert.labeling = Subset{1} << cert.higher;
        break;
      }
    }
  }

  if (cert.higher < 0) {
    cert.kind = RefutationKind::Radon;
    auto radon = radon_partition(cert.projected);
    real z1 = 0, z2 = 0;
    for (std::size_t i = 0; i < radon.first.size(); ++i) {
      z1 += radon.first_weights(static_cast<Eigen::Index>(i)) * cert.heights(radon.first[i]);
    }
    for (std::size_t i = 0; i < radon.second.size(); ++i) {
      z2 += radon.second_weights(static_cast<Eigen::Index>(i)) * cert.heights(radon.second[i]);
    }
    cert.first_height = z1;
    cert.second_height = z2;
    cert.tie = std::abs(z1 - z2) <= 1e-12 * std::max(real(1), cert.heights.cwiseAbs().maxCoeff());
    const auto& side = z2 <= z1 || cert.tie ? radon.first : radon.second;
    for (int i : side) cert.labeling |= Subset{1} << i;
    cert.radon = std::move(radon);
  }

  const auto result = realizable_by_ellipsoid(LabeledPointSet(x, cert.labeling), tol);
  if (is_realizable(result)) {
    throw OracleDisagreement("find_unrealizable_labeling: oracle realized the refuted labeling");
  }
  cert.oracle = std::get<InfeasibilityReport>(result);
  return cert;
}

bool verify_refutation(const RefutationCertificate& cert, real tol) {
  const int d = cert.points.dim();
  const int b = lift_dimension(d);
  if (cert.points.size() != b + 1 || cert.points.has_duplicates()) return false;
  const Matrix rotated = trace_rotation(d) * lift_points(cert.points).transpose();
  const real scale = std::max(real(1), rotated.cwiseAbs().maxCoeff());
  if (cert.projected.rows() != b - 1 || cert.projected.cols() != b + 1) return false;
  if ((rotated.topRows(b - 1) - cert.projected).cwiseAbs().maxCoeff() > tol * scale) return false;
  if ((rotated.row(b - 1).transpose() - cert.heights).cwiseAbs().maxCoeff() > tol * scale) return false;

  if (cert.kind == RefutationKind::EqualProjection) {
    if (cert.higher < 0 || cert.lower < 0 || cert.higher > b || cert.lower > b) return false;
    if ((cert.projected.col(cert.higher) - cert.projected.col(cert.lower)).cwiseAbs().maxCoeff() >
        tol * scale) {
      return false;
    }
    return cert.heights(cert.higher) > cert.heights(cert.lower) && contains(cert.labeling, cert.higher) &&
           !contains(cert.labeling, cert.lower);
  }

  if (!cert.radon || !verify_radon(cert.projected, *cert.radon, tol)) return false;
  const auto& r = *cert.radon;
  real z1 = 0, z2 = 0;
  for (std::size_t i = 0; i < r.first.size(); ++i) {
    z1 += r.first_weights(static_cast<Eigen::Index>(i)) * cert.heights(r.first[i]);
  }
  for (std::size_t i = 0; i < r.second.size(); ++i) {
    z2 += r.second_weights(static_cast<Eigen::Index>(i)) * cert.heights(r.second[i]);
  }
  if (std::abs(z1 - cert.first_height) > tol * scale || std::abs(z2 - cert.second_height) > tol * scale) {
    return false;
  }
  // The side whose lifted combination sits higher cannot be cut out by any
  // quadric with positive trace, hence by no ellipsoid.
  Subset first = 0, second = 0;
  for (int i : r.first) first |= Subset{1} << i;
  for (int i : r.second) second |= Subset{1} << i;
  if (cert.labeling == first) return z2 <= z1 + tol * scale;
  if (cert.labeling == second) return z1 <= z2 + tol * scale;
  return false;
}

PointSet uniform_point_set(int d, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<real> u(-1, 1);
  Matrix m(d, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = u(rng);
  return PointSet(std::move(m));
}

VcEstimate estimate_vc_lower_bound(int d, const LabelOracle& oracle, int trials, std::uint64_t seed,
                                   unsigned threads) {
  if (d < 1 || d > 3) throw InvalidInput("estimate_vc_lower_bound: need 1 <= d <= 3");
  VcEstimate best{0, PointSet(d)};
  if (trials <= 0) return best;
  const int b = lift_dimension(d);
  const auto spanning = construct_spanning_sphere_points(d, seed).points;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<real> u(-1, 1);
  for (int n = 1; n <= b + 1; ++n) {
    bool found = false;
    for (int k = 0; k < trials && !found; ++k) {
      PointSet candidate(d);
      if (k == 0 && n <= b) {
        candidate = PointSet(Matrix(spanning.coords().leftCols(n)));
      } else {
        for (int j = 0; j < n; ++j) {
          Vector p(d);
          for (int i = 0; i < d; ++i) p(i) = u(rng);
          candidate.push_back(p);
        }
      }
      if (candidate.has_duplicates()) continue;
      if (verify_shattering(candidate, oracle, threads).shattered) {
        found = true;
        best = {n, candidate};
      }
    }
    if (!found) break;
  }
  return best;
}

std::vector<ShatterRow> shatter_table(const PointSet& x, const LabelOracle& oracle, unsigned threads) {
  if (x.size() > 16) throw InvalidInput("shatter_table: at most 16 points");
  const auto ok = label_outcomes(x, oracle, threads);
  std::vector<ShatterRow> rows(static_cast<std::size_t>(x.size() + 1));
  for (int s = 0; s <= x.size(); ++s) rows[static_cast<std::size_t>(s)].size = s;
  for (std::size_t y = 0; y < ok.size(); ++y) {
    auto& row = rows[static_cast<std::size_t>(std::popcount(static_cast<Subset>(y)))];
    ++row.total;
    row.realizable += ok[y] ? 1 : 0;
  }
  return rows;
}

std::size_t shatter_coefficient(const PointSet& x, const LabelOracle& oracle, unsigned threads) {
  std::size_t total = 0;
  for (const auto& row : shatter_table(x, oracle, threads)) total += row.realizable;
  return total;
}

}  // namespace vcdim
