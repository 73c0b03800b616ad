#include "vcdim/gmm.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "vcdim/linalg.hpp"
#include "vcdim/parallel.hpp"
#include "vcdim/realizability.hpp"
#include "vcdim/shattering.hpp"

namespace vcdim {
namespace {

constexpr real kInf = std::numeric_limits<real>::infinity();
const real kLog2Pi = std::log(2 * std::numbers::pi);

real log_normalizer(const GaussianComponent& g) { return -0.5 * (g.dim() * kLog2Pi + g.log_det()); }

real logsumexp(const Vector& v) {
  if (v.size() == 0) return -kInf;
  const real m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

bool near(real a, real b, real tol) { return std::abs(a - b) <= tol * std::max(real(1), std::abs(b)); }

}  // namespace

GaussianComponent::GaussianComponent(Vector mean, Matrix covariance, real pd_tol)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  require_dim(static_cast<int>(covariance_.rows()), dim(), "GaussianComponent covariance");
  require_dim(static_cast<int>(covariance_.cols()), dim(), "GaussianComponent covariance");
  if (!mean_.allFinite()) throw InvalidInput("GaussianComponent: non-finite mean");
  auto l = cholesky_pd_check(covariance_, pd_tol);
  if (!l) throw NotPositiveDefinite("GaussianComponent: covariance is not positive definite");
  factor_ = std::move(*l);
  log_det_ = 2 * factor_.diagonal().array().log().sum();
}

real GaussianComponent::mahalanobis2(const Eigen::Ref<const Vector>& x) const {
  require_dim(static_cast<int>(x.size()), dim(), "GaussianComponent::mahalanobis2");
  return factor_.triangularView<Eigen::Lower>().solve(x - mean_).squaredNorm();
}

GaussianComponent GaussianComponent::translated(const Vector& t) const {
  GaussianComponent g = *this;
  require_dim(static_cast<int>(t.size()), dim(), "GaussianComponent::translated");
  g.mean_ += t;
  return g;
}

real log_density(const GaussianComponent& g, const Eigen::Ref<const Vector>& x) {
  return log_normalizer(g) - 0.5 * g.mahalanobis2(x);
}

void check_witness(const GaussianWitness& w) {
  if (!std::isfinite(w.threshold) || w.threshold <= -log_normalizer(w.component)) {
    throw InvalidInput("GaussianWitness: threshold leaves an empty superlevel set");
  }
}

GaussianWitness gaussian_from_ellipsoid(const Ellipsoid& e) {
  Matrix sigma = inverse(e.shape());
  sigma = (sigma + sigma.transpose()) / 2;
  GaussianWitness w{GaussianComponent(e.center(), sigma), 0};
  w.threshold = 0.5 * (1 + e.dim() * kLog2Pi + w.component.log_det());
  return w;
}

Ellipsoid superlevel_ellipsoid(const GaussianWitness& w) {
  check_witness(w);
  const real h = w.threshold + log_normalizer(w.component);
  const Matrix& l = w.component.cholesky();
  const Matrix linv = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(l.rows(), l.cols()));
  Matrix precision = linv.transpose() * linv;
  precision = (precision + precision.transpose()) / 2;
  return Ellipsoid(w.component.mean(), precision / (2 * h));
}

real vanishing_radius(const GaussianComponent& g, real log_eps) {
  const real top = log_normalizer(g);
  if (log_eps >= top) return 0;
  const real lambda_max = sym_eigen(g.covariance()).values.maxCoeff();
  return std::sqrt(2 * lambda_max * (top - log_eps));
}

std::vector<GaussianWitness> tighten_thresholds(const PointSet& x,
                                                const std::vector<GaussianWitness>& witnesses) {
  const std::size_t count = std::size_t{1} << x.size();
  if (witnesses.size() != count) throw InvalidInput("tighten_thresholds: need one witness per subset");
  std::vector<GaussianWitness> out = witnesses;
  for (std::size_t y = 0; y < count; ++y) {
    auto& w = out[y];
    check_witness(w);
    real in_max = -kInf, out_min = kInf;
    for (int j = 0; j < x.size(); ++j) {
      const real v = -log_density(w.component, x.point(j));
      if (contains(static_cast<Subset>(y), j)) {
        in_max = std::max(in_max, v);
      } else {
        out_min = std::min(out_min, v);
      }
    }
    // With Y empty the lower end is the density peak.
    const real lo = std::isfinite(in_max) ? in_max : -log_normalizer(w.component);
    const real tie = 1e-12 * std::max(real(1), std::abs(w.threshold));
    if (out_min > w.threshold + tie && lo < w.threshold) continue;
    const real hi = std::min(w.threshold, out_min);
    if (!(lo < hi)) throw ImpossibleTightening("tighten_thresholds: no threshold separates the subset");
    w.threshold = lo + (hi - lo) / 2;
  }
  return out;
}

SeparationQuantities separation_quantities(const PointSet& x,
                                           const std::vector<GaussianWitness>& witnesses) {
  const std::size_t count = std::size_t{1} << x.size();
  if (witnesses.size() != count) throw InvalidInput("separation_quantities: need one witness per subset");
  SeparationQuantities s{kInf, kInf, 0};
  for (std::size_t y = 0; y < count; ++y) {
    const auto& w = witnesses[y];
    for (int j = 0; j < x.size(); ++j) {
      const real v = w.threshold + log_density(w.component, x.point(j));
      if (contains(static_cast<Subset>(y), j)) {
        s.in_slack = std::min(s.in_slack, v);
      } else {
        s.q = std::min(s.q, -v);
      }
    }
  }
  if (!(s.q > 0) || !(s.in_slack > 0)) {
    throw NonPositiveSeparation("separation_quantities: some witness does not clear X strictly");
  }
  s.delta = std::min(s.q, s.in_slack) / 2;
  return s;
}

Translations choose_translations(const PointSet& x, const std::vector<GaussianWitness>& witnesses,
                                 int components, real delta, int max_doublings, unsigned threads) {
  const int b = x.size();
  const int n = components;
  if (n < 1) throw InvalidInput("choose_translations: need at least one component");
  if (!(delta >= 0)) throw InvalidInput("choose_translations: delta must be positive");
  if (b * n > 20) throw InvalidInput("choose_translations: at most 20 points in the union");
  const std::size_t subsets = std::size_t{1} << b;
  if (witnesses.size() != subsets) throw InvalidInput("choose_translations: need one witness per subset");

  const int d = x.dim();
  const int offsets = 2 * n - 1;  // k = j - i in [-(n-1), n-1]
  const std::size_t tuples = std::size_t{1} << (b * n);
  const real log_delta = std::log(delta);
  const Subset mask = full_subset(b);

  // val[(y * b + p) * offsets + (k + n - 1)] = r_Y + log g_Y(x_p + k s e_1)
  std::vector<real> val(subsets * static_cast<std::size_t>(b * offsets));
  std::vector<real> tuple_max(tuples), tuple_min(tuples);
  std::vector<char> tuple_ok(tuples);

  real s = 2 * x.diameter() + 1;
  for (int doubling = 0; doubling <= max_doublings; ++doubling, s *= 2) {
    for (std::size_t y = 0; y < subsets; ++y) {
      for (int p = 0; p < b; ++p) {
        for (int k = -(n - 1); k <= n - 1; ++k) {
          Vector pt = x.point(p);
          pt(0) += k * s;
          val[(y * static_cast<std::size_t>(b) + static_cast<std::size_t>(p)) * static_cast<std::size_t>(offsets) +
              static_cast<std::size_t>(k + n - 1)] = witnesses[y].threshold + log_density(witnesses[y].component, pt);
        }
      }
    }
    auto at = [&](Subset y, int p, int k) {
      return val[(static_cast<std::size_t>(y) * static_cast<std::size_t>(b) + static_cast<std::size_t>(p)) *
                     static_cast<std::size_t>(offsets) +
                 static_cast<std::size_t>(k + n - 1)];
    };

    parallel_for(tuples, threads, [&](std::size_t tuple) {
      real hi = -kInf, lo = kInf;
      bool ok = true;
      Vector terms(std::max(n - 1, 0));
      for (int j = 0; j < n; ++j) {
        const Subset yj = (static_cast<Subset>(tuple) >> (j * b)) & mask;
        for (int p = 0; p < b; ++p) {
          const real own = at(yj, p, 0);
          int t = 0;
          for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            const Subset yi = (static_cast<Subset>(tuple) >> (i * b)) & mask;
            terms(t++) = at(yi, p, j - i) - own;
          }
          // log of log1p(S) with log S = logsumexp(D_i); for tiny S the two agree.
          const real log_s = logsumexp(terms);
          real log_gap = log_s;
          if (log_s > -700) log_gap = std::log(std::log1p(std::exp(log_s)));
          hi = std::max(hi, log_gap);
          lo = std::min(lo, log_gap);
          if (n > 1) ok = ok && std::isfinite(log_gap) && log_gap < log_delta;
          else ok = ok && delta > 0;
        }
      }
      tuple_max[tuple] = hi;
      tuple_min[tuple] = lo;
      tuple_ok[tuple] = ok;
    });

    bool all = true;
    for (char c : tuple_ok) all = all && c;
    if (!all) continue;

    Translations tr;
    for (int i = 0; i < n; ++i) {
      Vector t = Vector::Zero(d);
      t(0) = i * s;
      tr.offsets.push_back(t);
    }
    tr.report.spacing = s;
    tr.report.doublings = doubling;
    tr.report.checks = tuples * static_cast<std::size_t>(n * b);
    tr.report.max_log_gap = *std::max_element(tuple_max.begin(), tuple_max.end());
    tr.report.min_log_gap = *std::min_element(tuple_min.begin(), tuple_min.end());
    return tr;
  }
  throw SearchExhausted("choose_translations: no spacing within " + std::to_string(max_doublings) +
                        " doublings keeps every gap below delta; try a larger delta or fewer components");
}

real log_mixture_density(const MixtureModel& f, const Eigen::Ref<const Vector>& x) {
  Vector terms(f.size());
  for (int i = 0; i < f.size(); ++i) {
    terms(i) = f.log_weights(i) + log_density(f.components[static_cast<std::size_t>(i)], x);
  }
  return logsumexp(terms);
}

MixtureLevelSet build_mixture(const std::vector<GaussianWitness>& witnesses,
                              const std::vector<Vector>& translations) {
  const int n = static_cast<int>(witnesses.size());
  if (n < 1) throw InvalidInput("build_mixture: need at least one component");
  if (translations.size() != witnesses.size()) {
    throw InvalidInput("build_mixture: need one translation per component");
  }
  Vector r(n);
  for (int i = 0; i < n; ++i) r(i) = witnesses[static_cast<std::size_t>(i)].threshold;
  MixtureLevelSet m;
  m.threshold = logsumexp(r);
  m.model.log_weights = r.array() - m.threshold;
  m.model.weights = m.model.log_weights.array().exp();
  for (int i = 0; i < n; ++i) {
    m.model.components.push_back(
        witnesses[static_cast<std::size_t>(i)].component.translated(translations[static_cast<std::size_t>(i)]));
  }
  return m;
}

MixtureShatterWitness build_mixture_shatter_witness(int d, int components, std::uint64_t seed,
                                                    unsigned threads, const Tolerances& tol) {
  if (d < 1 || d > 2) throw InvalidInput("build_mixture_shatter_witness: need 1 <= d <= 2");
  if (components < 1 || components > 3) {
    throw InvalidInput("build_mixture_shatter_witness: need 1 <= N <= 3");
  }
  const auto base = build_shatter_witness(d, seed, threads, tol);
  const PointSet& x = base.points;
  const int b = x.size();
  const std::size_t subsets = base.subsets();

  std::vector<GaussianWitness> gw;
  gw.reserve(subsets);
  for (std::size_t y = 0; y < subsets; ++y) {
    const Subset ys = static_cast<Subset>(y);
    if (ys == 0 || ys == full_subset(b)) {
      gw.push_back(gaussian_from_ellipsoid(trivial_witness(x, ys)));
    } else {
      gw.push_back(gaussian_from_ellipsoid(base.ellipsoids[y]));
    }
  }

  MixtureShatterWitness w;
  w.dim = d;
  w.components = components;
  w.seed = seed;
  w.base = x;
  w.tolerances = tol;
  w.base_witnesses = tighten_thresholds(x, gw);
  const auto sep = separation_quantities(x, w.base_witnesses);
  w.q = sep.q;
  w.in_slack = sep.in_slack;
  w.delta = sep.delta;
  w.translations = choose_translations(x, w.base_witnesses, components, w.delta, tol.max_doublings, threads);

  w.points = PointSet(d);
  for (int i = 0; i < components; ++i) {
    for (int j = 0; j < b; ++j) w.points.push_back(x.point(j) + w.translations.offsets[static_cast<std::size_t>(i)]);
  }

  const std::size_t count = std::size_t{1} << (b * components);
  w.mixtures.resize(count);
  const Subset mask = full_subset(b);
  parallel_for(count, threads, [&](std::size_t v) {
    std::vector<GaussianWitness> parts;
    for (int i = 0; i < components; ++i) {
      parts.push_back(w.base_witnesses[(static_cast<Subset>(v) >> (i * b)) & mask]);
    }
    w.mixtures[v] = build_mixture(parts, w.translations.offsets);
  });

  const auto report = verify_mixture_shattering(w, threads);
  if (!report.shattered || !report.structure_ok) {
    throw CertificateFailure("build_mixture_shatter_witness: final verification failed");
  }
  return w;
}

MixtureReport verify_mixture_shattering(const MixtureShatterWitness& w, unsigned threads) {
  MixtureReport rep;
  rep.required_margin = std::min(w.delta, w.q) / 2;
  rep.min_in_margin = kInf;
  rep.min_out_margin = kInf;

  const int n = w.components;
  const int b = w.base.size();
  const int d = w.base.dim();
  const std::size_t count = b * n <= 20 ? std::size_t{1} << (b * n) : 0;
  auto& ok = rep.structure_ok;
  ok = n >= 1 && b >= 1 && count > 0 && w.points.size() == n * b && w.points.dim() == d &&
       w.mixtures.size() == count && w.translations.offsets.size() == static_cast<std::size_t>(n) &&
       w.base_witnesses.size() == (std::size_t{1} << b);
  if (!ok) {
    rep.shattered = false;
    return rep;
  }
  ok = ok && w.q > 0 && w.delta > 0 && w.delta < w.q && w.delta <= w.in_slack / 2 * (1 + 1e-12);

  const real diam = w.base.diameter();
  const real scale = std::max(real(1), w.points.coords().cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    const Vector& ti = w.translations.offsets[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < n; ++k) {
      ok = ok && (ti - w.translations.offsets[static_cast<std::size_t>(k)]).norm() > diam;
    }
    for (int j = 0; j < b; ++j) {
      ok = ok && (w.points.point(i * b + j) - w.base.point(j) - ti).cwiseAbs().maxCoeff() <= 1e-12 * scale;
    }
  }

  const Subset mask = full_subset(b);
  std::vector<char> pass(count, 1), shape(count, 1);
  std::vector<real> in_margin(count, kInf), out_margin(count, kInf);
  parallel_for(count, threads, [&](std::size_t v) {
    const auto& m = w.mixtures[v];
    if (m.model.size() != n || m.model.weights.size() != n || m.model.log_weights.size() != n) {
      shape[v] = 0;
      pass[v] = 0;
      return;
    }
    bool s = std::abs(m.model.weights.sum() - 1) <= 1e-12 && m.model.weights.minCoeff() >= 0;
    for (int i = 0; i < n; ++i) {
      const auto& base = w.base_witnesses[(static_cast<Subset>(v) >> (i * b)) & mask];
      const auto& comp = m.model.components[static_cast<std::size_t>(i)];
      s = s && near(m.model.log_weights(i) + m.threshold, base.threshold, 1e-12);
      s = s && near(std::log(m.model.weights(i)), m.model.log_weights(i), 1e-12);
      s = s && (comp.mean() - base.component.mean() - w.translations.offsets[static_cast<std::size_t>(i)])
                       .cwiseAbs()
                       .maxCoeff() <= 1e-12 * scale;
      s = s && (comp.covariance() - base.component.covariance()).cwiseAbs().maxCoeff() <=
                   1e-12 * std::max(real(1), base.component.covariance().cwiseAbs().maxCoeff());
    }
    shape[v] = s;
    for (int u = 0; u < n * b; ++u) {
      const real val = m.threshold + log_mixture_density(m.model, w.points.point(u));
      if (contains(static_cast<Subset>(v), u)) {
        in_margin[v] = std::min(in_margin[v], val);
        if (!(val >= rep.required_margin)) pass[v] = 0;
      } else {
        out_margin[v] = std::min(out_margin[v], -val);
        if (!(-val >= rep.required_margin)) pass[v] = 0;
      }
    }
  });

  for (std::size_t v = 0; v < count; ++v) {
    ++rep.checked;
    ok = ok && shape[v];
    rep.min_in_margin = std::min(rep.min_in_margin, in_margin[v]);
    rep.min_out_margin = std::min(rep.min_out_margin, out_margin[v]);
    if (!pass[v]) {
      rep.shattered = false;
      rep.failures.push_back(static_cast<Subset>(v));
    }
  }
  return rep;
}

}  // namespace vcdim
