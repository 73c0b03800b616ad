#pragma once

// Gaussian superlevel sets and the mixture lifting of a shattered set: N
// translated copies of a B-point set X, each subset V of the union cut out by
// the superlevel set of an N-component Gaussian mixture. All density
// arithmetic is in natural-log space.

#include <cstdint>
#include <vector>

#include "vcdim/lifting.hpp"
#include "vcdim/types.hpp"

namespace vcdim {

class GaussianComponent {
 public:
  GaussianComponent() = default;
  /// Throws NotPositiveDefinite unless `covariance` passes cholesky_pd_check.
  GaussianComponent(Vector mean, Matrix covariance, real pd_tol = 1e-12);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Vector& mean() const { return mean_; }
  const Matrix& covariance() const { return covariance_; }
  const Matrix& cholesky() const { return factor_; }  // lower, covariance = L L^T
  real log_det() const { return log_det_; }

  /// (x - mu)^T Sigma^{-1} (x - mu)
  real mahalanobis2(const Eigen::Ref<const Vector>& x) const;
  GaussianComponent translated(const Vector& t) const;

 private:
  Vector mean_;
  Matrix covariance_;
  Matrix factor_;
  real log_det_ = 0;
};

real log_density(const GaussianComponent& g, const Eigen::Ref<const Vector>& x);

/// Superlevel set {x : log g(x) > -threshold}.
struct GaussianWitness {
  GaussianComponent component;
  real threshold = 0;
};

/// Rejects thresholds at or below -log g(mu), whose superlevel set is empty.
void check_witness(const GaussianWitness& w);

GaussianWitness gaussian_from_ellipsoid(const Ellipsoid& e);
Ellipsoid superlevel_ellipsoid(const GaussianWitness& w);

/// Radius a with log g(x) < log_eps whenever ||x - mu|| > a.
real vanishing_radius(const GaussianComponent& g, real log_eps);

/// `witnesses` is indexed by subset bitmask over X. Returns a copy in which
/// every witness clears all points of X strictly.
std::vector<GaussianWitness> tighten_thresholds(const PointSet& x,
                                                const std::vector<GaussianWitness>& witnesses);

struct SeparationQuantities {
  real q = 0;         // min over Y, z outside Y of -r_Y - log g_Y(z)
  real in_slack = 0;  // min over Y, x in Y of r_Y + log g_Y(x)
  real delta = 0;     // min(q, in_slack) / 2
};

SeparationQuantities separation_quantities(const PointSet& x,
                                           const std::vector<GaussianWitness>& witnesses);

struct SpacingReport {
  real spacing = 0;
  int doublings = 0;
  std::size_t checks = 0;
  // Over all (x, j, tuple) checks: log of the translation gap log1p(sum_{i != j} e^{D_i}),
  // where D_i compares copy i seen from copy j against component j itself.
  // -inf when N = 1 (the gap is identically zero).
  real max_log_gap = 0;
  real min_log_gap = 0;
};

struct Translations {
  std::vector<Vector> offsets;  // t_i = (i - 1) s e_1
  SpacingReport report;
};

Translations choose_translations(const PointSet& x, const std::vector<GaussianWitness>& witnesses,
                                 int components, real delta, int max_doublings = 60,
                                 unsigned threads = 1);

struct MixtureModel {
  Vector weights;
  Vector log_weights;
  std::vector<GaussianComponent> components;

  int size() const { return static_cast<int>(components.size()); }
};

real log_mixture_density(const MixtureModel& f, const Eigen::Ref<const Vector>& x);

struct MixtureLevelSet {
  MixtureModel model;
  real threshold = 0;  // r_V
};

/// Softmax weights of the thresholds, components g_i translated by t_i, and
/// r_V = logsumexp(r_i).
MixtureLevelSet build_mixture(const std::vector<GaussianWitness>& witnesses,
                              const std::vector<Vector>& translations);

struct MixtureShatterWitness {
  int dim = 0;
  int components = 0;
  std::uint64_t seed = 0;
  PointSet base;                               // X, B points
  std::vector<GaussianWitness> base_witnesses;  // per subset of X, tightened
  real q = 0;
  real in_slack = 0;
  real delta = 0;
  Translations translations;
  PointSet points;  // U, point j of copy i at column i * B + j
  std::vector<MixtureLevelSet> mixtures;  // per subset of U
  Tolerances tolerances;

  std::size_t subsets() const { return mixtures.size(); }
};

MixtureShatterWitness build_mixture_shatter_witness(int d, int components, std::uint64_t seed,
                                                    unsigned threads = 1, const Tolerances& tol = {});

struct MixtureReport {
  bool shattered = true;
  std::size_t checked = 0;
  std::vector<Subset> failures;  // ascending
  real required_margin = 0;      // min(delta, q) / 2
  real min_in_margin = 0;        // min over u in V of r_V + log f_V(u)
  real min_out_margin = 0;       // min over u outside V of -(r_V + log f_V(u))
  bool structure_ok = true;      // translations, weights, delta/q relations
};

MixtureReport verify_mixture_shattering(const MixtureShatterWitness& w, unsigned threads = 1);

}  // namespace vcdim
