#pragma once

// Separation oracle: can a labeled finite point set be cut out by a quadric,
// or by an ellipsoid (quadric with positive definite quadratic part)?
//
// Both questions are posed as max-margin LPs over lifted coefficients. The
// ellipsoid variant handles lambda_min(A) >= t as a semi-infinite constraint
// through eigenvector cutting planes u^T A u >= t.

#include <functional>
#include <optional>
#include <variant>

#include "vcdim/lifting.hpp"
#include "vcdim/types.hpp"

namespace vcdim {

/// Points (pairwise distinct, at most 63) plus the subset Y to be cut out.
class LabeledPointSet {
 public:
  LabeledPointSet(PointSet points, Subset labels);

  const PointSet& points() const { return points_; }
  Subset labels() const { return labels_; }
  int size() const { return points_.size(); }
  int dim() const { return points_.dim(); }
  bool inside(int j) const { return contains(labels_, j); }
  bool trivial() const { return labels_ == 0 || labels_ == full_subset(size()); }

 private:
  PointSet points_;
  Subset labels_;
};

struct MarginCertificate {
  Quadric quadric;                    // original coordinates
  std::optional<Ellipsoid> ellipsoid;  // set by the ellipsoid oracle
  real margin = 0;          // min over Y of -p(y), and lambda_min(A) for ellipsoids
  real lp_margin = 0;       // t* of the final LP (normalized coordinates)
  real out_slack = 0;       // min over X\Y of p(z)
  real min_eigenvalue = 0;  // of the quadratic part
  Vector slacks;            // -p(x) on Y, p(x) off Y
  int iterations = 0;
  int cuts = 0;
  Tolerances tolerances;
};

struct InfeasibilityReport {
  real lp_margin = 0;  // t* at termination, an upper bound on the true optimum
  int iterations = 0;
  int cuts = 0;
  bool indeterminate = false;  // |t*| <= tolerances.feasibility
  Tolerances tolerances;
};

using RealizabilityResult = std::variant<MarginCertificate, InfeasibilityReport>;

inline bool is_realizable(const RealizabilityResult& r) {
  return std::holds_alternative<MarginCertificate>(r);
}
inline real lp_margin(const RealizabilityResult& r) {
  return std::visit([](const auto& v) { return v.lp_margin; }, r);
}

/// Labels must be nontrivial (neither empty nor full).
RealizabilityResult realizable_by_quadric(const LabeledPointSet& l, const Tolerances& tol = {});
RealizabilityResult realizable_by_ellipsoid(const LabeledPointSet& l, const Tolerances& tol = {});

/// Ball containing all of X (labels full) or none of X (labels empty).
Ellipsoid trivial_witness(const PointSet& x, Subset labels);

/// d = 1 only: Y is cut out by an open interval iff its sorted positions are contiguous.
bool analytic_interval_oracle(const LabeledPointSet& l);

/// Pointwise re-check of a certificate against its labeled set.
bool verify_certificate(const LabeledPointSet& l, const MarginCertificate& cert,
                        const Tolerances& tol = {});

/// Yes/no oracle over arbitrary labelings (trivial ones go to trivial_witness).
using LabelOracle = std::function<bool(const PointSet&, Subset)>;

LabelOracle ellipsoid_oracle(const Tolerances& tol = {});
LabelOracle quadric_oracle(const Tolerances& tol = {});
LabelOracle interval_oracle();

}  // namespace vcdim
