#pragma once

// Constructive lower bound: B = (d^2+3d)/2 unit vectors whose lifts are
// affinely independent, and for each subset an explicit ellipsoid cutting it
// out. Constructive upper bound: for any B+1 points, a labeling no ellipsoid
// realizes, justified by a Radon partition in the projected lifted space.

#include <cstdint>
#include <optional>

#include "vcdim/lifting.hpp"
#include "vcdim/realizability.hpp"
#include "vcdim/types.hpp"

namespace vcdim {

struct SpanningPoints {
  PointSet points;  // B unit vectors
  Matrix lifted;    // B x B, row j = phi(s_j)
  real condition = 0;  // ||M||_inf ||M^{-1}||_inf
  int attempts = 0;
};

SpanningPoints construct_spanning_sphere_points(int d, std::uint64_t seed);

struct HalfspaceWitness {
  Vector b;
  real delta = 0;
};

/// b with <b, phi(s_j)> = 1 - delta for j in Y and 1 + delta otherwise, and
/// ||b - (1..1,0..0)||_inf < epsilon.
HalfspaceWitness halfspace_witness(const PointSet& s, Subset y, real epsilon);

struct ShatterWitness {
  int dim = 0;
  PointSet points;
  real epsilon = 0;
  real delta = 0;
  real condition = 0;
  real gershgorin_bound = 0;  // (1 - eps) - (d - 1) eps / 2
  std::uint64_t seed = 0;
  // Indexed by subset bitmask over `points`.
  std::vector<Vector> coefficients;
  std::vector<Ellipsoid> ellipsoids;
  std::vector<real> min_eigenvalues;
  std::vector<real> slacks;  // min_j |<b, phi(s_j)> - 1|
  Tolerances tolerances;

  std::size_t subsets() const { return ellipsoids.size(); }
};

ShatterWitness build_shatter_witness(int d, std::uint64_t seed, unsigned threads = 1,
                                     const Tolerances& tol = {});

struct ShatterReport {
  bool shattered = true;
  std::size_t checked = 0;
  std::vector<Subset> failures;  // ascending
};

/// Witness mode: every E_Y must satisfy E_Y ∩ X = Y by direct evaluation.
ShatterReport verify_shattering(const PointSet& x, const std::vector<Ellipsoid>& witnesses);
ShatterReport verify_shattering(const PointSet& x, const LabelOracle& oracle, unsigned threads = 1);

/// Weights on each side are nonnegative and sum to one; both combinations equal `point`.
struct RadonCertificate {
  std::vector<int> first;
  std::vector<int> second;
  Vector first_weights;
  Vector second_weights;
  Vector point;
};

/// `points` holds m >= k + 2 columns in R^k.
RadonCertificate radon_partition(const Matrix& points);
bool verify_radon(const Matrix& points, const RadonCertificate& cert, real tol = 1e-9);

/// Householder reflection sending the trace direction (1..1,0..0)/sqrt(d) to the last lifted axis.
Matrix trace_rotation(int d);

enum class RefutationKind { EqualProjection, Radon };

struct RefutationCertificate {
  PointSet points;
  Subset labeling = 0;
  RefutationKind kind = RefutationKind::Radon;
  Matrix projected;  // (B-1) x (B+1): rotated lifted points without the last coordinate
  Vector heights;    // last rotated coordinate per point
  // EqualProjection: point `higher` is labeled in, `lower` out.
  int higher = -1;
  int lower = -1;
  // Radon
  std::optional<RadonCertificate> radon;
  real first_height = 0;   // z, from the first side's weights
  real second_height = 0;  // z'
  bool tie = false;
  InfeasibilityReport oracle;
};

RefutationCertificate find_unrealizable_labeling(const PointSet& x, const Tolerances& tol = {});

/// Checks the geometric part of a refutation without re-solving anything.
bool verify_refutation(const RefutationCertificate& cert, real tol = 1e-9);

struct VcEstimate {
  int lower_bound = 0;
  PointSet witness;
};

/// n points drawn uniformly from [-1, 1]^d with a seeded generator.
PointSet uniform_point_set(int d, int n, std::uint64_t seed);

VcEstimate estimate_vc_lower_bound(int d, const LabelOracle& oracle, int trials, std::uint64_t seed,
                                   unsigned threads = 1);

std::size_t shatter_coefficient(const PointSet& x, const LabelOracle& oracle, unsigned threads = 1);

struct ShatterRow {
  int size = 0;
  std::size_t realizable = 0;
  std::size_t total = 0;
};

/// Realizable labelings grouped by |Y|.
std::vector<ShatterRow> shatter_table(const PointSet& x, const LabelOracle& oracle,
                                      unsigned threads = 1);

}  // namespace vcdim
