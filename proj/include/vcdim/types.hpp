#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vcdim {

template <class T, int Rows = Eigen::Dynamic, int Cols = Eigen::Dynamic>
using matrix = Eigen::Matrix<T, Rows, Cols>;

template <class T, int Rows = Eigen::Dynamic>
using vector = matrix<T, Rows, 1>;

using real = double;
using Vector = vector<real>;
using Matrix = matrix<real>;

/// Bitmask over the indices of a point set: bit j set <=> point j belongs.
using Subset = std::uint64_t;

inline constexpr int kMaxMaskPoints = 63;

inline bool contains(Subset s, int j) { return (s >> j) & 1u; }
inline Subset full_subset(int n) { return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1; }

/// Finite point cloud in R^dim, one point per column.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : coords_(dim, 0) {}
  explicit PointSet(Matrix coords) : coords_(std::move(coords)) {}
  PointSet(int dim, const std::vector<std::vector<real>>& rows);

  int dim() const { return static_cast<int>(coords_.rows()); }
  int size() const { return static_cast<int>(coords_.cols()); }
  bool empty() const { return coords_.cols() == 0; }

  auto point(int j) const { return coords_.col(j); }
  const Matrix& coords() const { return coords_; }

  void push_back(const Vector& x);

  /// Points whose indices are set in `s`.
  PointSet select(Subset s) const;

  Vector centroid() const;
  real diameter() const;
  bool has_duplicates() const;

 private:
  Matrix coords_;
};

// Error taxonomy. Everything derives from Error so callers can catch broadly.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidInput : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct IterationLimit : Error {
  using Error::Error;
};
struct CutLimit : Error {
  using Error::Error;
};
struct ConstructionFailure : Error {
  using Error::Error;
};
struct DegenerateDependence : Error {
  using Error::Error;
};
struct OracleDisagreement : Error {
  using Error::Error;
};
struct CertificateFailure : Error {
  using Error::Error;
};
struct ImpossibleTightening : Error {
  using Error::Error;
};
struct NonPositiveSeparation : Error {
  using Error::Error;
};
struct SearchExhausted : Error {
  using Error::Error;
};

/// Every numeric threshold used anywhere in the library. Certificates embed
/// the record they were produced with.
struct Tolerances {
  real pd = 1e-12;              // Cholesky pivot, relative to max diagonal
  real eigen_offdiag = 1e-12;   // Jacobi stopping residual, relative to ||M||
  real solve_pivot = 1e-12;     // LU pivot, relative to row scale
  real lp = 1e-9;               // primal/dual feasibility in the simplex
  real feasibility = 1e-7;      // realizable iff margin > this
  real cut = 1e-9;              // cutting loop stops when lambda_min >= t* - cut
  real verify = 1e-9;           // pointwise re-verification slack
  int lp_max_pivots = 10000;
  int max_cuts = 200;
  int max_doublings = 60;
};

inline void require_dim(int got, int want, const char* what) {
  if (got != want) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(want) +
                            ", got " + std::to_string(got));
  }
}

}  // namespace vcdim
