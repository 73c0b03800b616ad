#pragma once

#include <random>

#include "vcdim/types.hpp"

namespace vcdim::testing {

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline Matrix random_symmetric(std::mt19937_64& rng, int n) {
  Matrix m = random_matrix(rng, n, n);
  return (m + m.transpose()) / 2;
}

inline Vector random_vector(std::mt19937_64& rng, int n, double lo = -1, double hi = 1) {
  return random_matrix(rng, n, 1, lo, hi);
}

inline Vector random_unit(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v.normalized();
}

}  // namespace vcdim::testing
