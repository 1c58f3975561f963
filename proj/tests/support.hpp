#pragma once

#include <algorithm>
#include <cstdint>

#include "oblique/matrix.hpp"
#include "oblique/rng.hpp"

namespace oblique::test {

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  return gaussian_matrix(rows, cols, rng);
}

/// Random rows x cols matrix of exact rank k (product of Gaussian factors).
inline Matrix random_rank_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  return matmul(gaussian_matrix(rows, k, rng), gaussian_matrix(k, cols, rng));
}

/// Random shape with 1 <= rows, cols <= max_dim.
struct RandomShape {
  std::size_t rows;
  std::size_t cols;
};

inline RandomShape random_shape(Rng& rng, std::size_t max_dim = 12) {
  return RandomShape{1 + rng.next_u64() % max_dim, 1 + rng.next_u64() % max_dim};
}

inline double relative_defect(const Matrix& got, const Matrix& want) {
  const double denom = frobenius_norm(want);
  const double diff = frobenius_norm(sub(got, want));
  return denom > 0.0 ? diff / denom : diff;
}

}  // namespace oblique::test
