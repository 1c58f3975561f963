#pragma once

#include <cstdint>

#include "oblique/matrix.hpp"

namespace oblique {

/// Deterministic counter-based random generator (splitmix64 expansion).
///
/// Every randomized operation in the library takes an explicit seed and
/// expands it through this generator, so results are reproducible and
/// independent streams can run concurrently.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  /// Standard normal via Box-Muller on two fresh uniforms.
  double gaussian();

  /// Derive an independent, reproducible stream for substep `stream`.
  Rng spawn(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
  std::uint64_t origin_;
};

/// rows x cols matrix with i.i.d. standard normal entries.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace oblique
