#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oblique/matrix.hpp"
#include "oblique/projectors.hpp"
#include "oblique/rng.hpp"
#include "support.hpp"

using namespace oblique;
using oblique::test::random_rank_matrix;

namespace {

// Worked 3x3 rank-2 fixture: target, its leading columns/rows as bases, and
// hand-picked sketches with exact fractional inverses.
const Matrix kF{{0, 1}, {1, 2}, {2, 7}};
const Matrix kHStar{{0, 1, 0.5}, {1, 2, 1.5}};
const Matrix kB{{1, 0}, {0, 1}, {1, 1}};
const Matrix kD{{1, 0}, {0, 1}, {0, 1}};
const Matrix kLeft{{-1.5, 4.0 / 3.0, -1.0 / 6.0}, {0.5, -1.0 / 3.0, 1.0 / 6.0}};
const Matrix kRight{{-7.0 / 3.0, 1}, {2.0 / 3.0, 0}, {2.0 / 3.0, 0}};

// Rank-1 fixture where both bases equal the target.
const Matrix kDefF{{0, 1, 0.5}, {0, 2, 1}};
const Matrix kDefB{{1, 0, 1}, {2, 0, 2}};
const Matrix kDefD{{1, 1}, {0, 0}, {1, 1}};

}  // namespace

TEST_CASE("randomized_left_inverse reproduces the worked values") {
  CHECK(max_abs_diff(randomized_left_inverse(kB, kF), kLeft) < 1e-13);
  CHECK(max_abs_diff(randomized_left_inverse(identity(2), identity(2)), identity(2)) < 1e-14);
  const Matrix expected{{0, 0}, {4.0 / 25.0, 8.0 / 25.0}, {2.0 / 25.0, 4.0 / 25.0}};
  CHECK(max_abs_diff(randomized_left_inverse(kDefB, kDefF), expected) < 1e-14);
}

TEST_CASE("randomized_right_inverse reproduces the worked values") {
  CHECK(max_abs_diff(randomized_right_inverse(kD, kHStar), kRight) < 1e-13);
  CHECK(max_abs_diff(randomized_right_inverse(identity(2), identity(2)), identity(2)) < 1e-14);
  const Matrix expected{{0.4, 0.8}, {0, 0}, {0.4, 0.8}};
  CHECK(max_abs_diff(randomized_right_inverse(kDefD, kDefF), expected) < 1e-14);
}

TEST_CASE("inverse construction rejects bad sketches") {
  CHECK_THROWS_AS(randomized_left_inverse(Matrix(3, 3), kF), DimensionError);
  // sketch columns orthogonal to the basis span drop the rank to zero
  CHECK_THROWS_AS(randomized_left_inverse(Matrix::zero(3, 2), kF), RankPreservationError);
  // kDefF's columns are multiples of (1, 2); columns of (2, -1) are orthogonal
  const Matrix orthogonal{{2, 2, 2}, {-1, -1, -1}};
  CHECK_THROWS_AS(randomized_left_inverse(orthogonal, kDefF), RankPreservationError);
  CHECK_THROWS_AS(randomized_right_inverse(Matrix::zero(3, 2), kHStar), RankPreservationError);
}

TEST_CASE("check_rank_preserving fills every rank") {
  SUBCASE("full-rank worked example") {
    const RankPreservingCheck check = check_rank_preserving(kB, kF, transpose(kHStar), kD, 2);
    CHECK(check.rank_bf == 2);
    CHECK(check.rank_hd == 2);
    CHECK(check.rank_f == 2);
    CHECK(check.rank_h == 2);
    CHECK(check.holds);
  }
  SUBCASE("zero sketch fails") {
    const RankPreservingCheck check =
        check_rank_preserving(Matrix::zero(3, 2), kF, transpose(kHStar), kD, 2);
    CHECK(check.rank_bf == 0);
    CHECK_FALSE(check.holds);
  }
  SUBCASE("rank-deficient example holds with k = 1") {
    const RankPreservingCheck check =
        check_rank_preserving(kDefB, kDefF, transpose(kDefF), kDefD, 1);
    CHECK(check.rank_bf == 1);
    CHECK(check.rank_hd == 1);
    CHECK(check.rank_f == 1);
    CHECK(check.rank_h == 1);
    CHECK(check.holds);
  }
}

TEST_CASE("is_idempotent") {
  const Matrix projection{{0.5, 0, 0.5}, {0, 0, 0}, {0.5, 0, 0.5}};  // f f+ for f = [1;0;1]
  CHECK(is_idempotent(projection));
  CHECK(is_idempotent(identity(4)));
  CHECK_FALSE(is_idempotent(2.0 * identity(2)));
  CHECK_THROWS_AS(is_idempotent(Matrix(2, 3)), DimensionError);
}

TEST_CASE("projector equation holds only in the full-rank regime") {
  CHECK(projector_equation_holds(kLeft, kF, kHStar, kRight));
  // the pseudoinverse of a full-column-rank basis is a left inverse
  CHECK(projector_equation_holds(pinv(kF), kF, kHStar, kRight));
  const Matrix def_left = randomized_left_inverse(kDefB, kDefF);
  const Matrix def_right = randomized_right_inverse(kDefD, kDefF);
  CHECK_FALSE(projector_equation_holds(def_left, kDefF, kDefF, def_right));
  // the products are still idempotent: that is the projector property
  CHECK(is_idempotent(def_left * kDefF));
  CHECK(is_idempotent(kDefF * def_right));
}

TEST_CASE("reconstruction identity") {
  const Matrix a{{0, 1, 0.5}, {1, 2, 1.5}, {2, 7, 4.5}};
  CHECK(reconstruction_identity_holds(a, kF, kLeft, kRight, kHStar));
  CHECK(reconstruction_identity_holds(identity(3), identity(3), identity(3), identity(3),
                                      identity(3)));
  SUBCASE("random rank-2 6x6 target with valid sketches") {
    Rng rng(11);
    const Matrix target = random_rank_matrix(rng, 6, 6, 2);
    const Matrix f = target * gaussian_matrix(6, 4, rng);
    const Matrix h_star = transpose(transpose(target) * gaussian_matrix(6, 3, rng));
    const Matrix b = random_rank_preserving_sketch(f, 2, rng);
    const Matrix d = random_rank_preserving_sketch(transpose(h_star), 2, rng);
    const Matrix left = randomized_left_inverse(b, f);
    const Matrix right = randomized_right_inverse(d, h_star);
    // oracle: direct triple product against the target norm
    const Matrix reconstructed = (f * left) * target * (right * h_star);
    CHECK(frobenius_norm(reconstructed - target) <= 1e-10 * frobenius_norm(target));
    CHECK(reconstruction_identity_holds(target, f, left, right, h_star));
  }
}

TEST_CASE("random sketches preserve rank by construction") {
  Rng rng(23);
  SUBCASE("full-column-rank basis") {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix f = gaussian_matrix(7, 3, rng);
      const Matrix b = random_rank_preserving_sketch(f, 3, rng);
      CHECK(b.rows() == 7);
      CHECK(b.cols() == 3);
      CHECK(rank_of(transpose(b) * f).rank == 3);
    }
  }
  SUBCASE("extension columns keep the sketch rank at k") {
    const Matrix f = random_rank_matrix(rng, 8, 5, 2);
    const Matrix b = random_rank_preserving_sketch(f, 2, rng);
    CHECK(rank_of(b).rank == 2);
    CHECK(rank_of(transpose(b) * f).rank == 2);
  }
  SUBCASE("zero basis exhausts the retries") {
    CHECK_THROWS_AS(random_rank_preserving_sketch(Matrix::zero(4, 2), 1, rng, 8),
                    SketchRetryError);
  }
  SUBCASE("k = 0 is rejected") {
    CHECK_THROWS_AS(random_rank_preserving_sketch(Matrix::zero(4, 2), 0, rng), ParameterError);
  }
  SUBCASE("seed overload is deterministic") {
    const Matrix f = gaussian_matrix(6, 4, rng);
    CHECK(random_rank_preserving_sketch(f, 4, std::uint64_t{99}) ==
          random_rank_preserving_sketch(f, 4, std::uint64_t{99}));
  }
}

TEST_CASE("generalized-inverse identities hold for every valid sketch pair") {
  Rng rng(31);
  const Tolerance tol{1e-12, 1e-10};
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + rng.next_u64() % 9;
    const std::size_t n = 2 + rng.next_u64() % 9;
    const std::size_t k = 1 + rng.next_u64() % std::min(m, n);
    const std::size_t r = k + rng.next_u64() % 4;
    const std::size_t q = k + rng.next_u64() % 4;
    const Matrix a = random_rank_matrix(rng, m, n, k);
    const Matrix f = a * gaussian_matrix(n, r, rng);
    const Matrix h_star = transpose(transpose(a) * gaussian_matrix(m, q, rng));
    const Matrix b = random_rank_preserving_sketch(f, k, rng);
    const Matrix d = random_rank_preserving_sketch(transpose(h_star), k, rng);
    const GeneralizedInversePair pair = make_inverse_pair(f, h_star, b, d);
    CAPTURE(trial);
    CHECK(pair.k == k);
    CHECK(approx_equal(f * pair.left * f, f, tol));
    CHECK(approx_equal(h_star * pair.right * h_star, h_star, tol));
    const Matrix col_projector = f * pair.left;
    const Matrix row_projector = pair.right * h_star;
    CHECK(is_idempotent(col_projector, tol));
    CHECK(is_idempotent(row_projector, tol));
    CHECK(rank_of(col_projector).rank == k);
    CHECK(rank_of(row_projector).rank == k);
  }
}

TEST_CASE("full-rank regime collapses to the identity") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 4 + rng.next_u64() % 6;
    const std::size_t k = 1 + rng.next_u64() % 3;
    const Matrix f = gaussian_matrix(m, k, rng);  // full column rank a.s.
    const Matrix b = random_rank_preserving_sketch(f, k, rng);
    const Matrix left = randomized_left_inverse(b, f);
    CHECK(approx_equal(left * f, identity(k), Tolerance{1e-12, 1e-10}));
  }
}

TEST_CASE("two sketches give two different inverses of the same basis") {
  Rng rng(41);
  const Matrix a = random_rank_matrix(rng, 7, 7, 2);
  const Matrix f = a * gaussian_matrix(7, 5, rng);  // rank 2, five columns
  const Matrix b1 = random_rank_preserving_sketch(f, 2, rng);
  const Matrix b2 = random_rank_preserving_sketch(f, 2, rng);
  const Matrix left1 = randomized_left_inverse(b1, f);
  const Matrix left2 = randomized_left_inverse(b2, f);
  CHECK(frobenius_norm(left1 - left2) > 1e-6);
  const Tolerance tol{1e-12, 1e-10};
  CHECK(approx_equal(f * left1 * f, f, tol));
  CHECK(approx_equal(f * left2 * f, f, tol));
}
