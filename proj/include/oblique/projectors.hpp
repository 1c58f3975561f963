#pragma once

#include <cstdint>

#include "oblique/matrix.hpp"
#include "oblique/rng.hpp"

namespace oblique {

/// A pair of randomized generalized inverses built from sketches.
///
/// `left` (r x m) satisfies F * left * F = F for the column basis F it was
/// built against, `right` (n x q) satisfies H^T * right * H^T = H^T for the
/// row basis H^T. The products F*left and right*H^T are idempotent, i.e.
/// oblique projectors onto the column and row space. The sketches that
/// produced the pair are kept for provenance.
struct GeneralizedInversePair {
  Matrix left;
  Matrix right;
  std::size_t k = 0;  // target rank
  Matrix col_sketch;
  Matrix row_sketch;
};

/// Ranks entering the rank-preserving condition, and whether it holds:
/// rank(B^T F) = rank(H^T D) = rank(F) = rank(H) = k.
struct RankPreservingCheck {
  std::size_t rank_bf = 0;
  std::size_t rank_hd = 0;
  std::size_t rank_f = 0;
  std::size_t rank_h = 0;
  std::size_t target_k = 0;
  bool holds = false;
};

/// left = (B^T F)^+ B^T for a column sketch B shaped like the basis F (m x r).
/// Throws RankPreservationError when rank(B^T F) < rank(F).
Matrix randomized_left_inverse(const Matrix& col_sketch, const Matrix& col_basis,
                               const Tolerance& tol = Tolerance::rank());

/// right = D (H^T D)^+ for a row sketch D (n x q) against the row basis
/// h_star = H^T (q x n). Throws RankPreservationError when
/// rank(H^T D) < rank(H^T).
Matrix randomized_right_inverse(const Matrix& row_sketch, const Matrix& row_basis,
                                const Tolerance& tol = Tolerance::rank());

/// Evaluate the rank-preserving condition for sketches (b, d) against the
/// column basis f (m x r) and the row-basis transpose h = H (n x q).
RankPreservingCheck check_rank_preserving(const Matrix& b, const Matrix& f, const Matrix& h,
                                          const Matrix& d, std::size_t k,
                                          const Tolerance& tol = Tolerance::rank());

/// ||P^2 - P||_F <= max(tol.absolute, tol.relative * ||P||_F). Square input.
bool is_idempotent(const Matrix& p, const Tolerance& tol = Tolerance::equality());

/// Full-rank regime test: left * col_basis and row_basis * right both equal
/// the identity within tolerance. Rank-deficient bases make this false even
/// when the generalized-inverse property holds.
bool projector_equation_holds(const Matrix& left, const Matrix& col_basis,
                              const Matrix& row_basis, const Matrix& right,
                              const Tolerance& tol = Tolerance::equality());

/// ||(F*left) a (right*row_basis) - a||_F <= max(tol.absolute, tol.relative*||a||_F):
/// the two oblique projectors reproduce `a` exactly when its column and row
/// spaces are contained in the spans of the bases.
bool reconstruction_identity_holds(const Matrix& a, const Matrix& col_basis, const Matrix& left,
                                   const Matrix& right, const Matrix& row_basis,
                                   const Tolerance& tol = Tolerance::equality());

/// Draw a random sketch shaped like `basis` whose first k columns are i.i.d.
/// standard normal and whose remaining columns are random combinations of the
/// first k, redrawn until rank(sketch) = rank(sketch^T basis) = k. Well
/// conditioned draws are taken immediately; otherwise the best of the allowed
/// retries is kept. Throws SketchRetryError after `max_retries` rank failures.
Matrix random_rank_preserving_sketch(const Matrix& basis, std::size_t k, Rng& rng,
                                     int max_retries = 64);
Matrix random_rank_preserving_sketch(const Matrix& basis, std::size_t k, std::uint64_t seed,
                                     int max_retries = 64);

/// Build and validate both inverses against the bases.
GeneralizedInversePair make_inverse_pair(const Matrix& col_basis, const Matrix& row_basis,
                                         const Matrix& col_sketch, const Matrix& row_sketch,
                                         const Tolerance& tol = Tolerance::rank());

}  // namespace oblique
