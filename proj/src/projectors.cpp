#include "oblique/projectors.hpp"

#include <algorithm>
#include <string>

namespace oblique {

namespace {

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Sketch draws whose projected spectrum is flatter than this are taken
// immediately; below it the best draw within the retry budget is kept.
constexpr double kWellConditionedRatio = 1e-3;

}  // namespace

Matrix randomized_left_inverse(const Matrix& col_sketch, const Matrix& col_basis,
                               const Tolerance& tol) {
  if (!col_sketch.same_shape(col_basis))
    throw DimensionError("randomized_left_inverse: sketch must match basis shape (" +
                         shape_str(col_sketch) + " vs " + shape_str(col_basis) + ")");
  const Matrix sketch_t = transpose(col_sketch);
  const Matrix projected = matmul(sketch_t, col_basis);
  const std::size_t rank_projected = rank_of(projected, tol).rank;
  const std::size_t rank_basis = rank_of(col_basis, tol).rank;
  if (rank_projected < rank_basis)
    throw RankPreservationError("randomized_left_inverse: sketch is not rank-preserving (rank " +
                                std::to_string(rank_projected) + " after projection, basis rank " +
                                std::to_string(rank_basis) + ")");
  const Matrix projected_pinv = pinv(projected, tol);
  Matrix inverse = matmul(projected_pinv, sketch_t);
  // Residual rewrite through the pseudoinverse; exactly zero in exact
  // arithmetic, cancels the first-order floating-point error.
  inverse = add(inverse, matmul(projected_pinv, sub(sketch_t, matmul(projected, inverse))));
  return inverse;
}

Matrix randomized_right_inverse(const Matrix& row_sketch, const Matrix& row_basis,
                                const Tolerance& tol) {
  if (row_sketch.rows() != row_basis.cols() || row_sketch.cols() != row_basis.rows())
    throw DimensionError("randomized_right_inverse: sketch must be " +
                         std::to_string(row_basis.cols()) + "x" + std::to_string(row_basis.rows()) +
                         ", got " + shape_str(row_sketch));
  const Matrix projected = matmul(row_basis, row_sketch);
  const std::size_t rank_projected = rank_of(projected, tol).rank;
  const std::size_t rank_basis = rank_of(row_basis, tol).rank;
  if (rank_projected < rank_basis)
    throw RankPreservationError("randomized_right_inverse: sketch is not rank-preserving (rank " +
                                std::to_string(rank_projected) + " after projection, basis rank " +
                                std::to_string(rank_basis) + ")");
  const Matrix projected_pinv = pinv(projected, tol);
  Matrix inverse = matmul(row_sketch, projected_pinv);
  inverse = add(inverse, matmul(sub(row_sketch, matmul(inverse, projected)), projected_pinv));
  return inverse;
}

RankPreservingCheck check_rank_preserving(const Matrix& b, const Matrix& f, const Matrix& h,
                                          const Matrix& d, std::size_t k, const Tolerance& tol) {
  if (!b.same_shape(f))
    throw DimensionError("check_rank_preserving: column sketch must match basis shape");
  if (!d.same_shape(h))
    throw DimensionError("check_rank_preserving: row sketch must match basis shape");
  RankPreservingCheck check;
  check.rank_bf = rank_of(matmul(transpose(b), f), tol).rank;
  check.rank_hd = rank_of(matmul(transpose(h), d), tol).rank;
  check.rank_f = rank_of(f, tol).rank;
  check.rank_h = rank_of(h, tol).rank;
  check.target_k = k;
  check.holds = check.rank_bf == k && check.rank_hd == k && check.rank_f == k && check.rank_h == k;
  return check;
}

bool is_idempotent(const Matrix& p, const Tolerance& tol) {
  if (!p.is_square())
    throw DimensionError("is_idempotent: matrix must be square, got " + shape_str(p));
  const double defect = frobenius_norm(sub(matmul(p, p), p));
  return defect <= std::max(tol.absolute, tol.relative * frobenius_norm(p));
}

bool projector_equation_holds(const Matrix& left, const Matrix& col_basis,
                              const Matrix& row_basis, const Matrix& right,
                              const Tolerance& tol) {
  const Matrix lf = matmul(left, col_basis);
  const Matrix hr = matmul(row_basis, right);
  if (!lf.is_square() || !hr.is_square())
    throw DimensionError("projector_equation_holds: products must be square");
  return approx_equal(lf, Matrix::identity(lf.rows()), tol) &&
         approx_equal(hr, Matrix::identity(hr.rows()), tol);
}

bool reconstruction_identity_holds(const Matrix& a, const Matrix& col_basis, const Matrix& left,
                                   const Matrix& right, const Matrix& row_basis,
                                   const Tolerance& tol) {
  const Matrix col_projector = matmul(col_basis, left);
  const Matrix row_projector = matmul(right, row_basis);
  const Matrix reconstructed = matmul(matmul(col_projector, a), row_projector);
  const double defect = frobenius_norm(sub(reconstructed, a));
  return defect <= std::max(tol.absolute, tol.relative * frobenius_norm(a));
}

Matrix random_rank_preserving_sketch(const Matrix& basis, std::size_t k, Rng& rng,
                                     int max_retries) {
  const std::size_t m = basis.rows();
  const std::size_t r = basis.cols();
  if (k == 0) throw ParameterError("random_rank_preserving_sketch: target rank must be positive");
  if (k > std::min(m, r))
    throw ParameterError("random_rank_preserving_sketch: target rank " + std::to_string(k) +
                         " exceeds sketch shape " + shape_str(basis));

  const Tolerance rank_tol;
  double best_ratio = -1.0;
  Matrix best(1, 1);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Matrix sketch(m, r);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < k; ++j) sketch(i, j) = rng.gaussian();
    // Remaining columns are combinations of the first k, so rank stays k.
    for (std::size_t j = k; j < r; ++j) {
      std::vector<double> weights(k);
      for (double& w : weights) w = rng.gaussian();
      for (std::size_t i = 0; i < m; ++i) {
        double v = 0.0;
        for (std::size_t t = 0; t < k; ++t) v += sketch(i, t) * weights[t];
        sketch(i, j) = v;
      }
    }
    if (rank_of(sketch, rank_tol).rank != k) continue;
    const RankReport projected = rank_of(matmul(transpose(sketch), basis), rank_tol);
    if (projected.rank != k) continue;
    const double ratio = projected.singular_values[k - 1] / projected.singular_values[0];
    if (ratio >= kWellConditionedRatio) return sketch;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = sketch;
    }
  }
  if (best_ratio > 0.0) return best;
  throw SketchRetryError("random_rank_preserving_sketch: no rank-" + std::to_string(k) +
                         " sketch found for a " + shape_str(basis) + " basis after " +
                         std::to_string(max_retries) + " draws");
}

Matrix random_rank_preserving_sketch(const Matrix& basis, std::size_t k, std::uint64_t seed,
                                     int max_retries) {
  Rng rng(seed);
  return random_rank_preserving_sketch(basis, k, rng, max_retries);
}

GeneralizedInversePair make_inverse_pair(const Matrix& col_basis, const Matrix& row_basis,
                                         const Matrix& col_sketch, const Matrix& row_sketch,
                                         const Tolerance& tol) {
  return GeneralizedInversePair{randomized_left_inverse(col_sketch, col_basis, tol),
                                randomized_right_inverse(row_sketch, row_basis, tol),
                                rank_of(col_basis, tol).rank, col_sketch, row_sketch};
}

}  // namespace oblique
