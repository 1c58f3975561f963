#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oblique/matrix.hpp"
#include "oblique/solver.hpp"

namespace oblique {

enum class FormSource {
  similarity,
  reduced_svd,
  cpqr,
  lu,
  cur,
  outer_product,
  randomized,
};

std::string to_string(FormSource source);

/// A classical factorization mapped into the common three-factor shape.
struct ReducedForm {
  Matrix f;
  Matrix g;
  Matrix h_star;
  FormSource source;

  FactorizationTriple triple() const { return {f, g, h_star}; }
};

/// 0-based column/row index sets for CUR-style selection.
struct ColumnRowSelection {
  std::vector<std::size_t> col_indices;
  std::vector<std::size_t> row_indices;
};

/// CUR output: the form plus the rank evidence deciding exactness
/// (exact reconstruction holds iff rank(mixing) = rank(source)).
struct CurResult {
  ReducedForm form;
  bool exact = false;
  std::size_t rank_mixing = 0;
  std::size_t rank_source = 0;
};

/// One term of a diagonal-middle expansion: weight * column * row.
struct OuterTerm {
  double weight;
  Matrix column;  // m x 1
  Matrix row;     // 1 x n
};

/// Rank-k truncated SVD as a reduced form: f = U_k, g = diag(s_1..s_k),
/// h_star = V_k^T. Requires 1 <= k <= rank(a). Each left singular vector is
/// signed so its first nonzero entry is nonnegative, signs absorbed into v.
ReducedForm reduced_svd(const Matrix& a, std::size_t k);

/// Column-pivoted Householder QR truncated at the numerical rank:
/// f = Q(:,1:k), g = I_k, h_star = R(1:k,:) P^T. |diag(R)| is nonincreasing.
ReducedForm cpqr_reduced(const Matrix& a, const Tolerance& tol = Tolerance::rank());

/// LU with partial pivoting for square nonsingular a: f = P^T, g = L
/// (unit lower triangular, multipliers bounded by 1), h_star = U. Throws
/// SingularMatrixError naming the failing pivot step.
ReducedForm lu_reduced(const Matrix& a);

/// CUR selection: f = a(:, J), h_star = a(I, :), g = f^+ a h_star^+.
CurResult cur(const Matrix& a, const ColumnRowSelection& sel,
              const Tolerance& tol = Tolerance::rank());

/// Expand a diagonal-middle form into rank-1 terms whose weighted sum
/// reconstructs the source. Throws DimensionError when g is not diagonal.
std::vector<OuterTerm> outer_product_expand(const ReducedForm& form,
                                            const Tolerance& tol = Tolerance::equality());

/// Randomized range/corange factorization: f = a * G1 (m x r),
/// h_star = (a^T * G2)^T (q x n) with Gaussian G1, G2, middle factor from
/// the solver with fresh rank-preserving sketches. Requires r and q at least
/// rank(a) >= 1.
ReducedForm randomized_reduced(const Matrix& a, std::size_t r, std::size_t q, std::uint64_t seed,
                               const Tolerance& tol = Tolerance::equality());

/// True when a = m_mat * b * m_mat^{-1} within tolerance. Throws
/// SingularMatrixError when m_mat is not invertible.
bool similarity_check(const Matrix& a, const Matrix& m_mat, const Matrix& b,
                      const Tolerance& tol = Tolerance::equality());

}  // namespace oblique
