#include "oblique/factorizations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eigen_bridge.hpp"
#include "oblique/projectors.hpp"
#include "oblique/rng.hpp"

namespace oblique {

std::string to_string(FormSource source) {
  switch (source) {
    case FormSource::similarity: return "similarity";
    case FormSource::reduced_svd: return "reduced_svd";
    case FormSource::cpqr: return "cpqr";
    case FormSource::lu: return "lu";
    case FormSource::cur: return "cur";
    case FormSource::outer_product: return "outer_product";
    case FormSource::randomized: return "randomized";
  }
  return "unknown";
}

ReducedForm reduced_svd(const Matrix& a, std::size_t k) {
  const RankReport report = rank_of(a);
  if (k < 1 || k > report.rank)
    throw ParameterError("reduced_svd: k = " + std::to_string(k) + " outside [1, rank = " +
                         std::to_string(report.rank) + "]");
  SvdResult dec = svd(a);
  Matrix f(a.rows(), k);
  Matrix g(k, k);
  Matrix h_star(k, a.cols());
  for (std::size_t t = 0; t < k; ++t) {
    // Sign convention: first nonzero entry of each left singular vector is
    // nonnegative, the flip is absorbed into the right factor.
    double sign = 1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (std::abs(dec.u(i, t)) > 1e-12) {
        sign = dec.u(i, t) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t i = 0; i < a.rows(); ++i) f(i, t) = sign * dec.u(i, t);
    g(t, t) = dec.singular_values[t];
    for (std::size_t j = 0; j < a.cols(); ++j) h_star(t, j) = sign * dec.v(j, t);
  }
  return ReducedForm{std::move(f), std::move(g), std::move(h_star), FormSource::reduced_svd};
}

ReducedForm cpqr_reduced(const Matrix& a, const Tolerance& tol) {
  if (frobenius_norm(a) == 0.0) throw ParameterError("cpqr_reduced: input must be nonzero");
  const Eigen::MatrixXd ea = detail::to_eigen(a);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ea);
  const Eigen::MatrixXd r_full =
      qr.matrixQR().template triangularView<Eigen::Upper>().toDenseMatrix();

  const std::size_t diag_len = std::min(a.rows(), a.cols());
  const double cutoff =
      std::max(tol.absolute,
               tol.relative * std::abs(r_full(0, 0)) * static_cast<double>(std::max(a.rows(), a.cols())));
  std::size_t k = 0;
  for (std::size_t i = 0; i < diag_len; ++i)
    if (std::abs(r_full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i))) > cutoff) ++k;
  if (k == 0) throw ParameterError("cpqr_reduced: input is zero to working precision");
  // pivoting contract: the diagonal magnitudes never grow
  for (std::size_t i = 1; i < diag_len; ++i) {
    const double prev = std::abs(r_full(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(i - 1)));
    const double curr = std::abs(r_full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
    if (curr > prev * (1.0 + 1e-12))
      throw Error("cpqr_reduced: pivot ordering violated at step " + std::to_string(i + 1));
  }

  const Eigen::MatrixXd q_thin =
      qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(a.rows()),
                                                    static_cast<Eigen::Index>(k));
  const Eigen::MatrixXd h =
      r_full.topRows(static_cast<Eigen::Index>(k)) * qr.colsPermutation().transpose();
  return ReducedForm{detail::from_eigen(q_thin), Matrix::identity(k), detail::from_eigen(h),
                     FormSource::cpqr};
}

ReducedForm lu_reduced(const Matrix& a) {
  if (!a.is_square())
    throw DimensionError("lu_reduced: input must be square, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  const std::size_t n = a.rows();
  double max_abs = 0.0;
  for (double v : a.data()) max_abs = std::max(max_abs, std::abs(v));
  const Tolerance tol;
  const double cutoff = std::max(tol.absolute, tol.relative * max_abs * static_cast<double>(n));

  Matrix u = a;
  Matrix l = Matrix::identity(n);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  for (std::size_t j = 0; j < n; ++j) {
    std::size_t pivot = j;
    for (std::size_t i = j + 1; i < n; ++i)
      if (std::abs(u(i, j)) > std::abs(u(pivot, j))) pivot = i;
    if (std::abs(u(pivot, j)) <= cutoff)
      throw SingularMatrixError("lu_reduced: pivot " + std::to_string(j + 1) +
                                    " is zero to working precision, matrix is singular",
                                j + 1);
    if (pivot != j) {
      for (std::size_t c = 0; c < n; ++c) std::swap(u(j, c), u(pivot, c));
      for (std::size_t c = 0; c < j; ++c) std::swap(l(j, c), l(pivot, c));
      std::swap(perm[j], perm[pivot]);
    }
    for (std::size_t i = j + 1; i < n; ++i) {
      const double factor = u(i, j) / u(j, j);
      l(i, j) = factor;
      u(i, j) = 0.0;
      for (std::size_t c = j + 1; c < n; ++c) u(i, c) -= factor * u(j, c);
    }
  }

  // perm maps pivoted position -> original row: row perm[i] of a became row i,
  // so a = P^T L U with P(i, perm[i]) = 1.
  Matrix p_star(n, n);
  for (std::size_t i = 0; i < n; ++i) p_star(perm[i], i) = 1.0;
  return ReducedForm{std::move(p_star), std::move(l), std::move(u), FormSource::lu};
}

CurResult cur(const Matrix& a, const ColumnRowSelection& sel, const Tolerance& tol) {
  const Matrix c = select_columns(a, sel.col_indices);
  const Matrix r = select_rows(a, sel.row_indices);
  Matrix g = matmul(matmul(pinv(c, tol), a), pinv(r, tol));
  const std::size_t rank_mixing = rank_of(g, tol).rank;
  const std::size_t rank_source = rank_of(a, tol).rank;
  return CurResult{ReducedForm{c, std::move(g), r, FormSource::cur},
                   rank_mixing == rank_source, rank_mixing, rank_source};
}

std::vector<OuterTerm> outer_product_expand(const ReducedForm& form, const Tolerance& tol) {
  const Matrix& g = form.g;
  if (!g.is_square())
    throw DimensionError("outer_product_expand: mixing matrix must be square diagonal");
  double off_diag = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      if (i != j) off_diag = std::max(off_diag, std::abs(g(i, j)));
  if (off_diag > std::max(tol.absolute, tol.relative * frobenius_norm(g)))
    throw DimensionError("outer_product_expand: mixing matrix is not diagonal (max off-diagonal " +
                         std::to_string(off_diag) + ")");
  if (form.f.cols() != g.rows() || form.h_star.rows() != g.cols())
    throw DimensionError("outer_product_expand: factor shapes do not chain");

  std::vector<OuterTerm> terms;
  terms.reserve(g.rows());
  for (std::size_t t = 0; t < g.rows(); ++t) {
    Matrix column(form.f.rows(), 1);
    for (std::size_t i = 0; i < form.f.rows(); ++i) column(i, 0) = form.f(i, t);
    Matrix row(1, form.h_star.cols());
    for (std::size_t j = 0; j < form.h_star.cols(); ++j) row(0, j) = form.h_star(t, j);
    terms.push_back(OuterTerm{g(t, t), std::move(column), std::move(row)});
  }
  return terms;
}

ReducedForm randomized_reduced(const Matrix& a, std::size_t r, std::size_t q, std::uint64_t seed,
                               const Tolerance& tol) {
  const std::size_t k = rank_of(a).rank;
  if (k == 0) throw ParameterError("randomized_reduced: target has rank 0");
  if (r < k || q < k)
    throw ParameterError("randomized_reduced: need r, q >= rank = " + std::to_string(k) +
                         ", got r = " + std::to_string(r) + ", q = " + std::to_string(q));

  Rng rng(seed);
  constexpr int kDrawAttempts = 8;
  for (int attempt = 0;; ++attempt) {
    try {
      Rng range_rng = rng.spawn(10 + static_cast<std::uint64_t>(attempt));
      Matrix f = matmul(a, gaussian_matrix(a.cols(), r, range_rng));
      Matrix h_star = transpose(matmul(transpose(a), gaussian_matrix(a.rows(), q, range_rng)));
      SolveResult solved = solve_middle_factor(
          {.a = a, .f = std::move(f), .h_star = std::move(h_star), .seed = range_rng.next_u64()},
          tol);
      return ReducedForm{solved.triple.f, solved.triple.g, solved.triple.h_star,
                         FormSource::randomized};
    } catch (const RankPreservationError&) {
      if (attempt + 1 >= kDrawAttempts) throw;
    } catch (const ContainmentError&) {
      if (attempt + 1 >= kDrawAttempts) throw;
    }
  }
}

bool similarity_check(const Matrix& a, const Matrix& m_mat, const Matrix& b,
                      const Tolerance& tol) {
  if (!a.is_square() || !m_mat.is_square() || !b.is_square() || !a.same_shape(m_mat) ||
      !a.same_shape(b))
    throw DimensionError("similarity_check: all matrices must be square with equal shape");
  if (rank_of(m_mat).rank < m_mat.rows())
    throw SingularMatrixError("similarity_check: transform matrix is singular", 0);
  const Eigen::MatrixXd inv = detail::to_eigen(m_mat).inverse();
  const Matrix candidate = matmul(matmul(m_mat, b), detail::from_eigen(inv));
  return approx_equal(a, candidate, tol);
}

}  // namespace oblique
