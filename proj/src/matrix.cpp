#include "oblique/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eigen_bridge.hpp"

namespace oblique {

namespace {

void require_positive_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw DimensionError("matrix: dimensions must be positive, got " + std::to_string(rows) +
                         "x" + std::to_string(cols));
}

void require_finite(const std::vector<double>& data) {
  for (double v : data)
    if (!std::isfinite(v)) throw ParameterError("matrix: entries must be finite");
}

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  require_positive_shape(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require_positive_shape(rows, cols);
  if (data_.size() != rows * cols)
    throw DimensionError("matrix: data length " + std::to_string(data_.size()) +
                         " does not match shape " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init_rows)
    : rows_(init_rows.size()), cols_(init_rows.size() ? init_rows.begin()->size() : 0) {
  require_positive_shape(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& row : init_rows) {
    if (row.size() != cols_) throw DimensionError("matrix: ragged initializer rows");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t k) {
  Matrix out(k, k);
  for (std::size_t i = 0; i < k; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::column_vector(std::vector<double> entries) {
  const std::size_t n = entries.size();
  return Matrix(n, 1, std::move(entries));
}

Matrix identity(std::size_t k) { return Matrix::identity(k); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: inner dimensions differ (" + shape_str(a) + " * " +
                         shape_str(b) + ")");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw DimensionError("add: shapes differ (" + shape_str(a) + " vs " + shape_str(b) + ")");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw DimensionError("sub: shapes differ (" + shape_str(a) + " vs " + shape_str(b) + ")");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

Matrix scale(double s, const Matrix& a) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

double frobenius_norm(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw DimensionError("max_abs_diff: shapes differ (" + shape_str(a) + " vs " + shape_str(b) +
                         ")");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

bool approx_equal(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  if (!a.same_shape(b))
    throw DimensionError("approx_equal: shapes differ (" + shape_str(a) + " vs " + shape_str(b) +
                         ")");
  const double scale = std::max(frobenius_norm(a), frobenius_norm(b));
  return frobenius_norm(sub(a, b)) <= std::max(tol.absolute, tol.relative * scale);
}

namespace {

void require_index_set(const std::vector<std::size_t>& indices, std::size_t bound,
                       const char* what) {
  if (indices.empty()) throw ParameterError(std::string(what) + ": empty index set");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= bound)
      throw ParameterError(std::string(what) + ": index " + std::to_string(indices[i]) +
                           " out of range [0, " + std::to_string(bound) + ")");
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      if (indices[i] == indices[j])
        throw ParameterError(std::string(what) + ": duplicate index " +
                             std::to_string(indices[i]));
  }
}

}  // namespace

Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& indices) {
  require_index_set(indices, a.cols(), "select_columns");
  Matrix out(a.rows(), indices.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = a(i, indices[j]);
  return out;
}

Matrix select_rows(const Matrix& a, const std::vector<std::size_t>& indices) {
  require_index_set(indices, a.rows(), "select_rows");
  Matrix out(indices.size(), a.cols());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(indices[i], j);
  return out;
}

Matrix column_of(const Matrix& a, std::size_t j) {
  if (j >= a.cols())
    throw ParameterError("column_of: index " + std::to_string(j) + " out of range");
  Matrix out(a.rows(), 1);
  for (std::size_t i = 0; i < a.rows(); ++i) out(i, 0) = a(i, j);
  return out;
}

SvdResult svd(const Matrix& a) {
  Eigen::BDCSVD<Eigen::MatrixXd> dec(detail::to_eigen(a),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = dec.singularValues();
  std::vector<double> values(sv.data(), sv.data() + sv.size());
  return SvdResult{detail::from_eigen(dec.matrixU()), std::move(values),
                   detail::from_eigen(dec.matrixV())};
}

namespace {

double rank_cutoff(const std::vector<double>& singular_values, std::size_t rows, std::size_t cols,
                   const Tolerance& tol) {
  const double sigma_max = singular_values.empty() ? 0.0 : singular_values.front();
  const double dim = static_cast<double>(std::max(rows, cols));
  return std::max(tol.absolute, tol.relative * sigma_max * dim);
}

}  // namespace

RankReport rank_of(const Matrix& a, const Tolerance& tol) {
  SvdResult dec = svd(a);
  RankReport report;
  report.singular_values = std::move(dec.singular_values);
  report.tolerance = rank_cutoff(report.singular_values, a.rows(), a.cols(), tol);
  for (double s : report.singular_values)
    if (s > report.tolerance) ++report.rank;
  return report;
}

Matrix pinv(const Matrix& a, const Tolerance& tol) {
  SvdResult dec = svd(a);
  const double cutoff = rank_cutoff(dec.singular_values, a.rows(), a.cols(), tol);
  const std::size_t p = dec.singular_values.size();
  // V * diag(1/s) * U^T with clipped singular values.
  Matrix out(a.cols(), a.rows());
  for (std::size_t t = 0; t < p; ++t) {
    const double s = dec.singular_values[t];
    if (s <= cutoff) continue;
    const double inv = 1.0 / s;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double vit = dec.v(i, t) * inv;
      if (vit == 0.0) continue;
      for (std::size_t j = 0; j < a.rows(); ++j) out(i, j) += vit * dec.u(j, t);
    }
  }
  return out;
}

PenroseChecks check_penrose(const Matrix& a, const Matrix& aplus, const Tolerance& tol) {
  if (aplus.rows() != a.cols() || aplus.cols() != a.rows())
    throw DimensionError("check_penrose: candidate inverse must be " + std::to_string(a.cols()) +
                         "x" + std::to_string(a.rows()) + ", got " + shape_str(aplus));
  const Matrix fg = matmul(a, aplus);
  const Matrix gf = matmul(aplus, a);
  PenroseChecks checks;
  checks.reproduces_matrix = approx_equal(matmul(fg, a), a, tol);
  checks.reproduces_inverse = approx_equal(matmul(gf, aplus), aplus, tol);
  checks.fg_symmetric = approx_equal(transpose(fg), fg, tol);
  checks.gf_symmetric = approx_equal(transpose(gf), gf, tol);
  return checks;
}

}  // namespace oblique
