#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "oblique/errors.hpp"

namespace oblique {

/// Dense real matrix with an explicit shape, stored row-major.
///
/// Both dimensions are positive and every entry is finite; the constructors
/// enforce this, so a Matrix value is always well formed. All operations on
/// matrices are pure functions, values can be shared freely across threads.
class Matrix {
 public:
  /// rows x cols matrix of zeros.
  Matrix(std::size_t rows, std::size_t cols);

  /// rows x cols matrix from row-major data. Throws DimensionError if the
  /// data length does not match, ParameterError on NaN/Inf entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Brace construction from rows: Matrix{{1, 2}, {3, 4}}.
  Matrix(std::initializer_list<std::initializer_list<double>> init_rows);

  static Matrix identity(std::size_t k);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  /// n x 1 column vector.
  static Matrix column_vector(std::vector<double> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Cutoff policy for numerical rank decisions and floors for equality checks.
/// Both fields are strictly positive. The rank cutoff realized for a matrix is
///   max(absolute, relative * sigma_max * max(rows, cols)).
struct Tolerance {
  double absolute = 1e-12;
  double relative = 2.220446049250313e-16;  // machine epsilon scale

  /// Standard numerical-rank convention (the default constructor).
  static Tolerance rank() { return Tolerance{}; }
  /// Scale-aware equality: reject when the defect exceeds 1e-10 of the
  /// operand norm (floored at 1e-12 absolute).
  static Tolerance equality() { return Tolerance{1e-12, 1e-10}; }
};

/// Numerical rank of a matrix together with the evidence that decided it.
struct RankReport {
  std::size_t rank = 0;
  std::vector<double> singular_values;  // nonincreasing
  double tolerance = 0.0;               // the realized cutoff
};

/// Thin singular value decomposition a = u * diag(singular_values) * v^T.
struct SvdResult {
  Matrix u;                            // rows x p, orthonormal columns
  std::vector<double> singular_values; // length p = min(rows, cols), nonincreasing
  Matrix v;                            // cols x p, orthonormal columns
};

/// Outcome of the four pseudoinverse equations for a candidate inverse g of f,
/// in order: f g f = f, g f g = g, (f g)^T = f g, (g f)^T = g f.
struct PenroseChecks {
  bool reproduces_matrix = false;
  bool reproduces_inverse = false;
  bool fg_symmetric = false;
  bool gf_symmetric = false;
  bool all() const { return reproduces_matrix && reproduces_inverse && fg_symmetric && gf_symmetric; }
};

// Arithmetic. Shapes are validated and mismatches throw DimensionError.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(double s, const Matrix& a);
Matrix identity(std::size_t k);
double frobenius_norm(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }
inline Matrix operator*(double s, const Matrix& a) { return scale(s, a); }
inline Matrix operator*(const Matrix& a, double s) { return scale(s, a); }
inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }

/// True when ||a - b||_F <= max(tol.absolute, tol.relative * max(||a||, ||b||)).
bool approx_equal(const Matrix& a, const Matrix& b, const Tolerance& tol);

/// Column/row selection by 0-based indices. Indices must be in range and
/// free of duplicates.
Matrix select_columns(const Matrix& a, const std::vector<std::size_t>& indices);
Matrix select_rows(const Matrix& a, const std::vector<std::size_t>& indices);
Matrix column_of(const Matrix& a, std::size_t j);

/// Thin SVD via a backward-stable dense solver.
SvdResult svd(const Matrix& a);

/// Numerical rank: the number of singular values strictly above the cutoff.
RankReport rank_of(const Matrix& a, const Tolerance& tol = Tolerance::rank());

/// Moore-Penrose pseudoinverse via SVD; singular values at or below the
/// cutoff are treated as zero. The zero matrix maps to the zero matrix.
Matrix pinv(const Matrix& a, const Tolerance& tol = Tolerance::rank());

/// Evaluate the four pseudoinverse equations for the candidate aplus.
/// aplus must be cols x rows of a.
PenroseChecks check_penrose(const Matrix& a, const Matrix& aplus,
                            const Tolerance& tol = Tolerance::equality());

}  // namespace oblique
