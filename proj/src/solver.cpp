#include "oblique/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oblique {

namespace {

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

double vector_norm(const Matrix& v) { return frobenius_norm(v); }

}  // namespace

Matrix homogeneous_part(const Matrix& f, const Matrix& h_star, const Matrix& left,
                        const Matrix& right, const Matrix& w) {
  if (w.rows() != f.cols() || w.cols() != h_star.rows())
    throw DimensionError("homogeneous_part: free term must be " + std::to_string(f.cols()) + "x" +
                         std::to_string(h_star.rows()) + ", got " + shape_str(w));
  const Matrix lf = matmul(left, f);
  const Matrix hr = matmul(h_star, right);
  return sub(w, matmul(matmul(lf, w), hr));
}

SolveResult solve_middle_factor(const SolverInputs& inputs, const Tolerance& tol) {
  const Matrix& a = inputs.a;
  const Matrix& f = inputs.f;
  const Matrix& h_star = inputs.h_star;
  if (f.rows() != a.rows())
    throw DimensionError("solve_middle_factor: column basis has " + std::to_string(f.rows()) +
                         " rows, target has " + std::to_string(a.rows()));
  if (h_star.cols() != a.cols())
    throw DimensionError("solve_middle_factor: row basis has " + std::to_string(h_star.cols()) +
                         " columns, target has " + std::to_string(a.cols()));

  const Tolerance rank_tol;
  Rng rng(inputs.seed);
  Matrix col_sketch = inputs.b.has_value()
                          ? *inputs.b
                          : [&] {
                              Rng stream = rng.spawn(1);
                              return random_rank_preserving_sketch(
                                  f, rank_of(f, rank_tol).rank, stream);
                            }();
  Matrix row_sketch = inputs.d.has_value()
                          ? *inputs.d
                          : [&] {
                              Rng stream = rng.spawn(2);
                              return random_rank_preserving_sketch(
                                  transpose(h_star), rank_of(h_star, rank_tol).rank, stream);
                            }();

  GeneralizedInversePair pair = make_inverse_pair(f, h_star, col_sketch, row_sketch, rank_tol);

  Matrix g = matmul(matmul(pair.left, a), pair.right);
  if (inputs.w.has_value())
    g = add(g, homogeneous_part(f, h_star, pair.left, pair.right, *inputs.w));

  // One rewrite of the residual through the projectors removes the
  // first-order floating-point error; a genuine containment violation is
  // untouched by it and still trips the check below.
  const double bound = std::max(tol.absolute, tol.relative * frobenius_norm(a));
  for (int pass = 0; pass < 2; ++pass) {
    const Matrix residual = sub(a, matmul(matmul(f, g), h_star));
    if (frobenius_norm(residual) <= 0.25 * bound) break;
    g = add(g, matmul(matmul(pair.left, residual), pair.right));
  }

  FactorizationTriple triple{f, g, h_star};
  TripleReport report = verify_triple(a, triple, tol, &pair);
  if (report.absolute_residual > bound)
    throw ContainmentError(
        "solve_middle_factor: reconstruction residual " + std::to_string(report.relative_residual) +
            " exceeds tolerance; the target's column/row spaces are not contained in the bases",
        report.relative_residual);
  return SolveResult{std::move(triple), std::move(pair), report};
}

Matrix solve_vector(const Matrix& f, const Matrix& a, const Tolerance& tol) {
  if (a.cols() != 1) throw DimensionError("solve_vector: right-hand side must be a column");
  if (f.rows() != a.rows())
    throw DimensionError("solve_vector: basis has " + std::to_string(f.rows()) +
                         " rows, right-hand side has " + std::to_string(a.rows()));
  const Matrix fplus = pinv(f);
  const Matrix g = matmul(fplus, a);
  const Matrix projection = matmul(f, g);
  const double residual = vector_norm(sub(projection, a));
  if (residual > std::max(tol.absolute, tol.relative * vector_norm(a)))
    throw NoSolutionError("solve_vector: right-hand side lies outside the column space (distance " +
                              std::to_string(residual) + ")",
                          residual, projection.data());
  return g;
}

Matrix solve_vector(const Matrix& f, const Matrix& a, const Matrix& y, const Tolerance& tol) {
  if (y.cols() != 1 || y.rows() != f.cols())
    throw DimensionError("solve_vector: homogeneous term must be a " + std::to_string(f.cols()) +
                         "-vector");
  const Matrix particular = solve_vector(f, a, tol);
  const Matrix fplus = pinv(f);
  const Matrix nullspace_projector = sub(Matrix::identity(f.cols()), matmul(fplus, f));
  return add(particular, matmul(nullspace_projector, y));
}

Matrix project_onto_columns(const Matrix& f, const Matrix& b) {
  if (b.cols() != 1) throw DimensionError("project_onto_columns: input must be a column");
  if (f.rows() != b.rows())
    throw DimensionError("project_onto_columns: basis has " + std::to_string(f.rows()) +
                         " rows, vector has " + std::to_string(b.rows()));
  return matmul(f, matmul(pinv(f), b));
}

TripleReport verify_triple(const Matrix& a, const FactorizationTriple& triple,
                           const Tolerance& tol, const GeneralizedInversePair* pair) {
  const Matrix reconstructed = triple.reconstruct();
  if (!reconstructed.same_shape(a))
    throw DimensionError("verify_triple: triple reconstructs " + shape_str(reconstructed) +
                         ", target is " + shape_str(a));
  TripleReport report;
  report.absolute_residual = frobenius_norm(sub(reconstructed, a));
  const double norm_a = frobenius_norm(a);
  report.relative_residual =
      norm_a > 0.0 ? report.absolute_residual / norm_a : report.absolute_residual;
  report.within_tolerance =
      report.absolute_residual <= std::max(tol.absolute, tol.relative * norm_a);
  if (pair != nullptr) {
    report.err1 = frobenius_norm(sub(matmul(matmul(triple.f, pair->left), triple.f), triple.f));
    report.err2 = frobenius_norm(
        sub(matmul(matmul(triple.h_star, pair->right), triple.h_star), triple.h_star));
  }
  return report;
}

}  // namespace oblique
