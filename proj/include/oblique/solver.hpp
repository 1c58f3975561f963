#pragma once

#include <cstdint>
#include <optional>

#include "oblique/matrix.hpp"
#include "oblique/projectors.hpp"

namespace oblique {

/// Three-factor form a = f * g * h_star with f (m x r), g (r x q),
/// h_star (q x n).
struct FactorizationTriple {
  Matrix f;
  Matrix g;
  Matrix h_star;

  Matrix reconstruct() const { return matmul(matmul(f, g), h_star); }
};

/// Inputs for the middle-factor solver. The bases f and h_star are required;
/// sketches default to fresh rank-preserving draws from `seed` and the free
/// term w defaults to zero (which yields the particular solution).
struct SolverInputs {
  Matrix a;
  Matrix f;
  Matrix h_star;
  std::optional<Matrix> b;  // column sketch, m x r
  std::optional<Matrix> d;  // row sketch, n x q
  std::optional<Matrix> w;  // free term, r x q
  std::uint64_t seed = 0;
};

/// Residual report for a candidate triple: err is the relative Frobenius
/// reconstruction residual; err1/err2 are the absolute generalized-inverse
/// defects of the pair that produced the triple, when one is supplied.
struct TripleReport {
  double relative_residual = 0.0;
  double absolute_residual = 0.0;
  bool within_tolerance = false;
  std::optional<double> err1;  // ||F*left*F - F||_F
  std::optional<double> err2;  // ||H^T*right*H^T - H^T||_F
};

struct SolveResult {
  FactorizationTriple triple;
  GeneralizedInversePair inverses;
  TripleReport report;
};

/// Solve f * g * h_star = a for the middle factor:
///   g = left * a * right + w - (left*f) * w * (h_star*right).
/// Every admissible w reconstructs a within tolerance. Throws
/// RankPreservationError when a sketch loses rank against its basis and
/// ContainmentError when the reconstruction residual stays above
/// max(tol.absolute, tol.relative * ||a||_F); a residual that survives the
/// projectors is exactly a target whose column or row space escapes the
/// bases, so no middle factor exists.
SolveResult solve_middle_factor(const SolverInputs& inputs,
                                const Tolerance& tol = Tolerance::equality());

/// Free-term contribution g0 = w - (left*f) w (h_star*right); satisfies
/// f * g0 * h_star = 0 whenever left/right are generalized inverses.
Matrix homogeneous_part(const Matrix& f, const Matrix& h_star, const Matrix& left,
                        const Matrix& right, const Matrix& w);

/// Solve f * g = a for a column vector a: g = f^+ a + (I - f^+ f) y.
/// Omitting y yields the minimum-norm solution. Throws NoSolutionError with
/// the projection of a onto the column space when a is unreachable.
Matrix solve_vector(const Matrix& f, const Matrix& a,
                    const Tolerance& tol = Tolerance::equality());
Matrix solve_vector(const Matrix& f, const Matrix& a, const Matrix& y,
                    const Tolerance& tol = Tolerance::equality());

/// Orthogonal projection p = f f^+ b of b onto the column space of f.
Matrix project_onto_columns(const Matrix& f, const Matrix& b);

/// Residual report for an externally supplied triple; pass the pair that
/// produced it to also get the generalized-inverse defects.
TripleReport verify_triple(const Matrix& a, const FactorizationTriple& triple,
                           const Tolerance& tol = Tolerance::equality(),
                           const GeneralizedInversePair* pair = nullptr);

}  // namespace oblique
