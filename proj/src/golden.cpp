#include "oblique/golden.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "oblique/factorizations.hpp"
#include "oblique/matrix.hpp"
#include "oblique/projectors.hpp"
#include "oblique/rng.hpp"
#include "oblique/solver.hpp"

namespace oblique {

namespace {

// The fixtures below are small matrices with exact fractional factorizations,
// so every check can be pinned to an absolute tolerance.

const Matrix kSimilarityA{{1, 2}, {3, 4}};
const Matrix kSimilarityM{{0, 1}, {1, 1}};
const Matrix kSimilarityB{{2, 4}, {2, 3}};
const Matrix kSimilarityMInv{{-1, 1}, {1, 0}};

const Matrix kSvdA{{1, 1}, {1, -1}, {1, 1}};

const Matrix kLuA{{0, 1, 1}, {1, 2, 1}, {2, 7, 9}};
const Matrix kLuL{{1, 0, 0}, {0.5, 1, 0}, {0, -2.0 / 3.0, 1}};
const Matrix kLuU{{2, 7, 9}, {0, -1.5, -3.5}, {0, 0, -4.0 / 3.0}};
const Matrix kLuPStar{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};

const Matrix kCpqrA{{1, 1}, {0, -1}, {0, 0}};

// Rank-2 target with its first two columns / rows as bases.
const Matrix kFullA{{0, 1, 0.5}, {1, 2, 1.5}, {2, 7, 4.5}};
const Matrix kFullF{{0, 1}, {1, 2}, {2, 7}};
const Matrix kFullHStar{{0, 1, 0.5}, {1, 2, 1.5}};
const Matrix kFullB{{1, 0}, {0, 1}, {1, 1}};
const Matrix kFullD{{1, 0}, {0, 1}, {0, 1}};
const Matrix kFullLeft{{-1.5, 4.0 / 3.0, -1.0 / 6.0}, {0.5, -1.0 / 3.0, 1.0 / 6.0}};
const Matrix kFullRight{{-7.0 / 3.0, 1}, {2.0 / 3.0, 0}, {2.0 / 3.0, 0}};
const Matrix kFullG{{-2, 1}, {1, 0}};

// Rank-1 target equal to both of its bases.
const Matrix kDefF{{0, 1, 0.5}, {0, 2, 1}};
const Matrix kDefB{{1, 0, 1}, {2, 0, 2}};
const Matrix kDefD{{1, 1}, {0, 0}, {1, 1}};
const Matrix kDefLeft{{0, 0}, {4.0 / 25.0, 8.0 / 25.0}, {2.0 / 25.0, 4.0 / 25.0}};
const Matrix kDefRight{{0.4, 0.8}, {0, 0}, {0.4, 0.8}};
const Matrix kDefLeftF{{0, 0, 0}, {0, 0.8, 0.4}, {0, 0.4, 0.2}};
const Matrix kDefHStarRight{{0.2, 0.4}, {0.4, 0.8}};

const Matrix kColumnF{{1}, {0}, {1}};
const Matrix kColumnFPlus{{0.5, 0, 0.5}};

struct Item {
  const char* name;
  std::function<double()> max_error;  // largest absolute deviation from expected
  const char* detail;
};

double bool_error(bool ok) { return ok ? 0.0 : 1.0; }

const std::vector<Item>& items() {
  static const std::vector<Item> all = {
      {"matmul_similarity_product",
       [] {
         return max_abs_diff(kSimilarityM * kSimilarityB * kSimilarityMInv, kSimilarityA);
       },
       "2x2 product of transform, core and inverse"},
      {"similarity_transform_check",
       [] { return bool_error(similarity_check(kSimilarityA, kSimilarityM, kSimilarityB)); },
       "a = m b m^-1 detected"},
      {"svd_singular_values",
       [] {
         const ReducedForm form = reduced_svd(kSvdA, 2);
         return std::max(std::abs(form.g(0, 0) - 2.0), std::abs(form.g(1, 1) - std::sqrt(2.0)));
       },
       "3x2 spectrum (2, sqrt 2)"},
      {"svd_reconstruction",
       [] { return max_abs_diff(reduced_svd(kSvdA, 2).triple().reconstruct(), kSvdA); },
       "rank-2 truncation is exact at full rank"},
      {"lu_factors",
       [] {
         const ReducedForm form = lu_reduced(kLuA);
         double err = max_abs_diff(form.g, kLuL);
         err = std::max(err, max_abs_diff(form.h_star, kLuU));
         err = std::max(err, max_abs_diff(form.f, kLuPStar));
         return err;
       },
       "partial-pivot factors of a 3x3"},
      {"cpqr_reconstruction",
       [] {
         const ReducedForm form = cpqr_reduced(kCpqrA);
         if (form.g.rows() != 2) return 1.0;
         return max_abs_diff(form.triple().reconstruct(), kCpqrA);
       },
       "pivoted qr of a 3x2, rank 2"},
      {"cur_mixing_matrix",
       [] { return max_abs_diff(cur(kFullA, {{0, 1}, {0, 1}}).form.g, kFullG); },
       "mixing matrix from leading columns and rows"},
      {"cur_exact_reconstruction",
       [] {
         const CurResult result = cur(kFullA, {{0, 1}, {0, 1}});
         if (!result.exact) return 1.0;
         return max_abs_diff(result.form.triple().reconstruct(), kFullA);
       },
       "rank condition reports exactness"},
      {"pinv_rank_one_column",
       [] { return max_abs_diff(pinv(kColumnF), kColumnFPlus); },
       "pseudoinverse of a single column"},
      {"penrose_equations",
       [] { return bool_error(check_penrose(kColumnF, kColumnFPlus).all()); },
       "all four inverse equations hold"},
      {"numerical_rank",
       [] { return bool_error(rank_of(kFullA).rank == 2); },
       "3x3 target has rank 2"},
      {"left_inverse_full_rank",
       [] { return max_abs_diff(randomized_left_inverse(kFullB, kFullF), kFullLeft); },
       "sketched inverse of the column basis"},
      {"right_inverse_full_rank",
       [] { return max_abs_diff(randomized_right_inverse(kFullD, kFullHStar), kFullRight); },
       "sketched inverse of the row basis"},
      {"projector_equation_full_rank",
       [] {
         return bool_error(
             projector_equation_holds(kFullLeft, kFullF, kFullHStar, kFullRight));
       },
       "both sketched inverses hit the identity"},
      {"middle_factor_full_rank",
       [] {
         Rng rng(7);
         const Matrix w = gaussian_matrix(2, 2, rng);
         const SolveResult with_w = solve_middle_factor(
             {.a = kFullA, .f = kFullF, .h_star = kFullHStar, .b = kFullB, .d = kFullD, .w = w});
         const SolveResult without = solve_middle_factor(
             {.a = kFullA, .f = kFullF, .h_star = kFullHStar, .b = kFullB, .d = kFullD});
         return std::max(max_abs_diff(with_w.triple.g, kFullG),
                         max_abs_diff(without.triple.g, kFullG));
       },
       "middle factor is w-independent at full rank"},
      {"left_inverse_rank_deficient",
       [] { return max_abs_diff(randomized_left_inverse(kDefB, kDefF), kDefLeft); },
       "rank-1 bases still admit a sketched inverse"},
      {"right_inverse_rank_deficient",
       [] { return max_abs_diff(randomized_right_inverse(kDefD, kDefF), kDefRight); },
       "rank-1 row basis counterpart"},
      {"generalized_inverse_identities",
       [] {
         const double left_defect =
             max_abs_diff(kDefF * kDefLeft * kDefF, kDefF);
         const double right_defect =
             max_abs_diff(kDefF * kDefRight * kDefF, kDefF);
         return std::max(left_defect, right_defect);
       },
       "f y f = f and h x h = h in the deficient case"},
      {"oblique_projector_idempotence",
       [] {
         const Matrix left_f = kDefLeft * kDefF;
         const Matrix h_right = kDefF * kDefRight;
         double err = max_abs_diff(left_f, kDefLeftF);
         err = std::max(err, max_abs_diff(h_right, kDefHStarRight));
         err = std::max(err, bool_error(is_idempotent(left_f)));
         err = std::max(err, bool_error(is_idempotent(h_right)));
         return err;
       },
       "projector values and idempotence"},
      {"middle_factor_rank_deficient",
       [] {
         const SolveResult solved = solve_middle_factor(
             {.a = kDefF, .f = kDefF, .h_star = kDefF, .b = kDefB, .d = kDefD});
         return max_abs_diff(solved.triple.g, kDefLeft);
       },
       "particular solution for rank-deficient bases"},
      {"reconstruction_identity",
       [] {
         return bool_error(
             reconstruction_identity_holds(kFullA, kFullF, kFullLeft, kFullRight, kFullHStar));
       },
       "projectors reproduce the target"},
      {"reconstruction_rank_deficient",
       [] {
         Rng rng(3);
         const Matrix w = gaussian_matrix(3, 2, rng);
         const SolveResult solved = solve_middle_factor(
             {.a = kDefF, .f = kDefF, .h_star = kDefF, .b = kDefB, .d = kDefD, .w = w});
         return max_abs_diff(solved.triple.reconstruct(), kDefF);
       },
       "random free term, same reconstruction"},
  };
  return all;
}

}  // namespace

std::vector<GoldenCheck> run_golden_suite(double tol_abs) {
  std::vector<GoldenCheck> results;
  results.reserve(items().size());
  for (const Item& item : items()) {
    GoldenCheck check;
    check.name = item.name;
    check.detail = item.detail;
    try {
      check.max_abs_error = item.max_error();
      check.pass = check.max_abs_error <= tol_abs;
    } catch (const std::exception& e) {
      check.max_abs_error = std::numeric_limits<double>::infinity();
      check.pass = false;
      check.detail = e.what();
    }
    results.push_back(std::move(check));
  }
  return results;
}

}  // namespace oblique
