#pragma once

#include <string>
#include <vector>

namespace oblique {

/// One worked-example check: name, outcome, and the largest absolute
/// deviation from the expected values.
struct GoldenCheck {
  std::string name;
  bool pass = false;
  double max_abs_error = 0.0;
  std::string detail;
};

/// Replay the curated worked examples (small matrices with exact fractional
/// results) against the library, comparing every entry to `tol_abs`.
std::vector<GoldenCheck> run_golden_suite(double tol_abs = 1e-12);

}  // namespace oblique
