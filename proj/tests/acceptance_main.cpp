// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here; the random criteria use fixed seeds so the
// suite is deterministic.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oblique/crypto.hpp"
#include "oblique/factorizations.hpp"
#include "oblique/golden.hpp"
#include "oblique/matrix.hpp"
#include "oblique/projectors.hpp"
#include "oblique/rng.hpp"
#include "oblique/solver.hpp"

namespace {

using namespace oblique;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  bool pass;
  std::string detail;
};

int g_failures = 0;

void report(int index, const char* name, const Criterion& criterion) {
  std::printf("%s  criterion-%d  %-34s %s\n", criterion.pass ? "PASS" : "FAIL", index, name,
              criterion.detail.c_str());
  if (!criterion.pass) ++g_failures;
}

std::string format(const char* fmt, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

// 1. Worked-example suite at 1e-12 absolute, under a second.
Criterion golden_suite() {
  const auto start = Clock::now();
  const std::vector<GoldenCheck> checks = run_golden_suite(1e-12);
  std::size_t passed = 0;
  for (const GoldenCheck& check : checks)
    if (check.pass) ++passed;
  const double elapsed = seconds_since(start);
  const bool pass = passed == checks.size() && elapsed < 1.0;
  return Criterion{pass, std::to_string(passed) + "/" + std::to_string(checks.size()) +
                             " checks at 1e-12, " + format("%.2f s (limit 1 s)", elapsed)};
}

// Shared random instances for criteria 2 and 3.
struct PropertyMetrics {
  double worst_residual = 0.0;
  double worst_defect = 0.0;
  int failures = 0;
  double elapsed = 0.0;
};

PropertyMetrics run_property_instances() {
  const auto start = Clock::now();
  PropertyMetrics metrics;
  const std::uint64_t master = 0x0B11C0DE;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = Rng(master).spawn(static_cast<std::uint64_t>(i));
    const std::size_t m = 1 + rng.next_u64() % 12;
    const std::size_t n = 1 + rng.next_u64() % 12;
    const std::size_t k = 1 + rng.next_u64() % std::min(m, n);
    const std::size_t r = k + rng.next_u64() % 5;
    const std::size_t q = k + rng.next_u64() % 5;
    const Matrix a = gaussian_matrix(m, k, rng) * gaussian_matrix(k, n, rng);
    const Matrix f = a * gaussian_matrix(n, r, rng);
    const Matrix h_star = transpose(transpose(a) * gaussian_matrix(m, q, rng));
    const Matrix w = gaussian_matrix(r, q, rng);
    try {
      const SolveResult solved = solve_middle_factor(
          {.a = a, .f = f, .h_star = h_star, .w = w, .seed = rng.next_u64()});
      metrics.worst_residual = std::max(metrics.worst_residual, solved.report.relative_residual);
      const Matrix col_projector = f * solved.inverses.left;
      const Matrix row_projector = solved.inverses.right * h_star;
      double defect = *solved.report.err1 / frobenius_norm(f);
      defect = std::max(defect, *solved.report.err2 / frobenius_norm(h_star));
      defect = std::max(defect, frobenius_norm(col_projector * col_projector - col_projector) /
                                    frobenius_norm(col_projector));
      defect = std::max(defect, frobenius_norm(row_projector * row_projector - row_projector) /
                                    frobenius_norm(row_projector));
      metrics.worst_defect = std::max(metrics.worst_defect, defect);
    } catch (const Error&) {
      ++metrics.failures;
    }
  }
  metrics.elapsed = seconds_since(start);
  return metrics;
}

// 4. Pseudoinverse equations on 500 random matrices at 1e-10 relative.
Criterion penrose_suite() {
  Rng rng(0xBEEF);
  const Tolerance tol{1e-12, 1e-10};
  int passed = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 12;
    const std::size_t n = 1 + rng.next_u64() % 12;
    const std::size_t k = 1 + rng.next_u64() % std::min(m, n);
    const Matrix a = matmul(gaussian_matrix(m, k, rng), gaussian_matrix(k, n, rng));
    if (check_penrose(a, pinv(a), tol).all()) ++passed;
  }
  return Criterion{passed == trials,
                   std::to_string(passed) + "/" + std::to_string(trials) + " at 1e-10 relative"};
}

// 5. Factorization adapters on 200 random matrices each at 1e-10 relative,
//    plus the CUR exactness equivalence in both directions.
Criterion zoo_suite() {
  Rng rng(0x200);
  double worst = 0.0;
  double min_inexact_residual = 1e9;
  bool equivalence = true;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t m = 2 + rng.next_u64() % 11;
    const std::size_t n = 2 + rng.next_u64() % 11;
    const std::size_t k = 1 + rng.next_u64() % std::min(m, n);
    const Matrix a = matmul(gaussian_matrix(m, k, rng), gaussian_matrix(k, n, rng));

    const auto residual_of = [&](const ReducedForm& form) {
      return verify_triple(a, form.triple()).relative_residual;
    };
    worst = std::max(worst, residual_of(reduced_svd(a, k)));
    worst = std::max(worst, residual_of(cpqr_reduced(a)));
    worst = std::max(worst, residual_of(randomized_reduced(a, k + rng.next_u64() % 4,
                                                           k + rng.next_u64() % 4,
                                                           rng.next_u64())));
    {
      const Matrix square = gaussian_matrix(m, m, rng);
      const double lu_res = verify_triple(square, lu_reduced(square).triple()).relative_residual;
      worst = std::max(worst, lu_res);
    }

    // CUR: alternate between spanning and deliberately starved selections.
    const bool starve = trial % 2 == 1 && k > 1;
    const std::size_t take = starve ? k - 1 : k;
    ColumnRowSelection sel;
    for (std::size_t i = 0; i < take; ++i) {
      sel.col_indices.push_back(i);
      sel.row_indices.push_back(i);
    }
    const CurResult cur_result = cur(a, sel);
    const double cur_residual = verify_triple(a, cur_result.form.triple()).relative_residual;
    if (cur_result.exact) {
      worst = std::max(worst, cur_residual);
      if (starve) equivalence = false;
    } else {
      equivalence = equivalence && cur_residual > 1e-10 && starve;
      min_inexact_residual = std::min(min_inexact_residual, cur_residual);
    }
  }
  const bool pass = worst <= 1e-10 && equivalence;
  return Criterion{pass, format("worst residual %.2e (limit 1e-10), min inexact cur %.2e",
                                worst, min_inexact_residual)};
}

// 6. Crypto roundtrip: 256 symbols x 16 seeds, ciphertext distinctness, and
//    the two-sided whole-dictionary roundtrip, within a minute.
Criterion crypto_roundtrip() {
  const auto start = Clock::now();
  const Dictionary dict = build_dictionary(8, 3, 256, 2024, 1e-3);
  const auto [sk, pk] = keygen(dict, 5, 77);

  int recovered = 0;
  const int seeds_per_symbol = 16;
  bool distinct = true;
  double worst_error = 0.0;
  Rng seed_stream(0x5EED);
  for (std::size_t symbol = 0; symbol < dict.symbol_count(); ++symbol) {
    const Matrix message = dict.symbol_column(symbol);
    std::vector<Matrix> payloads;
    for (int s = 0; s < seeds_per_symbol; ++s) {
      const Ciphertext ct = encrypt(pk, message, seed_stream.next_u64());
      const Matrix decoded = decrypt(sk, ct);
      worst_error = std::max(worst_error, max_abs_diff(decoded, message));
      try {
        if (decode_symbol(dict, decoded) == symbol) ++recovered;
      } catch (const DecodeError&) {
      }
      payloads.push_back(ct.payload);
    }
    for (std::size_t i = 0; i < payloads.size() && distinct; ++i)
      for (std::size_t j = i + 1; j < payloads.size(); ++j)
        if (frobenius_norm(payloads[i] - payloads[j]) <= 1e-6) {
          distinct = false;
          break;
        }
  }
  const int total = static_cast<int>(dict.symbol_count()) * seeds_per_symbol;

  KeygenOptions two_sided;
  two_sided.two_sided = true;
  two_sided.q = 6;
  const auto [sk2, pk2] = keygen(dict, 5, 78, two_sided);
  const Ciphertext block = encrypt_two_sided(pk2, dict.a, 4242);
  const double block_residual = frobenius_norm(decrypt_two_sided(sk2, block) - dict.a) /
                                frobenius_norm(dict.a);
  const double elapsed = seconds_since(start);

  const bool pass = recovered == total && worst_error <= 1e-8 && distinct &&
                    block_residual <= 1e-8 && elapsed < 60.0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/%d exact byte recoveries, distinct %s, two-sided residual %.2e, %.1f s "
                "(limit 60 s)",
                recovered, total, distinct ? "yes" : "NO", block_residual, elapsed);
  return Criterion{pass, buf};
}

// 7. Security-adjacent properties: rank deficiency of the public material,
//    failure of the pseudoinverse probe, and wrong-key decode failures.
Criterion security_checks() {
  const Dictionary dict = build_dictionary(8, 3, 256, 2024, 1e-3);
  const int keypairs = 50;
  std::vector<SecretKey> secrets;
  std::vector<PublicKey> publics;
  bool ranks_ok = true;
  double min_probe_distance = 1e9;
  for (int i = 0; i < keypairs; ++i) {
    auto [sk, pk] = keygen(dict, 5, 9000 + static_cast<std::uint64_t>(i));
    const AttackProbeReport probe = attack_probe(pk, &sk.f);
    ranks_ok = ranks_ok && probe.rank_coeff_projector == pk.k && probe.rank_coeff_projector < pk.r;
    min_probe_distance = std::min(min_probe_distance, *probe.relative_distance);
    secrets.push_back(std::move(sk));
    publics.push_back(std::move(pk));
  }

  int tripped = 0;
  const int trials = 1000;
  Rng seed_stream(0xABCD);
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t sender = static_cast<std::size_t>(trial) % keypairs;
    const std::size_t receiver = (sender + 1 + trial / keypairs) % keypairs;
    const std::size_t symbol = static_cast<std::size_t>(trial) % dict.symbol_count();
    const Ciphertext ct = encrypt(publics[sender], dict.symbol_column(symbol),
                                  seed_stream.next_u64());
    try {
      if (decode_symbol(dict, decrypt(secrets[receiver], ct)) != symbol) ++tripped;
    } catch (const DecodeError&) {
      ++tripped;
    }
  }

  const bool pass = ranks_ok && min_probe_distance > 1e-3 && tripped >= (trials * 99) / 100;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "ranks k<r %s, min probe distance %.2e (limit 1e-3), wrong-key trips %d/%d",
                ranks_ok ? "ok" : "VIOLATED", min_probe_distance, tripped, trials);
  return Criterion{pass, buf};
}

}  // namespace

int main() {
  report(1, "golden worked-example suite", golden_suite());

  const PropertyMetrics metrics = run_property_instances();
  report(2, "general-solution reconstruction",
         Criterion{metrics.failures == 0 && metrics.worst_residual <= 1e-10 &&
                       metrics.elapsed < 30.0,
                   format("1000 instances, worst residual %.2e (limit 1e-10), %.1f s",
                          metrics.worst_residual, metrics.elapsed) +
                       (metrics.failures ? ", " + std::to_string(metrics.failures) + " errors"
                                         : "")});
  report(3, "inverse and idempotence defects",
         Criterion{metrics.failures == 0 && metrics.worst_defect <= 1e-10,
                   format("same instances, worst defect %.2e (limit 1e-10)",
                          metrics.worst_defect)});
  report(4, "pseudoinverse equation suite", penrose_suite());
  report(5, "factorization adapter suite", zoo_suite());
  report(6, "encryption roundtrip", crypto_roundtrip());
  report(7, "security-adjacent properties", security_checks());

  if (g_failures == 0) {
    std::printf("acceptance: all 7 criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
