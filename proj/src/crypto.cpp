#include "oblique/crypto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oblique/projectors.hpp"
#include "oblique/rng.hpp"

namespace oblique {

namespace {

double column_distance(const Matrix& a, std::size_t i, std::size_t j) {
  double sum = 0.0;
  for (std::size_t row = 0; row < a.rows(); ++row) {
    const double d = a(row, i) - a(row, j);
    sum += d * d;
  }
  return std::sqrt(sum);
}

double min_pairwise_column_distance(const Matrix& a) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      best = std::min(best, column_distance(a, i, j));
  return best;
}

Matrix draw_span_basis(const Matrix& a, std::size_t width, std::size_t k, Rng& rng,
                       int max_retries, const char* what) {
  // basis = a * Gaussian keeps the column space; redraw on the measure-zero
  // event that the product loses rank.
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Matrix basis = matmul(a, gaussian_matrix(a.cols(), width, rng));
    if (rank_of(basis).rank == k) return basis;
  }
  throw SketchRetryError(std::string(what) + ": could not draw a rank-" + std::to_string(k) +
                         " basis after " + std::to_string(max_retries) + " attempts");
}

}  // namespace

Matrix Dictionary::symbol_column(std::size_t symbol) const {
  if (symbol >= a.cols())
    throw ParameterError("dictionary: symbol " + std::to_string(symbol) +
                         " outside alphabet of size " + std::to_string(a.cols()));
  return column_of(a, symbol);
}

Dictionary build_dictionary(std::size_t m, std::size_t k, std::size_t n, std::uint64_t seed,
                            double decode_margin, int max_retries) {
  if (k == 0 || k >= m || k >= n)
    throw ParameterError("build_dictionary: need 1 <= k < m and k < n (rank-deficient), got m = " +
                         std::to_string(m) + ", k = " + std::to_string(k) + ", n = " +
                         std::to_string(n));
  if (decode_margin <= 0.0) throw ParameterError("build_dictionary: decode margin must be positive");

  Rng rng(seed);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Matrix a = matmul(gaussian_matrix(m, k, rng), gaussian_matrix(k, n, rng));
    if (rank_of(a).rank != k) continue;
    if (min_pairwise_column_distance(a) <= decode_margin) continue;
    return Dictionary{std::move(a), k, decode_margin};
  }
  throw ParameterError("build_dictionary: could not meet rank and column-separation requirements "
                       "after " + std::to_string(max_retries) + " draws (margin too large?)");
}

Dictionary dictionary_from_matrix(Matrix a) {
  if (a.cols() < 2) throw ParameterError("dictionary: alphabet needs at least two columns");
  const std::size_t rank = rank_of(a).rank;
  const double margin = min_pairwise_column_distance(a);
  if (margin <= 0.0)
    throw ParameterError("dictionary: duplicate columns make decoding ambiguous");
  return Dictionary{std::move(a), rank, margin};
}

std::pair<SecretKey, PublicKey> keygen(const Dictionary& dict, std::size_t r, std::uint64_t seed,
                                       const KeygenOptions& options) {
  const std::size_t k = dict.rank;
  const std::size_t m = dict.a.rows();
  const std::size_t n = dict.a.cols();
  if (k == 0) throw ParameterError("keygen: dictionary has rank 0");
  if (k >= std::min(m, n))
    throw ParameterError("keygen: dictionary must be rank-deficient (rank " + std::to_string(k) +
                         " for " + std::to_string(m) + "x" + std::to_string(n) + ")");
  if (r < k + options.min_rank_gap)
    throw ParameterError("keygen: need r >= k + " + std::to_string(options.min_rank_gap) +
                         " (k = " + std::to_string(k) + ", r = " + std::to_string(r) +
                         "); the rank-deficiency gap is the security margin");

  Rng rng(seed);
  Rng f_rng = rng.spawn(1);
  Matrix f = draw_span_basis(dict.a, r, k, f_rng, options.max_retries, "keygen");
  Rng b1_rng = rng.spawn(2);
  Rng b2_rng = rng.spawn(3);
  const Matrix b1 = random_rank_preserving_sketch(f, k, b1_rng, options.max_retries);
  const Matrix b2 = random_rank_preserving_sketch(f, k, b2_rng, options.max_retries);
  Matrix encoder = randomized_left_inverse(b1, f);
  Matrix coeff_projector = matmul(randomized_left_inverse(b2, f), f);

  std::optional<Matrix> h_star;
  std::optional<Matrix> right_encoder;
  std::optional<Matrix> right_coeff_projector;
  if (options.two_sided) {
    if (!options.q.has_value())
      throw ParameterError("keygen: two-sided mode needs q");
    const std::size_t q = *options.q;
    if (q < k + options.min_rank_gap)
      throw ParameterError("keygen: need q >= k + " + std::to_string(options.min_rank_gap) +
                           " (k = " + std::to_string(k) + ", q = " + std::to_string(q) + ")");
    Rng h_rng = rng.spawn(4);
    const Matrix h = draw_span_basis(transpose(dict.a), q, k, h_rng, options.max_retries, "keygen");
    h_star = transpose(h);
    Rng d1_rng = rng.spawn(5);
    Rng d2_rng = rng.spawn(6);
    const Matrix d1 = random_rank_preserving_sketch(h, k, d1_rng, options.max_retries);
    const Matrix d2 = random_rank_preserving_sketch(h, k, d2_rng, options.max_retries);
    right_encoder = randomized_right_inverse(d1, *h_star);
    right_coeff_projector = matmul(*h_star, randomized_right_inverse(d2, *h_star));
  }
  return {SecretKey{std::move(f), std::move(h_star)},
          PublicKey{std::move(encoder), std::move(coeff_projector), std::move(right_encoder),
                    std::move(right_coeff_projector), r, k}};
}

Ciphertext encrypt_with_noise(const PublicKey& pk, const Matrix& message, const Matrix& w) {
  if (message.cols() != 1)
    throw DimensionError("encrypt: message must be a single column");
  if (message.rows() != pk.encoder.cols())
    throw DimensionError("encrypt: message length " + std::to_string(message.rows()) +
                         " does not match key (expects " + std::to_string(pk.encoder.cols()) +
                         ")");
  if (w.rows() != pk.r || w.cols() != 1)
    throw DimensionError("encrypt: noise must be a " + std::to_string(pk.r) + "-vector");
  const Matrix complement = sub(Matrix::identity(pk.r), pk.coeff_projector);
  return Ciphertext{add(matmul(pk.encoder, message), matmul(complement, w)), 0};
}

Ciphertext encrypt(const PublicKey& pk, const Matrix& message, std::uint64_t seed) {
  Rng rng(seed);
  Ciphertext ct = encrypt_with_noise(pk, message, gaussian_matrix(pk.r, 1, rng));
  ct.nonce_seed = seed;
  return ct;
}

Matrix decrypt(const SecretKey& sk, const Ciphertext& ct) {
  if (ct.payload.rows() != sk.f.cols())
    throw DimensionError("decrypt: payload has " + std::to_string(ct.payload.rows()) +
                         " rows, key expects " + std::to_string(sk.f.cols()));
  return matmul(sk.f, ct.payload);
}

Ciphertext encrypt_two_sided_with_noise(const PublicKey& pk, const Matrix& message,
                                        const Matrix& w) {
  if (!pk.two_sided()) throw ParameterError("encrypt_two_sided: public key is one-sided");
  if (message.rows() != pk.encoder.cols() || message.cols() != pk.right_encoder->rows())
    throw DimensionError("encrypt_two_sided: message must be " +
                         std::to_string(pk.encoder.cols()) + "x" +
                         std::to_string(pk.right_encoder->rows()));
  const std::size_t q = pk.q();
  if (w.rows() != pk.r || w.cols() != q)
    throw DimensionError("encrypt_two_sided: noise must be " + std::to_string(pk.r) + "x" +
                         std::to_string(q));
  const Matrix coded = matmul(matmul(pk.encoder, message), *pk.right_encoder);
  const Matrix masked = sub(w, matmul(matmul(pk.coeff_projector, w), *pk.right_coeff_projector));
  return Ciphertext{add(coded, masked), 0};
}

Ciphertext encrypt_two_sided(const PublicKey& pk, const Matrix& message, std::uint64_t seed) {
  if (!pk.two_sided()) throw ParameterError("encrypt_two_sided: public key is one-sided");
  Rng rng(seed);
  Ciphertext ct = encrypt_two_sided_with_noise(pk, message, gaussian_matrix(pk.r, pk.q(), rng));
  ct.nonce_seed = seed;
  return ct;
}

Matrix decrypt_two_sided(const SecretKey& sk, const Ciphertext& ct) {
  if (!sk.two_sided()) throw ParameterError("decrypt_two_sided: secret key is one-sided");
  return matmul(matmul(sk.f, ct.payload), *sk.h_star);
}

std::size_t decode_symbol(const Dictionary& dict, const Matrix& message) {
  if (message.cols() != 1 || message.rows() != dict.a.rows())
    throw DimensionError("decode_symbol: message must be a " + std::to_string(dict.a.rows()) +
                         "-vector");
  double best = std::numeric_limits<double>::infinity();
  double second = best;
  std::size_t best_index = 0;
  for (std::size_t j = 0; j < dict.a.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dict.a.rows(); ++i) {
      const double d = message(i, 0) - dict.a(i, j);
      sum += d * d;
    }
    const double dist = std::sqrt(sum);
    if (dist < best) {
      second = best;
      best = dist;
      best_index = j;
    } else if (dist < second) {
      second = dist;
    }
  }
  if (best > dict.decode_margin / 2.0)
    throw DecodeError("decode_symbol: nearest column at distance " + std::to_string(best) +
                      " exceeds half the decode margin (" +
                      std::to_string(dict.decode_margin / 2.0) + ")");
  if (second - best <= 1e-12 * std::max(1.0, best))
    throw DecodeError("decode_symbol: two columns are equidistant, decode is ambiguous");
  return best_index;
}

AttackProbeReport attack_probe(const PublicKey& pk, const Matrix* true_f) {
  Matrix candidate = matmul(pinv(pk.encoder), pk.coeff_projector);
  std::optional<double> relative_distance;
  if (true_f != nullptr) {
    const double denom = frobenius_norm(*true_f);
    relative_distance = denom > 0.0 ? frobenius_norm(sub(candidate, *true_f)) / denom : 0.0;
  }
  return AttackProbeReport{rank_of(pk.coeff_projector).rank, pk.r, pk.k, std::move(candidate),
                           relative_distance};
}

}  // namespace oblique
