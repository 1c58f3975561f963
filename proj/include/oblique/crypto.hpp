#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "oblique/matrix.hpp"

namespace oblique {

// Projector-based public-key encryption demonstrator. Messages are columns of
// a shared rank-deficient dictionary; the secret key is a randomized basis of
// the dictionary's column space and the public key is made of randomized
// generalized inverses of that basis. This is a mathematical demonstrator,
// not a vetted cryptosystem.

/// Shared message dictionary: an m x n matrix of rank k < min(m, n) whose
/// columns encode symbols (byte value = column index). Columns are pairwise
/// separated by more than decode_margin so nearest-column decoding is sound.
struct Dictionary {
  Matrix a;
  std::size_t rank = 0;
  double decode_margin = 0.0;

  std::size_t symbol_count() const { return a.cols(); }
  Matrix symbol_column(std::size_t symbol) const;
};

/// Secret key: the column basis f (m x r, rank k < r). Two-sided keys also
/// carry the row basis h_star (q x n).
struct SecretKey {
  Matrix f;
  std::optional<Matrix> h_star;

  bool two_sided() const { return h_star.has_value(); }
};

/// Public key. `encoder` maps messages into coefficient space (r x m) and
/// `coeff_projector` (r x r, idempotent, rank k < r) defines the noise
/// subspace: ciphertext noise enters through its complement and is
/// annihilated by the secret basis. Two-sided keys add the row-space
/// counterparts `right_encoder` (n x q) and `right_coeff_projector` (q x q).
struct PublicKey {
  Matrix encoder;           // (B1^T F)^+ B1^T
  Matrix coeff_projector;   // (B2^T F)^+ B2^T F
  std::optional<Matrix> right_encoder;          // D1 (H^T D1)^+
  std::optional<Matrix> right_coeff_projector;  // H^T D2 (H^T D2)^+
  std::size_t r = 0;
  std::size_t k = 0;

  bool two_sided() const { return right_encoder.has_value(); }
  std::size_t q() const { return right_coeff_projector ? right_coeff_projector->rows() : 0; }
};

/// Ciphertext payload: one r-vector per encrypted symbol (r x q matrix in
/// two-sided mode). The recorded noise seed is diagnostic only and excluded
/// from equality.
struct Ciphertext {
  Matrix payload;
  std::uint64_t nonce_seed = 0;

  bool operator==(const Ciphertext& other) const { return payload == other.payload; }
};

struct KeygenOptions {
  bool two_sided = false;
  std::optional<std::size_t> q;
  /// Guard: require r >= k + min_rank_gap (the rank-deficiency gap carries
  /// the whole security argument; r = k collapses the noise subspace).
  std::size_t min_rank_gap = 2;
  int max_retries = 64;
};

/// Diagnostic for the obvious pseudoinverse attack: the candidate
/// encoder^+ * coeff_projector is compared against the true secret basis when
/// one is supplied. rank(coeff_projector) = k < r documents why the candidate
/// cannot be the inverse image.
struct AttackProbeReport {
  std::size_t rank_coeff_projector = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  Matrix f_candidate;
  std::optional<double> relative_distance;
};

/// Build an m x n rank-k dictionary as a product of Gaussian factors,
/// redrawn until the rank and the pairwise column separation
/// (> decode_margin) hold. Requires 1 <= k < m and k < n.
Dictionary build_dictionary(std::size_t m, std::size_t k, std::size_t n, std::uint64_t seed,
                            double decode_margin, int max_retries = 64);

/// Reconstitute a dictionary from a raw matrix (e.g. loaded from CSV):
/// rank is recomputed and decode_margin is set to the observed minimum
/// pairwise column distance.
Dictionary dictionary_from_matrix(Matrix a);

/// Generate a key pair over the dictionary's column space. The secret basis
/// is f = A * Omega with Gaussian Omega (r columns); both public components
/// come from independent rank-k sketches, so regenerating with a different
/// seed yields a different public key for the same span.
std::pair<SecretKey, PublicKey> keygen(const Dictionary& dict, std::size_t r, std::uint64_t seed,
                                       const KeygenOptions& options = {});

/// c = encoder * message + (I - coeff_projector) * w with w drawn from seed.
/// The caller must supply a message in the dictionary's column space
/// (a symbol column or a combination of them); this cannot be validated from
/// the public key alone.
Ciphertext encrypt(const PublicKey& pk, const Matrix& message, std::uint64_t seed);
/// Same with an explicit noise vector (r x 1); pass zero for noiseless tests.
Ciphertext encrypt_with_noise(const PublicKey& pk, const Matrix& message, const Matrix& w);

/// message = f * payload. Works column-wise for multi-symbol payloads.
Matrix decrypt(const SecretKey& sk, const Ciphertext& ct);

/// Two-sided variants for m x n matrix messages with contained column and
/// row spaces: c = encoder * M * right_encoder + w - coeff_projector * w *
/// right_coeff_projector, decrypted by f * c * h_star.
Ciphertext encrypt_two_sided(const PublicKey& pk, const Matrix& message, std::uint64_t seed);
Ciphertext encrypt_two_sided_with_noise(const PublicKey& pk, const Matrix& message,
                                        const Matrix& w);
Matrix decrypt_two_sided(const SecretKey& sk, const Ciphertext& ct);

/// Nearest-column lookup. Throws DecodeError when the best distance exceeds
/// decode_margin / 2 or the two best columns are equidistant.
std::size_t decode_symbol(const Dictionary& dict, const Matrix& message);

AttackProbeReport attack_probe(const PublicKey& pk, const Matrix* true_f = nullptr);

}  // namespace oblique
