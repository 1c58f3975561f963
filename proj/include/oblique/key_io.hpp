#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "oblique/crypto.hpp"

namespace oblique {

// JSON file formats for keys and ciphertexts. Floats are written in their
// shortest round-tripping decimal form, so saved keys decrypt bit-faithfully.
//
//   secret key:  {"version":1, "mode":"one-sided"|"two-sided",
//                 "f":{rows,cols,data}, "h_star":{...}|null}
//   public key:  {"version":1, "mode":..., "y1":{...}, "y2f":{...},
//                 "x1":{...}|null, "hx2":{...}|null, "r":int, "k":int}
//   ciphertext:  {"version":1, "payload":{rows,cols,data}, "length":int}
//
// A dictionary is stored as Matrix CSV plus a sidecar JSON declaring the
// implicit byte = column-index symbol map.

void save_secret_key(const std::filesystem::path& path, const SecretKey& sk);
SecretKey load_secret_key(const std::filesystem::path& path);

void save_public_key(const std::filesystem::path& path, const PublicKey& pk);
PublicKey load_public_key(const std::filesystem::path& path);

/// Ciphertext file contents. Unlike Matrix, the payload may have zero
/// columns (an encrypted empty message).
struct CiphertextFile {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major
  std::size_t length = 0;    // number of encrypted symbols

  bool empty() const { return cols == 0; }
  Matrix payload() const { return Matrix(rows, cols, data); }
  static CiphertextFile from_payload(const Matrix& payload, std::size_t length);
};

void save_ciphertext(const std::filesystem::path& path, const CiphertextFile& ct);
CiphertextFile load_ciphertext(const std::filesystem::path& path);

/// Writes <path> as CSV and <path>.json as the symbol-map sidecar.
void save_dictionary(const std::filesystem::path& csv_path, const Dictionary& dict);
/// Reads the CSV; rank and decode margin are recomputed from the data.
Dictionary load_dictionary(const std::filesystem::path& csv_path);

}  // namespace oblique
