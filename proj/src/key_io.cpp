#include "oblique/key_io.hpp"

#include <fstream>

#include <json.hpp>

#include "oblique/csv.hpp"

namespace oblique {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const json& j, const char* field) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ParseError(std::string("key file: field '") + field + "' is not a matrix object");
  try {
    return Matrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                  j.at("data").get<std::vector<double>>());
  } catch (const Error& e) {
    throw ParseError(std::string("key file: field '") + field + "': " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("key file: field '") + field + "': " + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void check_version(const json& j, const std::filesystem::path& path) {
  if (!j.is_object() || !j.contains("version") || j.at("version") != 1)
    throw ParseError(path.string() + ": unsupported or missing version");
}

}  // namespace

void save_secret_key(const std::filesystem::path& path, const SecretKey& sk) {
  json j{{"version", 1},
         {"mode", sk.two_sided() ? "two-sided" : "one-sided"},
         {"f", matrix_to_json(sk.f)},
         {"h_star", sk.h_star ? matrix_to_json(*sk.h_star) : json(nullptr)}};
  write_json_file(path, j);
}

SecretKey load_secret_key(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  check_version(j, path);
  Matrix f = matrix_from_json(j.at("f"), "f");
  std::optional<Matrix> h_star;
  if (j.contains("h_star") && !j.at("h_star").is_null())
    h_star = matrix_from_json(j.at("h_star"), "h_star");
  const std::string mode = j.value("mode", "");
  if (mode != "one-sided" && mode != "two-sided")
    throw ParseError(path.string() + ": unknown mode '" + mode + "'");
  if ((mode == "two-sided") != h_star.has_value())
    throw ParseError(path.string() + ": mode does not match key contents");
  return SecretKey{std::move(f), std::move(h_star)};
}

void save_public_key(const std::filesystem::path& path, const PublicKey& pk) {
  json j{{"version", 1},
         {"mode", pk.two_sided() ? "two-sided" : "one-sided"},
         {"y1", matrix_to_json(pk.encoder)},
         {"y2f", matrix_to_json(pk.coeff_projector)},
         {"x1", pk.right_encoder ? matrix_to_json(*pk.right_encoder) : json(nullptr)},
         {"hx2", pk.right_coeff_projector ? matrix_to_json(*pk.right_coeff_projector)
                                          : json(nullptr)},
         {"r", pk.r},
         {"k", pk.k}};
  write_json_file(path, j);
}

PublicKey load_public_key(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  check_version(j, path);
  Matrix encoder = matrix_from_json(j.at("y1"), "y1");
  Matrix coeff_projector = matrix_from_json(j.at("y2f"), "y2f");
  std::optional<Matrix> right_encoder;
  std::optional<Matrix> right_coeff_projector;
  if (j.contains("x1") && !j.at("x1").is_null())
    right_encoder = matrix_from_json(j.at("x1"), "x1");
  if (j.contains("hx2") && !j.at("hx2").is_null())
    right_coeff_projector = matrix_from_json(j.at("hx2"), "hx2");
  if (right_encoder.has_value() != right_coeff_projector.has_value())
    throw ParseError(path.string() + ": two-sided fields must appear together");
  if (!j.contains("r") || !j.contains("k"))
    throw ParseError(path.string() + ": missing r/k");
  return PublicKey{std::move(encoder), std::move(coeff_projector), std::move(right_encoder),
                   std::move(right_coeff_projector), j.at("r").get<std::size_t>(),
                   j.at("k").get<std::size_t>()};
}

CiphertextFile CiphertextFile::from_payload(const Matrix& payload, std::size_t length) {
  return CiphertextFile{payload.rows(), payload.cols(), payload.data(), length};
}

void save_ciphertext(const std::filesystem::path& path, const CiphertextFile& ct) {
  json j{{"version", 1},
         {"payload", json{{"rows", ct.rows}, {"cols", ct.cols}, {"data", ct.data}}},
         {"length", ct.length}};
  write_json_file(path, j);
}

CiphertextFile load_ciphertext(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  check_version(j, path);
  if (!j.contains("payload") || !j.contains("length"))
    throw ParseError(path.string() + ": missing payload/length");
  const json& p = j.at("payload");
  if (!p.is_object() || !p.contains("rows") || !p.contains("cols") || !p.contains("data"))
    throw ParseError(path.string() + ": malformed payload");
  CiphertextFile ct{p.at("rows").get<std::size_t>(), p.at("cols").get<std::size_t>(),
                    p.at("data").get<std::vector<double>>(), j.at("length").get<std::size_t>()};
  if (ct.data.size() != ct.rows * ct.cols)
    throw ParseError(path.string() + ": payload data length does not match shape");
  return ct;
}

void save_dictionary(const std::filesystem::path& csv_path, const Dictionary& dict) {
  write_csv(csv_path, dict.a);
  std::filesystem::path sidecar = csv_path;
  sidecar += ".json";
  write_json_file(sidecar, json{{"symbol_map", "byte=column-index"}});
}

Dictionary load_dictionary(const std::filesystem::path& csv_path) {
  return dictionary_from_matrix(read_csv(csv_path));
}

}  // namespace oblique
