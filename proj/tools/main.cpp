// Batch CLI for the oblique toolkit: classical factorizations in reduced
// form, middle-factor solving, triple verification, and the projector-based
// encryption demo. Exit codes: 0 success, 1 math/validation failure,
// 2 usage or I/O error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oblique/crypto.hpp"
#include "oblique/csv.hpp"
#include "oblique/errors.hpp"
#include "oblique/factorizations.hpp"
#include "oblique/golden.hpp"
#include "oblique/key_io.hpp"
#include "oblique/matrix.hpp"
#include "oblique/rng.hpp"
#include "oblique/solver.hpp"

namespace {

using nlohmann::json;
using namespace oblique;

void print_matrix(const Matrix& m, const std::string& label) {
  std::printf("%s (%zux%zu):\n", label.c_str(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::printf(" ");
    for (std::size_t j = 0; j < m.cols(); ++j) std::printf(" % .10g", m(i, j));
    std::printf("\n");
  }
}

std::vector<std::size_t> parse_index_list(const std::string& text, const char* flag) {
  // User-facing indices are 1-based, matching how the selections are written.
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      const long value = std::stol(token);
      if (value < 1) throw std::invalid_argument("nonpositive");
      out.push_back(static_cast<std::size_t>(value) - 1);
    } catch (const std::exception&) {
      throw ParameterError(std::string(flag) + ": bad index '" + token + "' (1-based list)");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ParameterError(std::string(flag) + ": empty index list");
  return out;
}

json matrix_summary(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}};
}

// ---------------------------------------------------------------------------
// factorize

struct FactorizeArgs {
  std::string input;
  std::string method;
  std::size_t rank = 0;
  std::string cols;
  std::string rows;
  std::size_t r = 0;
  std::size_t q = 0;
  std::uint64_t seed = 0;
  std::string out_prefix = "out";
  double tol = 1e-8;
  bool emit_json = false;
};

int run_factorize(const FactorizeArgs& args) {
  const Matrix a = read_csv(args.input);
  std::optional<ReducedForm> form;
  std::optional<CurResult> cur_result;
  if (args.method == "svd") {
    const std::size_t k = args.rank > 0 ? args.rank : rank_of(a).rank;
    form = reduced_svd(a, k);
  } else if (args.method == "qr") {
    form = cpqr_reduced(a);
  } else if (args.method == "lu") {
    form = lu_reduced(a);
  } else if (args.method == "cur") {
    if (args.cols.empty() || args.rows.empty())
      throw ParameterError("factorize: --method cur needs --cols and --rows");
    cur_result = cur(a, ColumnRowSelection{parse_index_list(args.cols, "--cols"),
                                           parse_index_list(args.rows, "--rows")});
    form = cur_result->form;
  } else if (args.method == "random") {
    if (args.r == 0 || args.q == 0)
      throw ParameterError("factorize: --method random needs --r and --q");
    form = randomized_reduced(a, args.r, args.q, args.seed);
  } else {
    throw ParameterError("factorize: unknown method '" + args.method + "'");
  }

  const TripleReport report = verify_triple(a, form->triple());
  const std::string f_path = args.out_prefix + "_f.csv";
  const std::string g_path = args.out_prefix + "_g.csv";
  const std::string h_path = args.out_prefix + "_h.csv";
  write_csv(f_path, form->f);
  write_csv(g_path, form->g);
  write_csv(h_path, form->h_star);

  std::printf("method: %s\n", to_string(form->source).c_str());
  std::printf("factors: f %zux%zu, g %zux%zu, h %zux%zu -> %s, %s, %s\n", form->f.rows(),
              form->f.cols(), form->g.rows(), form->g.cols(), form->h_star.rows(),
              form->h_star.cols(), f_path.c_str(), g_path.c_str(), h_path.c_str());
  if (cur_result)
    std::printf("cur exactness: %s (rank of mixing %zu, rank of input %zu)\n",
                cur_result->exact ? "exact" : "inexact", cur_result->rank_mixing,
                cur_result->rank_source);
  std::printf("relative residual: %.6e\n", report.relative_residual);

  const bool ok = report.relative_residual <= args.tol;
  if (args.emit_json) {
    json j{{"method", to_string(form->source)},
           {"residual", report.relative_residual},
           {"tolerance", args.tol},
           {"pass", ok},
           {"f", matrix_summary(form->f)},
           {"g", matrix_summary(form->g)},
           {"h", matrix_summary(form->h_star)},
           {"files", json{{"f", f_path}, {"g", g_path}, {"h", h_path}}}};
    if (cur_result) j["exact"] = cur_result->exact;
    std::printf("%s\n", j.dump(2).c_str());
  }
  if (!ok) {
    std::fprintf(stderr, "residual above tolerance %.3e\n", args.tol);
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string a_path;
  std::string f_path;
  std::string h_path;
  std::string b_path;
  std::string d_path;
  std::string w_path;
  std::string out = "g_out.csv";
  std::uint64_t seed = 0;
  double tol = 1e-8;
  bool emit_json = false;
};

int run_solve(const SolveArgs& args) {
  SolverInputs inputs{.a = read_csv(args.a_path),
                      .f = read_csv(args.f_path),
                      .h_star = read_csv(args.h_path),
                      .seed = args.seed};
  if (!args.b_path.empty()) inputs.b = read_csv(args.b_path);
  if (!args.d_path.empty()) inputs.d = read_csv(args.d_path);
  if (!args.w_path.empty()) inputs.w = read_csv(args.w_path);

  const SolveResult solved = solve_middle_factor(inputs, Tolerance{1e-12, args.tol});
  print_matrix(solved.triple.g, "g");
  write_csv(args.out, solved.triple.g);
  std::printf("wrote %s\n", args.out.c_str());
  std::printf("err  = %.6e\n", solved.report.relative_residual);
  std::printf("err1 = %.6e\n", *solved.report.err1);
  std::printf("err2 = %.6e\n", *solved.report.err2);
  if (args.emit_json) {
    const json j{{"err", solved.report.relative_residual},
                 {"err1", *solved.report.err1},
                 {"err2", *solved.report.err2},
                 {"g", matrix_summary(solved.triple.g)},
                 {"out", args.out}};
    std::printf("%s\n", j.dump(2).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string a_path;
  std::string f_path;
  std::string g_path;
  std::string h_path;
  double tol = 1e-8;
  bool emit_json = false;
};

int run_verify(const VerifyArgs& args) {
  const Matrix a = read_csv(args.a_path);
  const FactorizationTriple triple{read_csv(args.f_path), read_csv(args.g_path),
                                   read_csv(args.h_path)};
  const TripleReport report = verify_triple(a, triple);
  const bool ok = report.relative_residual <= args.tol;
  std::printf("relative residual: %.6e (tolerance %.3e) -> %s\n", report.relative_residual,
              args.tol, ok ? "pass" : "fail");
  if (args.emit_json) {
    const json j{{"residual", report.relative_residual}, {"tolerance", args.tol}, {"pass", ok}};
    std::printf("%s\n", j.dump(2).c_str());
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// dict

struct DictArgs {
  std::size_t rows = 8;
  std::size_t rank = 3;
  std::size_t symbols = 256;
  std::uint64_t seed = 0;
  double margin = 1e-3;
  std::string out;
};

int run_dict(const DictArgs& args) {
  const Dictionary dict =
      build_dictionary(args.rows, args.rank, args.symbols, args.seed, args.margin);
  save_dictionary(args.out, dict);
  std::printf("dictionary: %zux%zu, rank %zu, margin %.3e -> %s\n", dict.a.rows(), dict.a.cols(),
              dict.rank, dict.decode_margin, args.out.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// keygen

struct KeygenArgs {
  std::string dict_path;
  std::size_t r = 0;
  std::size_t q = 0;
  bool two_sided = false;
  std::uint64_t seed = 0;
  std::size_t min_gap = 2;
  std::string out_secret;
  std::string out_public;
  bool emit_json = false;
};

int run_keygen(const KeygenArgs& args) {
  const Dictionary dict = load_dictionary(args.dict_path);
  KeygenOptions options;
  options.two_sided = args.two_sided;
  options.min_rank_gap = args.min_gap;
  if (args.q > 0) options.q = args.q;
  const auto [sk, pk] = keygen(dict, args.r, args.seed, options);
  save_secret_key(args.out_secret, sk);
  save_public_key(args.out_public, pk);

  const Tolerance tol{1e-12, 1e-10};
  const bool inverse_ok = approx_equal(sk.f * pk.encoder * sk.f, sk.f, tol);
  const bool idempotent_ok = is_idempotent(pk.coeff_projector, tol);
  const std::size_t rank_projector = rank_of(pk.coeff_projector).rank;
  if (pk.two_sided())
    std::printf("k = %zu, r = %zu, q = %zu\n", pk.k, pk.r, pk.q());
  else
    std::printf("k = %zu, r = %zu\n", pk.k, pk.r);
  std::printf("checks: generalized inverse %s, projector idempotent %s, rank %zu < r %s\n",
              inverse_ok ? "ok" : "FAILED", idempotent_ok ? "ok" : "FAILED", rank_projector,
              rank_projector < pk.r ? "ok" : "FAILED");
  std::printf("wrote %s and %s\n", args.out_secret.c_str(), args.out_public.c_str());
  if (args.emit_json) {
    const json j{{"k", pk.k},
                 {"r", pk.r},
                 {"two_sided", pk.two_sided()},
                 {"checks",
                  json{{"generalized_inverse", inverse_ok},
                       {"idempotent", idempotent_ok},
                       {"rank_deficient", rank_projector < pk.r}}},
                 {"secret", args.out_secret},
                 {"public", args.out_public}};
    std::printf("%s\n", j.dump(2).c_str());
  }
  if (!inverse_ok || !idempotent_ok || rank_projector >= pk.r) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// encrypt / decrypt

struct EncryptArgs {
  std::string public_path;
  std::string dict_path;
  std::string in_path;
  long column = -1;
  std::uint64_t seed = 0;
  std::string out;
  bool emit_json = false;
};

int run_encrypt(const EncryptArgs& args) {
  const PublicKey pk = load_public_key(args.public_path);
  const Dictionary dict = load_dictionary(args.dict_path);

  std::vector<std::size_t> symbols;
  if (args.column >= 0) {
    symbols.push_back(static_cast<std::size_t>(args.column));
  } else {
    if (args.in_path.empty()) throw IoError("encrypt: need --in or --column");
    std::ifstream in(args.in_path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + args.in_path + "' for reading");
    char byte;
    while (in.get(byte)) symbols.push_back(static_cast<unsigned char>(byte));
  }
  for (std::size_t symbol : symbols)
    if (symbol >= dict.symbol_count())
      throw ParameterError("encrypt: symbol " + std::to_string(symbol) +
                           " is not mapped by a dictionary of " +
                           std::to_string(dict.symbol_count()) + " columns");

  if (symbols.empty()) {
    save_ciphertext(args.out, CiphertextFile{pk.r, 0, {}, 0});
    std::printf("encrypted 0 symbols -> %s\n", args.out.c_str());
    if (args.emit_json)
      std::printf("%s\n", json{{"symbols", 0}, {"out", args.out}}.dump(2).c_str());
    return 0;
  }

  Rng stream(args.seed);
  Matrix payload(pk.r, symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    // fresh noise per symbol: repeated plaintext bytes encrypt differently
    const std::uint64_t symbol_seed = stream.spawn(i).next_u64();
    const Ciphertext ct = encrypt(pk, dict.symbol_column(symbols[i]), symbol_seed);
    for (std::size_t row = 0; row < pk.r; ++row) payload(row, i) = ct.payload(row, 0);
  }
  save_ciphertext(args.out, CiphertextFile::from_payload(payload, symbols.size()));
  std::printf("encrypted %zu symbols -> %s\n", symbols.size(), args.out.c_str());
  if (args.emit_json)
    std::printf("%s\n", json{{"symbols", symbols.size()}, {"out", args.out}}.dump(2).c_str());
  return 0;
}

struct DecryptArgs {
  std::string secret_path;
  std::string dict_path;
  std::string in_path;
  std::string out;
  bool emit_json = false;
};

int run_decrypt(const DecryptArgs& args) {
  const SecretKey sk = load_secret_key(args.secret_path);
  const Dictionary dict = load_dictionary(args.dict_path);
  const CiphertextFile ct = load_ciphertext(args.in_path);

  std::string text;
  if (!ct.empty()) {
    const Matrix decoded = decrypt(sk, Ciphertext{ct.payload(), 0});
    for (std::size_t col = 0; col < decoded.cols(); ++col) {
      const std::size_t symbol = decode_symbol(dict, column_of(decoded, col));
      text.push_back(static_cast<char>(static_cast<unsigned char>(symbol)));
    }
  }

  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw IoError("cannot open '" + args.out + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    std::printf("decrypted %zu symbols -> %s\n", text.size(), args.out.c_str());
  } else {
    std::printf("decrypted %zu symbols\n", text.size());
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (!text.empty()) std::printf("\n");
  }
  if (args.emit_json)
    std::printf("%s\n", json{{"symbols", text.size()}}.dump(2).c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// demo

struct DemoArgs {
  double tol = 1e-12;
  bool emit_json = false;
};

int run_demo(const DemoArgs& args) {
  const std::vector<GoldenCheck> checks = run_golden_suite(args.tol);
  std::size_t passed = 0;
  for (const GoldenCheck& check : checks) {
    std::printf("%s  %-34s max|err| = %.3e  %s\n", check.pass ? "PASS" : "FAIL",
                check.name.c_str(), check.max_abs_error, check.detail.c_str());
    if (check.pass) ++passed;
  }
  std::printf("%zu/%zu checks passed (tolerance %.3e)\n", passed, checks.size(), args.tol);
  if (args.emit_json) {
    json items = json::array();
    for (const GoldenCheck& check : checks)
      items.push_back(json{{"name", check.name},
                           {"pass", check.pass},
                           {"max_abs_error", check.max_abs_error}});
    const json j{{"tolerance", args.tol},
                 {"pass", passed == checks.size()},
                 {"items", items}};
    std::printf("%s\n", j.dump(2).c_str());
  }
  return passed == checks.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oblique - reduced-form factorizations, projector solvers, and a "
               "projector-based encryption demo"};
  app.require_subcommand(1);
  // --h is a real option below, so help is long-form only
  app.set_help_flag("--help", "print help");

  FactorizeArgs factorize_args;
  CLI::App* cmd_factorize = app.add_subcommand("factorize", "factor a CSV matrix into f g h");
  cmd_factorize->set_help_flag("--help", "print help");
  cmd_factorize->add_option("--input", factorize_args.input, "matrix CSV")->required();
  cmd_factorize->add_option("--method", factorize_args.method, "svd|qr|lu|cur|random")
      ->required();
  cmd_factorize->add_option("--rank", factorize_args.rank, "truncation rank (svd)");
  cmd_factorize->add_option("--cols", factorize_args.cols, "1-based column list (cur)");
  cmd_factorize->add_option("--rows", factorize_args.rows, "1-based row list (cur)");
  cmd_factorize->add_option("--r", factorize_args.r, "column-basis width (random)");
  cmd_factorize->add_option("--q", factorize_args.q, "row-basis width (random)");
  cmd_factorize->add_option("--seed", factorize_args.seed, "random seed");
  cmd_factorize->add_option("--out-prefix", factorize_args.out_prefix,
                            "prefix for <p>_f.csv, <p>_g.csv, <p>_h.csv");
  cmd_factorize->add_option("--tol", factorize_args.tol, "residual tolerance");
  cmd_factorize->add_flag("--json", factorize_args.emit_json, "emit a JSON report");

  SolveArgs solve_args;
  CLI::App* cmd_solve = app.add_subcommand("solve", "solve f g h = a for the middle factor");
  cmd_solve->set_help_flag("--help", "print help");
  cmd_solve->add_option("--a", solve_args.a_path, "target CSV")->required();
  cmd_solve->add_option("--f", solve_args.f_path, "column basis CSV")->required();
  cmd_solve->add_option("--h", solve_args.h_path, "row basis CSV")->required();
  cmd_solve->add_option("--b", solve_args.b_path, "column sketch CSV");
  cmd_solve->add_option("--d", solve_args.d_path, "row sketch CSV");
  cmd_solve->add_option("--w", solve_args.w_path, "free-term CSV");
  cmd_solve->add_option("--out", solve_args.out, "output CSV for g");
  cmd_solve->add_option("--seed", solve_args.seed, "seed for default sketches");
  cmd_solve->add_option("--tol", solve_args.tol, "residual tolerance");
  cmd_solve->add_flag("--json", solve_args.emit_json, "emit a JSON report");

  VerifyArgs verify_args;
  CLI::App* cmd_verify = app.add_subcommand("verify", "check f g h against a");
  cmd_verify->set_help_flag("--help", "print help");
  cmd_verify->add_option("--a", verify_args.a_path, "target CSV")->required();
  cmd_verify->add_option("--f", verify_args.f_path, "f CSV")->required();
  cmd_verify->add_option("--g", verify_args.g_path, "g CSV")->required();
  cmd_verify->add_option("--h", verify_args.h_path, "h CSV")->required();
  cmd_verify->add_option("--tol", verify_args.tol, "residual tolerance");
  cmd_verify->add_flag("--json", verify_args.emit_json, "emit a JSON report");

  DictArgs dict_args;
  CLI::App* cmd_dict = app.add_subcommand("dict", "generate a message dictionary");
  cmd_dict->set_help_flag("--help", "print help");
  cmd_dict->add_option("--rows", dict_args.rows, "vector length m");
  cmd_dict->add_option("--rank", dict_args.rank, "dictionary rank k");
  cmd_dict->add_option("--symbols", dict_args.symbols, "alphabet size n");
  cmd_dict->add_option("--seed", dict_args.seed, "random seed");
  cmd_dict->add_option("--margin", dict_args.margin, "minimum column separation");
  cmd_dict->add_option("--out", dict_args.out, "output CSV path")->required();

  KeygenArgs keygen_args;
  CLI::App* cmd_keygen = app.add_subcommand("keygen", "generate a key pair over a dictionary");
  cmd_keygen->set_help_flag("--help", "print help");
  cmd_keygen->add_option("--dict", keygen_args.dict_path, "dictionary CSV")->required();
  cmd_keygen->add_option("--r", keygen_args.r, "secret basis width")->required();
  cmd_keygen->add_option("--q", keygen_args.q, "row basis width (two-sided)");
  cmd_keygen->add_flag("--two-sided", keygen_args.two_sided, "also build the row-space pair");
  cmd_keygen->add_option("--seed", keygen_args.seed, "random seed");
  cmd_keygen->add_option("--min-gap", keygen_args.min_gap, "required r - k gap (default 2)");
  cmd_keygen->add_option("--out-secret", keygen_args.out_secret, "secret key JSON")->required();
  cmd_keygen->add_option("--out-public", keygen_args.out_public, "public key JSON")->required();
  cmd_keygen->add_flag("--json", keygen_args.emit_json, "emit a JSON report");

  EncryptArgs encrypt_args;
  CLI::App* cmd_encrypt = app.add_subcommand("encrypt", "encrypt text or a dictionary column");
  cmd_encrypt->set_help_flag("--help", "print help");
  cmd_encrypt->add_option("--public", encrypt_args.public_path, "public key JSON")->required();
  cmd_encrypt->add_option("--dict", encrypt_args.dict_path, "dictionary CSV")->required();
  CLI::Option* in_opt = cmd_encrypt->add_option("--in", encrypt_args.in_path, "message file");
  CLI::Option* col_opt =
      cmd_encrypt->add_option("--column", encrypt_args.column, "single symbol index (0-based)");
  in_opt->excludes(col_opt);
  cmd_encrypt->add_option("--seed", encrypt_args.seed, "noise seed");
  cmd_encrypt->add_option("--out", encrypt_args.out, "ciphertext JSON")->required();
  cmd_encrypt->add_flag("--json", encrypt_args.emit_json, "emit a JSON report");

  DecryptArgs decrypt_args;
  CLI::App* cmd_decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext back to text");
  cmd_decrypt->set_help_flag("--help", "print help");
  cmd_decrypt->add_option("--secret", decrypt_args.secret_path, "secret key JSON")->required();
  cmd_decrypt->add_option("--dict", decrypt_args.dict_path, "dictionary CSV")->required();
  cmd_decrypt->add_option("--in", decrypt_args.in_path, "ciphertext JSON")->required();
  cmd_decrypt->add_option("--out", decrypt_args.out, "output file (default: stdout)");
  cmd_decrypt->add_flag("--json", decrypt_args.emit_json, "emit a JSON report");

  DemoArgs demo_args;
  CLI::App* cmd_demo = app.add_subcommand("demo", "replay the worked-example suite");
  cmd_demo->set_help_flag("--help", "print help");
  cmd_demo->add_option("--tol", demo_args.tol, "absolute tolerance per entry");
  cmd_demo->add_flag("--json", demo_args.emit_json, "emit a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_factorize)) return run_factorize(factorize_args);
    if (app.got_subcommand(cmd_solve)) return run_solve(solve_args);
    if (app.got_subcommand(cmd_verify)) return run_verify(verify_args);
    if (app.got_subcommand(cmd_dict)) return run_dict(dict_args);
    if (app.got_subcommand(cmd_keygen)) return run_keygen(keygen_args);
    if (app.got_subcommand(cmd_encrypt)) return run_encrypt(encrypt_args);
    if (app.got_subcommand(cmd_decrypt)) return run_decrypt(decrypt_args);
    if (app.got_subcommand(cmd_demo)) return run_demo(demo_args);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 2;
}
