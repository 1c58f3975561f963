#include "oblique/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace oblique {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view token, std::size_t line_no) {
  token = trim(token);
  if (token.empty())
    throw ParseError("csv: empty field on line " + std::to_string(line_no));
  double value = 0.0;
  const auto* begin = token.data();
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("csv: bad number '" + std::string(token) + "' on line " +
                     std::to_string(line_no));
  return value;
}

}  // namespace

Matrix parse_csv(const std::string& text) {
  std::vector<double> data;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::size_t row_cols = 0;
    std::string_view rest(line);
    while (true) {
      const std::size_t comma = rest.find(',');
      const std::string_view token = rest.substr(0, comma);
      data.push_back(parse_number(token, line_no));
      ++row_cols;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = row_cols;
    } else if (row_cols != cols) {
      throw ParseError("csv: ragged row on line " + std::to_string(line_no) + " (" +
                       std::to_string(row_cols) + " fields, expected " + std::to_string(cols) +
                       ")");
    }
    ++rows;
  }
  if (rows == 0) throw ParseError("csv: no data rows");
  try {
    return Matrix(rows, cols, std::move(data));
  } catch (const Error& e) {
    throw ParseError(std::string("csv: ") + e.what());
  }
}

std::string to_csv(const Matrix& m) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, m(i, j));
      (void)ec;  // 32 chars always suffice for shortest double form
      out.append(buf, ptr);
      out.push_back(j + 1 == m.cols() ? '\n' : ',');
    }
  }
  return out;
}

Matrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_csv(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_csv(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << to_csv(m);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace oblique
