#pragma once

#include <filesystem>
#include <string>

#include "oblique/matrix.hpp"

namespace oblique {

/// Matrix CSV format: one row per line, comma-separated decimal literals,
/// no header. Blank lines are ignored; ragged rows are rejected.
Matrix parse_csv(const std::string& text);

/// Shortest decimal representation that round-trips 64-bit floats.
std::string to_csv(const Matrix& m);

Matrix read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const Matrix& m);

}  // namespace oblique
