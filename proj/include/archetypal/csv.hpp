#pragma once

#include <filesystem>
#include <string>

#include "archetypal/types.hpp"

namespace archetypal {

/// Comma-separated, one matrix row per line, optional leading '#' header
/// line. Throws ParseError (with the 1-based line number) on ragged or
/// non-numeric rows and Error when the file cannot be opened.
Matrix load_matrix_csv(const std::filesystem::path& path);

/// Writes 17 significant digits so load(save(M)) == M bitwise.
void save_matrix_csv(const Matrix& m, const std::filesystem::path& path,
                     const std::string& header = {});

Matrix parse_matrix_csv(const std::string& text);
std::string format_matrix_csv(const Matrix& m, const std::string& header = {});

}  // namespace archetypal
