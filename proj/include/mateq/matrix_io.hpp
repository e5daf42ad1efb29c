#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mateq/matrix.hpp"

namespace mateq::io {

/// Comma-separated values, one matrix row per line. Blank lines are ignored.
Matrix parse_csv(std::string_view text);

/// Several CSV matrices separated by one or more blank lines.
std::vector<Matrix> parse_csv_blocks(std::string_view text);

/// {"rows": m, "cols": n, "data": [row-major entries]}
Matrix from_json(const nlohmann::json& j);
nlohmann::json to_json(const Matrix& m);

/// Reads JSON when the first non-blank character is '{', CSV otherwise.
Matrix read_matrix_file(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_exact(double v);
/// `digits` significant digits, %g style.
std::string format_sig(double v, int digits = 6);

std::string to_csv(const Matrix& m, int digits = 17);

}  // namespace mateq::io
