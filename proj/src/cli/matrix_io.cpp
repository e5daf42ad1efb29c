#include "mateq/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mateq/error.hpp"

namespace mateq::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::size_t line) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw InvalidParameter("malformed number '" + std::string(token) + "' on line " + std::to_string(line));
    }
    return v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidParameter("matrix has no rows");
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw InvalidParameter("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                                   " entries, expected " + std::to_string(cols));
        }
        data.insert(data.end(), rows[i].begin(), rows[i].end());
    }
    return {rows.size(), cols, std::move(data)};
}

std::vector<double> parse_row(std::string_view line, std::size_t line_no) {
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        row.push_back(parse_number(line.substr(start, comma == std::string_view::npos ? comma : comma - start),
                                   line_no));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return row;
}

}  // namespace

Matrix parse_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        if (trim(line).empty()) continue;
        rows.push_back(parse_row(line, line_no));
    }
    return rows_to_matrix(rows);
}

std::vector<Matrix> parse_csv_blocks(std::string_view text) {
    std::vector<Matrix> blocks;
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_no;
        if (trim(line).empty()) {
            if (!rows.empty()) blocks.push_back(rows_to_matrix(rows));
            rows.clear();
            continue;
        }
        rows.push_back(parse_row(line, line_no));
    }
    if (!rows.empty()) blocks.push_back(rows_to_matrix(rows));
    if (blocks.empty()) throw InvalidParameter("no matrices found");
    return blocks;
}

Matrix from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw InvalidParameter(R"(matrix JSON must have "rows", "cols" and "data")");
    }
    const auto& rows = j.at("rows");
    const auto& cols = j.at("cols");
    const auto& data = j.at("data");
    if (!rows.is_number_unsigned() || !cols.is_number_unsigned() || !data.is_array()) {
        throw InvalidParameter("matrix JSON has wrongly typed fields");
    }
    std::vector<double> values;
    values.reserve(data.size());
    for (const auto& v : data) {
        if (!v.is_number()) throw InvalidParameter("matrix JSON data must be numbers");
        values.push_back(v.get<double>());
    }
    return {rows.get<std::size_t>(), cols.get<std::size_t>(), std::move(values)};
}

nlohmann::json to_json(const Matrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Matrix read_matrix_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw InvalidParameter(std::string("malformed matrix JSON: ") + e.what());
        }
        return from_json(j);
    }
    return parse_csv(text);
}

std::string format_exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

std::string format_sig(double v, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    return {buf, res.ptr};
}

std::string to_csv(const Matrix& m, int digits) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += digits >= 17 ? format_exact(m(i, j)) : format_sig(m(i, j), digits);
        }
        out += '\n';
    }
    return out;
}

}  // namespace mateq::io
