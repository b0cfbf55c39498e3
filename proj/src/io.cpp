#include "evssta/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "evssta/errors.hpp"

namespace evssta::io {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

// Numbers on one line, split at commas and whitespace. Empty when any field
// is not a number.
std::optional<std::vector<double>> parse_row(std::string_view line) {
    std::vector<double> values;
    std::size_t pos = 0;
    const auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
    while (pos < line.size()) {
        while (pos < line.size() && is_sep(line[pos])) ++pos;
        const std::size_t start = pos;
        while (pos < line.size() && !is_sep(line[pos])) ++pos;
        if (pos == start) break;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + pos, v);
        if (ec != std::errc() || ptr != line.data() + pos) {
            return std::nullopt;
        }
        values.push_back(v);
    }
    return values;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

void write_columns_csv(const std::filesystem::path& path, std::span<const std::string> header,
                       std::span<const std::vector<double>> columns) {
    if (header.size() != columns.size()) {
        throw DimensionMismatch("write_columns_csv: header and column counts differ");
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != rows) {
            throw DimensionMismatch("write_columns_csv: columns must have equal length");
        }
    }
    auto out = open_for_write(path);
    for (std::size_t k = 0; k < header.size(); ++k) {
        out << (k ? "," : "") << header[k];
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < columns.size(); ++k) {
            out << (k ? "," : "") << format_double(columns[k][r]);
        }
        out << '\n';
    }
}

void write_matrix_csv(const std::filesystem::path& path, std::size_t n, std::span<const double> matrix) {
    if (matrix.size() != n * n) {
        throw DimensionMismatch("write_matrix_csv: matrix is not n x n");
    }
    auto out = open_for_write(path);
    for (std::size_t j = 0; j < n; ++j) {
        out << (j ? "," : "") << "p" << j;
    }
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out << (j ? "," : "") << format_double(matrix[i * n + j]);
        }
        out << '\n';
    }
}

std::vector<double> read_matrix(const std::filesystem::path& path, std::size_t& n) {
    std::istringstream in(read_text(path));
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        auto row = parse_row(line);
        if (!row) {
            if (rows.empty()) {
                continue;  // header
            }
            throw ParseError("non-numeric matrix entry", line_no);
        }
        rows.push_back(std::move(*row));
        if (rows.back().size() != rows.front().size()) {
            throw ParseError("ragged matrix row", line_no);
        }
    }
    if (rows.empty()) {
        throw EmptyInput("matrix file " + path.string() + " has no rows");
    }
    if (rows.size() != rows.front().size()) {
        throw DimensionMismatch("matrix in " + path.string() + " is not square");
    }
    n = rows.size();
    std::vector<double> data;
    data.reserve(n * n);
    for (const auto& r : rows) {
        data.insert(data.end(), r.begin(), r.end());
    }
    return data;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    auto out = open_for_write(path);
    out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json stats_json(const mc::McResult& r) {
    nlohmann::json hist;
    hist["edges"] = r.histogram.edges;
    hist["counts"] = r.histogram.counts;
    return {
        {"reps", r.samples.size()},
        {"mean", r.mean},
        {"std", r.std},
        {"standard_error", r.standard_error()},
        {"min", r.ecdf.empty() ? 0.0 : r.ecdf.front()},
        {"max", r.ecdf.empty() ? 0.0 : r.ecdf.back()},
        {"histogram", hist},
    };
}

}  // namespace evssta::io
