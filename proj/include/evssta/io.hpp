#ifndef EVSSTA_IO_HPP
#define EVSSTA_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "evssta/montecarlo.hpp"
#include "evssta/timing_graph.hpp"

namespace evssta::io {

// 17 significant digits (%.17g), which always round-trips.
std::string format_double(double x);

// Writes a header row and equally long numeric columns.
void write_columns_csv(const std::filesystem::path& path, std::span<const std::string> header,
                       std::span<const std::vector<double>> columns);

// Row-major matrix with a header of column indices.
void write_matrix_csv(const std::filesystem::path& path, std::size_t n,
                      std::span<const double> matrix);

// Reads a square matrix written as whitespace- or comma-separated rows.
// Lines starting with '#' and a non-numeric header row are skipped.
std::vector<double> read_matrix(const std::filesystem::path& path, std::size_t& n);

void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

std::string read_text(const std::filesystem::path& path);

// Stats and histogram of a Monte Carlo run.
nlohmann::json stats_json(const mc::McResult& r);

}  // namespace evssta::io

#endif  // EVSSTA_IO_HPP
