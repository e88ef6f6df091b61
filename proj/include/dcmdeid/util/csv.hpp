/**
 * @file csv.hpp
 * @brief Minimal RFC-4180 reader/writer (comma, double-quote escaping, LF output)
 */
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dcmdeid::util {

using csv_row = std::vector<std::string>;

/// Parses the whole text. Accepts LF or CRLF line ends; quoted fields may span
/// lines. A trailing newline does not produce an empty row.
/// Throws std::runtime_error on an unterminated quote.
[[nodiscard]] std::vector<csv_row> parse_csv(std::string_view text);

[[nodiscard]] std::vector<csv_row> read_csv(const std::filesystem::path& path);

/// Quotes only when the field holds a comma, quote, CR or LF.
[[nodiscard]] std::string csv_escape(std::string_view field);

[[nodiscard]] std::string csv_line(const csv_row& row);

void write_csv(const std::filesystem::path& path, const std::vector<csv_row>& rows);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace dcmdeid::util
