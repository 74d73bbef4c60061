#pragma once

#include "pcamix/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pcamix::cli {

/// Comma-separated text with a mandatory header row. Fields may be wrapped in
/// double quotes ("" escapes a quote inside). Lines starting with '#' are skipped.
struct CsvDocument {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Throws std::runtime_error on an empty document, an unterminated quote or a
/// row whose width differs from the header.
CsvDocument parse_csv(std::istream& in);
CsvDocument read_csv(const std::filesystem::path& path);

/// Quotes a field when it contains a comma, a quote or a line break.
std::string csv_field(const std::string& value);

/// Writes `header` then one row per matrix row, prefixed by the label columns
/// of `labels[i]` when labels are given.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& labels, const Matrix& values);

}  // namespace pcamix::cli
