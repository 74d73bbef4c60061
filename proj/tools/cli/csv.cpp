#include "csv.hpp"

#include "pcamix/format.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pcamix::cli {

namespace {

std::vector<std::string> split_record(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quote on line " + std::to_string(line_no));
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

CsvDocument parse_csv(std::istream& in) {
  CsvDocument doc;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_record(line, line_no);
    if (!have_header) {
      doc.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != doc.header.size())
      throw std::runtime_error("line " + std::to_string(line_no) + " has " +
                               std::to_string(fields.size()) + " fields, header has " +
                               std::to_string(doc.header.size()));
    doc.rows.push_back(std::move(fields));
  }
  if (!have_header) throw std::runtime_error("no header row");
  return doc;
}

CsvDocument read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_csv(in);
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& labels, const Matrix& values) {
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << csv_field(header[c]);
  out << '\n';
  for (Index i = 0; i < values.rows(); ++i) {
    bool first = true;
    if (!labels.empty()) {
      for (const auto& label : labels.at(static_cast<std::size_t>(i))) {
        out << (first ? "" : ",") << csv_field(label);
        first = false;
      }
    }
    for (Index j = 0; j < values.cols(); ++j) {
      out << (first ? "" : ",") << format_number(values(i, j));
      first = false;
    }
    out << '\n';
  }
}

}  // namespace pcamix::cli
