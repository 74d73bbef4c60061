#pragma once

#include "pcamix/types.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace pcamix {

struct QuantitativeValues {
  std::vector<double> values;
};

struct QualitativeLabels {
  std::vector<std::string> labels;
};

struct Column {
  std::string name;
  std::variant<QuantitativeValues, QualitativeLabels> data;

  static Column quantitative(std::string name, std::vector<double> values);
  static Column qualitative(std::string name, std::vector<std::string> labels);

  VariableKind kind() const noexcept;
  std::size_t size() const noexcept;
  bool is_quantitative() const noexcept { return kind() == VariableKind::Quantitative; }

  /// Precondition: is_quantitative().
  const std::vector<double>& values() const;
  /// Precondition: !is_quantitative().
  const std::vector<std::string>& labels() const;
};

/// A validated table of mixed columns. Construction throws pcamix::Error when
/// the table is empty, ragged, has duplicate names, missing or non-finite
/// cells, a constant quantitative column, or a single-category qualitative one.
class MixedTable {
 public:
  explicit MixedTable(std::vector<Column> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::size_t quantitative_count() const noexcept { return p1_; }
  std::size_t qualitative_count() const noexcept { return columns_.size() - p1_; }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t j) const { return columns_.at(j); }

  /// Table with rows reordered so that row i of the result is row order[i] of this one.
  MixedTable permuted_rows(const std::vector<std::size_t>& order) const;

 private:
  std::vector<Column> columns_;
  std::size_t rows_ = 0;
  std::size_t p1_ = 0;
};

}  // namespace pcamix
