#include "pcamix/mixed_table.hpp"

#include "pcamix/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

namespace pcamix {

Column Column::quantitative(std::string name, std::vector<double> values) {
  return Column{std::move(name), QuantitativeValues{std::move(values)}};
}

Column Column::qualitative(std::string name, std::vector<std::string> labels) {
  return Column{std::move(name), QualitativeLabels{std::move(labels)}};
}

VariableKind Column::kind() const noexcept {
  return std::holds_alternative<QuantitativeValues>(data) ? VariableKind::Quantitative
                                                           : VariableKind::Qualitative;
}

std::size_t Column::size() const noexcept {
  return std::visit(
      [](const auto& d) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, QuantitativeValues>)
          return d.values.size();
        else
          return d.labels.size();
      },
      data);
}

const std::vector<double>& Column::values() const {
  return std::get<QuantitativeValues>(data).values;
}

const std::vector<std::string>& Column::labels() const {
  return std::get<QualitativeLabels>(data).labels;
}

namespace {

void validate_quantitative(const Column& c) {
  const auto& v = c.values();
  for (double x : v) {
    if (std::isnan(x)) throw Error(ErrorCode::MissingValue, "missing value", c.name);
    if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite value", c.name);
  }
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (*lo == *hi) throw Error(ErrorCode::ZeroVariance, "column is constant", c.name);
}

void validate_qualitative(const Column& c) {
  std::unordered_set<std::string> seen;
  for (const auto& label : c.labels()) {
    if (label.empty()) throw Error(ErrorCode::MissingValue, "missing category label", c.name);
    seen.insert(label);
  }
  if (seen.size() < 2)
    throw Error(ErrorCode::SingleCategory, "qualitative column has a single category", c.name);
}

}  // namespace

MixedTable::MixedTable(std::vector<Column> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw Error(ErrorCode::EmptyTable, "table has no columns");
  rows_ = columns_.front().size();

  std::unordered_set<std::string> names;
  for (const auto& c : columns_) {
    if (!names.insert(c.name).second)
      throw Error(ErrorCode::DuplicateName, "duplicate column name", c.name);
    if (c.size() != rows_)
      throw Error(ErrorCode::RaggedColumns,
                  "expected " + std::to_string(rows_) + " rows, got " + std::to_string(c.size()),
                  c.name);
  }
  if (rows_ < 2)
    throw Error(ErrorCode::TooFewRows, "at least two observations are required");

  for (const auto& c : columns_) {
    if (c.is_quantitative()) {
      validate_quantitative(c);
      ++p1_;
    } else {
      validate_qualitative(c);
    }
  }
}

MixedTable MixedTable::permuted_rows(const std::vector<std::size_t>& order) const {
  if (order.size() != rows_)
    throw Error(ErrorCode::InvalidArgument, "row permutation has the wrong length");
  std::vector<Column> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) {
    if (c.is_quantitative()) {
      std::vector<double> v(rows_);
      for (std::size_t i = 0; i < rows_; ++i) v[i] = c.values().at(order[i]);
      out.push_back(Column::quantitative(c.name, std::move(v)));
    } else {
      std::vector<std::string> v(rows_);
      for (std::size_t i = 0; i < rows_; ++i) v[i] = c.labels().at(order[i]);
      out.push_back(Column::qualitative(c.name, std::move(v)));
    }
  }
  return MixedTable(std::move(out));
}

}  // namespace pcamix
