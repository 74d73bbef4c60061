#pragma once

#include "pcamix/mixed_table.hpp"
#include "pcamix/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace pcamix {

/// Centers and scales to unit population variance (divisor n), so that
/// z'z / n == 1. Throws TooFewRows for n < 2 and ZeroVariance for a constant input.
Vector standardize(std::span<const double> values);

/// One-hot coding of a qualitative column. Categories are ordered by first
/// appearance in the data.
struct Indicator {
  Matrix G;                         ///< n x m_j, entries 0 or 1
  std::vector<std::string> labels;  ///< category labels, column order of G
  std::vector<Index> counts;        ///< n_s per category
  std::vector<Index> codes;         ///< category index of each row
};

/// Throws SingleCategory when fewer than two distinct labels are present.
Indicator indicator_matrix(std::span<const std::string> labels);

struct CategoryBlock {
  std::string variable;
  std::vector<std::string> labels;
  std::vector<Index> counts;
  std::vector<Index> codes;  ///< category (within this block) of each observation
};

/// Category metadata of all qualitative variables, in table order.
struct CategoryMap {
  Index n = 0;
  std::vector<CategoryBlock> blocks;

  /// Total number of categories m.
  Index size() const noexcept;
  /// Relative frequencies pi_s = n_s / n of all m categories, block by block.
  Vector frequencies() const;
};

struct Variable {
  std::string name;
  VariableKind kind;
};

/// The n x (p1 + m) matrix Z = (Z1 | Z2) / sqrt(n), with the quantitative block
/// first and one column per category after it.
struct RecodedMatrix {
  Matrix Z;
  IndexSets index_sets;             ///< rows of Z' (columns of Z) per variable, table order
  CategoryMap categories;
  std::vector<Variable> variables;  ///< table order
  Index p1 = 0;
  Index p2 = 0;

  Index rows() const noexcept { return Z.rows(); }
  Index category_count() const noexcept { return categories.size(); }
  Index variable_count() const noexcept { return p1 + p2; }
  /// p1 + m - p2, the squared Frobenius norm of Z.
  double total_inertia() const noexcept {
    return static_cast<double>(p1 + category_count() - p2);
  }
};

RecodedMatrix recode(const MixedTable& table);

}  // namespace pcamix
