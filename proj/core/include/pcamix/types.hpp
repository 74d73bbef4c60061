#pragma once

#include <Eigen/Dense>

#include <vector>

namespace pcamix {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Row indices of the loading matrix owned by each variable (I_j). Entry j
/// lists the rows for variable j, in table column order.
using IndexSets = std::vector<std::vector<Index>>;

enum class VariableKind { Quantitative, Qualitative };

}  // namespace pcamix
