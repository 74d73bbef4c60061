#include "pcamix/recode.hpp"

#include "pcamix/error.hpp"

#include <cmath>
#include <unordered_map>

namespace pcamix {

Vector standardize(std::span<const double> values) {
  const auto n = static_cast<Index>(values.size());
  if (n < 2) throw Error(ErrorCode::TooFewRows, "standardize needs at least two values");

  Eigen::Map<const Vector> x(values.data(), n);
  const double mean = x.mean();
  Vector centered = x.array() - mean;
  const double variance = centered.squaredNorm() / static_cast<double>(n);
  if (!(variance > 0.0)) throw Error(ErrorCode::ZeroVariance, "values are constant");
  return centered / std::sqrt(variance);
}

Indicator indicator_matrix(std::span<const std::string> labels) {
  Indicator out;
  out.codes.reserve(labels.size());
  std::unordered_map<std::string, Index> position;
  for (const auto& label : labels) {
    auto [it, inserted] = position.try_emplace(label, static_cast<Index>(out.labels.size()));
    if (inserted) {
      out.labels.push_back(label);
      out.counts.push_back(0);
    }
    ++out.counts[static_cast<std::size_t>(it->second)];
    out.codes.push_back(it->second);
  }
  if (out.labels.size() < 2)
    throw Error(ErrorCode::SingleCategory, "need at least two distinct categories");

  out.G = Matrix::Zero(static_cast<Index>(labels.size()), static_cast<Index>(out.labels.size()));
  for (Index i = 0; i < out.G.rows(); ++i) out.G(i, out.codes[static_cast<std::size_t>(i)]) = 1.0;
  return out;
}

Index CategoryMap::size() const noexcept {
  Index m = 0;
  for (const auto& b : blocks) m += static_cast<Index>(b.labels.size());
  return m;
}

Vector CategoryMap::frequencies() const {
  Vector pi(size());
  Index s = 0;
  for (const auto& b : blocks)
    for (Index count : b.counts) pi(s++) = static_cast<double>(count) / static_cast<double>(n);
  return pi;
}

RecodedMatrix recode(const MixedTable& table) {
  const auto n = static_cast<Index>(table.rows());
  RecodedMatrix out;
  out.p1 = static_cast<Index>(table.quantitative_count());
  out.p2 = static_cast<Index>(table.qualitative_count());
  out.categories.n = n;

  std::vector<Indicator> indicators;
  for (const auto& column : table.columns()) {
    out.variables.push_back({column.name, column.kind()});
    if (column.is_quantitative()) continue;
    try {
      indicators.push_back(indicator_matrix(column.labels()));
    } catch (const Error& e) {
      throw Error(e.code(), "qualitative column has a single category", column.name);
    }
    const auto& ind = indicators.back();
    out.categories.blocks.push_back({column.name, ind.labels, ind.counts, ind.codes});
  }

  const Index m = out.categories.size();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  out.Z.resize(n, out.p1 + m);
  out.index_sets.resize(table.cols());

  Index quant_col = 0;
  Index cat_col = out.p1;
  std::size_t qual = 0;
  for (std::size_t j = 0; j < table.cols(); ++j) {
    const auto& column = table.column(j);
    if (column.is_quantitative()) {
      Vector z;
      try {
        z = standardize(column.values());
      } catch (const Error& e) {
        throw Error(e.code(), "cannot standardize", column.name);
      }
      out.Z.col(quant_col) = z * inv_sqrt_n;
      out.index_sets[j] = {quant_col++};
      continue;
    }
    // Column s of Z2 = J G D^{-1/2} with D holding relative frequencies:
    // (g_s - pi_s) / sqrt(pi_s).
    const auto& ind = indicators[qual++];
    for (std::size_t s = 0; s < ind.labels.size(); ++s) {
      const double pi = static_cast<double>(ind.counts[s]) / static_cast<double>(n);
      const auto col = static_cast<Index>(s);
      out.Z.col(cat_col) = (ind.G.col(col).array() - pi) * (inv_sqrt_n / std::sqrt(pi));
      out.index_sets[j].push_back(cat_col++);
    }
  }
  return out;
}

}  // namespace pcamix
