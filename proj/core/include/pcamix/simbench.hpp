#pragma once

#include "pcamix/mixed_table.hpp"
#include "pcamix/types.hpp"
#include "pcamix/varimax.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pcamix::sim {

inline constexpr std::string_view kGenerator = "std::mt19937_64";

struct SimConfig {
  Index n = 100;
  Index p = 10;  ///< even; half quantitative, half qualitative
  std::uint64_t seed = 1;
  Index reps = 20;
};

/// Draws n rows from N(0, Q'Q) with Q a p x p matrix of U[0.2, 0.4] entries,
/// then cuts the last p/2 columns into three equal-count categories
/// ("low", "mid", "high") by rank, ties broken by row order.
/// Throws InvalidArgument unless p is even and positive and n >= 4.
MixedTable simulate(const SimConfig& config);

/// Seed of repetition `rep` of cell (n, p) derived from a base seed.
std::uint64_t cell_seed(std::uint64_t base, Index n, Index p, Index rep);

struct BenchOptions {
  std::vector<Index> ns{50, 100, 200};
  std::vector<Index> ps{10, 50};
  Index reps = 20;
  std::uint64_t seed = 1;
  Index k = 2;
  RotationOptions rotation{};
  /// Reformulation-path cells needing more than this for the p + 1 n x n
  /// matrices are recorded as memory errors instead of being run.
  std::size_t max_quantification_bytes = std::size_t{4} << 30;
  /// Maximum allowed difference between the rotated squared loadings of the two paths.
  double agreement_tol = 1e-8;
};

struct BenchCell {
  Index n = 0;
  Index p = 0;
  std::optional<double> svd_median;            ///< seconds
  std::optional<double> reformulation_median;  ///< seconds
  std::string svd_error;
  std::string reformulation_error;
  double max_discrepancy = 0.0;  ///< largest |C_rot(svd) - C_rot(reformulation)| seen

  std::optional<double> ratio() const;
};

struct BenchReport {
  std::vector<Index> ns;
  std::vector<Index> ps;
  std::vector<BenchCell> cells;  ///< row-major over (ns, ps)
  Index reps = 0;
  std::uint64_t seed = 0;
  std::string generator{kGenerator};

  const BenchCell& cell(Index n, Index p) const;
};

/// Wall time of one end-to-end fit + rotation per path and repetition.
/// Throws std::runtime_error if the two paths ever disagree beyond
/// agreement_tol; timings are only reported for agreeing paths.
BenchReport bench(const BenchOptions& options);

double median(std::vector<double> values);

/// Rows n, one "svd" and one "reformulation" row per n, columns p=...
void write_median_csv(const BenchReport& report, std::ostream& out);
/// Rows n, columns p=..., reformulation / svd.
void write_ratio_csv(const BenchReport& report, std::ostream& out);
/// Aligned text rendering of both tables.
void write_text_report(const BenchReport& report, std::ostream& out);

}  // namespace pcamix::sim
