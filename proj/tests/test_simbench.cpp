#include "pcamix/error.hpp"
#include "pcamix/recode.hpp"
#include "pcamix/simbench.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace pcamix;

namespace {

bool same_table(const MixedTable& x, const MixedTable& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const auto& a = x.column(j);
    const auto& b = y.column(j);
    if (a.name != b.name || a.kind() != b.kind()) return false;
    if (a.is_quantitative() ? a.values() != b.values() : a.labels() != b.labels()) return false;
  }
  return true;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Simulate, Deterministic) {
  const sim::SimConfig cfg{50, 10, 7, 1};
  EXPECT_TRUE(same_table(sim::simulate(cfg), sim::simulate(cfg)));
  sim::SimConfig other = cfg;
  other.seed = 8;
  EXPECT_FALSE(same_table(sim::simulate(cfg), sim::simulate(other)));
}

TEST(Simulate, LayoutAndTerciles) {
  for (Index n : {4, 50, 61, 100, 200}) {
    for (Index p : {2, 10, 50}) {
      const MixedTable t = sim::simulate({n, p, static_cast<std::uint64_t>(n * 1000 + p), 1});
      EXPECT_EQ(static_cast<Index>(t.rows()), n);
      EXPECT_EQ(static_cast<Index>(t.quantitative_count()), p / 2);
      EXPECT_EQ(static_cast<Index>(t.qualitative_count()), p / 2);
      for (Index j = 0; j < p / 2; ++j) EXPECT_TRUE(t.column(static_cast<std::size_t>(j)).is_quantitative());
      for (Index j = p / 2; j < p; ++j) {
        const auto& col = t.column(static_cast<std::size_t>(j));
        ASSERT_FALSE(col.is_quantitative());
        std::map<std::string, Index> counts;
        for (const auto& l : col.labels()) ++counts[l];
        EXPECT_EQ(counts.size(), 3u);
        for (const auto& [label, c] : counts) {
          EXPECT_LE(std::abs(3 * c - n), 3) << label;
        }
      }
      EXPECT_EQ(recode(t).category_count(), 3 * p / 2);
    }
  }
}

TEST(Simulate, TercilesFollowValueOrder) {
  const MixedTable t = sim::simulate({300, 4, 3, 1});
  const auto& x = t.column(0).values();
  const auto& g = t.column(2).labels();
  std::map<std::string, std::pair<double, int>> acc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc[g[i]].first += x[i];
    acc[g[i]].second += 1;
  }
  const double low = acc["low"].first / acc["low"].second;
  const double mid = acc["mid"].first / acc["mid"].second;
  const double high = acc["high"].first / acc["high"].second;
  // Q > 0 entrywise, so latent columns are positively correlated.
  EXPECT_LT(low, mid);
  EXPECT_LT(mid, high);
}

TEST(Simulate, PositiveCorrelations) {
  const MixedTable t = sim::simulate({2000, 6, 11, 1});
  const Matrix Z = recode(t).Z;
  for (Index a = 0; a < 3; ++a)
    for (Index b = a + 1; b < 3; ++b) EXPECT_GT(Z.col(a).dot(Z.col(b)), 0.5);
}

TEST(Simulate, InvalidConfigs) {
  EXPECT_THROW(sim::simulate({50, 9, 1, 1}), Error);
  EXPECT_THROW(sim::simulate({50, 0, 1, 1}), Error);
  EXPECT_THROW(sim::simulate({3, 10, 1, 1}), Error);
}

TEST(CellSeed, DistinctAcrossCells) {
  std::set<std::uint64_t> seen;
  for (Index n : {50, 100, 200})
    for (Index p : {10, 50})
      for (Index r = 0; r < 20; ++r) seen.insert(sim::cell_seed(1, n, p, r));
  EXPECT_EQ(seen.size(), 3u * 2u * 20u);
  EXPECT_EQ(sim::cell_seed(5, 50, 10, 3), sim::cell_seed(5, 50, 10, 3));
}

TEST(Median, OddEvenAndUnsorted) {
  EXPECT_DOUBLE_EQ(sim::median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(sim::median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_DOUBLE_EQ(sim::median({7.0}), 7.0);
}

TEST(Bench, SmallCellAgreesAndIsPositive) {
  sim::BenchOptions opt;
  opt.ns = {50};
  opt.ps = {10};
  opt.reps = 3;
  const auto report = sim::bench(opt);
  ASSERT_EQ(report.cells.size(), 1u);
  const auto& c = report.cell(50, 10);
  ASSERT_TRUE(c.svd_median.has_value());
  ASSERT_TRUE(c.reformulation_median.has_value());
  EXPECT_GT(*c.svd_median, 0.0);
  EXPECT_GT(*c.reformulation_median, 0.0);
  EXPECT_LT(c.max_discrepancy, 1e-8);
  ASSERT_TRUE(c.ratio().has_value());
  EXPECT_GT(*c.ratio(), 0.0);
  EXPECT_EQ(report.generator, std::string(sim::kGenerator));
}

TEST(Bench, MemoryLimitRecordsError) {
  sim::BenchOptions opt;
  opt.ns = {50, 60};
  opt.ps = {10};
  opt.reps = 1;
  opt.max_quantification_bytes = 11 * 55 * 55 * sizeof(double);
  const auto report = sim::bench(opt);
  EXPECT_TRUE(report.cell(50, 10).ratio().has_value());
  const auto& big = report.cell(60, 10);
  EXPECT_TRUE(big.svd_median.has_value());
  EXPECT_FALSE(big.reformulation_median.has_value());
  EXPECT_FALSE(big.reformulation_error.empty());
  EXPECT_FALSE(big.ratio().has_value());

  std::ostringstream med, ratio;
  sim::write_median_csv(report, med);
  sim::write_ratio_csv(report, ratio);
  EXPECT_NE(med.str().find("error"), std::string::npos);
  const auto rl = lines_of(ratio.str());
  ASSERT_EQ(rl.size(), 3u);
  EXPECT_EQ(rl[2], "60,error");
}

TEST(Bench, CsvLayout) {
  sim::BenchReport report;
  report.ns = {50, 100};
  report.ps = {10, 50};
  report.reps = 5;
  report.seed = 9;
  for (Index n : report.ns)
    for (Index p : report.ps) {
      sim::BenchCell c;
      c.n = n;
      c.p = p;
      c.svd_median = 0.5;
      c.reformulation_median = 0.25 * static_cast<double>(n) / 50.0;
      report.cells.push_back(c);
    }
  std::ostringstream med, ratio, text;
  sim::write_median_csv(report, med);
  sim::write_ratio_csv(report, ratio);
  sim::write_text_report(report, text);
  const auto ml = lines_of(med.str());
  ASSERT_EQ(ml.size(), 5u);
  EXPECT_EQ(ml[0], "n,method,p=10,p=50");
  EXPECT_EQ(ml[1], "50,reformulation,0.25,0.25");
  EXPECT_EQ(ml[2], "50,svd,0.5,0.5");
  EXPECT_EQ(ml[3], "100,reformulation,0.5,0.5");
  const auto rl = lines_of(ratio.str());
  ASSERT_EQ(rl.size(), 3u);
  EXPECT_EQ(rl[0], "n,p=10,p=50");
  EXPECT_EQ(rl[1], "50,0.5,0.5");
  EXPECT_EQ(rl[2], "100,1,1");
  EXPECT_NE(text.str().find(std::string(sim::kGenerator)), std::string::npos);
  EXPECT_NE(text.str().find("seed 9"), std::string::npos);
}
