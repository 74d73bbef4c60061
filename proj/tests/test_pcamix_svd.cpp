#include "pcamix/error.hpp"
#include "pcamix/pcamix.hpp"
#include "pcamix/recode.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace pcamix;

namespace {

// Z for T4 written out from the recoding formulas, independent of recode().
Matrix t4_z_by_hand() {
  const double sd = std::sqrt(1.25);  // population sd of 1..4
  const double h = std::sqrt(0.5);    // (1 - 1/2) / sqrt(1/2)
  Matrix Z(4, 3);
  Z << -1.5 / sd, h, -h,
       -0.5 / sd, h, -h,
        0.5 / sd, -h, h,
        1.5 / sd, -h, h;
  return Z / 2.0;
}

}  // namespace

TEST(FitT4, EigenvaluesMatchBruteForce) {
  const Vector brute = oracle::eigenvalues_desc(t4_z_by_hand().transpose() * t4_z_by_hand());
  // Closed form on the rank-2 subspace: 1 +- 2/sqrt(5).
  EXPECT_NEAR(brute(0), 1 + 2 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(brute(1), 1 - 2 / std::sqrt(5.0), 1e-12);

  const PcamixModel model = fit(recode(oracle::t4_table()), 2);
  const Vector var = variance_explained(model);
  EXPECT_NEAR(var(0), brute(0), 1e-12);
  EXPECT_NEAR(var(1), brute(1), 1e-12);
  EXPECT_NEAR(var(0), 1.89443, 1e-5);
  EXPECT_NEAR(var(1), 0.10557, 1e-5);
}

TEST(FitT4, SquaredLoadingsFirstDimension) {
  const PcamixModel model = fit(recode(oracle::t4_table()), 2);
  const double half = (1 + 2 / std::sqrt(5.0)) / 2;  // lambda_1^2 / 2 by symmetry
  EXPECT_NEAR(model.C(0, 0), half, 1e-12);
  EXPECT_NEAR(model.C(1, 0), half, 1e-12);
  EXPECT_NEAR(model.C(0, 0), 0.94721, 1e-5);
}

TEST(FitT4, CategoryCoordinateIsBarycenter) {
  const MixedTable table = oracle::t4_table();
  const PcamixModel model = fit(recode(table), 2);
  // Sign convention: the quantitative loading dominates dimension 1 and is positive.
  EXPECT_GT(model.A(0, 0), 0.0);
  const double mean_a = (model.X(0, 0) + model.X(1, 0)) / 2;
  EXPECT_NEAR(model.category_coords(0, 0), mean_a, 1e-12);
  // -sqrt(lambda_1^2 / 2) with lambda_1^2 = 1 + 2/sqrt(5).
  EXPECT_NEAR(model.category_coords(0, 0), -std::sqrt((1 + 2 / std::sqrt(5.0)) / 2), 1e-12);
  EXPECT_NEAR(model.category_coords(0, 0), -0.973249, 1e-6);
  EXPECT_NEAR(std::sqrt(2.0) * model.A2()(0, 0), model.category_coords(0, 0), 1e-14);
}

TEST(Fit, KErrors) {
  const RecodedMatrix r = recode(oracle::t4_table());
  try {
    fit(r, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KTooLarge);
  }
  try {
    fit(r, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Fit, DegenerateInput) {
  RecodedMatrix r = recode(oracle::t4_table());
  r.Z.setZero();
  try {
    fit(r, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(Fit, AllQuantitativeIsPca) {
  std::mt19937_64 rng(5);
  const MixedTable table = oracle::random_mixed_table(rng, 20, 20, 4, 4, true);
  const PcamixModel model = fit(recode(table), 3);
  EXPECT_LT((model.C - model.A.array().square().matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(model.category_coords.rows(), 0);
}

TEST(SquaredLoadings, SingletonsAndZeroColumns) {
  Matrix A(3, 2);
  A << 0.5, 0.0, -0.25, 0.0, 1.0, 0.0;
  const Matrix C = squared_loadings(A, {{0}, {1}, {2}});
  EXPECT_EQ(C, A.array().square().matrix());
  EXPECT_TRUE(C.col(1).isZero());
  const Matrix grouped = squared_loadings(A, {{0, 2}, {1}});
  EXPECT_DOUBLE_EQ(grouped(0, 0), 1.25);
  EXPECT_DOUBLE_EQ(grouped(1, 0), 0.0625);
}

TEST(SquaredLoadings, IndexSetMismatch) {
  const Matrix A = Matrix::Ones(3, 2);
  for (const IndexSets& bad : {IndexSets{{0}, {1}}, IndexSets{{0, 1}, {1, 2}},
                               IndexSets{{0}, {1}, {3}}, IndexSets{{0, 1, 2}, {}}}) {
    try {
      squared_loadings(A, bad);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::IndexSetMismatch);
    }
  }
}

TEST(VarianceExplained, EnergyIdentities) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const RecodedMatrix r = recode(oracle::random_mixed_table(rng));
    const PcamixModel full = fit(r, 1);
    const PcamixModel all = fit(r, full.rank);
    EXPECT_NEAR(variance_explained(all).sum(), r.Z.squaredNorm(), 1e-10);
    EXPECT_NEAR(variance_explained(all).sum(), r.total_inertia(), 1e-10);
    EXPECT_LE(variance_explained(full).sum(), r.total_inertia() + 1e-12);
    EXPECT_LT((variance_explained(all) - all.C.colwise().sum().transpose()).cwiseAbs().maxCoeff(),
              1e-10);
  }
}

TEST(FitProperties, ModelInvariants) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const MixedTable table = oracle::random_mixed_table(rng);
    const RecodedMatrix r = recode(table);
    const Index rank = fit(r, 1).rank;
    const Index k = std::min<Index>(rank, 1 + trial % 4);
    const PcamixModel m = fit(r, k);
    const double n = static_cast<double>(m.n);

    EXPECT_LT((m.X.transpose() * m.X - n * Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((m.A - r.Z.transpose() * m.X / std::sqrt(n)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((m.C.colwise().sum().transpose() - m.singular_values.array().square().matrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    for (Index l = 0; l + 1 < k; ++l) EXPECT_GE(m.singular_values(l), m.singular_values(l + 1));
    if (m.p1 > 0) EXPECT_LE(m.A1().cwiseAbs().maxCoeff(), 1.0 + 1e-12);
    EXPECT_GE(m.C.minCoeff(), 0.0);
    EXPECT_LE(m.C.maxCoeff(), 1.0 + 1e-12);

    for (Index l = 0; l < k; ++l) {
      // Unit standard deviation, zero mean.
      EXPECT_NEAR(m.X.col(l).mean(), 0.0, 1e-12);
      EXPECT_NEAR(m.X.col(l).squaredNorm() / n, 1.0, 1e-10);
      // Sign convention: first entry of (near-)maximal magnitude is positive.
      const double top = m.A.col(l).cwiseAbs().maxCoeff();
      Index arg = 0;
      while (std::abs(m.A(arg, l)) < top * (1.0 - 1e-9)) ++arg;
      EXPECT_GT(m.A(arg, l), 0.0);
    }

    // Squared loadings are squared correlations / correlation ratios, and
    // category coordinates are barycenters.
    for (std::size_t j = 0; j < table.cols(); ++j) {
      const auto& col = table.column(j);
      for (Index l = 0; l < k; ++l) {
        const Vector x = m.X.col(l);
        if (col.is_quantitative()) {
          const double corr = oracle::correlation(col.values(), x);
          EXPECT_NEAR(m.C(static_cast<Index>(j), l), corr * corr, 1e-8);
          EXPECT_NEAR(m.A(r.index_sets[j][0], l), corr, 1e-10);
        } else {
          EXPECT_NEAR(m.C(static_cast<Index>(j), l), oracle::correlation_ratio(col.labels(), x), 1e-8);
        }
      }
    }
    Index s = 0;
    for (std::size_t b = 0; b < m.categories.blocks.size(); ++b) {
      const auto& block = m.categories.blocks[b];
      const auto it = std::find_if(table.columns().begin(), table.columns().end(),
                                   [&](const Column& c) { return c.name == block.variable; });
      const auto& labels = it->labels();
      for (const auto& label : block.labels) {
        const Eigen::RowVectorXd mean = oracle::category_mean(labels, label, m.X);
        EXPECT_LT((m.category_coords.row(s) - mean).cwiseAbs().maxCoeff(), 1e-10);
        ++s;
      }
    }
  }
}

TEST(FitProperties, PcaReduction) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const MixedTable table = oracle::random_mixed_table(rng, 10, 30, 2, 6, true);
    const PcamixModel m = fit(recode(table), static_cast<Index>(table.cols()));
    const Matrix gram = m.A1().transpose() * m.A1();
    const Vector lambda2 = variance_explained(m);
    EXPECT_LT((gram - Matrix(lambda2.asDiagonal())).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(lambda2.sum(), static_cast<double>(table.cols()), 1e-10);
  }
}

TEST(FitProperties, McaReduction) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const MixedTable table = oracle::random_mixed_table(rng, 10, 30, 2, 6, false);
    const RecodedMatrix r = recode(table);
    const PcamixModel m = fit(r, fit(r, 1).rank);
    EXPECT_NEAR(variance_explained(m).sum(),
                static_cast<double>(r.category_count() - r.p2), 1e-10);
  }
}

TEST(FitProperties, BinaryQualitativeEqualsPcaOnDummies) {
  std::mt19937_64 rng(23);
  std::bernoulli_distribution coin(0.45);
  int checked = 0;
  while (checked < 30) {
    const int n = 12 + checked % 15;
    const int p = 2 + checked % 5;
    std::vector<Column> qual, quant;
    bool valid = true;
    for (int j = 0; j < p; ++j) {
      std::vector<std::string> labels;
      std::vector<double> dummies;
      for (int i = 0; i < n; ++i) {
        const bool yes = coin(rng);
        labels.push_back(yes ? "yes" : "no");
        dummies.push_back(yes ? 1.0 : 0.0);
      }
      if (std::count(dummies.begin(), dummies.end(), 1.0) % n == 0) valid = false;
      qual.push_back(Column::qualitative("b" + std::to_string(j), labels));
      quant.push_back(Column::quantitative("b" + std::to_string(j), dummies));
    }
    if (!valid) continue;
    const RecodedMatrix rq = recode(MixedTable(qual));
    const RecodedMatrix rn = recode(MixedTable(quant));
    const Vector eig = oracle::eigenvalues_desc(rn.Z.transpose() * rn.Z);
    const auto k = oracle::separated_k(eig, fit(rn, 1).rank, 1, p);
    if (!k) continue;
    const PcamixModel mq = fit(rq, *k);
    const PcamixModel mn = fit(rn, *k);
    EXPECT_LT((mq.C - mn.C).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((variance_explained(mq) - variance_explained(mn)).cwiseAbs().maxCoeff(), 1e-8);
    ++checked;
  }
}
