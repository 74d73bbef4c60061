#pragma once

#include "pcamix/recode.hpp"
#include "pcamix/types.hpp"

#include <vector>

namespace pcamix {

/// Singular values below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-10;

/// Result of the SVD-based PCAMIX fit, k retained dimensions.
///
/// X'X = n I_k, A = Z'X / sqrt(n) = V_k Lambda_k, and each column of C sums to
/// the variance lambda_l^2 of that dimension. Rows of C and entries of
/// index_sets follow table column order; rows of A are the quantitative block
/// (A1) followed by one row per category (A2).
struct PcamixModel {
  Index n = 0;
  Index k = 0;
  Index rank = 0;
  Index p1 = 0;
  Index p2 = 0;
  double total_inertia = 0.0;

  Matrix X;                ///< n x k standardized component scores
  Vector singular_values;  ///< lambda_1 >= ... >= lambda_k > 0
  Matrix A;                ///< (p1 + m) x k
  Matrix C;                ///< p x k squared loadings
  Matrix category_coords;  ///< m x k, barycenters of X per category

  IndexSets index_sets;
  std::vector<Variable> variables;
  CategoryMap categories;

  Matrix A1() const { return A.topRows(p1); }
  Matrix A2() const { return A.bottomRows(A.rows() - p1); }
};

/// Throws KTooLarge when k exceeds rank(Z), InvalidArgument when k < 1 and
/// DegenerateInput when Z is numerically zero.
PcamixModel fit(const RecodedMatrix& recoded, Index k);

/// lambda_l^2 for l = 1..k.
Vector variance_explained(const PcamixModel& model);

/// c_jl = sum over s in I_j of a_sl^2. Throws IndexSetMismatch unless the
/// index sets partition the rows of A.
Matrix squared_loadings(const Matrix& A, const IndexSets& index_sets);

/// Magnitudes within this relative distance of a column maximum count as tied.
inline constexpr double kSignTieTolerance = 1e-9;

/// Flips each column of `loadings` (and the same column of `scores`) so that
/// its largest-magnitude entry is positive; the first index wins ties.
void normalize_signs(Matrix& loadings, Matrix& scores);

/// Principal coordinates sqrt(1/pi_s) * a_s of the categories from the A2
/// block. Equal to the per-category mean of the scores.
Matrix category_coordinates(const Matrix& A2, const CategoryMap& categories);

}  // namespace pcamix
