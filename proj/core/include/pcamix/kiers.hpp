#pragma once

#include "pcamix/mixed_table.hpp"
#include "pcamix/types.hpp"
#include "pcamix/varimax.hpp"

#include <cstddef>
#include <vector>

namespace pcamix::kiers {

/// Raw per-variable ingredients of a quantification matrix.
struct VariableSource {
  VariableKind kind = VariableKind::Quantitative;
  Vector z;                   ///< standardized values (quantitative only)
  std::vector<Index> codes;   ///< category of each row (qualitative only)
  std::vector<Index> counts;  ///< n_s per category (qualitative only)
};

/// The n x n quantification matrices of the original PCAMIX formulation:
/// S_j = z_j z_j' / n for a quantitative variable and S_j = J G_j D_j^{-1} G_j' J
/// (D_j holding category counts) for a qualitative one; S = sum_j S_j.
/// `gamma` and `E_list` are filled in by attach_scores.
struct QuantificationSet {
  Index n = 0;
  std::vector<Matrix> S_list;
  Matrix S;
  Vector gamma;               ///< k leading eigenvalues of S
  std::vector<Matrix> E_list; ///< E_j = p X' S_j X - n Gamma, k x k
  std::vector<VariableSource> sources;

  Index p() const noexcept { return static_cast<Index>(S_list.size()); }
};

/// Bytes needed for the p quantification matrices of an n-row table.
std::size_t quantification_bytes(Index n, Index p) noexcept;

QuantificationSet build_quantification(const MixedTable& table);

struct OriginalFit {
  Matrix X;             ///< n x k eigenvectors of S scaled so that X'X = n I
  Vector variances;     ///< x_l' S x_l / n, equal to lambda_l^2 of the SVD route
  Matrix C;             ///< c_jl = x_l' S_j x_l / n
  Vector eigenvalues;   ///< all eigenvalues of S, descending
  Index rank = 0;
};

/// Eigenvalues of S at or below this fraction of the largest count as zero.
inline constexpr double kEigenRankTolerance = 1e-10;

/// Throws KTooLarge when k exceeds the number of positive eigenvalues of S.
/// Eigenvector signs follow the same rule as the SVD fit: the largest
/// magnitude loading of each dimension is positive.
OriginalFit fit_original(const QuantificationSet& qs, Index k);

/// E_j = p X' S_j X - n diag(gamma) for every variable.
std::vector<Matrix> e_matrices(const QuantificationSet& qs, const Matrix& X, const Vector& gamma);

/// Copy of `qs` carrying Gamma and the E_j matrices of `fit`.
QuantificationSet attach_scores(QuantificationSet qs, const OriginalFit& fit);

struct ReformulationCoefficients {
  double a = 0.0;
  double b = 0.0;
  double scale = 0.0;  ///< sum_j (P11 - P22)^2 + 4 P12^2 with P_j = E_j + n Gamma
};

/// Planes with hypot(a, b) at or below this fraction of `scale` are flat.
inline constexpr double kFlatTolerance = 1e-14;
/// |a| at or below this fraction of `scale` is taken as 0, so the b < 0 tie resolves to +pi/4.
inline constexpr double kZeroATolerance = 1e-12;

/// a = 4 sum_j e12 (e11 - e22), b = sum_j (e11 - e22)^2 - 4 sum_j e12^2, read
/// from entries (first, first), (first, second), (second, second) of the
/// E_j stored in `qs`.
ReformulationCoefficients reformulation_coefficients(const QuantificationSet& qs, Index first,
                                                     Index second);

/// Coefficients for a pair of score columns (n x 2). `n_gamma` is the 2 x 2
/// block of n T' Gamma T for the current rotation T (n diag(gamma) when unrotated).
ReformulationCoefficients reformulation_coefficients(const Matrix& scores_pair,
                                                     const QuantificationSet& qs,
                                                     const Eigen::Matrix2d& n_gamma);

/// Stationary angle with tan(4 theta) = a / b picked as atan2(a, b) / 4; 0 on a flat plane.
double reformulation_angle(const ReformulationCoefficients& c);

/// p^-2 sum_j Trace(T' E_j T Diag(T' E_j T)).
double trace_objective(const std::vector<Matrix>& E, const Matrix& T);

/// c_jl = x_l' S_j x_l / n for the given scores.
Matrix squared_loadings(const QuantificationSet& qs, const Matrix& X);

struct ReformulationRotation {
  Matrix T;
  Matrix X_rot;
  Matrix C_rot;
  std::vector<double> angles;
  bool converged = false;
  Index sweeps = 0;
};

/// The sweep procedure driven by the E_j coefficients instead of the loading
/// matrix; the slow baseline.
ReformulationRotation rotate_reformulation(const QuantificationSet& qs, const OriginalFit& fit,
                                           const RotationOptions& options = {});

}  // namespace pcamix::kiers
