#include "pcamix/kiers.hpp"

#include "pcamix/error.hpp"
#include "pcamix/pcamix.hpp"
#include "pcamix/recode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pcamix::kiers {

std::size_t quantification_bytes(Index n, Index p) noexcept {
  const auto nn = static_cast<std::size_t>(n);
  return (static_cast<std::size_t>(p) + 1) * nn * nn * sizeof(double);
}

QuantificationSet build_quantification(const MixedTable& table) {
  QuantificationSet qs;
  qs.n = static_cast<Index>(table.rows());
  const Index n = qs.n;
  const double nd = static_cast<double>(n);
  qs.S = Matrix::Zero(n, n);

  for (const auto& column : table.columns()) {
    VariableSource src;
    src.kind = column.kind();
    Matrix Sj;
    if (column.is_quantitative()) {
      src.z = standardize(column.values());
      Sj = src.z * src.z.transpose() / nd;
    } else {
      const Indicator ind = indicator_matrix(column.labels());
      src.codes = ind.codes;
      src.counts = ind.counts;
      // J G D^{-1} G' J = H H' with H = J G D^{-1/2}, D = category counts.
      Vector inv_sqrt_counts(static_cast<Index>(ind.counts.size()));
      for (std::size_t s = 0; s < ind.counts.size(); ++s)
        inv_sqrt_counts(static_cast<Index>(s)) = 1.0 / std::sqrt(static_cast<double>(ind.counts[s]));
      Matrix H = ind.G * inv_sqrt_counts.asDiagonal();
      H.rowwise() -= H.colwise().mean();
      Sj = H * H.transpose();
    }
    qs.S += Sj;
    qs.S_list.push_back(std::move(Sj));
    qs.sources.push_back(std::move(src));
  }
  return qs;
}

namespace {

// Loading-equivalent rows (quantitative block, then categories) used only to
// fix eigenvector signs the same way the SVD route does.
Matrix loading_equivalents(const QuantificationSet& qs, const Matrix& X) {
  const double nd = static_cast<double>(qs.n);
  std::vector<Eigen::RowVectorXd> quant;
  std::vector<Eigen::RowVectorXd> cats;
  for (const auto& src : qs.sources) {
    if (src.kind == VariableKind::Quantitative) {
      quant.push_back(src.z.transpose() * X / nd);
      continue;
    }
    Matrix sums = Matrix::Zero(static_cast<Index>(src.counts.size()), X.cols());
    for (Index i = 0; i < qs.n; ++i) sums.row(src.codes[static_cast<std::size_t>(i)]) += X.row(i);
    for (std::size_t s = 0; s < src.counts.size(); ++s) {
      const double pi = static_cast<double>(src.counts[s]) / nd;
      cats.push_back(sums.row(static_cast<Index>(s)) / nd / std::sqrt(pi));
    }
  }
  Matrix L(static_cast<Index>(quant.size() + cats.size()), X.cols());
  Index r = 0;
  for (const auto& row : quant) L.row(r++) = row;
  for (const auto& row : cats) L.row(r++) = row;
  return L;
}

}  // namespace

Matrix squared_loadings(const QuantificationSet& qs, const Matrix& X) {
  const double nd = static_cast<double>(qs.n);
  Matrix C(qs.p(), X.cols());
  for (Index j = 0; j < qs.p(); ++j) {
    const Matrix SjX = qs.S_list[static_cast<std::size_t>(j)] * X;
    for (Index l = 0; l < X.cols(); ++l) C(j, l) = X.col(l).dot(SjX.col(l)) / nd;
  }
  return C;
}

OriginalFit fit_original(const QuantificationSet& qs, Index k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(qs.S);
  const Index n = qs.n;

  OriginalFit fit;
  fit.eigenvalues = eig.eigenvalues().reverse();
  const double top = fit.eigenvalues(0);
  if (!(top > 0.0)) throw Error(ErrorCode::DegenerateInput, "S has no positive eigenvalue");
  while (fit.rank < n && fit.eigenvalues(fit.rank) > kEigenRankTolerance * top) ++fit.rank;
  if (k > fit.rank)
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds the " +
                                          std::to_string(fit.rank) + " positive eigenvalues of S");

  fit.X = std::sqrt(static_cast<double>(n)) * eig.eigenvectors().rightCols(k).rowwise().reverse();
  Matrix L = loading_equivalents(qs, fit.X);
  normalize_signs(L, fit.X);

  const Matrix SX = qs.S * fit.X;
  fit.variances.resize(k);
  for (Index l = 0; l < k; ++l)
    fit.variances(l) = fit.X.col(l).dot(SX.col(l)) / static_cast<double>(n);
  fit.C = squared_loadings(qs, fit.X);
  return fit;
}

std::vector<Matrix> e_matrices(const QuantificationSet& qs, const Matrix& X, const Vector& gamma) {
  const double pd = static_cast<double>(qs.p());
  const Matrix n_gamma = static_cast<double>(qs.n) * Matrix(gamma.asDiagonal());
  std::vector<Matrix> E;
  E.reserve(qs.S_list.size());
  for (const auto& Sj : qs.S_list) E.push_back(pd * X.transpose() * Sj * X - n_gamma);
  return E;
}

QuantificationSet attach_scores(QuantificationSet qs, const OriginalFit& fit) {
  qs.gamma = fit.variances;
  qs.E_list = e_matrices(qs, fit.X, qs.gamma);
  return qs;
}

namespace {

// E_j entries of the pair plus the matching entries of p X' S_j X (= E_j + n Gamma).
ReformulationCoefficients coefficients_from_blocks(const std::vector<Eigen::Matrix2d>& E,
                                                   const Eigen::Matrix2d& n_gamma) {
  ReformulationCoefficients c;
  double cross = 0.0;
  for (const auto& Ej : E) {
    const double diff = Ej(0, 0) - Ej(1, 1);
    const double e12 = Ej(0, 1);
    c.a += 4.0 * e12 * diff;
    c.b += diff * diff;
    cross += e12 * e12;
    const double raw_diff = diff + n_gamma(0, 0) - n_gamma(1, 1);
    const double raw12 = e12 + n_gamma(0, 1);
    c.scale += raw_diff * raw_diff + 4.0 * raw12 * raw12;
  }
  c.b -= 4.0 * cross;
  return c;
}

}  // namespace

ReformulationCoefficients reformulation_coefficients(const QuantificationSet& qs, Index first,
                                                     Index second) {
  std::vector<Eigen::Matrix2d> E;
  E.reserve(qs.E_list.size());
  for (const auto& Ej : qs.E_list) {
    Eigen::Matrix2d block;
    block << Ej(first, first), Ej(first, second), Ej(second, first), Ej(second, second);
    E.push_back(block);
  }
  const double n = static_cast<double>(qs.n);
  Eigen::Matrix2d n_gamma = Eigen::Matrix2d::Zero();
  n_gamma(0, 0) = n * qs.gamma(first);
  n_gamma(1, 1) = n * qs.gamma(second);
  return coefficients_from_blocks(E, n_gamma);
}

ReformulationCoefficients reformulation_coefficients(const Matrix& scores_pair,
                                                     const QuantificationSet& qs,
                                                     const Eigen::Matrix2d& n_gamma) {
  const double pd = static_cast<double>(qs.p());
  std::vector<Eigen::Matrix2d> E;
  E.reserve(qs.S_list.size());
  for (const auto& Sj : qs.S_list) {
    const Eigen::Matrix2d raw = pd * scores_pair.transpose() * (Sj * scores_pair);
    E.push_back(raw - n_gamma);
  }
  return coefficients_from_blocks(E, n_gamma);
}

double reformulation_angle(const ReformulationCoefficients& c) {
  if (!(std::hypot(c.a, c.b) > kFlatTolerance * c.scale)) return 0.0;
  const double a = std::abs(c.a) <= kZeroATolerance * c.scale ? 0.0 : c.a;
  return std::atan2(a, c.b) / 4.0;
}

double trace_objective(const std::vector<Matrix>& E, const Matrix& T) {
  double sum = 0.0;
  for (const auto& Ej : E) {
    const Matrix R = T.transpose() * Ej * T;
    sum += (R * Matrix(R.diagonal().asDiagonal())).trace();
  }
  const double pd = static_cast<double>(E.size());
  return sum / (pd * pd);
}

ReformulationRotation rotate_reformulation(const QuantificationSet& qs, const OriginalFit& fit,
                                           const RotationOptions& options) {
  const Index k = fit.X.cols();
  if (k < 2) throw Error(ErrorCode::KTooSmall, "rotation needs at least two dimensions");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");

  ReformulationRotation r;
  r.T = Matrix::Identity(k, k);
  r.X_rot = fit.X;
  // n T' Gamma T; its diagonal tracks the variances of the rotated dimensions.
  Matrix n_gamma = static_cast<double>(qs.n) * Matrix(fit.variances.asDiagonal());

  for (Index sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    r.sweeps = sweep;
    double largest = 0.0;
    for (Index l = 0; l + 1 < k; ++l) {
      for (Index t = l + 1; t < k; ++t) {
        Matrix pair(qs.n, 2);
        pair.col(0) = r.X_rot.col(l);
        pair.col(1) = r.X_rot.col(t);
        Eigen::Matrix2d block;
        block << n_gamma(l, l), n_gamma(l, t), n_gamma(t, l), n_gamma(t, t);

        const double theta = reformulation_angle(reformulation_coefficients(pair, qs, block));
        if (theta != 0.0) {
          rotate_columns(r.X_rot, l, t, theta);
          rotate_columns(r.T, l, t, theta);
          rotate_columns(n_gamma, l, t, theta);
          n_gamma.transposeInPlace();
          rotate_columns(n_gamma, l, t, theta);
        }
        r.angles.push_back(theta);
        largest = std::max(largest, std::abs(theta));
      }
    }
    if (largest < options.tol) {
      r.converged = true;
      break;
    }
  }
  r.C_rot = squared_loadings(qs, r.X_rot);
  return r;
}

}  // namespace pcamix::kiers
