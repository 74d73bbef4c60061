#include "pcamix/pcamix.hpp"

#include "pcamix/error.hpp"

#include <cmath>
#include <string>
#include <vector>

#ifdef PCAMIX_HAVE_LAPACK
#include <lapack.h>
#endif

namespace pcamix {

Matrix squared_loadings(const Matrix& A, const IndexSets& index_sets) {
  std::vector<int> hits(static_cast<std::size_t>(A.rows()), 0);
  for (const auto& set : index_sets) {
    if (set.empty()) throw Error(ErrorCode::IndexSetMismatch, "empty index set");
    for (Index s : set) {
      if (s < 0 || s >= A.rows())
        throw Error(ErrorCode::IndexSetMismatch,
                    "row index " + std::to_string(s) + " outside loading matrix");
      ++hits[static_cast<std::size_t>(s)];
    }
  }
  for (int h : hits)
    if (h != 1)
      throw Error(ErrorCode::IndexSetMismatch, "index sets do not partition the loading rows");

  Matrix C = Matrix::Zero(static_cast<Index>(index_sets.size()), A.cols());
  for (std::size_t j = 0; j < index_sets.size(); ++j)
    for (Index s : index_sets[j]) C.row(static_cast<Index>(j)) += A.row(s).array().square().matrix();
  return C;
}

void normalize_signs(Matrix& loadings, Matrix& scores) {
  if (loadings.rows() == 0) return;
  for (Index l = 0; l < loadings.cols(); ++l) {
    const double best = loadings.col(l).cwiseAbs().maxCoeff();
    Index arg = 0;
    while (std::abs(loadings(arg, l)) < best * (1.0 - kSignTieTolerance)) ++arg;
    if (loadings(arg, l) < 0.0) {
      loadings.col(l) *= -1.0;
      if (l < scores.cols()) scores.col(l) *= -1.0;
    }
  }
}

Matrix category_coordinates(const Matrix& A2, const CategoryMap& categories) {
  const Vector pi = categories.frequencies();
  return pi.array().rsqrt().matrix().asDiagonal() * A2;
}

Vector variance_explained(const PcamixModel& model) {
  return model.singular_values.array().square();
}

namespace {

struct ThinSvd {
  Matrix U;
  Vector sigma;  ///< descending
  Matrix V;
};

#ifdef PCAMIX_HAVE_LAPACK
bool lapack_svd(const Matrix& Z, ThinSvd& out) {
  lapack_int m = static_cast<lapack_int>(Z.rows());
  lapack_int c = static_cast<lapack_int>(Z.cols());
  lapack_int r = std::min(m, c);
  Matrix A = Z;
  out.sigma.resize(r);
  out.U.resize(m, r);
  Matrix VT(r, c);
  std::vector<lapack_int> iwork(8 * static_cast<std::size_t>(r));
  lapack_int lwork = -1;
  lapack_int info = 0;
  double query = 0.0;
  LAPACK_dgesdd("S", &m, &c, A.data(), &m, out.sigma.data(), out.U.data(), &m, VT.data(), &r, &query,
                &lwork, iwork.data(), &info);
  if (info != 0) return false;
  lwork = static_cast<lapack_int>(query);
  std::vector<double> work(static_cast<std::size_t>(lwork));
  LAPACK_dgesdd("S", &m, &c, A.data(), &m, out.sigma.data(), out.U.data(), &m, VT.data(), &r, work.data(),
                &lwork, iwork.data(), &info);
  if (info != 0) return false;
  out.V = VT.transpose();
  return true;
}
#endif

ThinSvd thin_svd(const Matrix& Z) {
  ThinSvd out;
#ifdef PCAMIX_HAVE_LAPACK
  if (lapack_svd(Z, out)) return out;
#endif
  Eigen::BDCSVD<Matrix> svd(Z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.U = svd.matrixU();
  out.sigma = svd.singularValues();
  out.V = svd.matrixV();
  return out;
}

}  // namespace

PcamixModel fit(const RecodedMatrix& recoded, Index k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const Matrix& Z = recoded.Z;
  const Index n = Z.rows();

  const ThinSvd svd = thin_svd(Z);
  const Vector& sigma = svd.sigma;
  if (sigma.size() == 0 || !(sigma(0) > 0.0))
    throw Error(ErrorCode::DegenerateInput, "recoded matrix has rank 0");

  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > kRankTolerance * sigma(0)) ++rank;
  if (k > rank)
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " exceeds the rank " +
                                          std::to_string(rank) + " of the recoded matrix");

  PcamixModel model;
  model.n = n;
  model.k = k;
  model.rank = rank;
  model.p1 = recoded.p1;
  model.p2 = recoded.p2;
  model.total_inertia = recoded.total_inertia();
  model.index_sets = recoded.index_sets;
  model.variables = recoded.variables;
  model.categories = recoded.categories;

  model.singular_values = sigma.head(k);
  model.X = std::sqrt(static_cast<double>(n)) * svd.U.leftCols(k);
  model.A = svd.V.leftCols(k) * model.singular_values.asDiagonal();
  normalize_signs(model.A, model.X);

  model.C = squared_loadings(model.A, model.index_sets);
  model.category_coords = category_coordinates(model.A2(), model.categories);
  return model;
}

}  // namespace pcamix
