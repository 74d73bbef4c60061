#include "pcamix/varimax.hpp"

#include "pcamix/error.hpp"

#include <algorithm>
#include <cmath>

namespace pcamix {

namespace {
// rho below this multiple of p * sum(u^2 + v^2) is indistinguishable from zero.
constexpr double kFlatPlaneTolerance = 1e-14;
constexpr double kZeroATolerance = 1e-12;
}  // namespace

double varimax_criterion(const Matrix& C) {
  const auto p = static_cast<double>(C.rows());
  if (C.rows() == 0) return 0.0;
  const double fourth = C.array().square().sum();
  const double columns = C.colwise().sum().array().square().sum();
  return fourth - columns / p;
}

double varimax_objective(const Matrix& A, const IndexSets& index_sets) {
  return varimax_criterion(squared_loadings(A, index_sets));
}

double optimal_planar_angle(double a, double b) {
  if (a == 0.0 && b == 0.0) return 0.0;
  // arccos(b / rho) evaluated as atan2(|a|, b) to keep small angles resolvable.
  const double psi = std::atan2(std::abs(a), b);
  return (a >= 0.0 ? psi : -psi) / 4.0;
}

PlanarCoefficients planar_coefficients(const Eigen::Ref<const Vector>& first,
                                       const Eigen::Ref<const Vector>& second,
                                       const IndexSets& index_sets) {
  if (first.size() != second.size())
    throw Error(ErrorCode::InvalidArgument, "loading columns differ in length");

  const auto p = static_cast<Index>(index_sets.size());
  PlanarCoefficients c;
  c.u = Vector::Zero(p);
  c.v = Vector::Zero(p);
  for (Index j = 0; j < p; ++j) {
    for (Index s : index_sets[static_cast<std::size_t>(j)]) {
      c.u(j) += first(s) * first(s) - second(s) * second(s);
      c.v(j) += 2.0 * first(s) * second(s);
    }
  }

  const double pd = static_cast<double>(p);
  const double su = c.u.sum();
  const double sv = c.v.sum();
  c.a = 2.0 * pd * c.u.dot(c.v) - 2.0 * su * sv;
  c.b = pd * (c.u.squaredNorm() - c.v.squaredNorm()) - su * su + sv * sv;
  c.rho = std::hypot(c.a, c.b);

  const double scale = pd * (c.u.squaredNorm() + c.v.squaredNorm());
  if (!(c.rho > kFlatPlaneTolerance * scale)) {
    c.psi = 0.0;
    c.theta = 0.0;
    return c;
  }
  // A round-off sized a on a b < 0 plane would otherwise pick between +-pi/4 by noise.
  const double a = std::abs(c.a) <= kZeroATolerance * scale ? 0.0 : c.a;
  c.theta = optimal_planar_angle(a, c.b);
  c.psi = 4.0 * c.theta;
  return c;
}

double objective_closed_form(double f0, const PlanarCoefficients& coeffs, double theta, Index p) {
  return f0 + coeffs.rho / (4.0 * static_cast<double>(p)) *
                  (std::cos(4.0 * theta - coeffs.psi) - std::cos(coeffs.psi));
}

double varimax_derivative(const PlanarCoefficients& coeffs, double theta, Index p) {
  return (coeffs.a * std::cos(4.0 * theta) - coeffs.b * std::sin(4.0 * theta)) /
         static_cast<double>(p);
}

Eigen::Matrix2d planar_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d T;
  T << c, -s, s, c;
  return T;
}

void rotate_columns(Matrix& M, Index first, Index second, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (Index i = 0; i < M.rows(); ++i) {
    const double x = M(i, first);
    const double y = M(i, second);
    M(i, first) = c * x + s * y;
    M(i, second) = -s * x + c * y;
  }
}

RotationResult rotate(const PcamixModel& model, const RotationOptions& options) {
  const Index k = model.A.cols();
  if (k < 2) throw Error(ErrorCode::KTooSmall, "rotation needs at least two dimensions");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (options.max_sweeps < 1)
    throw Error(ErrorCode::InvalidArgument, "max_sweeps must be at least 1");

  RotationResult r;
  r.T = Matrix::Identity(k, k);
  r.X_rot = model.X;
  r.A_rot = model.A;
  r.initial_objective = varimax_objective(r.A_rot, model.index_sets);

  for (Index sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    r.sweeps = sweep;
    double largest = 0.0;
    for (Index l = 0; l + 1 < k; ++l) {
      for (Index t = l + 1; t < k; ++t) {
        const auto coeffs = planar_coefficients(r.A_rot.col(l), r.A_rot.col(t), model.index_sets);
        const double theta = coeffs.theta;
        if (theta != 0.0) {
          rotate_columns(r.A_rot, l, t, theta);
          rotate_columns(r.X_rot, l, t, theta);
          rotate_columns(r.T, l, t, theta);
        }
        largest = std::max(largest, std::abs(theta));
        r.trace.push_back({sweep, l, t, theta, varimax_objective(r.A_rot, model.index_sets)});
      }
    }
    if (largest < options.tol) {
      r.converged = true;
      break;
    }
  }

  r.C_rot = squared_loadings(r.A_rot, model.index_sets);
  r.variance_rot = r.C_rot.colwise().sum().transpose();
  r.category_coords_rot = category_coordinates(r.A_rot.bottomRows(r.A_rot.rows() - model.p1),
                                               model.categories);
  r.final_objective = r.trace.empty() ? r.initial_objective : r.trace.back().objective;
  return r;
}

}  // namespace pcamix
