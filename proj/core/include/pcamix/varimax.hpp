#pragma once

#include "pcamix/pcamix.hpp"
#include "pcamix/types.hpp"

#include <vector>

namespace pcamix {

/// Varimax criterion on a matrix of squared loadings:
/// sum_l sum_j c_jl^2 - (1/p) sum_l (sum_j c_jl)^2, with p = C.rows().
double varimax_criterion(const Matrix& C);

/// Varimax criterion of the squared loadings built from A and the index sets.
double varimax_objective(const Matrix& A, const IndexSets& index_sets);

/// Everything needed to rotate one plane (pair of columns) optimally.
///
/// With u_j = sum_{s in I_j} (a_s1^2 - a_s2^2) and v_j = 2 sum_{s in I_j} a_s1 a_s2,
///   a = 2p sum u_j v_j - 2 (sum u_j)(sum v_j)
///   b = p sum (u_j^2 - v_j^2) - (sum u_j)^2 + (sum v_j)^2
/// and (b, a) = rho (cos psi, sin psi). The criterion along the plane is
/// f(theta) = f(0) + rho / (4p) (cos(4 theta - psi) - cos psi), maximal at theta = psi / 4.
struct PlanarCoefficients {
  Vector u;
  Vector v;
  double a = 0.0;
  double b = 0.0;
  double rho = 0.0;
  double psi = 0.0;    ///< in [-pi, pi]
  double theta = 0.0;  ///< in [-pi/4, pi/4]
};

/// theta = psi / 4 with psi = arccos(b / rho) when a >= 0 and -arccos(b / rho)
/// otherwise, rho = hypot(a, b). Returns 0 when a == b == 0.
double optimal_planar_angle(double a, double b);

/// Coefficients for the plane spanned by loading columns `first` and `second`.
/// psi = arccos(b / rho), negated when a < 0; theta = psi / 4. A numerically
/// flat plane (rho == 0 relative to the size of u and v) yields theta = 0, and
/// an |a| at round-off level counts as 0.
PlanarCoefficients planar_coefficients(const Eigen::Ref<const Vector>& first,
                                       const Eigen::Ref<const Vector>& second,
                                       const IndexSets& index_sets);

/// f(0) + rho / (4p) (cos(4 theta - psi) - cos psi).
double objective_closed_form(double f0, const PlanarCoefficients& coeffs, double theta, Index p);

/// df/dtheta = (a cos 4theta - b sin 4theta) / p.
double varimax_derivative(const PlanarCoefficients& coeffs, double theta, Index p);

/// [[cos, -sin], [sin, cos]].
Eigen::Matrix2d planar_rotation(double theta);

/// Right-multiplies columns (first, second) of M by planar_rotation(theta).
void rotate_columns(Matrix& M, Index first, Index second, double theta);

struct RotationOptions {
  double tol = 1e-8;      ///< radians; a sweep whose angles are all below this ends the iteration
  Index max_sweeps = 100;
};

struct SweepStep {
  Index sweep = 0;   ///< 1-based
  Index first = 0;   ///< 0-based dimension indices of the rotated plane
  Index second = 0;
  double theta = 0.0;
  double objective = 0.0;  ///< criterion after this planar rotation
};

struct RotationResult {
  Matrix T;                    ///< k x k orthonormal, X_rot = X T and A_rot = A T
  Matrix X_rot;
  Matrix A_rot;
  Matrix C_rot;
  Matrix category_coords_rot;
  Vector variance_rot;         ///< column sums of C_rot, dimensions in original order
  double initial_objective = 0.0;
  double final_objective = 0.0;
  std::vector<SweepStep> trace;
  bool converged = false;
  Index sweeps = 0;

  Matrix A1_rot(Index p1) const { return A_rot.topRows(p1); }
};

/// Kaiser-style sweeps over the planes (1,2), (1,3), ..., (k-1,k) with the
/// closed-form optimal angle for each plane. Throws KTooSmall for k < 2 and
/// InvalidArgument for tol <= 0 or max_sweeps < 1. Not reaching tolerance is
/// reported through `converged`, not thrown.
RotationResult rotate(const PcamixModel& model, const RotationOptions& options = {});

}  // namespace pcamix
