#pragma once

#include <Eigen/Dense>

#include "sparsekit/errors.hpp"

namespace sparsekit {

// Dense double-precision vector/matrix types. Matrices use Eigen's default
// column-major storage; all routines below reject non-finite entries.
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Vectors whose l2 norm is below this floor are treated as zero and pass
/// through normalize_l2 unchanged.
inline constexpr double kZeroNormFloor = 1e-12;

/// Factorization pivots below this fraction of the largest pivot are
/// treated as rank-deficient in least_squares.
inline constexpr double kRankRelativeThreshold = 1e-10;

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

/// Scales v to unit l2 norm. Vectors with norm < kZeroNormFloor are
/// returned unchanged so that downstream atom selection can ignore them.
Vec normalize_l2(const Vec& v);

/// Minimum-norm least-squares solution of basis * x ~= rhs, computed with a
/// rank-revealing orthogonal factorization (complete orthogonal
/// decomposition with kRankRelativeThreshold). Handles rank-deficient
/// systems like a pseudo-inverse would.
Vec least_squares(const Mat& basis, const Vec& rhs);

/// ||rhs - basis * coeffs||_2
double residual_norm(const Mat& basis, const Vec& coeffs, const Vec& rhs);

}  // namespace sparsekit
