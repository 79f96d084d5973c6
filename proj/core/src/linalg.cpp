#include "sparsekit/linalg.hpp"

#include <string>

namespace sparsekit {

bool all_finite(const Vec& v) { return v.allFinite(); }

bool all_finite(const Mat& m) { return m.allFinite(); }

namespace {

void require_finite(const Vec& v, const char* name) {
  if (!all_finite(v)) {
    throw InvalidArgumentError(std::string(name) + " has non-finite entries");
  }
}

void require_finite(const Mat& m, const char* name) {
  if (!all_finite(m)) {
    throw InvalidArgumentError(std::string(name) + " has non-finite entries");
  }
}

}  // namespace

Vec normalize_l2(const Vec& v) {
  require_finite(v, "vector");
  const double norm = v.norm();
  if (norm < kZeroNormFloor) {
    return v;
  }
  return v / norm;
}

Vec least_squares(const Mat& basis, const Vec& rhs) {
  require_finite(basis, "basis");
  require_finite(rhs, "rhs");
  if (basis.cols() < 1) {
    throw InvalidArgumentError("least_squares: basis has no columns");
  }
  if (basis.rows() != rhs.size()) {
    throw DimensionError("least_squares: basis has " +
                         std::to_string(basis.rows()) + " rows but rhs has " +
                         std::to_string(rhs.size()) + " entries");
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod;
  cod.setThreshold(kRankRelativeThreshold);
  cod.compute(basis);
  return cod.solve(rhs);
}

double residual_norm(const Mat& basis, const Vec& coeffs, const Vec& rhs) {
  require_finite(basis, "basis");
  require_finite(coeffs, "coeffs");
  require_finite(rhs, "rhs");
  if (basis.cols() != coeffs.size()) {
    throw DimensionError("residual_norm: basis has " +
                         std::to_string(basis.cols()) +
                         " columns but coeffs has " +
                         std::to_string(coeffs.size()) + " entries");
  }
  if (basis.rows() != rhs.size()) {
    throw DimensionError("residual_norm: basis has " +
                         std::to_string(basis.rows()) + " rows but rhs has " +
                         std::to_string(rhs.size()) + " entries");
  }
  return (rhs - basis * coeffs).norm();
}

}  // namespace sparsekit
