#pragma once

#include <map>
#include <string>
#include <vector>

#include "sparsekit/linalg.hpp"
#include "sparsekit/omp.hpp"

namespace sparsekit {

/// Column-selection mask for one class: indicator[j] == 1 iff dictionary
/// column j belongs to the class, 0 otherwise.
struct ClassMask {
  std::string label;
  Vec indicator;
};

/// Per-class residuals of the class-restricted reconstruction and the
/// argmin label. Ties go to the lexicographically smallest label.
struct ClassResidualTable {
  std::map<std::string, double> residuals;
  std::string predicted;
};

/// Builds one mask per distinct label, ordered by label. column_labels[j]
/// names the class of dictionary column j; total_columns may exceed the
/// label count, in which case trailing columns belong to no class.
std::vector<ClassMask> build_class_masks(
    const std::vector<std::string>& column_labels, Index total_columns);

/// Sparse-representation classification of one signal: for every class,
/// the residual ||y - A * (coeffs .* indicator)||_2 of the reconstruction
/// restricted to that class's columns; the predicted label minimizes it.
ClassResidualTable classify_patch(const Mat& dictionary,
                                  const SparseCode& code, const Vec& signal,
                                  const std::vector<ClassMask>& masks);

}  // namespace sparsekit
