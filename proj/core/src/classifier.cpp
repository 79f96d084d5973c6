#include "sparsekit/classifier.hpp"

#include <map>
#include <string>

namespace sparsekit {

std::vector<ClassMask> build_class_masks(
    const std::vector<std::string>& column_labels, Index total_columns) {
  if (column_labels.empty()) {
    throw InvalidArgumentError("build_class_masks: no column labels");
  }
  if (Index(column_labels.size()) > total_columns) {
    throw DimensionError("build_class_masks: " +
                         std::to_string(column_labels.size()) +
                         " labels for " + std::to_string(total_columns) +
                         " columns");
  }
  std::map<std::string, Vec> indicators;
  for (std::size_t j = 0; j < column_labels.size(); ++j) {
    auto [it, inserted] =
        indicators.try_emplace(column_labels[j], Vec::Zero(total_columns));
    (void)inserted;
    it->second[Index(j)] = 1.0;
  }
  std::vector<ClassMask> masks;
  masks.reserve(indicators.size());
  for (auto& [label, indicator] : indicators) {
    masks.push_back(ClassMask{label, std::move(indicator)});
  }
  return masks;
}

ClassResidualTable classify_patch(const Mat& dictionary,
                                  const SparseCode& code, const Vec& signal,
                                  const std::vector<ClassMask>& masks) {
  if (code.coeffs.size() != dictionary.cols()) {
    throw DimensionError("classify_patch: code has " +
                         std::to_string(code.coeffs.size()) +
                         " coefficients but dictionary has " +
                         std::to_string(dictionary.cols()) + " columns");
  }
  if (signal.size() != dictionary.rows()) {
    throw DimensionError("classify_patch: signal has " +
                         std::to_string(signal.size()) +
                         " entries but dictionary has " +
                         std::to_string(dictionary.rows()) + " rows");
  }
  if (masks.empty()) {
    throw InvalidArgumentError("classify_patch: no class masks");
  }

  ClassResidualTable table;
  for (const ClassMask& mask : masks) {
    if (mask.indicator.size() != dictionary.cols()) {
      throw DimensionError("classify_patch: mask '" + mask.label +
                           "' has wrong length");
    }
    const double r =
        residual_norm(dictionary, code.coeffs.cwiseProduct(mask.indicator),
                      signal);
    table.residuals[mask.label] = r;
  }
  // std::map iterates labels in sorted order, so a strict '<' leaves ties
  // on the lexicographically smallest label.
  double best = 0.0;
  bool first = true;
  for (const auto& [label, r] : table.residuals) {
    if (first || r < best) {
      best = r;
      table.predicted = label;
      first = false;
    }
  }
  return table;
}

}  // namespace sparsekit
