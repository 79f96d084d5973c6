#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparsekit/classifier.hpp"
#include "sparsekit/image.hpp"
#include "sparsekit/omp.hpp"

namespace sparsekit {

/// Patch geometry: an image resized to width x height is cut into
/// x_n * y_n blocks of floor(width / x_n) x floor(height / y_n) pixels.
/// Trailing pixels beyond the covered area are discarded.
struct GridSpec {
  int width = 55;
  int height = 66;
  int x_n = 11;
  int y_n = 11;

  int grid_w() const { return width / x_n; }
  int grid_h() const { return height / y_n; }
  int patch_count() const { return x_n * y_n; }
  int patch_len() const { return grid_w() * grid_h(); }

  /// Throws InvalidArgumentError unless all counts are >= 1 and each patch
  /// has at least one pixel per axis.
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

/// Per-patch dictionaries over a shared training set. Column j of every
/// patch matrix comes from the same training image; columns are unit-norm
/// or all-zero.
struct Dictionary {
  GridSpec grid;
  std::vector<Mat> per_patch;              // patch_count() matrices
  std::vector<std::string> column_labels;  // class of column j
  std::vector<ClassMask> masks;            // one per distinct label

  Index n_train() const { return Index(column_labels.size()); }
  Index n_classes() const { return Index(masks.size()); }
};

/// Outcome of classifying one image: per-patch votes and the majority
/// label. Vote counts always sum to patch_count().
struct ImagePrediction {
  std::string id;
  std::optional<std::string> true_label;
  std::string predicted;
  std::map<std::string, int> votes;
  /// (patch index, predicted label) for every patch.
  std::vector<std::pair<int, std::string>> per_patch;
  /// Per-class residuals summed over all patches.
  std::map<std::string, double> residual_sums;
};

struct EvaluationReport {
  std::map<std::string, double> per_class_accuracy;
  double global_accuracy = 0.0;
  int n_images = 0;
  std::vector<ImagePrediction> predictions;
};

/// Cuts a width x height image into grid patches. Patch (i, j) covers
/// columns [grid_w*i, grid_w*(i+1)) and rows [grid_h*j, grid_h*(j+1)) and
/// has index i * y_n + j; each patch vector is flattened row-major (the
/// patch's rows concatenated top to bottom).
std::vector<Vec> partition_grid(const Image& img, const GridSpec& grid);

/// Downsamples, partitions and l2-normalizes every training image, placing
/// image k's patches as column k of each per-patch matrix.
Dictionary build_dictionary(const std::vector<LabeledImage>& training,
                            const GridSpec& grid);

/// The default rule runs the solver for the full patch dimension.
StoppingRule default_stopping_rule(const GridSpec& grid);

/// Majority vote over per-patch classifications. Vote ties are broken by
/// the smallest per-class residual sum over all patches, then by label.
ImagePrediction classify_image(const Dictionary& dict, const Image& img,
                               const StoppingRule& rule);

/// Runs classify_image over the test set (optionally in parallel;
/// threads == 0 picks the hardware count) and aggregates per-class and
/// global accuracy. Aggregation is index-ordered, so results do not depend
/// on the thread count.
EvaluationReport evaluate(const Dictionary& dict,
                          const std::vector<LabeledImage>& test,
                          const StoppingRule& rule, int threads = 1);

}  // namespace sparsekit
