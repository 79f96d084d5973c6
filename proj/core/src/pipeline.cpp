#include "sparsekit/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace sparsekit {

void GridSpec::validate() const {
  if (width < 1 || height < 1) {
    throw InvalidArgumentError("GridSpec: dimensions must be >= 1");
  }
  if (x_n < 1 || y_n < 1) {
    throw InvalidArgumentError("GridSpec: grid counts must be >= 1");
  }
  if (grid_w() < 1 || grid_h() < 1) {
    throw InvalidArgumentError(
        "GridSpec: " + std::to_string(x_n) + "x" + std::to_string(y_n) +
        " grid leaves no pixels per patch at " + std::to_string(width) + "x" +
        std::to_string(height));
  }
}

std::vector<Vec> partition_grid(const Image& img, const GridSpec& grid) {
  grid.validate();
  if (img.width != grid.width || img.height != grid.height) {
    throw DimensionError("partition_grid: image is " +
                         std::to_string(img.width) + "x" +
                         std::to_string(img.height) + " but grid expects " +
                         std::to_string(grid.width) + "x" +
                         std::to_string(grid.height));
  }
  const int gw = grid.grid_w();
  const int gh = grid.grid_h();
  std::vector<Vec> patches(std::size_t(grid.patch_count()));
  for (int i = 0; i < grid.x_n; ++i) {
    for (int j = 0; j < grid.y_n; ++j) {
      Vec patch(gw * gh);
      Index idx = 0;
      // Row-major flattening: the patch's rows concatenated top to bottom.
      for (int py = 0; py < gh; ++py) {
        for (int px = 0; px < gw; ++px) {
          patch[idx++] = img.at(gw * i + px, gh * j + py);
        }
      }
      patches[std::size_t(i * grid.y_n + j)] = std::move(patch);
    }
  }
  return patches;
}

Dictionary build_dictionary(const std::vector<LabeledImage>& training,
                            const GridSpec& grid) {
  grid.validate();
  if (training.empty()) {
    throw InvalidArgumentError("build_dictionary: no training samples");
  }
  const Index n_train = Index(training.size());

  Dictionary dict;
  dict.grid = grid;
  dict.per_patch.assign(std::size_t(grid.patch_count()),
                        Mat::Zero(grid.patch_len(), n_train));
  dict.column_labels.reserve(training.size());

  for (Index col = 0; col < n_train; ++col) {
    const LabeledImage& sample = training[std::size_t(col)];
    if (sample.label.empty()) {
      throw InvalidArgumentError("build_dictionary: sample " +
                                 std::to_string(col) + " has no label");
    }
    const Image resized = downsample(sample.image, grid.width, grid.height);
    const std::vector<Vec> patches = partition_grid(resized, grid);
    for (std::size_t p = 0; p < patches.size(); ++p) {
      dict.per_patch[p].col(col) = normalize_l2(patches[p]);
    }
    dict.column_labels.push_back(sample.label);
  }
  dict.masks = build_class_masks(dict.column_labels, n_train);
  return dict;
}

StoppingRule default_stopping_rule(const GridSpec& grid) {
  return ExactSparsity{grid.patch_len()};
}

namespace {

std::string pick_majority(const std::map<std::string, int>& votes,
                          const std::map<std::string, double>& residual_sums) {
  int top = 0;
  for (const auto& [label, count] : votes) top = std::max(top, count);
  std::string best;
  double best_residual = 0.0;
  bool first = true;
  // Maps iterate in label order, so the final tie level is lexicographic.
  for (const auto& [label, count] : votes) {
    if (count != top) continue;
    const double r = residual_sums.at(label);
    if (first || r < best_residual) {
      best = label;
      best_residual = r;
      first = false;
    }
  }
  return best;
}

}  // namespace

ImagePrediction classify_image(const Dictionary& dict, const Image& img,
                               const StoppingRule& rule) {
  if (dict.per_patch.empty() || dict.column_labels.empty()) {
    throw InvalidArgumentError("classify_image: empty dictionary");
  }
  const GridSpec& grid = dict.grid;
  const Image resized = downsample(img, grid.width, grid.height);
  const std::vector<Vec> patches = partition_grid(resized, grid);

  ImagePrediction prediction;
  prediction.per_patch.reserve(patches.size());
  for (const ClassMask& mask : dict.masks) {
    prediction.votes[mask.label] = 0;
    prediction.residual_sums[mask.label] = 0.0;
  }

  for (std::size_t p = 0; p < patches.size(); ++p) {
    const Vec patch = normalize_l2(patches[p]);
    const SparseCode code = omp_solve(dict.per_patch[p], patch, rule);
    const ClassResidualTable table =
        classify_patch(dict.per_patch[p], code, patch, dict.masks);
    prediction.votes[table.predicted] += 1;
    for (const auto& [label, r] : table.residuals) {
      prediction.residual_sums[label] += r;
    }
    prediction.per_patch.emplace_back(int(p), table.predicted);
  }
  prediction.predicted =
      pick_majority(prediction.votes, prediction.residual_sums);
  return prediction;
}

EvaluationReport evaluate(const Dictionary& dict,
                          const std::vector<LabeledImage>& test,
                          const StoppingRule& rule, int threads) {
  if (test.empty()) {
    throw InvalidArgumentError("evaluate: empty test set");
  }
  if (threads < 0) {
    throw InvalidArgumentError("evaluate: thread count must be >= 0");
  }
  unsigned n_threads = threads == 0
                           ? std::max(1u, std::thread::hardware_concurrency())
                           : unsigned(threads);
  n_threads = std::min<unsigned>(n_threads, unsigned(test.size()));

  std::vector<ImagePrediction> predictions(test.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        ImagePrediction pred = classify_image(dict, test[i].image, rule);
        pred.id = test[i].id.empty() ? std::to_string(i) : test[i].id;
        pred.true_label = test[i].label;
        predictions[i] = std::move(pred);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (n_threads <= 1) {
    worker(0, test.size());
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (test.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::size_t begin = std::size_t(t) * chunk;
      const std::size_t end = std::min(test.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Index-ordered aggregation: identical results for any thread count.
  EvaluationReport report;
  report.n_images = int(test.size());
  std::map<std::string, std::pair<int, int>> per_class;  // correct, total
  int correct = 0;
  for (const ImagePrediction& pred : predictions) {
    auto& [class_correct, class_total] = per_class[*pred.true_label];
    ++class_total;
    if (pred.predicted == *pred.true_label) {
      ++correct;
      ++class_correct;
    }
  }
  report.global_accuracy = double(correct) / double(test.size());
  for (const auto& [label, counts] : per_class) {
    report.per_class_accuracy[label] =
        double(counts.first) / double(counts.second);
  }
  report.predictions = std::move(predictions);
  return report;
}

}  // namespace sparsekit
