#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparsekit/image.hpp"

namespace sparsekit {

/// Sample identity parsed from an AR-convention filename
/// "<gender>-<person>-<img_idx>.<ext>", e.g. "m-001-01.pgm".
struct SampleMeta {
  char gender = 'm';   // 'm' | 'w'
  int person = 0;      // positive
  int img_idx = 0;     // 1..26
  std::string label;   // "<gender>-<person zero-padded to 3>"
};

/// Parses the stem of an AR-convention filename. The extension is ignored.
/// Malformed names raise ParseError naming the offending component.
SampleMeta parse_filename(std::string_view filename);

/// Session ids 1..7 and 14..20 are training images; 8..13 and 21..26 are
/// test images. The two sets partition 1..26.
bool is_train_id(int img_idx);
bool is_test_id(int img_idx);

/// Partitions samples into (train, test) by image id. Each side is sorted
/// by label, then img_idx.
std::pair<std::vector<SampleMeta>, std::vector<SampleMeta>> split(
    std::vector<SampleMeta> samples);

/// Configuration of the synthetic occluded-image generator. Each class is
/// an affine subspace model: a per-class mean image (uniform in
/// [0.3, 0.7] per pixel) plus subspace_dim basis images (uniform in
/// [-1, 1] per pixel); a sample is mean + sum of uniformly weighted basis
/// images (weights bounded by 0.3 / subspace_dim, so noise-free renders
/// stay inside [0, 1]) plus Gaussian pixel noise, clipped to [0, 1]. Test
/// images additionally get a constant horizontal band over the bottom
/// occlusion_fraction of rows, emulating a mask.
struct SynthConfig {
  int n_classes = 10;
  int n_train_per_class = 14;  // at most 14 (AR-convention session ids)
  int n_test_per_class = 12;   // at most 12
  int width = 55;
  int height = 66;
  int subspace_dim = 4;
  double noise_sigma = 0.05;
  double occlusion_fraction = 0.3;  // in [0, 1)
  std::uint64_t seed = 42;
};

/// Pixel value written into the occlusion band.
inline constexpr double kOcclusionValue = 0.0;

/// Combined weight budget of the basis images; per-axis weights are
/// uniform in [-kSynthWeightBound / subspace_dim, +...].
inline constexpr double kSynthWeightBound = 0.3;

/// The affine model of one generated class, kept for verification.
struct ClassModel {
  std::string label;
  std::vector<double> mean;                // row-major, width * height
  std::vector<std::vector<double>> basis;  // subspace_dim images
};

struct SyntheticDataset {
  std::vector<LabeledImage> train;
  std::vector<LabeledImage> test;
  std::vector<ClassModel> models;  // one per class
};

/// Deterministic synthetic dataset: identical config (including seed)
/// yields bit-identical images. Class c gets label "m-xxx" (c even) or
/// "w-xxx" (c odd) with person number c+1; image ids follow the AR naming
/// scheme so the generated set round-trips through parse_filename/split.
SyntheticDataset generate_synthetic(const SynthConfig& cfg);

/// Writes the dataset as "<id>.pgm" files under dir/train and dir/test.
void write_pgm_tree(const SyntheticDataset& data,
                    const std::filesystem::path& dir);

enum class SplitFilter { All, TrainIds, TestIds };

/// Loads every *.pgm file in dir (non-recursive), parsing AR-convention
/// names for labels and optionally keeping only train or test session ids.
/// The result is sorted by label, then img_idx.
std::vector<LabeledImage> load_directory(const std::filesystem::path& dir,
                                         SplitFilter filter = SplitFilter::All);

}  // namespace sparsekit
