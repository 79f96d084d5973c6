#include "sparsekit/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "sparsekit/random.hpp"

namespace sparsekit {

namespace {

constexpr std::array<int, 14> kTrainIds = {1, 2, 3,  4,  5,  6,  7,
                                           14, 15, 16, 17, 18, 19, 20};
constexpr std::array<int, 12> kTestIds = {8,  9,  10, 11, 12, 13,
                                          21, 22, 23, 24, 25, 26};

std::string make_label(char gender, int person) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c-%03d", gender, person);
  return buf;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

}  // namespace

SampleMeta parse_filename(std::string_view filename) {
  std::string_view stem = filename;
  if (const auto dot = stem.rfind('.'); dot != std::string_view::npos) {
    stem = stem.substr(0, dot);
  }
  const auto first = stem.find('-');
  const auto second =
      first == std::string_view::npos ? std::string_view::npos
                                      : stem.find('-', first + 1);
  if (first == std::string_view::npos || second == std::string_view::npos ||
      stem.find('-', second + 1) != std::string_view::npos) {
    throw ParseError("filename '" + std::string(filename) +
                     "': expected <gender>-<person>-<id>");
  }
  const std::string_view gender_part = stem.substr(0, first);
  const std::string_view person_part = stem.substr(first + 1,
                                                   second - first - 1);
  const std::string_view id_part = stem.substr(second + 1);

  if (gender_part != "m" && gender_part != "w") {
    throw ParseError("filename '" + std::string(filename) +
                     "': invalid gender code '" + std::string(gender_part) +
                     "' (expected 'm' or 'w')");
  }
  if (!all_digits(person_part) || person_part.size() > 6) {
    throw ParseError("filename '" + std::string(filename) +
                     "': invalid person number '" + std::string(person_part) +
                     "'");
  }
  const int person = std::stoi(std::string(person_part));
  if (person < 1) {
    throw ParseError("filename '" + std::string(filename) +
                     "': person number must be positive");
  }
  if (!all_digits(id_part) || id_part.size() > 6) {
    throw ParseError("filename '" + std::string(filename) +
                     "': invalid image id '" + std::string(id_part) + "'");
  }
  const int img_idx = std::stoi(std::string(id_part));
  if (img_idx < 1 || img_idx > 26) {
    throw ParseError("filename '" + std::string(filename) + "': image id " +
                     std::to_string(img_idx) + " outside 1..26");
  }

  SampleMeta meta;
  meta.gender = gender_part[0];
  meta.person = person;
  meta.img_idx = img_idx;
  meta.label = make_label(meta.gender, meta.person);
  return meta;
}

bool is_train_id(int img_idx) {
  return (img_idx >= 1 && img_idx <= 7) || (img_idx >= 14 && img_idx <= 20);
}

bool is_test_id(int img_idx) {
  return (img_idx >= 8 && img_idx <= 13) || (img_idx >= 21 && img_idx <= 26);
}

std::pair<std::vector<SampleMeta>, std::vector<SampleMeta>> split(
    std::vector<SampleMeta> samples) {
  const auto order = [](const SampleMeta& a, const SampleMeta& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.img_idx < b.img_idx;
  };
  std::sort(samples.begin(), samples.end(), order);
  std::vector<SampleMeta> train;
  std::vector<SampleMeta> test;
  for (auto& s : samples) {
    if (is_train_id(s.img_idx)) {
      train.push_back(std::move(s));
    } else {
      test.push_back(std::move(s));
    }
  }
  return {std::move(train), std::move(test)};
}

namespace {

void validate(const SynthConfig& cfg) {
  if (cfg.n_classes < 1) {
    throw InvalidArgumentError("SynthConfig: n_classes must be >= 1");
  }
  if (cfg.n_train_per_class < 1 ||
      cfg.n_train_per_class > int(kTrainIds.size())) {
    throw InvalidArgumentError(
        "SynthConfig: n_train_per_class must be 1..14 (AR session ids)");
  }
  if (cfg.n_test_per_class < 1 || cfg.n_test_per_class > int(kTestIds.size())) {
    throw InvalidArgumentError(
        "SynthConfig: n_test_per_class must be 1..12 (AR session ids)");
  }
  if (cfg.width < 1 || cfg.height < 1) {
    throw InvalidArgumentError("SynthConfig: image dimensions must be >= 1");
  }
  if (cfg.subspace_dim < 1 ||
      cfg.subspace_dim > cfg.width * cfg.height) {
    throw InvalidArgumentError(
        "SynthConfig: subspace_dim must be in 1..width*height");
  }
  if (!(cfg.noise_sigma >= 0.0)) {
    throw InvalidArgumentError("SynthConfig: noise_sigma must be >= 0");
  }
  if (!(cfg.occlusion_fraction >= 0.0) || cfg.occlusion_fraction >= 1.0) {
    throw InvalidArgumentError(
        "SynthConfig: occlusion_fraction must be in [0, 1)");
  }
}

std::string image_id(const std::string& label, int img_idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "-%02d", img_idx);
  return label + buf;
}

}  // namespace

SyntheticDataset generate_synthetic(const SynthConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  const int n_pixels = cfg.width * cfg.height;
  const double weight_bound = kSynthWeightBound / double(cfg.subspace_dim);

  SyntheticDataset data;
  data.train.reserve(std::size_t(cfg.n_classes) * cfg.n_train_per_class);
  data.test.reserve(std::size_t(cfg.n_classes) * cfg.n_test_per_class);
  data.models.reserve(std::size_t(cfg.n_classes));

  const int occluded_rows =
      int(std::lround(cfg.occlusion_fraction * cfg.height));

  for (int c = 0; c < cfg.n_classes; ++c) {
    const char gender = (c % 2 == 0) ? 'm' : 'w';
    const std::string label = make_label(gender, c + 1);

    ClassModel model;
    model.label = label;
    model.mean.resize(std::size_t(n_pixels));
    for (double& v : model.mean) v = rng.uniform(0.3, 0.7);
    model.basis.assign(std::size_t(cfg.subspace_dim),
                       std::vector<double>(std::size_t(n_pixels)));
    for (auto& basis_image : model.basis) {
      for (double& v : basis_image) v = rng.uniform(-1.0, 1.0);
    }

    // Weights are bounded so that the noise-free render always stays in
    // [0, 1]; clipping only ever acts on the added noise.
    const auto render = [&]() {
      Image img(cfg.width, cfg.height);
      std::vector<double> weights(std::size_t(cfg.subspace_dim));
      for (double& w : weights) w = rng.uniform(-weight_bound, weight_bound);
      for (int i = 0; i < n_pixels; ++i) {
        double v = model.mean[std::size_t(i)];
        for (int k = 0; k < cfg.subspace_dim; ++k) {
          v += weights[std::size_t(k)] * model.basis[std::size_t(k)][std::size_t(i)];
        }
        v += rng.gaussian() * cfg.noise_sigma;
        img.pixels[std::size_t(i)] = std::clamp(v, 0.0, 1.0);
      }
      return img;
    };

    for (int t = 0; t < cfg.n_train_per_class; ++t) {
      data.train.push_back(LabeledImage{
          render(), label, image_id(label, kTrainIds[std::size_t(t)])});
    }
    for (int t = 0; t < cfg.n_test_per_class; ++t) {
      Image img = render();
      for (int y = cfg.height - occluded_rows; y < cfg.height; ++y) {
        for (int x = 0; x < cfg.width; ++x) {
          img.at(x, y) = kOcclusionValue;
        }
      }
      data.test.push_back(LabeledImage{
          std::move(img), label, image_id(label, kTestIds[std::size_t(t)])});
    }
    data.models.push_back(std::move(model));
  }
  return data;
}

void write_pgm_tree(const SyntheticDataset& data,
                    const std::filesystem::path& dir) {
  for (const char* side : {"train", "test"}) {
    std::error_code ec;
    std::filesystem::create_directories(dir / side, ec);
    if (ec) {
      throw IoError("cannot create " + (dir / side).string() + ": " +
                    ec.message());
    }
  }
  for (const LabeledImage& sample : data.train) {
    save_pgm(sample.image, dir / "train" / (sample.id + ".pgm"));
  }
  for (const LabeledImage& sample : data.test) {
    save_pgm(sample.image, dir / "test" / (sample.id + ".pgm"));
  }
}

std::vector<LabeledImage> load_directory(const std::filesystem::path& dir,
                                         SplitFilter filter) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError(dir.string() + " is not a readable directory");
  }
  struct Entry {
    SampleMeta meta;
    std::filesystem::path path;
    std::string stem;
  };
  std::vector<Entry> entries;
  for (const auto& item : std::filesystem::directory_iterator(dir)) {
    if (!item.is_regular_file()) continue;
    std::string ext = item.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
      return char(std::tolower(c));
    });
    if (ext != ".pgm") continue;
    const std::string name = item.path().filename().string();
    Entry e{parse_filename(name), item.path(), item.path().stem().string()};
    if (filter == SplitFilter::TrainIds && !is_train_id(e.meta.img_idx)) {
      continue;
    }
    if (filter == SplitFilter::TestIds && !is_test_id(e.meta.img_idx)) {
      continue;
    }
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a,
                                               const Entry& b) {
    if (a.meta.label != b.meta.label) return a.meta.label < b.meta.label;
    if (a.meta.img_idx != b.meta.img_idx) return a.meta.img_idx < b.meta.img_idx;
    return a.stem < b.stem;
  });
  std::vector<LabeledImage> images;
  images.reserve(entries.size());
  for (const Entry& e : entries) {
    images.push_back(LabeledImage{load_pgm(e.path), e.meta.label, e.stem});
  }
  return images;
}

}  // namespace sparsekit
