#include "sparsekit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <map>
#include <set>

#include "sparsekit/dataset.hpp"
#include "sparsekit/random.hpp"
#include "support.hpp"

using namespace sparsekit;

namespace {

Image random_image(Rng& rng, int w, int h) {
  Image img(w, h);
  for (double& p : img.pixels) p = rng.uniform01();
  return img;
}

SynthConfig small_synth_config() {
  SynthConfig cfg;
  cfg.n_classes = 3;
  cfg.n_train_per_class = 4;
  cfg.n_test_per_class = 3;
  cfg.width = 12;
  cfg.height = 12;
  cfg.subspace_dim = 2;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("GridSpec geometry and validation") {
  const GridSpec grid{55, 66, 11, 11};
  CHECK(grid.grid_w() == 5);
  CHECK(grid.grid_h() == 6);
  CHECK(grid.patch_count() == 121);
  CHECK(grid.patch_len() == 30);
  grid.validate();

  CHECK_THROWS_AS((GridSpec{10, 10, 0, 2}.validate()), InvalidArgumentError);
  CHECK_THROWS_AS((GridSpec{10, 10, 11, 2}.validate()), InvalidArgumentError);
  CHECK_THROWS_AS((GridSpec{0, 10, 1, 1}.validate()), InvalidArgumentError);
}

TEST_CASE("partition_grid at the reference geometry: 121 patches of 30 pixels") {
  Rng rng(411);
  const Image img = random_image(rng, 55, 66);
  const auto patches = partition_grid(img, GridSpec{55, 66, 11, 11});
  REQUIRE(patches.size() == 121);
  for (const Vec& patch : patches) {
    CHECK(patch.size() == 30);
  }
}

TEST_CASE("partition_grid with a 1x1 grid flattens the whole image") {
  Rng rng(422);
  const Image img = random_image(rng, 4, 3);
  const auto patches = partition_grid(img, GridSpec{4, 3, 1, 1});
  REQUIRE(patches.size() == 1);
  REQUIRE(patches[0].size() == 12);
  // Row-major flattening: rows concatenated top to bottom.
  Index idx = 0;
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 4; ++x) {
      CHECK(patches[0][idx++] == img.at(x, y));
    }
  }
}

TEST_CASE("partition_grid partitions every pixel exactly once") {
  Image img(4, 4);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = double(i);  // all distinct
  }
  const auto patches = partition_grid(img, GridSpec{4, 4, 2, 2});
  REQUIRE(patches.size() == 4);
  std::multiset<double> seen;
  for (const Vec& patch : patches) {
    REQUIRE(patch.size() == 4);
    for (Index i = 0; i < patch.size(); ++i) seen.insert(patch[i]);
  }
  std::multiset<double> expected(img.pixels.begin(), img.pixels.end());
  CHECK(seen == expected);
}

TEST_CASE("partition_grid patch indexing follows i * y_n + j") {
  // 2x2 grid on a 4x4 image: patch index = i (width axis) * y_n + j.
  Image img(4, 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      img.at(x, y) = double(10 * (x / 2) + (y / 2));  // block id
    }
  }
  const auto patches = partition_grid(img, GridSpec{4, 4, 2, 2});
  CHECK(patches[0][0] == 0.0);   // i=0, j=0
  CHECK(patches[1][0] == 1.0);   // i=0, j=1
  CHECK(patches[2][0] == 10.0);  // i=1, j=0
  CHECK(patches[3][0] == 11.0);  // i=1, j=1
}

TEST_CASE("partition_grid discards trailing pixels on inexact grids") {
  Rng rng(433);
  const Image img = random_image(rng, 5, 5);
  const auto patches = partition_grid(img, GridSpec{5, 5, 2, 2});
  REQUIRE(patches.size() == 4);
  for (const Vec& patch : patches) CHECK(patch.size() == 4);
}

TEST_CASE("partition_grid rejects mismatched dimensions") {
  Rng rng(444);
  const Image img = random_image(rng, 6, 6);
  CHECK_THROWS_AS(partition_grid(img, GridSpec{5, 6, 1, 1}), DimensionError);
}

TEST_CASE("build_dictionary shapes, labels and unit columns") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);

  CHECK(dict.n_train() == 12);
  CHECK(dict.n_classes() == 3);
  REQUIRE(dict.per_patch.size() == 9);
  for (const Mat& mat : dict.per_patch) {
    CHECK(mat.rows() == 16);
    CHECK(mat.cols() == 12);
    for (Index c = 0; c < mat.cols(); ++c) {
      const double norm = mat.col(c).norm();
      CHECK(((std::abs(norm - 1.0) <= 1e-9) || norm == 0.0));
    }
  }
  // Column order mirrors the training order; masks have one entry per
  // class with the per-class column count.
  for (std::size_t j = 0; j < data.train.size(); ++j) {
    CHECK(dict.column_labels[j] == data.train[j].label);
  }
  for (const ClassMask& mask : dict.masks) {
    CHECK(mask.indicator.sum() == doctest::Approx(4.0));
  }
}

TEST_CASE("build_dictionary single image, 1x1 grid") {
  Rng rng(455);
  const std::vector<LabeledImage> training = {
      LabeledImage{random_image(rng, 3, 3), "only", "only-1"}};
  const Dictionary dict = build_dictionary(training, GridSpec{3, 3, 1, 1});
  REQUIRE(dict.per_patch.size() == 1);
  CHECK(dict.per_patch[0].cols() == 1);
  CHECK(dict.per_patch[0].col(0).norm() == doctest::Approx(1.0));
}

TEST_CASE("build_dictionary rejects an empty training set") {
  CHECK_THROWS_AS(build_dictionary({}, GridSpec{4, 4, 2, 2}),
                  InvalidArgumentError);
}

TEST_CASE("default stopping rule runs the full patch dimension") {
  const GridSpec grid{55, 66, 11, 11};
  const StoppingRule rule = default_stopping_rule(grid);
  const auto* sparsity = std::get_if<ExactSparsity>(&rule);
  REQUIRE(sparsity != nullptr);
  CHECK(sparsity->sparsity == 30);
}

TEST_CASE("classify_image votes for the training class on exact copies") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);

  for (std::size_t i = 0; i < data.train.size(); i += 5) {
    const ImagePrediction pred = classify_image(
        dict, data.train[i].image, default_stopping_rule(grid));
    CHECK(pred.predicted == data.train[i].label);
    // Every patch has an exact atom, so every vote agrees.
    CHECK(pred.votes.at(data.train[i].label) == grid.patch_count());
    // Vote conservation.
    int total = 0;
    for (const auto& [label, count] : pred.votes) total += count;
    CHECK(total == grid.patch_count());
    CHECK(pred.per_patch.size() == std::size_t(grid.patch_count()));
  }
}

TEST_CASE("classify_image resizes foreign-sized inputs") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);
  // Upscale a training image; classification should still succeed via the
  // internal downsample.
  const Image big = downsample(data.train[0].image, 24, 24);
  const ImagePrediction pred =
      classify_image(dict, big, default_stopping_rule(grid));
  CHECK(pred.predicted == data.train[0].label);
}

TEST_CASE("majority voting prefers the most voted label") {
  // Toy 3-patch dictionary engineered so patch votes split A:2 B:1. The
  // test image is (1, 0) in every patch; in patches 0 and 1 that matches
  // class A's column, in patch 2 it matches class B's column.
  Mat patch_a(2, 2), patch_c(2, 2);
  patch_a << 1, 0, 0, 1;  // col 0 = (1,0) class A, col 1 = (0,1) class B
  patch_c << 0, 1, 1, 0;  // col 0 = (0,1) class A, col 1 = (1,0) class B
  Dictionary dict;
  dict.grid = GridSpec{3, 2, 3, 1};  // three 1x2 patches
  REQUIRE(dict.grid.patch_len() == 2);
  dict.per_patch = {patch_a, patch_a, patch_c};
  dict.column_labels = {"A", "B"};
  dict.masks = build_class_masks(dict.column_labels, 2);

  Image img(3, 2);
  for (int x = 0; x < 3; ++x) {
    img.at(x, 0) = 1.0;
    img.at(x, 1) = 0.0;
  }

  const ImagePrediction pred = classify_image(dict, img, Noiseless{});
  CHECK(pred.votes.at("A") == 2);
  CHECK(pred.votes.at("B") == 1);
  CHECK(pred.predicted == "A");
}

TEST_CASE("vote ties break on the smaller residual sum, then the label") {
  // Two 1x2 patches; class A matches patch 0 exactly, class B matches
  // patch 1; each image below splits the votes 1:1.
  Mat patch0(2, 2), patch1(2, 2);
  patch0 << 1, 0, 0, 1;  // col 0 = A = (1,0), col 1 = B = (0,1)
  patch1 << 0, 1, 1, 0;  // col 0 = A = (0,1), col 1 = B = (1,0)
  Dictionary dict;
  dict.grid = GridSpec{2, 2, 2, 1};
  dict.per_patch = {patch0, patch1};
  dict.column_labels = {"A", "B"};
  dict.masks = build_class_masks(dict.column_labels, 2);
  const StoppingRule rule = default_stopping_rule(dict.grid);

  const auto image_with_patches = [](double a0, double a1, double b0,
                                     double b1) {
    Image img(2, 2);
    img.at(0, 0) = a0;  // patch 0 = (a0, a1)
    img.at(0, 1) = a1;
    img.at(1, 0) = b0;  // patch 1 = (b0, b1)
    img.at(1, 1) = b1;
    return img;
  };

  // Patch 0 hits A perfectly; patch 1 votes B with a worse fit, so A's
  // residual sum (0 + 0.96) beats B's (1 + 0.28).
  const ImagePrediction a_wins = classify_image(
      dict, image_with_patches(1.0, 0.0, 0.96, 0.28), rule);
  CHECK(a_wins.votes.at("A") == 1);
  CHECK(a_wins.votes.at("B") == 1);
  CHECK(a_wins.predicted == "A");

  // Mirrored: patch 1 hits B perfectly, so B's sum wins the tie.
  const ImagePrediction b_wins = classify_image(
      dict, image_with_patches(0.96, 0.28, 1.0, 0.0), rule);
  CHECK(b_wins.votes.at("A") == 1);
  CHECK(b_wins.votes.at("B") == 1);
  CHECK(b_wins.predicted == "B");

  // Fully symmetric: equal votes and equal residual sums fall to the
  // lexicographically smallest label.
  const ImagePrediction lexicographic = classify_image(
      dict, image_with_patches(1.0, 0.0, 1.0, 0.0), rule);
  CHECK(lexicographic.votes.at("A") == 1);
  CHECK(lexicographic.votes.at("B") == 1);
  CHECK(lexicographic.residual_sums.at("A") ==
        doctest::Approx(lexicographic.residual_sums.at("B")));
  CHECK(lexicographic.predicted == "A");
}

TEST_CASE("evaluate on the training set is perfect") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);
  const EvaluationReport report =
      evaluate(dict, data.train, default_stopping_rule(grid), 1);
  CHECK(report.global_accuracy == 1.0);
  CHECK(report.n_images == int(data.train.size()));
  for (const auto& [label, acc] : report.per_class_accuracy) {
    CHECK(acc == 1.0);
  }
}

TEST_CASE("evaluate aggregates per-class accuracy over that class only") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);
  const EvaluationReport report =
      evaluate(dict, data.test, default_stopping_rule(grid), 1);
  CHECK(report.n_images == int(data.test.size()));
  double weighted = 0.0;
  for (const auto& [label, acc] : report.per_class_accuracy) {
    weighted += acc * 3.0;  // 3 test images per class
  }
  CHECK(report.global_accuracy ==
        doctest::Approx(weighted / double(data.test.size())));
}

TEST_CASE("evaluate is identical across thread counts") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);
  const StoppingRule rule = default_stopping_rule(grid);

  const EvaluationReport single = evaluate(dict, data.test, rule, 1);
  const EvaluationReport quad = evaluate(dict, data.test, rule, 4);
  const EvaluationReport autod = evaluate(dict, data.test, rule, 0);

  REQUIRE(single.predictions.size() == quad.predictions.size());
  for (std::size_t i = 0; i < single.predictions.size(); ++i) {
    CHECK(single.predictions[i].predicted == quad.predictions[i].predicted);
    CHECK(single.predictions[i].votes == quad.predictions[i].votes);
    CHECK(single.predictions[i].residual_sums ==
          quad.predictions[i].residual_sums);
    CHECK(single.predictions[i].predicted == autod.predictions[i].predicted);
  }
  CHECK(single.global_accuracy == quad.global_accuracy);
  CHECK(single.per_class_accuracy == quad.per_class_accuracy);
}

TEST_CASE("evaluate rejects an empty test set") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);
  CHECK_THROWS_AS(evaluate(dict, {}, default_stopping_rule(grid), 1),
                  InvalidArgumentError);
  CHECK_THROWS_AS(evaluate(dict, data.test, default_stopping_rule(grid), -1),
                  InvalidArgumentError);
}

TEST_CASE("zero test patches fall back to the smallest label deterministically") {
  const SyntheticDataset data = generate_synthetic(small_synth_config());
  const GridSpec grid{12, 12, 3, 3};
  const Dictionary dict = build_dictionary(data.train, grid);
  Image black(12, 12);  // all zeros: every patch is degenerate
  const ImagePrediction pred =
      classify_image(dict, black, default_stopping_rule(grid));
  // All votes land on the lexicographically smallest label.
  CHECK(pred.predicted == dict.masks.front().label);
  CHECK(pred.votes.at(pred.predicted) == grid.patch_count());
}
