// sparsekit command-line tool: dictionary building, patch-voting image
// classification, dataset evaluation and synthetic dataset generation.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsekit/dataset.hpp"
#include "sparsekit/dictionary_io.hpp"
#include "sparsekit/pipeline.hpp"
#include "sparsekit/report.hpp"

namespace fs = std::filesystem;
using namespace sparsekit;

namespace {

struct RunConfig {
  std::string data_dir;
  std::string dict_path;
  int width = 55;
  int height = 66;
  int x_n = 11;
  int y_n = 11;
  std::string rule = "full";
  std::string split = "all";
  std::string format = "csv";
  std::uint64_t seed = 42;
  int threads = 0;  // 0 = auto
};

SplitFilter parse_split(const std::string& text) {
  if (text == "all") return SplitFilter::All;
  if (text == "train") return SplitFilter::TrainIds;
  if (text == "test") return SplitFilter::TestIds;
  throw ParseError("unknown --ar-split value '" + text +
                   "' (expected all, train or test)");
}

// "full" | "sparsity:K" | "residual:T" | "noiseless[:EPS]"
StoppingRule parse_rule(const std::string& text, const GridSpec& grid) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "full") {
      if (!arg.empty()) throw ParseError("");
      return default_stopping_rule(grid);
    }
    if (head == "sparsity") {
      return ExactSparsity{std::stol(arg)};
    }
    if (head == "residual") {
      return ResidualBound{std::stod(arg)};
    }
    if (head == "noiseless") {
      if (arg.empty()) return Noiseless{};
      return Noiseless{std::stod(arg)};
    }
  } catch (const ParseError&) {
  } catch (const std::exception&) {
  }
  throw ParseError("bad --rule '" + text +
                   "' (expected full, sparsity:K, residual:T or "
                   "noiseless[:EPS])");
}

GridSpec make_grid(const RunConfig& cfg) {
  GridSpec grid{cfg.width, cfg.height, cfg.x_n, cfg.y_n};
  grid.validate();
  return grid;
}

std::vector<LabeledImage> load_images(const RunConfig& cfg,
                                      const char* what = "samples") {
  auto images = load_directory(cfg.data_dir, parse_split(cfg.split));
  if (images.empty()) {
    throw InvalidArgumentError(std::string("no ") + what +
                               ": no matching .pgm files in " + cfg.data_dir);
  }
  return images;
}

int cmd_build_dict(const RunConfig& cfg) {
  const GridSpec grid = make_grid(cfg);
  const auto training = load_images(cfg, "training samples");
  const Dictionary dict = build_dictionary(training, grid);
  save_dictionary(dict, cfg.dict_path);
  std::printf("classes: %ld\n", long(dict.n_classes()));
  std::printf("train_samples: %ld\n", long(dict.n_train()));
  std::printf("patch: %dx%d pixels, %d patches\n", grid.grid_w(),
              grid.grid_h(), grid.patch_count());
  std::printf("wrote %s\n", cfg.dict_path.c_str());
  return 0;
}

void write_report_file(const EvaluationReport& report, ReportFormat format,
                       const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  write_report(report, format, out);
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

EvaluationReport run_evaluation(const Dictionary& dict,
                                const std::vector<LabeledImage>& test,
                                const RunConfig& cfg) {
  const StoppingRule rule = parse_rule(cfg.rule, dict.grid);
  const auto start = std::chrono::steady_clock::now();
  EvaluationReport report = evaluate(dict, test, rule, cfg.threads);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  std::fprintf(stderr, "evaluated %d images in %.2f s (%.1f ms/image)\n",
               report.n_images, elapsed.count(),
               1000.0 * elapsed.count() / report.n_images);
  return report;
}

fs::path report_path_for_grid(const fs::path& base, const GridSpec& grid) {
  fs::path with_suffix = base;
  const std::string stem = base.stem().string();
  const std::string ext = base.extension().string();
  with_suffix.replace_filename(stem + "-" + std::to_string(grid.x_n) + "x" +
                               std::to_string(grid.y_n) + ext);
  return with_suffix;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& report_path,
                 const std::vector<std::string>& grids,
                 const std::string& train_dir) {
  const ReportFormat format = parse_report_format(cfg.format);
  const auto test = load_images(cfg);

  if (grids.empty()) {
    const Dictionary dict = load_dictionary(cfg.dict_path);
    const EvaluationReport report = run_evaluation(dict, test, cfg);
    write_report_file(report, format, report_path);
    std::printf("global_accuracy %.4f\n", report.global_accuracy);
    return 0;
  }

  // Ablation mode: one dictionary + report per grid configuration.
  if (train_dir.empty()) {
    throw InvalidArgumentError("--grid requires --train-dir");
  }
  RunConfig train_cfg = cfg;
  train_cfg.data_dir = train_dir;
  const auto training = load_images(train_cfg, "training samples");
  for (const std::string& text : grids) {
    const auto x = text.find('x');
    GridSpec grid{cfg.width, cfg.height, 0, 0};
    try {
      grid.x_n = std::stoi(text.substr(0, x));
      grid.y_n = std::stoi(text.substr(x + 1));
    } catch (const std::exception&) {
      throw ParseError("bad --grid '" + text + "' (expected XxY)");
    }
    grid.validate();
    const Dictionary dict = build_dictionary(training, grid);
    const EvaluationReport report = run_evaluation(dict, test, cfg);
    const fs::path path = report_path_for_grid(report_path, grid);
    write_report_file(report, format, path);
    std::printf("grid %dx%d global_accuracy %.4f\n", grid.x_n, grid.y_n,
                report.global_accuracy);
  }
  return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& image_path) {
  const Dictionary dict = load_dictionary(cfg.dict_path);
  const Image image = load_pgm(image_path);
  const StoppingRule rule = parse_rule(cfg.rule, dict.grid);
  const ImagePrediction pred = classify_image(dict, image, rule);

  std::printf("predicted: %s\n", pred.predicted.c_str());
  std::vector<std::pair<std::string, int>> votes(pred.votes.begin(),
                                                 pred.votes.end());
  std::sort(votes.begin(), votes.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::printf("votes:");
  for (const auto& [label, count] : votes) {
    if (count == 0) continue;
    std::printf(" %s=%d", label.c_str(), count);
  }
  std::printf("\n");
  std::printf("residuals:");
  for (const auto& [label, total] : pred.residual_sums) {
    std::printf(" %s=%.6f", label.c_str(), total);
  }
  std::printf("\n");
  return 0;
}

int cmd_synth_gen(const SynthConfig& cfg, const std::string& out_dir) {
  const SyntheticDataset data = generate_synthetic(cfg);
  write_pgm_tree(data, out_dir);
  std::printf("classes: %d\n", cfg.n_classes);
  std::printf("train_files: %zu\n", data.train.size());
  std::printf("test_files: %zu\n", data.test.size());
  std::printf("wrote %s\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sparsekit: greedy sparse approximation and patch-voting image "
      "classification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file");
  app.get_config_formatter_base()->comment('#');

  RunConfig cfg;
  app.add_option("--threads", cfg.threads,
                 "Worker threads for evaluation (0 = hardware count)")
      ->envname("SPARSEKIT_THREADS");

  const auto add_grid_options = [&cfg](CLI::App* cmd) {
    cmd->add_option("--width", cfg.width, "Downsample width in pixels")
        ->capture_default_str();
    cmd->add_option("--height", cfg.height, "Downsample height in pixels")
        ->capture_default_str();
    cmd->add_option("--grid-x", cfg.x_n, "Grid count along the width")
        ->capture_default_str();
    cmd->add_option("--grid-y", cfg.y_n, "Grid count along the height")
        ->capture_default_str();
  };
  const auto add_split_option = [&cfg](CLI::App* cmd) {
    cmd->add_option("--ar-split", cfg.split,
                    "Keep only AR session ids: all, train or test")
        ->capture_default_str();
  };
  const auto add_rule_option = [&cfg](CLI::App* cmd) {
    cmd->add_option("--rule", cfg.rule,
                    "Stopping rule: full, sparsity:K, residual:T, "
                    "noiseless[:EPS]")
        ->capture_default_str();
  };

  CLI::App* build = app.add_subcommand(
      "build-dict", "Build a per-patch dictionary from training images");
  build->add_option("--data-dir", cfg.data_dir, "Directory of .pgm images")
      ->required();
  build->add_option("--dict", cfg.dict_path, "Output dictionary file")
      ->required();
  add_grid_options(build);
  add_split_option(build);

  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "Classify a labeled test directory and write a report");
  evaluate_cmd->add_option("--data-dir", cfg.data_dir,
                           "Directory of labeled test images")
      ->required();
  evaluate_cmd->add_option("--dict", cfg.dict_path, "Dictionary file");
  std::string report_path = "report.csv";
  evaluate_cmd->add_option("--report", report_path, "Report output path")
      ->capture_default_str();
  evaluate_cmd->add_option("--format", cfg.format, "Report format: csv or json")
      ->capture_default_str();
  std::vector<std::string> ablation_grids;
  evaluate_cmd->add_option(
      "--grid", ablation_grids,
      "Grid XxY; may repeat to emit one report per configuration "
      "(requires --train-dir)");
  std::string train_dir;
  evaluate_cmd->add_option("--train-dir", train_dir,
                           "Training directory for --grid ablation runs");
  add_grid_options(evaluate_cmd);
  add_split_option(evaluate_cmd);
  add_rule_option(evaluate_cmd);

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Classify a single image");
  classify_cmd->add_option("--dict", cfg.dict_path, "Dictionary file")
      ->required();
  add_rule_option(classify_cmd);
  std::string image_path;
  classify_cmd->add_option("image", image_path, "Image to classify (.pgm)")
      ->required();

  CLI::App* synth = app.add_subcommand(
      "synth-gen", "Generate a seeded synthetic occluded-image dataset");
  SynthConfig synth_cfg;
  std::string out_dir;
  synth->add_option("--out", out_dir, "Output dataset directory")->required();
  synth->add_option("--classes", synth_cfg.n_classes, "Number of classes")
      ->capture_default_str();
  synth->add_option("--train-per-class", synth_cfg.n_train_per_class,
                    "Training images per class (1..14)")
      ->capture_default_str();
  synth->add_option("--test-per-class", synth_cfg.n_test_per_class,
                    "Test images per class (1..12)")
      ->capture_default_str();
  synth->add_option("--width", synth_cfg.width, "Image width")
      ->capture_default_str();
  synth->add_option("--height", synth_cfg.height, "Image height")
      ->capture_default_str();
  synth->add_option("--subspace-dim", synth_cfg.subspace_dim,
                    "Per-class subspace dimension")
      ->capture_default_str();
  synth->add_option("--noise-sigma", synth_cfg.noise_sigma,
                    "Pixel noise standard deviation")
      ->capture_default_str();
  synth->add_option("--occlusion", synth_cfg.occlusion_fraction,
                    "Fraction of rows occluded on test images")
      ->capture_default_str();
  synth->add_option("--seed", synth_cfg.seed, "Generator seed")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      return cmd_build_dict(cfg);
    }
    if (evaluate_cmd->parsed()) {
      if (ablation_grids.empty() && cfg.dict_path.empty()) {
        throw InvalidArgumentError("evaluate requires --dict (or --grid with "
                                   "--train-dir)");
      }
      return cmd_evaluate(cfg, report_path, ablation_grids, train_dir);
    }
    if (classify_cmd->parsed()) {
      return cmd_classify(cfg, image_path);
    }
    if (synth->parsed()) {
      return cmd_synth_gen(synth_cfg, out_dir);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
