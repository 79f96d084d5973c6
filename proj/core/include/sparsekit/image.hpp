#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "sparsekit/errors.hpp"

namespace sparsekit {

/// Grayscale raster, row-major, intensities nominally in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // pixels[y * width + x]

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(std::size_t(w) * h, 0.0) {}

  double at(int x, int y) const {
    return pixels[std::size_t(y) * width + x];
  }
  double& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
  bool empty() const { return width <= 0 || height <= 0 || pixels.empty(); }
};

struct LabeledImage {
  Image image;
  std::string label;
  std::string id;  // report key; file stem for images loaded from disk
};

/// Bilinear resize to width x height using the half-pixel-centre
/// convention. A resize to the source dimensions reproduces the source
/// exactly; output intensities stay within the source range.
Image downsample(const Image& src, int width, int height);

/// Reads a binary 8-bit PGM ("P5", maxval <= 255); intensities are scaled
/// to [0, 1]. Header comments (#) are allowed.
Image load_pgm(const std::filesystem::path& path);

/// Writes a binary 8-bit PGM; intensities are clamped to [0, 1] and
/// quantized to 0..255.
void save_pgm(const Image& img, const std::filesystem::path& path);

}  // namespace sparsekit
