#include "sparsekit/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>

namespace sparsekit {

Image downsample(const Image& src, int width, int height) {
  if (src.empty()) {
    throw InvalidArgumentError("downsample: empty source image");
  }
  if (width < 1 || height < 1) {
    throw InvalidArgumentError("downsample: target dimensions must be >= 1");
  }
  Image out(width, height);
  const double scale_x = double(src.width) / double(width);
  const double scale_y = double(src.height) / double(height);
  for (int y = 0; y < height; ++y) {
    double sy = (y + 0.5) * scale_y - 0.5;
    sy = std::clamp(sy, 0.0, double(src.height - 1));
    const int y0 = int(sy);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double fy = sy - y0;
    for (int x = 0; x < width; ++x) {
      double sx = (x + 0.5) * scale_x - 0.5;
      sx = std::clamp(sx, 0.0, double(src.width - 1));
      const int x0 = int(sx);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double fx = sx - x0;
      const double top = (1.0 - fx) * src.at(x0, y0) + fx * src.at(x1, y0);
      const double bottom = (1.0 - fx) * src.at(x0, y1) + fx * src.at(x1, y1);
      out.at(x, y) = (1.0 - fy) * top + fy * bottom;
    }
  }
  return out;
}

namespace {

// Skips PGM whitespace and '#' comments, then reads one unsigned token.
long read_pgm_value(const std::string& data, std::size_t& pos,
                    const char* what) {
  while (pos < data.size()) {
    const char c = data[pos];
    if (c == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= data.size() ||
      !std::isdigit(static_cast<unsigned char>(data[pos]))) {
    throw ParseError(std::string("PGM: expected ") + what + " at byte " +
                     std::to_string(pos));
  }
  long value = 0;
  while (pos < data.size() &&
         std::isdigit(static_cast<unsigned char>(data[pos]))) {
    value = value * 10 + (data[pos] - '0');
    if (value > 1'000'000'000L) {
      throw ParseError(std::string("PGM: ") + what + " out of range");
    }
    ++pos;
  }
  return value;
}

}  // namespace

Image load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (data.size() < 2 || data[0] != 'P' || data[1] != '5') {
    throw ParseError("PGM: " + path.string() +
                     " does not start with the P5 magic");
  }
  std::size_t pos = 2;
  const long width = read_pgm_value(data, pos, "width");
  const long height = read_pgm_value(data, pos, "height");
  const long maxval = read_pgm_value(data, pos, "maxval");
  if (width < 1 || height < 1) {
    throw ParseError("PGM: " + path.string() + " has degenerate dimensions");
  }
  if (maxval < 1 || maxval > 255) {
    throw ParseError("PGM: " + path.string() + " has maxval " +
                     std::to_string(maxval) + "; only 8-bit (<= 255) PGM is supported");
  }
  if (pos >= data.size() ||
      !std::isspace(static_cast<unsigned char>(data[pos]))) {
    throw ParseError("PGM: missing whitespace before pixel data");
  }
  ++pos;  // single whitespace byte separates header and raster
  const std::size_t expected = std::size_t(width) * std::size_t(height);
  if (data.size() - pos < expected) {
    throw ParseError("PGM: " + path.string() + " pixel data ends at byte " +
                     std::to_string(data.size()) + ", expected " +
                     std::to_string(pos + expected) + " bytes");
  }
  Image img(static_cast<int>(width), static_cast<int>(height));
  for (std::size_t i = 0; i < expected; ++i) {
    img.pixels[i] = double(static_cast<unsigned char>(data[pos + i])) /
                    double(maxval);
  }
  return img;
}

void save_pgm(const Image& img, const std::filesystem::path& path) {
  if (img.empty()) {
    throw InvalidArgumentError("save_pgm: empty image");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::string bytes(img.pixels.size(), '\0');
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const double v = std::clamp(img.pixels[i], 0.0, 1.0);
    bytes[i] = char(static_cast<unsigned char>(std::lround(v * 255.0)));
  }
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace sparsekit
