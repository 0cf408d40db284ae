#pragma once

#include <cstdint>
#include <vector>

namespace mcnn {

// 8-bit grayscale pixels, row-major.
struct PixelGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  PixelGrid() = default;
  PixelGrid(int width, int height, std::uint8_t fill = 0);
  std::uint8_t& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

// Lattice-coded image: black -> +1, white -> -1, gray in between. Row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  Image() = default;
  Image(int width, int height, double fill = 0.0);
  double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
  std::size_t size() const { return values.size(); }

  bool operator==(const Image&) const = default;
};

// u = 1 - 2 p/255, linear. Rejects empty input.
Image encode_image(const PixelGrid& pixels);

// Inverse map p = round(127.5 (1 - y)): +1 -> 0, 0 -> 128, -1 -> 255.
// With strict_binary set, values outside {-1, 0, +1} are rejected; otherwise
// any y in [-1, 1] is accepted.
PixelGrid decode_output(const Image& y, bool strict_binary = false);

bool is_binary(const Image& img);                  // all values in {-1, +1}
bool is_ternary(const Image& img);                 // all values in {-1, 0, +1}

}  // namespace mcnn
