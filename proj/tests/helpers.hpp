#pragma once

#include <cmath>
#include <vector>

#include "mcnn/image.hpp"

namespace mcnn::testing {

// Binary image: white background, one closed 4-connected square ring.
inline Image ring_image(int n, int lo, int hi) {
  Image img(n, n, -1.0);
  for (int k = lo; k <= hi; ++k) {
    img.at(lo, k) = 1.0;
    img.at(hi, k) = 1.0;
    img.at(k, lo) = 1.0;
    img.at(k, hi) = 1.0;
  }
  return img;
}

// Horizontal black-to-white ramp over the first ramp_cols columns (8-bit
// quantized), white beyond.
inline PixelGrid ramp_grid(int w, int h, int ramp_cols) {
  PixelGrid g(w, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      const double p = j < ramp_cols ? 255.0 * j / (ramp_cols - 1) : 255.0;
      g.at(i, j) = static_cast<std::uint8_t>(std::lround(p));
    }
  return g;
}

inline PixelGrid full_ramp_grid(int w, int h) { return ramp_grid(w, h, w); }

// Independent hole-filling oracle: flood 4-connected white from the border;
// unreached white cells are enclosed and turn black, everything else is kept.
inline Image flood_fill_oracle(const Image& input) {
  const int rows = input.height, cols = input.width;
  std::vector<std::uint8_t> outside(input.size(), 0);
  std::vector<std::pair<int, int>> stack;
  const auto push = [&](int i, int j) {
    if (i < 0 || i >= rows || j < 0 || j >= cols) return;
    const std::size_t k = static_cast<std::size_t>(i) * cols + j;
    if (outside[k] || input.values[k] >= 0.0) return;
    outside[k] = 1;
    stack.emplace_back(i, j);
  };
  for (int i = 0; i < rows; ++i) {
    push(i, 0);
    push(i, cols - 1);
  }
  for (int j = 0; j < cols; ++j) {
    push(0, j);
    push(rows - 1, j);
  }
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    push(i - 1, j);
    push(i + 1, j);
    push(i, j - 1);
    push(i, j + 1);
  }
  Image out = input;
  for (std::size_t k = 0; k < out.size(); ++k)
    if (input.values[k] < 0.0 && !outside[k]) out.values[k] = 1.0;
  return out;
}

}  // namespace mcnn::testing
