#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcnn/image.hpp"

namespace mcnn {

// PGM, 8-bit (maxval 255). Both P2 and P5 are accepted on read; P5 is written.
PixelGrid read_pgm(const std::string& path);
void write_pgm(const PixelGrid& grid, const std::string& path);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major
};

// Binary PPM (P6), maxval 255.
void write_ppm(const RgbImage& image, const std::string& path);

// Pseudo-color gate-state map: switched-on cells red, switched-off cells blue.
RgbImage gate_mask_image(const std::vector<std::uint8_t>& on_mask, int width, int height);

}  // namespace mcnn
