#include "mcnn/image.hpp"

#include <cmath>
#include <stdexcept>

namespace mcnn {

PixelGrid::PixelGrid(int width_, int height_, std::uint8_t fill)
    : width(width_), height(height_),
      pixels(static_cast<std::size_t>(width_) * height_, fill) {}

Image::Image(int width_, int height_, double fill)
    : width(width_), height(height_),
      values(static_cast<std::size_t>(width_) * height_, fill) {}

Image encode_image(const PixelGrid& pixels) {
  if (pixels.width <= 0 || pixels.height <= 0)
    throw std::invalid_argument("cannot encode an empty image");
  Image img(pixels.width, pixels.height);
  for (std::size_t k = 0; k < img.values.size(); ++k)
    img.values[k] = 1.0 - 2.0 * (pixels.pixels[k] / 255.0);
  return img;
}

PixelGrid decode_output(const Image& y, bool strict_binary) {
  PixelGrid out(y.width, y.height);
  for (std::size_t k = 0; k < y.values.size(); ++k) {
    const double v = y.values[k];
    if (strict_binary && v != -1.0 && v != 0.0 && v != 1.0)
      throw std::invalid_argument("output value outside {-1, 0, +1} in strict mode");
    if (v < -1.0 || v > 1.0)
      throw std::invalid_argument("output value outside [-1, 1]");
    out.pixels[k] = static_cast<std::uint8_t>(std::lround(127.5 * (1.0 - v)));
  }
  return out;
}

bool is_binary(const Image& img) {
  for (double v : img.values)
    if (v != -1.0 && v != 1.0) return false;
  return true;
}

bool is_ternary(const Image& img) {
  for (double v : img.values)
    if (v != -1.0 && v != 0.0 && v != 1.0) return false;
  return true;
}

}  // namespace mcnn
