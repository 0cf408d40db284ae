#include "mcnn/image_io.hpp"

#include <fstream>
#include <stdexcept>

namespace mcnn {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

// Next ASCII token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
        tok.push_back(static_cast<char>(in.get()));
      return tok;
    }
  }
  return tok;
}

long parse_number(std::istream& in, const std::string& path, const char* what) {
  const std::string tok = next_token(in);
  if (tok.empty()) fail(path, std::string("truncated header, missing ") + what);
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(tok, &pos);
  } catch (const std::exception&) {
    fail(path, std::string("malformed ") + what + " '" + tok + "'");
  }
  if (pos != tok.size()) fail(path, std::string("malformed ") + what + " '" + tok + "'");
  return value;
}

}  // namespace

PixelGrid read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");

  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5")
    fail(path, "unsupported magic '" + magic + "' (expected P2 or P5)");
  const long width = parse_number(in, path, "width");
  const long height = parse_number(in, path, "height");
  const long maxval = parse_number(in, path, "maxval");
  if (width <= 0 || height <= 0) fail(path, "non-positive dimensions");
  if (maxval != 255)
    fail(path, "unsupported maxval " + std::to_string(maxval) +
                   " (only 8-bit images with maxval 255 are supported)");

  PixelGrid grid(static_cast<int>(width), static_cast<int>(height));
  if (magic == "P5") {
    in.get();  // single whitespace byte after the header
    in.read(reinterpret_cast<char*>(grid.pixels.data()),
            static_cast<std::streamsize>(grid.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(grid.pixels.size()))
      fail(path, "truncated pixel data");
  } else {
    for (auto& p : grid.pixels) {
      const long value = parse_number(in, path, "pixel");
      if (value < 0 || value > 255) fail(path, "pixel value out of range");
      p = static_cast<std::uint8_t>(value);
    }
  }
  return grid;
}

void write_pgm(const PixelGrid& grid, const std::string& path) {
  if (grid.width <= 0 || grid.height <= 0) fail(path, "refusing to write an empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");
  out << "P5\n" << grid.width << ' ' << grid.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(grid.pixels.data()),
            static_cast<std::streamsize>(grid.pixels.size()));
  if (!out) fail(path, "write failed");
}

void write_ppm(const RgbImage& image, const std::string& path) {
  if (image.width <= 0 || image.height <= 0) fail(path, "refusing to write an empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open for writing");
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()),
            static_cast<std::streamsize>(image.rgb.size()));
  if (!out) fail(path, "write failed");
}

RgbImage gate_mask_image(const std::vector<std::uint8_t>& on_mask, int width, int height) {
  if (on_mask.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("gate mask size does not match the image shape");
  RgbImage img;
  img.width = width;
  img.height = height;
  img.rgb.resize(on_mask.size() * 3);
  for (std::size_t k = 0; k < on_mask.size(); ++k) {
    img.rgb[3 * k + 0] = on_mask[k] ? 255 : 0;
    img.rgb[3 * k + 2] = on_mask[k] ? 0 : 255;
  }
  return img;
}

}  // namespace mcnn
