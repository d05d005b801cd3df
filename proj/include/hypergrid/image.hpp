#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hypergrid/color.hpp"

namespace hg {

struct ImageBuf {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major RGB, top-left origin

  ImageBuf() = default;
  ImageBuf(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}
  Rgb at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    pixels[i] = c.r;
    pixels[i + 1] = c.g;
    pixels[i + 2] = c.b;
  }
  friend bool operator==(const ImageBuf&, const ImageBuf&) = default;
};

/// Binary P6, maxval 255, header "P6\n<w> <h>\n255\n", no comments.
/// Throws std::runtime_error on IO failure.
void write_ppm(const ImageBuf& img, const std::string& path);
std::string encode_ppm(const ImageBuf& img);
/// Reads the files write_ppm produces.
ImageBuf read_ppm(const std::string& path);

}  // namespace hg
