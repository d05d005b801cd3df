#include "hypergrid/image.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hg {

std::string encode_ppm(const ImageBuf& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

void write_ppm(const ImageBuf& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_ppm: cannot open " + path);
  const std::string bytes = encode_ppm(img);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write_ppm: write failed for " + path);
}

ImageBuf read_ppm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_ppm: cannot open " + path);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  f >> magic >> w >> h >> maxval;
  if (magic != "P6" || w <= 0 || h <= 0 || maxval != 255) throw std::runtime_error("read_ppm: unsupported header");
  f.get();
  ImageBuf img(w, h);
  f.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!f) throw std::runtime_error("read_ppm: truncated payload");
  return img;
}

}  // namespace hg
