#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "fkz/plane.hpp"

namespace fkz {

// 8-bit (or narrower) grayscale image, row-major.
struct ImageRaster {
  int rows = 0;
  int cols = 0;
  int bit_depth = 8;
  std::vector<std::uint16_t> samples;  // rows * cols, each in [0, 2^bit_depth - 1]

  ImageRaster() = default;
  ImageRaster(int r, int c, int depth = 8)
      : rows(r), cols(c), bit_depth(depth), samples(static_cast<std::size_t>(r) * c, 0) {}

  std::uint16_t& at(int r, int c) { return samples[static_cast<std::size_t>(r) * cols + c]; }
  std::uint16_t at(int r, int c) const { return samples[static_cast<std::size_t>(r) * cols + c]; }
  int max_value() const { return (1 << bit_depth) - 1; }
};

// Binary PGM (P5), maxval <= 255.
ImageRaster load_pgm(const std::filesystem::path& path);
ImageRaster read_pgm(std::istream& in);
void save_pgm(const ImageRaster& img, const std::filesystem::path& path);
void write_pgm(const ImageRaster& img, std::ostream& out);

CoefficientPlane to_plane(const ImageRaster& img);

// Round half away from zero, then clamp to [0, 2^bit_depth - 1].
ImageRaster clamp_to_raster(const CoefficientPlane& plane, int bit_depth);

}  // namespace fkz
