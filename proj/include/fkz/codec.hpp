#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "fkz/klt.hpp"
#include "fkz/raster.hpp"
#include "fkz/reduce.hpp"

namespace fkz {

enum class Pipeline : std::uint8_t {
  klt = 0,      // sub-block KLT on the raw image
  fct_klt = 1,  // whole-image 2-D DCT first, then sub-block KLT
};

struct CompressConfig {
  Pipeline pipeline = Pipeline::fct_klt;
  int block_size = 64;
  double keep_fraction = 0.95;
  int quant_bits = 8;
  bool pad = false;                   // reflect-pad non-divisible dims
  std::optional<int> force_channels;  // retain exactly this many channels instead
                                      // of applying keep_fraction
};

// On-disk container, magic "FKZ1", all integers little-endian. Holds the side
// information the decoder needs (mean, retained eigenvector columns, quantizer
// params) plus the entropy-coded payload.
struct CompressedContainer {
  std::uint8_t version = 1;
  Pipeline pipeline = Pipeline::klt;
  std::uint32_t rows = 0, cols = 0;            // dims the codec ran on (after padding)
  std::uint32_t orig_rows = 0, orig_cols = 0;  // dims to crop back to
  std::uint16_t block_size = 0;
  std::uint16_t n = 0;  // sub-block count
  std::uint16_t m = 0;  // retained channel count
  std::uint8_t quant_bits = 0;
  std::vector<float> mean;            // n
  std::vector<float> eigenvectors;    // n*m, column-major
  std::vector<float> quant_params;    // 2*m interleaved (offset, step)
  std::vector<std::uint8_t> payload;

  std::size_t byte_size() const;
};

// Lossless symbol coding: maximal runs of symbol 0 become a run marker followed
// by an Elias-gamma coded length; the resulting token stream is coded with a
// canonical prefix code whose table is serialized sparsely before the bits.
std::vector<std::uint8_t> entropy_encode(std::span<const std::uint16_t> symbols, int quant_bits);
std::vector<std::uint16_t> entropy_decode(std::span<const std::uint8_t> bytes, int quant_bits);

std::vector<std::uint8_t> serialize_container(const CompressedContainer& container);
CompressedContainer parse_container(std::span<const std::uint8_t> bytes);
void write_container(const CompressedContainer& container, std::ostream& out);
// Reads one container occupying the rest of the stream.
CompressedContainer read_container(std::istream& in);

// The image-dependent part of compression, independent of rate choices: the
// (optionally DCT-transformed, padded) plane tiled, analyzed, and KLT-rotated.
struct ImageAnalysis {
  Pipeline pipeline = Pipeline::fct_klt;
  int block_size = 0;
  int rows = 0, cols = 0;  // padded dims
  int orig_rows = 0, orig_cols = 0;
  SubBlockStack transformed;  // all n decorrelated channels
  KltBasis basis;
};

ImageAnalysis analyze_image(const ImageRaster& img, Pipeline pipeline, int block_size, bool pad);
CompressedContainer compress_from_analysis(const ImageAnalysis& analysis, int retained_channels,
                                           int quant_bits);
CompressedContainer compress(const ImageRaster& img, const CompressConfig& config);
ImageRaster decompress(const CompressedContainer& container);

}  // namespace fkz
