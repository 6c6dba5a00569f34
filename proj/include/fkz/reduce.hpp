#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fkz/blockscan.hpp"

namespace fkz {

struct ChannelQuant {
  double offset = 0.0;  // channel minimum
  double step = 1.0;    // (max - min) / (2^q - 1), 1 for constant channels
};

// Per-channel uniform midtread quantizer output.
struct QuantizedStack {
  int block_rows = 0;
  int block_cols = 0;
  int grid_rows = 0;
  int grid_cols = 0;
  int channels = 0;    // m
  int quant_bits = 0;  // q
  std::vector<ChannelQuant> params;     // channels
  std::vector<std::uint16_t> symbols;   // channels * block_rows * block_cols, channel-major

  int positions() const { return block_rows * block_cols; }
};

// Smallest m with cumulative variance fraction >= keep_fraction; at least 1.
int select_channels(std::span<const double> eigenvalues, double keep_fraction);

// Keep the first m channels.
SubBlockStack prune(const SubBlockStack& stack, int m);

// Extend back to n channels with all-zero blocks.
SubBlockStack zero_pad(const SubBlockStack& pruned, int n);

// Per-channel min/max uniform quantization to q-bit symbols, 1 <= q <= 16.
QuantizedStack quantize(const SubBlockStack& stack, int quant_bits);

// value = offset + symbol * step.
SubBlockStack dequantize(const QuantizedStack& qs);

}  // namespace fkz
