#include "fkz/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fkz/error.hpp"

namespace fkz {

int select_channels(std::span<const double> eigenvalues, double keep_fraction) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
    fail(Errc::invalid_argument, "select_channels: keep fraction must be in (0, 1]");
  if (eigenvalues.empty()) fail(Errc::invalid_argument, "select_channels: empty spectrum");
  double total = 0.0;
  for (double l : eigenvalues) total += l;
  if (total <= 0.0) return 1;
  double partial = 0.0;
  for (std::size_t m = 0; m < eigenvalues.size(); ++m) {
    partial += eigenvalues[m];
    if (partial / total >= keep_fraction) return static_cast<int>(m) + 1;
  }
  return static_cast<int>(eigenvalues.size());
}

SubBlockStack prune(const SubBlockStack& stack, int m) {
  if (m < 1 || m > stack.channels)
    fail(Errc::invalid_argument, "prune: m=" + std::to_string(m) + " out of range [1, " +
                                     std::to_string(stack.channels) + "]");
  SubBlockStack out(stack.block_rows, stack.block_cols, stack.grid_rows, stack.grid_cols, m);
  std::copy_n(stack.data.begin(), out.data.size(), out.data.begin());
  return out;
}

SubBlockStack zero_pad(const SubBlockStack& pruned, int n) {
  if (n < pruned.channels)
    fail(Errc::invalid_argument, "zero_pad: target channel count " + std::to_string(n) +
                                     " smaller than stack's " + std::to_string(pruned.channels));
  SubBlockStack out(pruned.block_rows, pruned.block_cols, pruned.grid_rows, pruned.grid_cols, n);
  std::copy(pruned.data.begin(), pruned.data.end(), out.data.begin());
  return out;
}

QuantizedStack quantize(const SubBlockStack& stack, int quant_bits) {
  if (quant_bits < 1 || quant_bits > 16)
    fail(Errc::invalid_argument, "quantize: bits must be in [1, 16]");
  const int positions = stack.positions();
  const double levels = static_cast<double>((1u << quant_bits) - 1);

  QuantizedStack qs;
  qs.block_rows = stack.block_rows;
  qs.block_cols = stack.block_cols;
  qs.grid_rows = stack.grid_rows;
  qs.grid_cols = stack.grid_cols;
  qs.channels = stack.channels;
  qs.quant_bits = quant_bits;
  qs.params.resize(stack.channels);
  qs.symbols.resize(static_cast<std::size_t>(stack.channels) * positions);

  for (int j = 0; j < stack.channels; ++j) {
    const auto blk = stack.block(j);
    const auto [lo_it, hi_it] = std::minmax_element(blk.begin(), blk.end());
    const double lo = *lo_it, hi = *hi_it;
    ChannelQuant& cq = qs.params[j];
    cq.offset = lo;
    cq.step = hi > lo ? (hi - lo) / levels : 1.0;
    for (int p = 0; p < positions; ++p) {
      const long sym = std::lround((blk[p] - cq.offset) / cq.step);
      qs.symbols[static_cast<std::size_t>(j) * positions + p] =
          static_cast<std::uint16_t>(std::clamp(sym, 0L, static_cast<long>(levels)));
    }
  }
  return qs;
}

SubBlockStack dequantize(const QuantizedStack& qs) {
  if (qs.quant_bits < 1 || qs.quant_bits > 16) fail(Errc::invalid_argument, "dequantize: bits out of range");
  for (const ChannelQuant& cq : qs.params)
    if (!(cq.step > 0.0)) fail(Errc::invalid_argument, "dequantize: non-positive step");
  const int positions = qs.positions();
  SubBlockStack out(qs.block_rows, qs.block_cols, qs.grid_rows, qs.grid_cols, qs.channels);
  for (int j = 0; j < qs.channels; ++j) {
    const ChannelQuant& cq = qs.params[j];
    auto dst = out.block(j);
    for (int p = 0; p < positions; ++p)
      dst[p] = cq.offset + qs.symbols[static_cast<std::size_t>(j) * positions + p] * cq.step;
  }
  return out;
}

}  // namespace fkz
