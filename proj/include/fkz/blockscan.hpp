#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fkz/plane.hpp"

namespace fkz {

// Pile of sub-blocks in zig-zag grid order, stored channel-major (block k is
// contiguous, row-major). A freshly tiled stack has channels == grid_rows*grid_cols;
// pruning keeps the grid geometry but drops trailing channels.
//
// The codec only ever tiles square blocks; rectangular block shapes are allowed
// so the cross-block vector ops can be exercised on small hand-built stacks.
struct SubBlockStack {
  int block_rows = 0;
  int block_cols = 0;
  int grid_rows = 0;
  int grid_cols = 0;
  int channels = 0;
  std::vector<double> data;  // channels * block_rows * block_cols

  SubBlockStack() = default;
  SubBlockStack(int brows, int bcols, int grows, int gcols, int chans)
      : block_rows(brows),
        block_cols(bcols),
        grid_rows(grows),
        grid_cols(gcols),
        channels(chans),
        data(static_cast<std::size_t>(chans) * brows * bcols, 0.0) {}

  int positions() const { return block_rows * block_cols; }  // samples per cross-block vector
  std::span<double> block(int k) {
    return {data.data() + static_cast<std::size_t>(k) * positions(), static_cast<std::size_t>(positions())};
  }
  std::span<const double> block(int k) const {
    return {data.data() + static_cast<std::size_t>(k) * positions(), static_cast<std::size_t>(positions())};
  }
};

// JPEG-style zig-zag traversal of an R x C grid starting at (0,0) and moving
// right first; returns every cell exactly once.
std::vector<std::pair<int, int>> zigzag_order(int grid_rows, int grid_cols);

// Cut the plane into block_size x block_size tiles and stack them in zig-zag
// order. Plane dims must be divisible by block_size.
SubBlockStack tile_to_stack(const CoefficientPlane& plane, int block_size);

// Exact inverse of tile_to_stack; requires a full stack.
CoefficientPlane stack_to_plane(const SubBlockStack& stack);

}  // namespace fkz
