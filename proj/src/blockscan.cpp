#include "fkz/blockscan.hpp"

#include <algorithm>
#include <string>

#include "fkz/error.hpp"

namespace fkz {

std::vector<std::pair<int, int>> zigzag_order(int grid_rows, int grid_cols) {
  if (grid_rows < 1 || grid_cols < 1) fail(Errc::invalid_argument, "zigzag: grid dims must be >= 1");
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<std::size_t>(grid_rows) * grid_cols);
  for (int d = 0; d <= grid_rows + grid_cols - 2; ++d) {
    const int r_lo = std::max(0, d - (grid_cols - 1));
    const int r_hi = std::min(grid_rows - 1, d);
    if (d % 2 == 1) {
      for (int r = r_lo; r <= r_hi; ++r) order.emplace_back(r, d - r);  // down-left
    } else {
      for (int r = r_hi; r >= r_lo; --r) order.emplace_back(r, d - r);  // up-right
    }
  }
  return order;
}

SubBlockStack tile_to_stack(const CoefficientPlane& plane, int block_size) {
  if (block_size < 1) fail(Errc::invalid_argument, "tile_to_stack: block size must be >= 1");
  if (plane.rows % block_size != 0 || plane.cols % block_size != 0)
    fail(Errc::invalid_argument,
         "tile_to_stack: plane " + std::to_string(plane.rows) + "x" + std::to_string(plane.cols) +
             " is not divisible by block size " + std::to_string(block_size) +
             "; pad to the next multiple of " + std::to_string(block_size) + " first");
  const int grows = plane.rows / block_size;
  const int gcols = plane.cols / block_size;
  SubBlockStack stack(block_size, block_size, grows, gcols, grows * gcols);
  const auto order = zigzag_order(grows, gcols);
  for (int k = 0; k < stack.channels; ++k) {
    const auto [gr, gc] = order[k];
    auto dst = stack.block(k);
    for (int r = 0; r < block_size; ++r)
      for (int c = 0; c < block_size; ++c)
        dst[static_cast<std::size_t>(r) * block_size + c] = plane.at(gr * block_size + r, gc * block_size + c);
  }
  return stack;
}

CoefficientPlane stack_to_plane(const SubBlockStack& stack) {
  if (stack.channels != stack.grid_rows * stack.grid_cols)
    fail(Errc::invalid_argument, "stack_to_plane: stack is not full (pruned stacks must be zero-padded first)");
  if (stack.block_rows != stack.block_cols)
    fail(Errc::invalid_argument, "stack_to_plane: blocks must be square");
  const int bs = stack.block_rows;
  CoefficientPlane plane(stack.grid_rows * bs, stack.grid_cols * bs);
  const auto order = zigzag_order(stack.grid_rows, stack.grid_cols);
  for (int k = 0; k < stack.channels; ++k) {
    const auto [gr, gc] = order[k];
    auto src = stack.block(k);
    for (int r = 0; r < bs; ++r)
      for (int c = 0; c < bs; ++c)
        plane.at(gr * bs + r, gc * bs + c) = src[static_cast<std::size_t>(r) * bs + c];
  }
  return plane;
}

}  // namespace fkz
