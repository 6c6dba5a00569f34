#include "fkz/blockscan.hpp"

#include <set>

#include "doctest.h"
#include "fkz/error.hpp"
#include "testutil.hpp"

using namespace fkz;

TEST_CASE("zig-zag follows the JPEG convention on an 8x8 grid") {
  const auto order = zigzag_order(8, 8);
  std::vector<int> linear;
  for (int i = 0; i < 6; ++i) linear.push_back(order[i].first * 8 + order[i].second);
  CHECK(linear == std::vector<int>{0, 1, 8, 16, 9, 2});
}

TEST_CASE("zig-zag of a 1x1 grid") {
  CHECK(zigzag_order(1, 1) == std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("zig-zag of a 4x4 grid, full sequence") {
  const std::vector<std::pair<int, int>> expected = {
      {0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}, {0, 3}, {1, 2},
      {2, 1}, {3, 0}, {3, 1}, {2, 2}, {1, 3}, {2, 3}, {3, 2}, {3, 3},
  };
  CHECK(zigzag_order(4, 4) == expected);
}

TEST_CASE("zig-zag is a bijection for all grids up to 16x16") {
  for (int r = 1; r <= 16; ++r) {
    for (int c = 1; c <= 16; ++c) {
      const auto order = zigzag_order(r, c);
      REQUIRE(order.size() == static_cast<std::size_t>(r) * c);
      std::set<std::pair<int, int>> seen(order.begin(), order.end());
      CHECK(seen.size() == order.size());
      for (const auto& [gr, gc] : order) {
        CHECK(gr >= 0);
        CHECK(gr < r);
        CHECK(gc >= 0);
        CHECK(gc < c);
      }
    }
  }
}

TEST_CASE("tiling a 512x512 plane with 64-pixel blocks gives 64 sub-blocks") {
  const auto p = fkztest::random_plane(512, 512, 0.0, 255.0, 3);
  const SubBlockStack s = tile_to_stack(p, 64);
  CHECK(s.channels == 64);
  CHECK(s.grid_rows == 8);
  CHECK(s.grid_cols == 8);
  CHECK(s.block_rows == 64);
  CHECK(s.block_cols == 64);
}

TEST_CASE("block size equal to the plane gives a single block") {
  const auto p = fkztest::random_plane(16, 16, -1.0, 1.0, 4);
  const SubBlockStack s = tile_to_stack(p, 16);
  REQUIRE(s.channels == 1);
  CHECK(std::vector<double>(s.block(0).begin(), s.block(0).end()) == p.values);
}

TEST_CASE("2x2 blocks of a 4x4 plane stack in zig-zag grid order") {
  CoefficientPlane p(4, 4);
  for (int i = 0; i < 16; ++i) p.values[i] = i;
  const SubBlockStack s = tile_to_stack(p, 2);
  REQUIRE(s.channels == 4);
  // zigzag_order(2,2) = (0,0),(0,1),(1,0),(1,1)
  CHECK(std::vector<double>(s.block(0).begin(), s.block(0).end()) == std::vector<double>{0, 1, 4, 5});
  CHECK(std::vector<double>(s.block(1).begin(), s.block(1).end()) == std::vector<double>{2, 3, 6, 7});
  CHECK(std::vector<double>(s.block(2).begin(), s.block(2).end()) == std::vector<double>{8, 9, 12, 13});
  CHECK(std::vector<double>(s.block(3).begin(), s.block(3).end()) == std::vector<double>{10, 11, 14, 15});
}

TEST_CASE("non-divisible dimensions are rejected with a padding hint") {
  const auto p = fkztest::random_plane(10, 10, 0.0, 1.0, 5);
  CHECK_THROWS_WITH_AS(tile_to_stack(p, 3), doctest::Contains("pad"), Error);
}

TEST_CASE("tile/stack round trip is the identity") {
  SUBCASE("512x512 with 64 and 32 pixel blocks") {
    const auto p = fkztest::random_plane(512, 512, 0.0, 255.0, 6);
    for (int b : {32, 64}) {
      const CoefficientPlane back = stack_to_plane(tile_to_stack(p, b));
      REQUIRE(back.rows == p.rows);
      CHECK(back.values == p.values);  // bit-identical
    }
  }
  SUBCASE("assorted divisible combinations") {
    for (auto [r, c, b] : {std::tuple(4, 6, 2), std::tuple(8, 8, 4), std::tuple(64, 32, 8), std::tuple(9, 9, 3)}) {
      const auto p = fkztest::random_plane(r, c, -9.0, 9.0, 100 + r + c + b);
      CHECK(stack_to_plane(tile_to_stack(p, b)).values == p.values);
    }
  }
}

TEST_CASE("stack_to_plane rejects pruned stacks") {
  const auto p = fkztest::random_plane(8, 8, 0.0, 1.0, 7);
  SubBlockStack s = tile_to_stack(p, 4);
  s.channels -= 1;
  s.data.resize(static_cast<std::size_t>(s.channels) * s.positions());
  CHECK_THROWS_AS(stack_to_plane(s), Error);
}
