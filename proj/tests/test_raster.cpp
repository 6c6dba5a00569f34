#include "fkz/raster.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fkz/error.hpp"
#include "testutil.hpp"

using namespace fkz;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "fkz_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("load_pgm reads a 2x2 P5 file byte for byte") {
  const auto p = temp_file("tiny.pgm");
  write_bytes(p, std::string("P5\n2 2\n255\n") + '\x00' + '\xff' + '\x80' + '\x40');
  const ImageRaster img = load_pgm(p);
  CHECK(img.rows == 2);
  CHECK(img.cols == 2);
  CHECK(img.bit_depth == 8);
  CHECK(img.samples == std::vector<std::uint16_t>{0, 255, 128, 64});
}

TEST_CASE("load_pgm parses a 512x512 header") {
  const auto p = temp_file("big.pgm");
  std::string data = "P5 512 512 255 ";
  data.resize(data.size() + 512 * 512, 'x');
  write_bytes(p, data);
  const ImageRaster img = load_pgm(p);
  CHECK(img.rows == 512);
  CHECK(img.cols == 512);
  CHECK(img.samples.size() == 512u * 512u);
}

TEST_CASE("load_pgm rejects color and deep files") {
  const auto p6 = temp_file("color.ppm");
  write_bytes(p6, "P6\n1 1\n255\n\x1\x2\x3");
  CHECK_THROWS_WITH_AS(load_pgm(p6), doctest::Contains("unsupported format"), Error);

  const auto deep = temp_file("deep.pgm");
  write_bytes(deep, "P5\n1 1\n65535\n\x1\x2");
  CHECK_THROWS_AS(load_pgm(deep), Error);

  CHECK_THROWS_AS(load_pgm(temp_file("missing.pgm")), Error);
}

TEST_CASE("load_pgm rejects truncated pixel data") {
  const auto p = temp_file("short.pgm");
  write_bytes(p, "P5\n4 4\n255\nabc");
  CHECK_THROWS_AS(load_pgm(p), Error);
}

TEST_CASE("pgm round trip is bit exact") {
  auto gen = fkztest::rng(11);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int iter = 0; iter < 25; ++iter) {
    const ImageRaster img = fkztest::random_raster(dim(gen), dim(gen), 1000 + iter);
    const auto p = temp_file("roundtrip.pgm");
    save_pgm(img, p);
    const ImageRaster back = load_pgm(p);
    REQUIRE(back.rows == img.rows);
    REQUIRE(back.cols == img.cols);
    CHECK(back.samples == img.samples);
  }
}

TEST_CASE("save_pgm writes the minimal 1x1 file") {
  ImageRaster img(1, 1);
  img.samples[0] = 7;
  std::ostringstream out;
  write_pgm(img, out);
  CHECK(out.str() == std::string("P5\n1 1\n255\n") + '\x07');
}

TEST_CASE("save_pgm rejects bit depths above 8") {
  ImageRaster img(1, 1, 12);
  std::ostringstream out;
  CHECK_THROWS_AS(write_pgm(img, out), Error);
}

TEST_CASE("clamp_to_raster rounds half away from zero and clamps") {
  CoefficientPlane p(1, 5);
  p.values = {254.6, -3.2, 300.0, 127.5, 0.49};
  const ImageRaster img = clamp_to_raster(p, 8);
  CHECK(img.samples == std::vector<std::uint16_t>{255, 0, 255, 128, 0});
}

TEST_CASE("clamp_to_raster maps non-finite values to the valid range") {
  CoefficientPlane p(1, 3);
  p.values = {std::nan(""), 1e300, -1e300};
  const ImageRaster img = clamp_to_raster(p, 8);
  CHECK(img.samples == std::vector<std::uint16_t>{0, 255, 0});
}

TEST_CASE("clamp_to_raster is idempotent on in-range integer planes") {
  const ImageRaster img = fkztest::random_raster(9, 13, 42);
  const ImageRaster again = clamp_to_raster(to_plane(img), 8);
  CHECK(again.samples == img.samples);
}
