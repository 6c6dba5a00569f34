#include "fkz/raster.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "fkz/error.hpp"

namespace fkz {

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      break;
    }
  }
  while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
  if (tok.empty()) fail(Errc::format_error, "pgm: malformed header (unexpected end of file)");
  return tok;
}

int parse_positive(const std::string& tok, const char* field) {
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    fail(Errc::format_error, std::string("pgm: malformed header field ") + field + " '" + tok + "'");
  }
}

}  // namespace

ImageRaster read_pgm(std::istream& in) {
  std::string magic = next_token(in);
  if (magic != "P5") fail(Errc::format_error, "pgm: unsupported format '" + magic + "' (expected binary P5)");
  int cols = parse_positive(next_token(in), "width");
  int rows = parse_positive(next_token(in), "height");
  int maxval = parse_positive(next_token(in), "maxval");
  if (maxval > 255) fail(Errc::format_error, "pgm: maxval " + std::to_string(maxval) + " > 255 unsupported");

  ImageRaster img(rows, cols, 8);
  std::vector<std::uint8_t> raw(img.samples.size());
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    fail(Errc::format_error, "pgm: truncated pixel data");
  for (std::size_t i = 0; i < raw.size(); ++i) img.samples[i] = raw[i];
  return img;
}

ImageRaster load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open '" + path.string() + "' for reading");
  return read_pgm(in);
}

void write_pgm(const ImageRaster& img, std::ostream& out) {
  if (img.bit_depth > 8)
    fail(Errc::invalid_argument, "pgm: bit depth " + std::to_string(img.bit_depth) + " > 8 unsupported");
  out << "P5\n" << img.cols << " " << img.rows << "\n" << img.max_value() << "\n";
  std::vector<std::uint8_t> raw(img.samples.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = static_cast<std::uint8_t>(img.samples[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void save_pgm(const ImageRaster& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open '" + path.string() + "' for writing");
  write_pgm(img, out);
  out.flush();
  if (!out) fail(Errc::io_error, "write failed for '" + path.string() + "'");
}

CoefficientPlane to_plane(const ImageRaster& img) {
  CoefficientPlane p(img.rows, img.cols);
  for (std::size_t i = 0; i < img.samples.size(); ++i) p.values[i] = img.samples[i];
  return p;
}

ImageRaster clamp_to_raster(const CoefficientPlane& plane, int bit_depth) {
  ImageRaster img(plane.rows, plane.cols, bit_depth);
  const double hi = img.max_value();
  for (std::size_t i = 0; i < plane.values.size(); ++i) {
    double v = plane.values[i];
    if (std::isnan(v)) v = 0.0;
    double r = v < 0.0 ? std::ceil(v - 0.5) : std::floor(v + 0.5);  // half away from zero
    if (r < 0.0) r = 0.0;
    if (r > hi) r = hi;
    img.samples[i] = static_cast<std::uint16_t>(r);
  }
  return img;
}

}  // namespace fkz
