#include "fkz/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fkz/error.hpp"

namespace fkz {

namespace {

void check_same_dims(const ImageRaster& a, const ImageRaster& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    fail(Errc::dimension_mismatch, "metrics: image dimensions differ (" + std::to_string(a.rows) + "x" +
                                       std::to_string(a.cols) + " vs " + std::to_string(b.rows) + "x" +
                                       std::to_string(b.cols) + ")");
}

void check_spectrum(std::span<const double> l) {
  if (l.size() < 2) fail(Errc::invalid_argument, "spectrum metrics need at least 2 eigenvalues");
  if (!(l[0] > 0.0)) fail(Errc::invalid_argument, "spectrum metrics need a positive leading eigenvalue");
}

std::string fmt(double v) {
  if (std::isinf(v)) return "inf";
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << v;
  return os.str();
}

}  // namespace

double compression_ratio(std::uint64_t uncompressed_bytes, std::uint64_t compressed_bytes) {
  if (compressed_bytes == 0) fail(Errc::invalid_argument, "compression ratio: zero compressed size");
  return static_cast<double>(uncompressed_bytes) / static_cast<double>(compressed_bytes);
}

double bits_per_pixel(double bpp_before, double cr) {
  if (!(cr > 0.0)) fail(Errc::invalid_argument, "bits per pixel: non-positive compression ratio");
  return bpp_before / cr;
}

double mean_absolute_error(const ImageRaster& a, const ImageRaster& b) {
  check_same_dims(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    acc += std::abs(static_cast<double>(a.samples[i]) - static_cast<double>(b.samples[i]));
  return acc / static_cast<double>(a.samples.size());
}

double mean_squared_error(const ImageRaster& a, const ImageRaster& b) {
  check_same_dims(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - static_cast<double>(b.samples[i]);
    acc += d * d;
  }
  return acc / static_cast<double>(a.samples.size());
}

double psnr(double mse, int bit_depth) {
  if (mse < 0.0) fail(Errc::invalid_argument, "psnr: negative mse");
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  const double max_i = static_cast<double>((1 << bit_depth) - 1);
  return 10.0 * std::log10(max_i * max_i / mse);
}

double fgp(std::span<const double> l) {
  check_spectrum(l);
  return (1.0 - l[1] / l[0]) * 100.0;
}

double frp(std::span<const double> l) {
  check_spectrum(l);
  return (1.0 - (l[1] - l.back()) / l[0]) * 100.0;
}

double fp(std::span<const double> l) {
  if (l.empty()) fail(Errc::invalid_argument, "fp: empty spectrum");
  double total = 0.0;
  for (double v : l) total += v;
  if (!(total > 0.0)) fail(Errc::invalid_argument, "fp: zero total variance");
  return l[0] / total * 100.0;
}

MetricsReport build_report(const ImageRaster& original, const ImageRaster& reconstructed,
                           std::uint64_t container_bytes, std::span<const double> eigenvalues,
                           double elapsed_seconds) {
  MetricsReport r;
  r.mae = mean_absolute_error(original, reconstructed);
  r.mse = mean_squared_error(original, reconstructed);
  r.psnr_db = psnr(r.mse, original.bit_depth);
  const std::uint64_t raw_bytes = static_cast<std::uint64_t>(original.rows) * original.cols * original.bit_depth / 8;
  r.cr = compression_ratio(raw_bytes, container_bytes);
  r.bpp = bits_per_pixel(static_cast<double>(original.bit_depth), r.cr);
  r.etime_s = std::round(elapsed_seconds * 1e4) / 1e4;
  r.fgp = fgp(eigenvalues);
  r.frp = frp(eigenvalues);
  r.fp = fp(eigenvalues);
  return r;
}

std::string to_json(const MetricsReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "{\"mae\": " << r.mae << ", \"mse\": " << r.mse << ", \"psnr_db\": ";
  if (std::isinf(r.psnr_db))
    os << "\"inf\"";
  else
    os << r.psnr_db;
  os << ", \"cr\": " << r.cr << ", \"bpp\": " << r.bpp << ", \"etime_s\": " << r.etime_s
     << ", \"fgp\": " << r.fgp << ", \"frp\": " << r.frp << ", \"fp\": " << r.fp << "}";
  return os.str();
}

std::string to_csv(const MetricsReport& r) {
  std::ostringstream os;
  os << "mae,mse,psnr_db,cr,bpp,etime_s,fgp,frp,fp\n";
  os << fmt(r.mae) << ',' << fmt(r.mse) << ',' << fmt(r.psnr_db) << ',' << fmt(r.cr) << ',' << fmt(r.bpp)
     << ',' << fmt(r.etime_s) << ',' << fmt(r.fgp) << ',' << fmt(r.frp) << ',' << fmt(r.fp) << "\n";
  return os.str();
}

std::string to_text(const MetricsReport& r) {
  std::ostringstream os;
  os << "MAE     " << fmt(r.mae) << "\n"
     << "MSE     " << fmt(r.mse) << "\n"
     << "PSNR    " << fmt(r.psnr_db) << " dB\n"
     << "CR      " << fmt(r.cr) << "\n"
     << "bpp     " << fmt(r.bpp) << "\n"
     << "etime   " << fmt(r.etime_s) << " s\n"
     << "FGP     " << fmt(r.fgp) << " %\n"
     << "FRP     " << fmt(r.frp) << " %\n"
     << "FP      " << fmt(r.fp) << " %\n";
  return os.str();
}

}  // namespace fkz
