#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "fkz/raster.hpp"

namespace fkz {

struct MetricsReport {
  double mae = 0.0;
  double mse = 0.0;
  double psnr_db = 0.0;  // +infinity when mse == 0
  double cr = 0.0;
  double bpp = 0.0;      // bits per pixel after compression
  double etime_s = 0.0;  // wall clock, 0.1 ms resolution
  double fgp = 0.0;
  double frp = 0.0;
  double fp = 0.0;
};

double compression_ratio(std::uint64_t uncompressed_bytes, std::uint64_t compressed_bytes);
double bits_per_pixel(double bpp_before, double cr);

double mean_absolute_error(const ImageRaster& a, const ImageRaster& b);
double mean_squared_error(const ImageRaster& a, const ImageRaster& b);
double psnr(double mse, int bit_depth);

// Eigenvalue-spectrum metrics, all on the descending full spectrum, in percent.
double fgp(std::span<const double> eigenvalues);  // 100 * (1 - l2/l1)
double frp(std::span<const double> eigenvalues);  // 100 * (1 - (l2 - lN)/l1)
double fp(std::span<const double> eigenvalues);   // 100 * l1 / sum(l)

MetricsReport build_report(const ImageRaster& original, const ImageRaster& reconstructed,
                           std::uint64_t container_bytes, std::span<const double> eigenvalues,
                           double elapsed_seconds);

// Flat JSON object with lowercase keys; infinite psnr serializes as "inf".
std::string to_json(const MetricsReport& report);
// Header row plus one data row.
std::string to_csv(const MetricsReport& report);
std::string to_text(const MetricsReport& report);

}  // namespace fkz
