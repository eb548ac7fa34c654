#include "cscodec/metrics.hpp"

#include <cmath>
#include <string>

#include "cscodec/errors.hpp"

namespace cs {

namespace {

double mse_over(const Vec& a, const Vec& b, const std::vector<uint32_t>& idx) {
  double s = 0.0;
  for (uint32_t i : idx) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s / static_cast<double>(idx.size());
}

double to_db(double mse) {
  return mse == 0.0 ? kPsnrInfinite : 10.0 * std::log10(1.0 / mse);
}

void check_frames(const Vec& reference, const Vec& estimate, uint32_t width,
                  uint32_t height) {
  const size_t n = static_cast<size_t>(width) * height;
  if (reference.size() != n || estimate.size() != n) {
    throw LengthMismatch("psnr: frame sizes do not match " + std::to_string(width) +
                         "x" + std::to_string(height));
  }
}

}  // namespace

double psnr(const Vec& reference, const Vec& estimate, uint32_t width, uint32_t height,
            const std::vector<uint32_t>* zone) {
  check_frames(reference, estimate, width, height);
  const size_t n = reference.size();
  if (zone == nullptr) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double d = reference[i] - estimate[i];
      s += d * d;
    }
    return to_db(s / static_cast<double>(n));
  }
  if (zone->empty()) throw EmptyZone("psnr: empty zone");
  for (uint32_t i : *zone) {
    if (i >= n) throw IndexOutOfRange("psnr: zone index out of frame");
  }
  return to_db(mse_over(reference, estimate, *zone));
}

PsnrReport psnr_report(const Vec& reference, const Vec& estimate, uint32_t width,
                       uint32_t height, const std::vector<uint32_t>& region_indices) {
  check_frames(reference, estimate, width, height);
  const size_t n = reference.size();

  std::vector<uint8_t> in_region(n, 0);
  for (uint32_t i : region_indices) {
    if (i >= n) throw IndexOutOfRange("psnr_report: region index out of frame");
    in_region[i] = 1;
  }

  PsnrReport report;
  double concealed_sum = 0.0, outside_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double d = reference[i] - estimate[i];
    if (in_region[i]) {
      concealed_sum += d * d;
      ++report.concealed_count;
    } else {
      outside_sum += d * d;
      ++report.outside_count;
    }
  }
  if (report.concealed_count > 0) {
    report.concealed_db = to_db(concealed_sum / static_cast<double>(report.concealed_count));
  }
  if (report.outside_count > 0) {
    report.outside_db = to_db(outside_sum / static_cast<double>(report.outside_count));
  }
  // Whole-frame MSE is by definition the count-weighted mean of zone MSEs.
  report.whole_db = to_db((concealed_sum + outside_sum) / static_cast<double>(n));
  return report;
}

}  // namespace cs
