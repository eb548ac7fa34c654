#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "cscodec/mask_codec.hpp"
#include "cscodec/transforms.hpp"

namespace cs {

// Zone PSNRs over normalized [0,1] pixels, peak fixed at 1.0. An identical
// zone reports the +infinity sentinel; an empty concealed zone reports
// nullopt (not applicable).
struct PsnrReport {
  std::optional<double> concealed_db;
  double outside_db = 0.0;
  double whole_db = 0.0;
  size_t concealed_count = 0;
  size_t outside_count = 0;
};

constexpr double kPsnrInfinite = std::numeric_limits<double>::infinity();

// 10*log10(1/MSE) over the whole frame, or over the given zone's pixel
// indices (row-major over width x height). Throws DimensionMismatch-style
// errors on bad input and EmptyZone when a zone is supplied but empty.
double psnr(const Vec& reference, const Vec& estimate, uint32_t width, uint32_t height,
            const std::vector<uint32_t>* zone = nullptr);

// Three-column report matching concealed / outside / whole. Region indices
// are interpreted over the same width x height grid.
PsnrReport psnr_report(const Vec& reference, const Vec& estimate, uint32_t width,
                       uint32_t height, const std::vector<uint32_t>& region_indices);

}  // namespace cs
