#include "cscodec/mask_codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cscodec/errors.hpp"
#include "cscodec/rng.hpp"

namespace cs {

RegionSet region_from_rects(const std::vector<Rect>& rects, uint32_t img_w,
                            uint32_t img_h, uint32_t padded_side) {
  if (img_w > padded_side || img_h > padded_side) {
    throw InvalidDimensions("region_from_rects: image exceeds padded grid");
  }
  RegionSet region;
  region.rects = rects;
  for (const Rect& r : rects) {
    if (r.w == 0 || r.h == 0) continue;
    if (static_cast<uint32_t>(r.x) + r.w > img_w ||
        static_cast<uint32_t>(r.y) + r.h > img_h) {
      throw RectOutOfBounds("rect " + std::to_string(r.x) + "," + std::to_string(r.y) +
                            "," + std::to_string(r.w) + "," + std::to_string(r.h) +
                            " exceeds " + std::to_string(img_w) + "x" +
                            std::to_string(img_h) + " image");
    }
    for (uint32_t row = r.y; row < static_cast<uint32_t>(r.y) + r.h; ++row) {
      for (uint32_t col = r.x; col < static_cast<uint32_t>(r.x) + r.w; ++col) {
        region.indices.push_back(row * padded_side + col);
      }
    }
  }
  std::sort(region.indices.begin(), region.indices.end());
  region.indices.erase(std::unique(region.indices.begin(), region.indices.end()),
                       region.indices.end());
  return region;
}

FlipSet gen_flips(size_t region_size, const MaskSeed& mask_seed) {
  Xoshiro256ss rng(mask_seed.seed);
  FlipSet flips;
  flips.flags.resize(region_size);
  for (size_t k = 0; k < region_size; ++k) {
    flips.flags[k] = rng.next_double() >= mask_seed.p ? 1 : 0;
  }
  return flips;
}

TernaryMessage encode_mask(const FlipSet& flips, double amplitude, size_t t) {
  if (flips.size() > t) {
    throw CapacityExceeded("encode_mask: region size " + std::to_string(flips.size()) +
                           " exceeds capacity T=" + std::to_string(t));
  }
  if (!(amplitude > 0.0)) {
    throw InvalidDimensions("encode_mask: amplitude must be positive");
  }
  TernaryMessage msg;
  msg.amplitude = amplitude;
  msg.w.assign(t, 0.0);
  for (size_t k = 0; k < flips.size(); ++k) {
    msg.w[k] = flips.flags[k] ? -amplitude : amplitude;
  }
  return msg;
}

MaskDecodeResult decode_mask(const Vec& w_hat, size_t region_size) {
  if (region_size > w_hat.size()) {
    throw CapacityExceeded("decode_mask: region size exceeds message length");
  }
  MaskDecodeResult result;
  result.flips.flags.resize(region_size);
  for (size_t k = 0; k < region_size; ++k) {
    result.flips.flags[k] = w_hat[k] < 0.0 ? 1 : 0;
    if (w_hat[k] == 0.0) ++result.ambiguous;
  }
  return result;
}

double compute_amplitude(double ratio, double reference_norm, size_t region_size) {
  if (region_size == 0) {
    throw EmptyRegion("compute_amplitude: empty region has no amplitude");
  }
  if (!(ratio > 0.0) || !(reference_norm > 0.0)) {
    throw InvalidDimensions("compute_amplitude: ratio and reference norm must be positive");
  }
  return ratio * reference_norm / std::sqrt(static_cast<double>(region_size));
}

}  // namespace cs
