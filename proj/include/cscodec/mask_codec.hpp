#pragma once

#include <cstdint>
#include <vector>

#include "cscodec/keys.hpp"
#include "cscodec/transforms.hpp"

namespace cs {

// Axis-aligned rectangle in original image coordinates.
struct Rect {
  uint16_t x = 0;
  uint16_t y = 0;
  uint16_t w = 0;
  uint16_t h = 0;

  bool operator==(const Rect&) const = default;
};

// Ordered index set C of privacy-sensitive pixels, row-major over the padded
// image. Indices are strictly increasing and deduplicated.
struct RegionSet {
  std::vector<uint32_t> indices;
  std::vector<Rect> rects;

  size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

// Per-column flip flags, aligned with RegionSet order. flags[k] set means
// column C_k of A is sign-flipped.
struct FlipSet {
  std::vector<uint8_t> flags;

  size_t size() const { return flags.size(); }
  bool operator==(const FlipSet&) const = default;
};

// Length-T vector over {-a, 0, +a}: +a = intact column, -a = flipped column,
// 0 = unused capacity slot.
struct TernaryMessage {
  Vec w;
  double amplitude = 0.0;
};

struct MaskDecodeResult {
  FlipSet flips;
  // Zeros inside the active prefix: thresholding erased a live symbol. The
  // decoder maps those to "not flipped" and reports them instead of aborting.
  uint32_t ambiguous = 0;
};

// Union of rectangle pixels mapped to padded row-major indices, sorted
// ascending. Throws RectOutOfBounds; an empty rect list yields an empty set.
RegionSet region_from_rects(const std::vector<Rect>& rects, uint32_t img_w,
                            uint32_t img_h, uint32_t padded_side);

// Each column flips independently with probability 1 - p, from the seeded
// stream. Pure function of (seed, p, region_size).
FlipSet gen_flips(size_t region_size, const MaskSeed& mask_seed);

// Ternary coding of the flip pattern. Throws CapacityExceeded when the
// region does not fit in T slots.
TernaryMessage encode_mask(const FlipSet& flips, double amplitude, size_t t);

// Inverse coding from a recovered (already thresholded) message.
MaskDecodeResult decode_mask(const Vec& w_hat, size_t region_size);

// a = ratio * reference_norm / sqrt(region_size), so that
// ||B w||_2 / reference_norm == ratio exactly for orthonormal B.
// Throws EmptyRegion when region_size == 0.
double compute_amplitude(double ratio, double reference_norm, size_t region_size);

// The embedding power ratio used throughout unless overridden.
constexpr double kDefaultEmbeddingRatio = 0.085;

}  // namespace cs
