#pragma once

#include <cstdint>
#include <vector>

#include "cscodec/keys.hpp"
#include "cscodec/mask_codec.hpp"
#include "cscodec/pgm.hpp"
#include "cscodec/solver.hpp"

namespace cs {

// Self-describing container for one sensed frame: header plus the
// measurement vector y_w. The flip pattern itself is never stored; it is
// recoverable only through the embedding key.
struct EncryptedPayload {
  uint16_t orig_w = 0;
  uint16_t orig_h = 0;
  uint16_t padded_side = 0;
  uint8_t levels = 4;
  uint32_t m = 0;
  uint32_t t = 0;
  uint32_t region_size = 0;
  std::vector<Rect> rects;
  double amplitude = 0.0;
  double epsilon_hint = 0.0;
  Vec y_w;
};

// Binary layout (little-endian): magic "CSPP", version u8 = 1, orig_w u16,
// orig_h u16, padded_side u16, levels u8, m u32, T u32, region_size u32,
// rect_count u16, rects as 4 x u16 each, amplitude f64, epsilon_hint f64,
// then m x f64 measurements. Round trips are byte-identical.
std::vector<uint8_t> serialize_payload(const EncryptedPayload& payload);
EncryptedPayload deserialize_payload(const std::vector<uint8_t>& bytes);

struct DecodeResult {
  Frame image;             // cropped to original dimensions, clipped to [0,1]
  FlipSet flips;           // recovered pattern (full decoder only)
  uint32_t ambiguous = 0;  // symbols erased by thresholding
  std::vector<SolverReport> reports;
};

struct PipelineOptions {
  double epsilon_factor = 0.001;  // per-solve epsilon = factor * ||input||_2
  double solver_tolerance = 1e-3;
  int max_iterations = 12000;
};

// Encoder: pads and senses the frame with the perturbed key, codes the flip
// pattern ternary, and embeds it into the measurements (y_w = (A+M)s + Bw).
// An empty region degenerates to plain sensing with amplitude 0.
EncryptedPayload encode(const Frame& frame, const SensingKey& key_a,
                        const EmbeddingKey& key_b, const std::vector<Rect>& rects,
                        const MaskSeed& mask_seed,
                        double ratio = kDefaultEmbeddingRatio, int levels = 4);

// Semi-authorized reconstruction: one l1 solve against H; the concealed
// region stays scrambled by design.
DecodeResult decode_semi(const EncryptedPayload& payload, const SensingKey& key_a,
                         const PipelineOptions& opts = {});

// Fully authorized reconstruction: annihilate the embedding, pre-estimate,
// extract and re-quantize the ternary message, rebuild the perturbation, and
// solve against the perturbed operator.
DecodeResult decode_full(const EncryptedPayload& payload, const SensingKey& key_a,
                         const EmbeddingKey& key_b, const PipelineOptions& opts = {});

// Eavesdropper baseline: semi decode with a key derived from the wrong seed.
DecodeResult decode_eavesdrop(const EncryptedPayload& payload, uint64_t wrong_seed,
                              const PipelineOptions& opts = {});

// Smallest power-of-two side that holds the frame and 2^levels.
uint32_t padded_side_for(uint32_t width, uint32_t height, int levels);

}  // namespace cs
