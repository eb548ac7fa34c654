#include "cscodec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "cscodec/errors.hpp"
#include "cscodec/operators.hpp"

namespace cs {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'P', 'P'};
constexpr uint8_t kVersion = 1;

double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void put_u8(std::vector<uint8_t>& out, uint8_t v) { out.push_back(v); }

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<uint8_t>& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(bits >> (8 * i)));
}

struct Reader {
  const std::vector<uint8_t>& buf;
  size_t pos = 0;

  void need(size_t k) const {
    if (pos + k > buf.size()) throw MalformedPayload("payload truncated");
  }
  uint8_t u8() {
    need(1);
    return buf[pos++];
  }
  uint16_t u16() {
    need(2);
    uint16_t v = static_cast<uint16_t>(buf[pos] | (buf[pos + 1] << 8));
    pos += 2;
    return v;
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[pos++]) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(buf[pos++]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
};

uint32_t side_of(const SensingKey& key) {
  const auto side = static_cast<uint32_t>(std::lround(std::sqrt(static_cast<double>(key.n))));
  if (static_cast<uint64_t>(side) * side != key.n) {
    throw InvalidDimensions("sensing key n is not a square grid");
  }
  return side;
}

void check_payload_keys(const EncryptedPayload& payload, const SensingKey& key_a,
                        const EmbeddingKey* key_b) {
  const uint64_t n = static_cast<uint64_t>(payload.padded_side) * payload.padded_side;
  if (key_a.n != n || key_a.m != payload.m) {
    throw InvalidDimensions("sensing key does not match payload header");
  }
  if (key_b != nullptr && (key_b->m != payload.m || key_b->t != payload.t)) {
    throw InvalidDimensions("embedding key does not match payload header");
  }
}

Frame crop_clip(const Vec& s, uint32_t side, uint16_t orig_w, uint16_t orig_h) {
  Frame out;
  out.width = orig_w;
  out.height = orig_h;
  out.pixels.resize(static_cast<size_t>(orig_w) * orig_h);
  for (uint32_t r = 0; r < orig_h; ++r) {
    for (uint32_t c = 0; c < orig_w; ++c) {
      out.pixels[static_cast<size_t>(r) * orig_w + c] =
          std::clamp(s[static_cast<size_t>(r) * side + c], 0.0, 1.0);
    }
  }
  return out;
}

SolverOptions solve_opts(const PipelineOptions& opts, double input_norm) {
  SolverOptions so;
  so.epsilon = opts.epsilon_factor * input_norm;
  so.tolerance = opts.solver_tolerance;
  so.max_outer_iterations = opts.max_iterations;
  return so;
}

}  // namespace

uint32_t padded_side_for(uint32_t width, uint32_t height, int levels) {
  uint32_t side = 1u << levels;
  while (side < width || side < height) side <<= 1;
  return side;
}

std::vector<uint8_t> serialize_payload(const EncryptedPayload& payload) {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u8(out, kVersion);
  put_u16(out, payload.orig_w);
  put_u16(out, payload.orig_h);
  put_u16(out, payload.padded_side);
  put_u8(out, payload.levels);
  put_u32(out, payload.m);
  put_u32(out, payload.t);
  put_u32(out, payload.region_size);
  put_u16(out, static_cast<uint16_t>(payload.rects.size()));
  for (const Rect& r : payload.rects) {
    put_u16(out, r.x);
    put_u16(out, r.y);
    put_u16(out, r.w);
    put_u16(out, r.h);
  }
  put_f64(out, payload.amplitude);
  put_f64(out, payload.epsilon_hint);
  for (double v : payload.y_w) put_f64(out, v);
  return out;
}

EncryptedPayload deserialize_payload(const std::vector<uint8_t>& bytes) {
  Reader r{bytes};
  r.need(5);
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw MalformedPayload("bad payload magic");
  }
  r.pos = 4;
  const uint8_t version = r.u8();
  if (version != kVersion) {
    throw UnsupportedVersion("unsupported payload version " + std::to_string(version));
  }
  EncryptedPayload p;
  p.orig_w = r.u16();
  p.orig_h = r.u16();
  p.padded_side = r.u16();
  p.levels = r.u8();
  p.m = r.u32();
  p.t = r.u32();
  p.region_size = r.u32();
  const uint16_t rect_count = r.u16();
  p.rects.resize(rect_count);
  for (Rect& rect : p.rects) {
    rect.x = r.u16();
    rect.y = r.u16();
    rect.w = r.u16();
    rect.h = r.u16();
  }
  p.amplitude = r.f64();
  p.epsilon_hint = r.f64();
  p.y_w.resize(p.m);
  for (double& v : p.y_w) v = r.f64();
  if (r.pos != bytes.size()) throw MalformedPayload("trailing bytes in payload");
  if (p.t >= p.m || p.region_size > p.t) {
    throw MalformedPayload("payload header violates region/capacity bounds");
  }
  return p;
}

EncryptedPayload encode(const Frame& frame, const SensingKey& key_a,
                        const EmbeddingKey& key_b, const std::vector<Rect>& rects,
                        const MaskSeed& mask_seed, double ratio, int levels) {
  const uint32_t side = side_of(key_a);
  if (frame.width > side || frame.height > side || side % (1u << levels) != 0) {
    throw InvalidDimensions("encode: frame does not fit the key's padded grid");
  }
  if (key_b.m != key_a.m) {
    throw InvalidDimensions("encode: embedding key m does not match sensing key");
  }
  if (frame.pixels.size() != static_cast<size_t>(frame.width) * frame.height) {
    throw LengthMismatch("encode: frame pixel count mismatch");
  }

  Vec s(key_a.n, 0.0);
  for (uint32_t r = 0; r < frame.height; ++r) {
    for (uint32_t c = 0; c < frame.width; ++c) {
      s[static_cast<size_t>(r) * side + c] =
          frame.pixels[static_cast<size_t>(r) * frame.width + c];
    }
  }

  const RegionSet region = region_from_rects(rects, frame.width, frame.height, side);
  if (region.size() > key_b.t) {
    throw CapacityExceeded("encode: region size " + std::to_string(region.size()) +
                           " exceeds capacity T=" + std::to_string(key_b.t));
  }
  const FlipSet flips = gen_flips(region.size(), mask_seed);
  Vec y_w = apply_A_perturbed(key_a, region, flips, s);
  const double reference_norm = norm2(y_w);

  EncryptedPayload payload;
  payload.orig_w = static_cast<uint16_t>(frame.width);
  payload.orig_h = static_cast<uint16_t>(frame.height);
  payload.padded_side = static_cast<uint16_t>(side);
  payload.levels = static_cast<uint8_t>(levels);
  payload.m = key_a.m;
  payload.t = key_b.t;
  payload.region_size = static_cast<uint32_t>(region.size());
  payload.rects = rects;

  if (!region.empty()) {
    const double a = compute_amplitude(ratio, reference_norm, region.size());
    const TernaryMessage msg = encode_mask(flips, a, key_b.t);
    const Vec embedded = apply_B(key_b, msg.w);
    for (uint32_t i = 0; i < key_a.m; ++i) y_w[i] += embedded[i];
    payload.amplitude = a;
    const double achieved = norm2(embedded) / reference_norm;
    if (std::fabs(achieved - ratio) > 1e-10 * ratio) {
      throw std::logic_error("encode: embedding power constraint violated");
    }
  }
  payload.y_w = std::move(y_w);
  payload.epsilon_hint = 0.001 * norm2(payload.y_w);
  return payload;
}

DecodeResult decode_semi(const EncryptedPayload& payload, const SensingKey& key_a,
                         const PipelineOptions& opts) {
  check_payload_keys(payload, key_a, nullptr);
  const uint32_t side = payload.padded_side;
  const int levels = payload.levels;

  const LinOp fwd = [&](const Vec& x) { return apply_H(key_a, side, levels, x); };
  const LinOp adj = [&](const Vec& y) { return apply_H_adj(key_a, side, levels, y); };
  auto [x_hat, report] =
      bpdn_solve(fwd, adj, payload.y_w, key_a.n, solve_opts(opts, norm2(payload.y_w)));

  const Vec s_hat = dwt2_inv(std::move(x_hat), side, side, levels);
  DecodeResult result;
  result.image = crop_clip(s_hat, side, payload.orig_w, payload.orig_h);
  result.reports.push_back(std::move(report));
  return result;
}

DecodeResult decode_full(const EncryptedPayload& payload, const SensingKey& key_a,
                         const EmbeddingKey& key_b, const PipelineOptions& opts) {
  check_payload_keys(payload, key_a, &key_b);
  if (payload.region_size == 0) {
    // No perturbation, no embedded message: the extraction steps degenerate
    // and the result coincides with the semi-authorized reconstruction.
    return decode_semi(payload, key_a, opts);
  }
  const uint32_t side = payload.padded_side;
  const int levels = payload.levels;
  const RegionSet region =
      region_from_rects(payload.rects, payload.orig_w, payload.orig_h, side);
  if (region.size() != payload.region_size) {
    throw MalformedPayload("payload region size does not match its rectangles");
  }

  DecodeResult result;

  // 1-2: strip the embedding and pre-estimate the sparse coefficients.
  const Vec y_tilde = apply_F(key_b, payload.y_w);
  const LinOp fwd_fh = [&](const Vec& x) {
    return apply_F(key_b, apply_H(key_a, side, levels, x));
  };
  const LinOp adj_fh = [&](const Vec& z) {
    return apply_H_adj(key_a, side, levels, apply_F_adj(key_b, z));
  };
  auto [x_pre, report_pre] =
      bpdn_solve(fwd_fh, adj_fh, y_tilde, key_a.n, solve_opts(opts, norm2(y_tilde)));
  result.reports.push_back(std::move(report_pre));

  // 3: least-squares estimate of the message; orthonormal columns make
  // (B^T B)^{-1} B^T collapse to B^T.
  const Vec h_x = apply_H(key_a, side, levels, x_pre);
  Vec residual(payload.m);
  for (uint32_t i = 0; i < payload.m; ++i) residual[i] = payload.y_w[i] - h_x[i];
  const Vec w_est = apply_B_adj(key_b, residual);

  // 4: hard threshold at half the symbol magnitude, then re-quantize.
  const double a = payload.amplitude;
  const double eta = a / 2.0;
  Vec w_hat(w_est.size(), 0.0);
  for (size_t i = 0; i < w_est.size(); ++i) {
    if (std::fabs(w_est[i]) > eta) w_hat[i] = w_est[i] > 0.0 ? a : -a;
  }

  // 5: rebuild the perturbation pattern.
  MaskDecodeResult mask = decode_mask(w_hat, payload.region_size);
  result.flips = mask.flips;
  result.ambiguous = mask.ambiguous;

  // 6: solve against the perturbed operator with the embedding removed.
  const Vec embedded = apply_B(key_b, w_hat);
  Vec data(payload.m);
  for (uint32_t i = 0; i < payload.m; ++i) data[i] = payload.y_w[i] - embedded[i];
  const FlipSet& flips = result.flips;
  const LinOp fwd_pert = [&](const Vec& x) {
    return apply_A_perturbed(key_a, region, flips, dwt2_inv(x, side, side, levels));
  };
  const LinOp adj_pert = [&](const Vec& y) {
    Vec s = apply_A_adj(key_a, y);
    for (size_t k = 0; k < region.size(); ++k) {
      if (flips.flags[k]) s[region.indices[k]] = -s[region.indices[k]];
    }
    return dwt2_fwd(std::move(s), side, side, levels);
  };
  auto [x_hat, report_final] =
      bpdn_solve(fwd_pert, adj_pert, data, key_a.n, solve_opts(opts, norm2(data)));
  result.reports.push_back(std::move(report_final));

  // 7: back to the pixel domain.
  const Vec s_hat = dwt2_inv(std::move(x_hat), side, side, levels);
  result.image = crop_clip(s_hat, side, payload.orig_w, payload.orig_h);
  return result;
}

DecodeResult decode_eavesdrop(const EncryptedPayload& payload, uint64_t wrong_seed,
                              const PipelineOptions& opts) {
  const uint64_t n = static_cast<uint64_t>(payload.padded_side) * payload.padded_side;
  const SensingKey guess = keygen_a(wrong_seed, static_cast<uint32_t>(n), payload.m);
  return decode_semi(payload, guess, opts);
}

}  // namespace cs
