#include "cscodec/keys.hpp"

#include <cstring>
#include <string>

#include "cscodec/errors.hpp"
#include "cscodec/rng.hpp"

namespace cs {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'P', 'K'};
constexpr uint8_t kVersion = 1;

void put_u8(std::vector<uint8_t>& out, uint8_t v) { out.push_back(v); }

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<uint8_t>& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

struct Reader {
  const std::vector<uint8_t>& buf;
  size_t pos = 0;

  void need(size_t k) const {
    if (pos + k > buf.size()) throw MalformedKeyFile("key file truncated");
  }
  uint8_t u8() {
    need(1);
    return buf[pos++];
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[pos++]) << (8 * i);
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(buf[pos++]) << (8 * i);
    return v;
  }
  double f64() {
    const uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
};

void write_header(std::vector<uint8_t>& out, KeyKind kind) {
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u8(out, kVersion);
  put_u8(out, static_cast<uint8_t>(kind));
}

KeyKind read_header(Reader& r) {
  r.need(6);
  if (std::memcmp(r.buf.data(), kMagic, 4) != 0) {
    throw MalformedKeyFile("bad key file magic");
  }
  r.pos = 4;
  const uint8_t version = r.u8();
  if (version != kVersion) {
    throw UnsupportedVersion("unsupported key file version " + std::to_string(version));
  }
  const uint8_t kind = r.u8();
  if (kind > 2) throw MalformedKeyFile("unknown key kind " + std::to_string(kind));
  return static_cast<KeyKind>(kind);
}

}  // namespace

SensingKey keygen_a(uint64_t seed, uint32_t n, uint32_t m) {
  if (!is_power_of_two(n)) {
    throw InvalidDimensions("keygen_a: n must be a power of two, got " + std::to_string(n));
  }
  if (m == 0 || m > n) {
    throw InvalidDimensions("keygen_a: require 0 < m <= n, got m=" + std::to_string(m));
  }
  SensingKey key;
  key.seed = seed;
  key.n = n;
  key.m = m;
  Xoshiro256ss rng(seed);
  key.row_subset = fisher_yates_prefix(rng, n, m);
  key.col_perm = fisher_yates_prefix(rng, n, n);
  return key;
}

EmbeddingKey keygen_b(uint64_t seed, uint32_t m, uint32_t t) {
  if (t == 0 || m == 0) throw InvalidDimensions("keygen_b: m and t must be positive");
  if (t >= m) {
    throw InvalidDimensions("keygen_b: capacity T must be below m (T=" +
                           std::to_string(t) + ", m=" + std::to_string(m) + ")");
  }
  EmbeddingKey key;
  key.seed = seed;
  key.m = m;
  key.t = t;
  Xoshiro256ss rng(seed);
  key.col_subset = fisher_yates_prefix(rng, m, t);
  std::vector<uint8_t> taken(m, 0);
  for (uint32_t c : key.col_subset) taken[c] = 1;
  key.complement.reserve(m - t);
  for (uint32_t i = 0; i < m; ++i) {
    if (!taken[i]) key.complement.push_back(i);
  }
  return key;
}

std::vector<uint8_t> serialize_key(const SensingKey& key) {
  std::vector<uint8_t> out;
  write_header(out, KeyKind::Sensing);
  put_u64(out, key.seed);
  put_u32(out, key.n);
  put_u32(out, key.m);
  return out;
}

std::vector<uint8_t> serialize_key(const EmbeddingKey& key) {
  std::vector<uint8_t> out;
  write_header(out, KeyKind::Embedding);
  put_u64(out, key.seed);
  put_u32(out, key.m);
  put_u32(out, key.t);
  return out;
}

std::vector<uint8_t> serialize_key(const MaskSeed& key) {
  std::vector<uint8_t> out;
  write_header(out, KeyKind::Mask);
  put_u64(out, key.seed);
  put_f64(out, key.p);
  return out;
}

KeyKind peek_key_kind(const std::vector<uint8_t>& bytes) {
  Reader r{bytes};
  return read_header(r);
}

SensingKey deserialize_sensing_key(const std::vector<uint8_t>& bytes) {
  Reader r{bytes};
  if (read_header(r) != KeyKind::Sensing) {
    throw MalformedKeyFile("not a sensing key file");
  }
  const uint64_t seed = r.u64();
  const uint32_t n = r.u32();
  const uint32_t m = r.u32();
  return keygen_a(seed, n, m);
}

EmbeddingKey deserialize_embedding_key(const std::vector<uint8_t>& bytes) {
  Reader r{bytes};
  if (read_header(r) != KeyKind::Embedding) {
    throw MalformedKeyFile("not an embedding key file");
  }
  const uint64_t seed = r.u64();
  const uint32_t m = r.u32();
  const uint32_t t = r.u32();
  return keygen_b(seed, m, t);
}

MaskSeed deserialize_mask_seed(const std::vector<uint8_t>& bytes) {
  Reader r{bytes};
  if (read_header(r) != KeyKind::Mask) {
    throw MalformedKeyFile("not a mask seed file");
  }
  MaskSeed key;
  key.seed = r.u64();
  key.p = r.f64();
  if (!(key.p >= 0.0 && key.p <= 1.0)) {
    throw MalformedKeyFile("mask seed probability outside [0,1]");
  }
  return key;
}

}  // namespace cs
