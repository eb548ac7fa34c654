#pragma once

#include <cstdint>
#include <vector>

#include "cscodec/transforms.hpp"

namespace cs {

// Sensing key: seed-derived description of the encryption matrix A
// (a subset of noiselet basis rows applied after a column permutation).
// The index arrays are expanded deterministically from (seed, n, m); only
// the seed and dimensions travel in key files. Immutable after generation.
struct SensingKey {
  uint64_t seed = 0;
  uint32_t n = 0;  // signal length, power of two
  uint32_t m = 0;  // measurement count, 0 < m <= n
  std::vector<uint32_t> row_subset;  // m distinct indices in [0, n)
  Permutation col_perm;              // length n
};

// Embedding key: T orthonormal DCT basis vectors of length m form B; the
// sorted complement (size P = m - T) forms the annihilator F, so F*B = 0
// exactly by construction.
struct EmbeddingKey {
  uint64_t seed = 0;
  uint32_t m = 0;
  uint32_t t = 0;  // capacity, 0 < T < m
  std::vector<uint32_t> col_subset;   // T distinct indices in [0, m)
  std::vector<uint32_t> complement;   // sorted, size m - T
};

// Seed and survival probability for the random column flips of the
// perturbation mask.
struct MaskSeed {
  uint64_t seed = 0;
  double p = 0.5;  // column stays intact with probability p
};

// Deterministic key generation; identical inputs give bit-identical keys.
// Throw InvalidDimensions / CapacityExceeded on bad dimensions.
SensingKey keygen_a(uint64_t seed, uint32_t n, uint32_t m);
EmbeddingKey keygen_b(uint64_t seed, uint32_t m, uint32_t t);

// Versioned binary key file layout (little-endian):
//   magic "CSPK", version u8 = 1, kind u8 (0 = A, 1 = B, 2 = mask seed),
//   then kind-specific fields:
//     A:    seed u64, n u32, m u32
//     B:    seed u64, m u32, t u32
//     mask: seed u64, p f64
std::vector<uint8_t> serialize_key(const SensingKey& key);
std::vector<uint8_t> serialize_key(const EmbeddingKey& key);
std::vector<uint8_t> serialize_key(const MaskSeed& key);

enum class KeyKind : uint8_t { Sensing = 0, Embedding = 1, Mask = 2 };

// Inspects the header without expanding anything.
// Throws MalformedKeyFile / UnsupportedVersion.
KeyKind peek_key_kind(const std::vector<uint8_t>& bytes);

SensingKey deserialize_sensing_key(const std::vector<uint8_t>& bytes);
EmbeddingKey deserialize_embedding_key(const std::vector<uint8_t>& bytes);
MaskSeed deserialize_mask_seed(const std::vector<uint8_t>& bytes);

}  // namespace cs
