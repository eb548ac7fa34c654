#pragma once

#include <cstdint>

#include "cscodec/keys.hpp"
#include "cscodec/mask_codec.hpp"
#include "cscodec/transforms.hpp"

namespace cs {

// Matrix-free linear operators of the scheme. Every forward/adjoint pair is
// an exact transpose pair; nothing here materializes an m x N matrix.
//
//   A  = row_subset( noiselet( ipermute(.) ) )        A A^T = I_m
//   H  = A * Phi  with Phi the inverse 2-D Haar       (square padded frames)
//   B  = selected orthonormal DCT columns             B^T B = I_T
//   F  = complementary DCT rows                       F B = 0,  F F^T = I_P

Vec apply_A(const SensingKey& key, const Vec& s);
Vec apply_A_adj(const SensingKey& key, const Vec& y);

// (A + M) s, computed as A(D s) where D negates the flipped region entries:
// sign-flipping column j of A is the same as negating s_j.
Vec apply_A_perturbed(const SensingKey& key, const RegionSet& region,
                      const FlipSet& flips, const Vec& s);

Vec apply_H(const SensingKey& key, uint32_t side, int levels, const Vec& x);
Vec apply_H_adj(const SensingKey& key, uint32_t side, int levels, const Vec& y);

Vec apply_B(const EmbeddingKey& key, const Vec& w);
Vec apply_B_adj(const EmbeddingKey& key, const Vec& y);

Vec apply_F(const EmbeddingKey& key, const Vec& y);
Vec apply_F_adj(const EmbeddingKey& key, const Vec& z);

}  // namespace cs
