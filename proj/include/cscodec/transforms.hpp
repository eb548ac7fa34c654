#pragma once

#include <cstdint>
#include <vector>

namespace cs {

// Real vector of samples or transform coefficients. All transforms below are
// orthonormal, matrix-free, and pure functions of their input.
using Vec = std::vector<double>;

using Permutation = std::vector<uint32_t>;

// Orthonormal Walsh-Hadamard transform. Self-inverse and self-adjoint.
// Throws NonPowerOfTwoLength.
Vec fwht(Vec v);

// Real noiselet transform and its exact transpose, defined by a pairwise
// butterfly recursion with a per-block sign twist (see docs/transforms.md for
// the dense recurrence). noiselet_adj(noiselet_fwd(v)) == v.
Vec noiselet_fwd(Vec v);
Vec noiselet_adj(Vec v);

// Orthonormal DCT-II and its transpose (= inverse). Throws EmptyInput.
Vec dct_fwd(const Vec& v);
Vec dct_adj(const Vec& v);

// Multilevel orthonormal 2-D Haar analysis/synthesis on a row-major
// width x height grid. Layout per level: lowpass halves first, so after one
// level the grid is [LL HL; LH HH] with LL in the top-left quadrant.
// Throws DimensionNotDivisible when width or height is not divisible by
// 2^levels, InvalidDimensions when levels < 1.
Vec dwt2_fwd(Vec img, uint32_t width, uint32_t height, int levels);
Vec dwt2_inv(Vec coeffs, uint32_t width, uint32_t height, int levels);

// Gather/scatter permutations: permute(v,p)[i] = v[p[i]],
// ipermute(permute(v,p),p) = v. permute is the adjoint of ipermute.
// Throws LengthMismatch.
Vec permute(const Vec& v, const Permutation& p);
Vec ipermute(const Vec& v, const Permutation& p);

bool is_power_of_two(uint64_t n);

}  // namespace cs
