#include "cscodec/operators.hpp"

#include <string>

#include "cscodec/errors.hpp"

namespace cs {

namespace {

void check_len(size_t got, size_t want, const char* who) {
  if (got != want) {
    throw LengthMismatch(std::string(who) + ": expected length " +
                         std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

Vec apply_A(const SensingKey& key, const Vec& s) {
  check_len(s.size(), key.n, "apply_A");
  Vec coeffs = noiselet_fwd(ipermute(s, key.col_perm));
  Vec y(key.m);
  for (uint32_t i = 0; i < key.m; ++i) y[i] = coeffs[key.row_subset[i]];
  return y;
}

Vec apply_A_adj(const SensingKey& key, const Vec& y) {
  check_len(y.size(), key.m, "apply_A_adj");
  Vec coeffs(key.n, 0.0);
  for (uint32_t i = 0; i < key.m; ++i) coeffs[key.row_subset[i]] = y[i];
  return permute(noiselet_adj(std::move(coeffs)), key.col_perm);
}

Vec apply_A_perturbed(const SensingKey& key, const RegionSet& region,
                      const FlipSet& flips, const Vec& s) {
  check_len(s.size(), key.n, "apply_A_perturbed");
  check_len(flips.size(), region.size(), "apply_A_perturbed flips");
  Vec d = s;
  for (size_t k = 0; k < region.size(); ++k) {
    const uint32_t j = region.indices[k];
    if (j >= key.n) {
      throw IndexOutOfRange("apply_A_perturbed: region index " + std::to_string(j) +
                            " out of range");
    }
    if (flips.flags[k]) d[j] = -d[j];
  }
  return apply_A(key, d);
}

Vec apply_H(const SensingKey& key, uint32_t side, int levels, const Vec& x) {
  check_len(x.size(), key.n, "apply_H");
  if (static_cast<uint64_t>(side) * side != key.n) {
    throw InvalidDimensions("apply_H: side^2 must equal n");
  }
  return apply_A(key, dwt2_inv(x, side, side, levels));
}

Vec apply_H_adj(const SensingKey& key, uint32_t side, int levels, const Vec& y) {
  if (static_cast<uint64_t>(side) * side != key.n) {
    throw InvalidDimensions("apply_H_adj: side^2 must equal n");
  }
  return dwt2_fwd(apply_A_adj(key, y), side, side, levels);
}

Vec apply_B(const EmbeddingKey& key, const Vec& w) {
  check_len(w.size(), key.t, "apply_B");
  Vec coeffs(key.m, 0.0);
  for (uint32_t k = 0; k < key.t; ++k) coeffs[key.col_subset[k]] = w[k];
  return dct_adj(coeffs);
}

Vec apply_B_adj(const EmbeddingKey& key, const Vec& y) {
  check_len(y.size(), key.m, "apply_B_adj");
  const Vec coeffs = dct_fwd(y);
  Vec w(key.t);
  for (uint32_t k = 0; k < key.t; ++k) w[k] = coeffs[key.col_subset[k]];
  return w;
}

Vec apply_F(const EmbeddingKey& key, const Vec& y) {
  check_len(y.size(), key.m, "apply_F");
  const Vec coeffs = dct_fwd(y);
  Vec z(key.complement.size());
  for (size_t k = 0; k < key.complement.size(); ++k) z[k] = coeffs[key.complement[k]];
  return z;
}

Vec apply_F_adj(const EmbeddingKey& key, const Vec& z) {
  check_len(z.size(), key.complement.size(), "apply_F_adj");
  Vec coeffs(key.m, 0.0);
  for (size_t k = 0; k < key.complement.size(); ++k) coeffs[key.complement[k]] = z[k];
  return dct_adj(coeffs);
}

}  // namespace cs
