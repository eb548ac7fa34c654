#include "cscodec/rng.hpp"

#include <numeric>
#include <utility>

namespace cs {

std::vector<uint32_t> fisher_yates_prefix(Xoshiro256ss& rng, uint32_t n, uint32_t m) {
  std::vector<uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (uint32_t i = 0; i < m && i + 1 < n; ++i) {
    const uint64_t j = i + rng.below(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(m);
  return idx;
}

}  // namespace cs
