#include "cscodec/transforms.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "cscodec/errors.hpp"

namespace cs {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_pow2(size_t n) {
  if (n == 0 || !is_power_of_two(n)) {
    throw NonPowerOfTwoLength("signal length must be a nonzero power of two, got " +
                              std::to_string(n));
  }
}

}  // namespace

bool is_power_of_two(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

Vec fwht(Vec v) {
  check_pow2(v.size());
  const size_t n = v.size();
  for (size_t h = 1; h < n; h <<= 1) {
    for (size_t i = 0; i < n; i += 2 * h) {
      for (size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = (a + b) * kInvSqrt2;
        v[j + h] = (a - b) * kInvSqrt2;
      }
    }
  }
  return v;
}

namespace {

// One noiselet butterfly level. Blocks whose index has odd parity get the
// twisted (still orthogonal, symmetric) 2x2 kernel, which is what separates
// this basis from the plain Walsh-Hadamard one.
void noiselet_level(Vec& v, size_t h) {
  const size_t n = v.size();
  for (size_t i = 0; i < n; i += 2 * h) {
    const bool twist = std::popcount(i / (2 * h)) & 1;
    for (size_t j = i; j < i + h; ++j) {
      const double a = v[j];
      const double b = v[j + h];
      if (!twist) {
        v[j] = (a + b) * kInvSqrt2;
        v[j + h] = (a - b) * kInvSqrt2;
      } else {
        v[j] = (b - a) * kInvSqrt2;
        v[j + h] = (a + b) * kInvSqrt2;
      }
    }
  }
}

}  // namespace

Vec noiselet_fwd(Vec v) {
  check_pow2(v.size());
  for (size_t h = 1; h < v.size(); h <<= 1) noiselet_level(v, h);
  return v;
}

Vec noiselet_adj(Vec v) {
  check_pow2(v.size());
  // Both 2x2 kernels are symmetric, so the transpose just reverses the levels.
  for (size_t h = v.size() >> 1; h >= 1; h >>= 1) {
    noiselet_level(v, h);
    if (h == 1) break;
  }
  return v;
}

namespace {

// FFTW plans are cached per (size, kind); planning is not thread-safe,
// execution is.
fftw_plan dct_plan(int n, fftw_r2r_kind kind) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(n, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<double> in(n), out(n);
  fftw_plan p = fftw_plan_r2r_1d(n, in.data(), out.data(), kind,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

}  // namespace

Vec dct_fwd(const Vec& v) {
  if (v.empty()) throw EmptyInput("dct_fwd: empty input");
  const int n = static_cast<int>(v.size());
  Vec out(v.size());
  Vec in = v;
  fftw_execute_r2r(dct_plan(n, FFTW_REDFT10), in.data(), out.data());
  const double scale = 1.0 / std::sqrt(2.0 * n);
  for (auto& x : out) x *= scale;
  out[0] *= kInvSqrt2;
  return out;
}

Vec dct_adj(const Vec& v) {
  if (v.empty()) throw EmptyInput("dct_adj: empty input");
  const int n = static_cast<int>(v.size());
  Vec in = v;
  const double scale = 1.0 / std::sqrt(2.0 * n);
  for (auto& x : in) x *= scale;
  in[0] *= std::sqrt(2.0);
  Vec out(v.size());
  fftw_execute_r2r(dct_plan(n, FFTW_REDFT01), in.data(), out.data());
  return out;
}

namespace {

void check_dwt_dims(uint32_t width, uint32_t height, int levels) {
  if (levels < 1) throw InvalidDimensions("dwt2: levels must be >= 1");
  const uint32_t div = 1u << levels;
  if (width == 0 || height == 0 || width % div != 0 || height % div != 0) {
    throw DimensionNotDivisible("dwt2: " + std::to_string(width) + "x" +
                                std::to_string(height) +
                                " not divisible by 2^levels");
  }
}

void haar_rows_fwd(Vec& img, uint32_t stride, uint32_t w, uint32_t h) {
  Vec tmp(w);
  for (uint32_t r = 0; r < h; ++r) {
    double* row = img.data() + static_cast<size_t>(r) * stride;
    for (uint32_t k = 0; k < w / 2; ++k) {
      tmp[k] = (row[2 * k] + row[2 * k + 1]) * kInvSqrt2;
      tmp[w / 2 + k] = (row[2 * k] - row[2 * k + 1]) * kInvSqrt2;
    }
    for (uint32_t k = 0; k < w; ++k) row[k] = tmp[k];
  }
}

void haar_cols_fwd(Vec& img, uint32_t stride, uint32_t w, uint32_t h) {
  Vec tmp(h);
  for (uint32_t c = 0; c < w; ++c) {
    for (uint32_t k = 0; k < h / 2; ++k) {
      const double a = img[static_cast<size_t>(2 * k) * stride + c];
      const double b = img[static_cast<size_t>(2 * k + 1) * stride + c];
      tmp[k] = (a + b) * kInvSqrt2;
      tmp[h / 2 + k] = (a - b) * kInvSqrt2;
    }
    for (uint32_t k = 0; k < h; ++k) img[static_cast<size_t>(k) * stride + c] = tmp[k];
  }
}

void haar_rows_inv(Vec& img, uint32_t stride, uint32_t w, uint32_t h) {
  Vec tmp(w);
  for (uint32_t r = 0; r < h; ++r) {
    double* row = img.data() + static_cast<size_t>(r) * stride;
    for (uint32_t k = 0; k < w / 2; ++k) {
      tmp[2 * k] = (row[k] + row[w / 2 + k]) * kInvSqrt2;
      tmp[2 * k + 1] = (row[k] - row[w / 2 + k]) * kInvSqrt2;
    }
    for (uint32_t k = 0; k < w; ++k) row[k] = tmp[k];
  }
}

void haar_cols_inv(Vec& img, uint32_t stride, uint32_t w, uint32_t h) {
  Vec tmp(h);
  for (uint32_t c = 0; c < w; ++c) {
    for (uint32_t k = 0; k < h / 2; ++k) {
      const double lo = img[static_cast<size_t>(k) * stride + c];
      const double hi = img[static_cast<size_t>(h / 2 + k) * stride + c];
      tmp[2 * k] = (lo + hi) * kInvSqrt2;
      tmp[2 * k + 1] = (lo - hi) * kInvSqrt2;
    }
    for (uint32_t k = 0; k < h; ++k) img[static_cast<size_t>(k) * stride + c] = tmp[k];
  }
}

}  // namespace

Vec dwt2_fwd(Vec img, uint32_t width, uint32_t height, int levels) {
  check_dwt_dims(width, height, levels);
  if (img.size() != static_cast<size_t>(width) * height) {
    throw LengthMismatch("dwt2_fwd: image size does not match dimensions");
  }
  uint32_t w = width, h = height;
  for (int l = 0; l < levels; ++l) {
    haar_rows_fwd(img, width, w, h);
    haar_cols_fwd(img, width, w, h);
    w /= 2;
    h /= 2;
  }
  return img;
}

Vec dwt2_inv(Vec coeffs, uint32_t width, uint32_t height, int levels) {
  check_dwt_dims(width, height, levels);
  if (coeffs.size() != static_cast<size_t>(width) * height) {
    throw LengthMismatch("dwt2_inv: coefficient size does not match dimensions");
  }
  for (int l = levels - 1; l >= 0; --l) {
    const uint32_t w = width >> l;
    const uint32_t h = height >> l;
    haar_cols_inv(coeffs, width, w, h);
    haar_rows_inv(coeffs, width, w, h);
  }
  return coeffs;
}

Vec permute(const Vec& v, const Permutation& p) {
  if (v.size() != p.size()) throw LengthMismatch("permute: length mismatch");
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[p[i]];
  return out;
}

Vec ipermute(const Vec& v, const Permutation& p) {
  if (v.size() != p.size()) throw LengthMismatch("ipermute: length mismatch");
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[p[i]] = v[i];
  return out;
}

}  // namespace cs
