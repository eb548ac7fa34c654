#include "test_support.hpp"

#include <algorithm>
#include <cmath>

namespace cstest {

using cs::Vec;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

double rel_err(const Vec& estimate, const Vec& truth) {
  Vec diff(truth.size());
  for (size_t i = 0; i < truth.size(); ++i) diff[i] = estimate[i] - truth[i];
  return norm2(diff) / norm2(truth);
}

Vec random_vec(cs::Xoshiro256ss& rng, size_t n) {
  Vec v(n);
  for (auto& x : v) x = 2.0 * rng.next_double() - 1.0;
  return v;
}

std::vector<Vec> dense_columns(const std::function<Vec(const Vec&)>& op, size_t n) {
  std::vector<Vec> cols(n);
  Vec e(n, 0.0);
  for (size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    cols[j] = op(e);
    e[j] = 0.0;
  }
  return cols;
}

Vec dense_apply(const std::vector<Vec>& columns, const Vec& x) {
  Vec y(columns.empty() ? 0 : columns[0].size(), 0.0);
  for (size_t j = 0; j < columns.size(); ++j) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += columns[j][i] * x[j];
  }
  return y;
}

double adjoint_gap(const std::function<Vec(const Vec&)>& fwd,
                   const std::function<Vec(const Vec&)>& adj, size_t n, size_t m,
                   int trials, uint64_t seed) {
  cs::Xoshiro256ss rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Vec x = random_vec(rng, n);
    const Vec y = random_vec(rng, m);
    worst = std::max(worst, std::fabs(dot(fwd(x), y) - dot(x, adj(y))));
  }
  return worst;
}

Vec chambolle_pock_bpdn(const std::vector<Vec>& columns, const Vec& y, double eps,
                        int iterations) {
  const size_t n = columns.size();
  const size_t m = y.size();

  // Dense transpose apply.
  auto lt_apply = [&](const Vec& v) {
    Vec out(n);
    for (size_t j = 0; j < n; ++j) out[j] = dot(columns[j], v);
    return out;
  };

  // Operator norm by dense power iteration.
  Vec p(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lnorm = 1.0;
  for (int it = 0; it < 200; ++it) {
    Vec q = lt_apply(dense_apply(columns, p));
    const double s = norm2(q);
    if (s == 0.0) break;
    lnorm = std::sqrt(s);
    for (auto& qi : q) qi /= s;
    p = q;
  }
  const double step = 0.95 / std::max(lnorm, 1e-12);

  Vec x(n, 0.0), xbar(n, 0.0), v(m, 0.0);
  for (int it = 0; it < iterations; ++it) {
    // Dual: prox of the conjugate of the eps-ball indicator around y.
    Vec lz = dense_apply(columns, xbar);
    for (size_t i = 0; i < m; ++i) v[i] += step * (lz[i] - y[i]);
    const double vn = norm2(v);
    if (vn > 0.0) {
      const double shrink = std::max(0.0, 1.0 - step * eps / vn);
      for (auto& vi : v) vi *= shrink;
    }
    // Primal: soft threshold.
    const Vec g = lt_apply(v);
    for (size_t j = 0; j < n; ++j) {
      const double xj = x[j] - step * g[j];
      const double nx = std::fabs(xj) > step ? xj - std::copysign(step, xj) : 0.0;
      xbar[j] = 2.0 * nx - x[j];
      x[j] = nx;
    }
  }
  return x;
}

cs::Frame standard_frame() {
  constexpr uint32_t kSide = 128;
  cs::Frame frame;
  frame.width = kSide;
  frame.height = kSide;
  frame.pixels.resize(kSide * kSide);
  for (uint32_t yy = 0; yy < kSide; ++yy) {
    for (uint32_t xx = 0; xx < kSide; ++xx) {
      const double gx = xx / 127.0;
      const double gy = yy / 127.0;
      double v = 0.22 + 0.38 * gx + 0.22 * gy * (1.0 - gx);
      const double d1 = (xx - 64.0) * (xx - 64.0) + (yy - 64.0) * (yy - 64.0);
      v += 0.20 * std::exp(-d1 / (2.0 * 18.0 * 18.0));
      const double d2 = (xx - 30.0) * (xx - 30.0) + (yy - 98.0) * (yy - 98.0);
      v -= 0.28 * std::exp(-d2 / (2.0 * 14.0 * 14.0));
      if (xx >= 84 && xx < 112 && yy >= 18 && yy < 44) v += 0.18;
      if (xx >= 8 && xx < 40 && yy >= 12 && yy < 30) v -= 0.16;
      v += 0.022 * std::sin(2.0 * M_PI * xx / 9.0) * std::sin(2.0 * M_PI * yy / 7.0);
      v = std::clamp(v, 0.02, 0.98);
      // 8-bit quantization keeps the frame identical to its PGM round trip.
      frame.pixels[yy * kSide + xx] = std::round(v * 255.0) / 255.0;
    }
  }
  return frame;
}

cs::Rect standard_region() { return cs::Rect{48, 48, 32, 32}; }

}  // namespace cstest
