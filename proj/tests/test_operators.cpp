#include <cmath>

#include "cscodec/errors.hpp"
#include "cscodec/keys.hpp"
#include "cscodec/operators.hpp"
#include "doctest.h"
#include "test_support.hpp"

using cs::Vec;
using cstest::adjoint_gap;
using cstest::dense_apply;
using cstest::dense_columns;
using cstest::norm2;
using cstest::random_vec;

namespace {

// Dense m x n expansion of A, stored as columns, for n <= 64 oracles.
std::vector<Vec> dense_A(const cs::SensingKey& key) {
  return dense_columns([&](const Vec& s) { return cs::apply_A(key, s); }, key.n);
}

}  // namespace

TEST_CASE("A has orthonormal rows") {
  const cs::SensingKey key = cs::keygen_a(5, 16, 8);
  for (uint32_t i = 0; i < key.m; ++i) {
    Vec e(key.m, 0.0);
    e[i] = 1.0;
    const Vec round = cs::apply_A(key, cs::apply_A_adj(key, e));
    for (uint32_t j = 0; j < key.m; ++j) {
      CHECK(std::fabs(round[j] - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("A zero and linearity") {
  const cs::SensingKey key = cs::keygen_a(5, 64, 20);
  CHECK(norm2(cs::apply_A(key, Vec(64, 0.0))) == 0.0);

  cs::Xoshiro256ss rng(17);
  const Vec u = random_vec(rng, 64);
  const Vec v = random_vec(rng, 64);
  Vec combo(64);
  for (size_t i = 0; i < 64; ++i) combo[i] = 2.5 * u[i] - 0.75 * v[i];
  const Vec lhs = cs::apply_A(key, combo);
  const Vec au = cs::apply_A(key, u);
  const Vec av = cs::apply_A(key, v);
  for (size_t i = 0; i < lhs.size(); ++i) {
    CHECK(lhs[i] == doctest::Approx(2.5 * au[i] - 0.75 * av[i]).epsilon(1e-10));
  }
}

TEST_CASE("A adjoint dot test and dense self-consistency") {
  const cs::SensingKey key = cs::keygen_a(5, 16, 8);
  const double gap = adjoint_gap([&](const Vec& s) { return cs::apply_A(key, s); },
                                 [&](const Vec& y) { return cs::apply_A_adj(key, y); },
                                 16, 8, 100, 51);
  CHECK(gap <= 1e-10);

  const auto cols = dense_A(key);
  cs::Xoshiro256ss rng(52);
  const Vec s = random_vec(rng, 16);
  const Vec fast = cs::apply_A(key, s);
  const Vec dense = dense_apply(cols, s);
  for (size_t i = 0; i < fast.size(); ++i) {
    CHECK(fast[i] == doctest::Approx(dense[i]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(cs::apply_A(key, Vec(15, 0.0)), cs::LengthMismatch);
}

TEST_CASE("perturbed A with no flips equals A") {
  const cs::SensingKey key = cs::keygen_a(9, 16, 8);
  cs::RegionSet region;
  region.indices = {2, 3, 6, 7};
  cs::FlipSet flips;
  flips.flags = {0, 0, 0, 0};
  cs::Xoshiro256ss rng(53);
  const Vec s = random_vec(rng, 16);
  CHECK(cs::apply_A_perturbed(key, region, flips, s) == cs::apply_A(key, s));
}

TEST_CASE("perturbed A with everything flipped equals A of -s") {
  const cs::SensingKey key = cs::keygen_a(9, 16, 8);
  cs::RegionSet region;
  for (uint32_t i = 0; i < 16; ++i) region.indices.push_back(i);
  cs::FlipSet flips;
  flips.flags.assign(16, 1);
  cs::Xoshiro256ss rng(54);
  const Vec s = random_vec(rng, 16);
  Vec neg = s;
  for (auto& v : neg) v = -v;
  CHECK(cs::apply_A_perturbed(key, region, flips, s) == cs::apply_A(key, neg));
}

TEST_CASE("perturbed A matches dense elementwise perturbation matrix") {
  const cs::SensingKey key = cs::keygen_a(11, 16, 8);
  cs::RegionSet region;
  region.indices = {1, 4, 9, 13};
  cs::FlipSet flips;
  flips.flags = {1, 0, 1, 1};
  const auto a_cols = dense_A(key);

  // M built elementwise: m_{i,j} = -2 A_{i,j} on flipped region columns.
  auto perturbed_cols = a_cols;
  for (size_t k = 0; k < region.indices.size(); ++k) {
    if (!flips.flags[k]) continue;
    for (double& v : perturbed_cols[region.indices[k]]) v = -v;
  }
  cs::Xoshiro256ss rng(55);
  const Vec s = random_vec(rng, 16);
  const Vec fast = cs::apply_A_perturbed(key, region, flips, s);
  const Vec dense = dense_apply(perturbed_cols, s);
  for (size_t i = 0; i < fast.size(); ++i) {
    CHECK(fast[i] == doctest::Approx(dense[i]).epsilon(1e-12));
  }

  cs::RegionSet bad = region;
  bad.indices[0] = 16;
  CHECK_THROWS_AS(cs::apply_A_perturbed(key, bad, flips, s), cs::IndexOutOfRange);
}

TEST_CASE("H composes A with the wavelet synthesis") {
  const cs::SensingKey key = cs::keygen_a(13, 16, 8);
  CHECK(norm2(cs::apply_H(key, 4, 2, Vec(16, 0.0))) == 0.0);

  const auto h_cols =
      dense_columns([&](const Vec& x) { return cs::apply_H(key, 4, 2, x); }, 16);
  const auto a_cols = dense_A(key);
  // Dense H = A * Phi, with Phi columns from the synthesis transform.
  const auto phi_cols =
      dense_columns([](const Vec& x) { return cs::dwt2_inv(x, 4, 4, 2); }, 16);
  for (size_t j = 0; j < 16; ++j) {
    const Vec expect = dense_apply(a_cols, phi_cols[j]);
    for (size_t i = 0; i < 8; ++i) {
      CHECK(h_cols[j][i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("H adjoint at production-like shape") {
  const cs::SensingKey key = cs::keygen_a(3, 1024, 410);
  const double gap =
      adjoint_gap([&](const Vec& x) { return cs::apply_H(key, 32, 4, x); },
                  [&](const Vec& y) { return cs::apply_H_adj(key, 32, 4, y); }, 1024,
                  410, 100, 61);
  CHECK(gap <= 1e-10);
}

TEST_CASE("B has orthonormal columns") {
  const cs::EmbeddingKey key = cs::keygen_b(7, 64, 16);
  cs::Xoshiro256ss rng(62);
  const Vec w = random_vec(rng, 16);
  const Vec y = cs::apply_B(key, w);
  CHECK(norm2(y) == doctest::Approx(norm2(w)).epsilon(1e-12));
  const Vec round = cs::apply_B_adj(key, y);
  for (size_t i = 0; i < w.size(); ++i) {
    CHECK(round[i] == doctest::Approx(w[i]).epsilon(1e-12));
  }
}

TEST_CASE("B matches its dense expansion") {
  const cs::EmbeddingKey key = cs::keygen_b(7, 8, 3);
  const auto cols = dense_columns([&](const Vec& w) { return cs::apply_B(key, w); }, 3);
  cs::Xoshiro256ss rng(63);
  const Vec w = random_vec(rng, 3);
  const Vec fast = cs::apply_B(key, w);
  const Vec dense = dense_apply(cols, w);
  for (size_t i = 0; i < fast.size(); ++i) {
    CHECK(fast[i] == doctest::Approx(dense[i]).epsilon(1e-12));
  }
  const double gap = adjoint_gap([&](const Vec& x) { return cs::apply_B(key, x); },
                                 [&](const Vec& y) { return cs::apply_B_adj(key, y); },
                                 3, 8, 100, 64);
  CHECK(gap <= 1e-10);
}

TEST_CASE("F annihilates B and has orthonormal rows") {
  const cs::EmbeddingKey key = cs::keygen_b(15, 64, 16);
  cs::Xoshiro256ss rng(65);
  const Vec w = random_vec(rng, 16);
  CHECK(norm2(cs::apply_F(key, cs::apply_B(key, w))) <= 1e-12);

  const Vec z = random_vec(rng, 48);
  const Vec round = cs::apply_F(key, cs::apply_F_adj(key, z));
  for (size_t i = 0; i < z.size(); ++i) {
    CHECK(round[i] == doctest::Approx(z[i]).epsilon(1e-12));
  }

  // Orthonormal completion: energies of the two projections add up.
  const Vec y = random_vec(rng, 64);
  const double total = norm2(cs::apply_F(key, y)) * norm2(cs::apply_F(key, y)) +
                       norm2(cs::apply_B_adj(key, y)) * norm2(cs::apply_B_adj(key, y));
  CHECK(total == doctest::Approx(norm2(y) * norm2(y)).epsilon(1e-12));

  const double gap = adjoint_gap([&](const Vec& x) { return cs::apply_F(key, x); },
                                 [&](const Vec& v) { return cs::apply_F_adj(key, v); },
                                 64, 48, 100, 66);
  CHECK(gap <= 1e-10);
}
