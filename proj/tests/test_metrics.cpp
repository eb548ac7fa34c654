#include <cmath>

#include "cscodec/errors.hpp"
#include "cscodec/metrics.hpp"
#include "doctest.h"
#include "test_support.hpp"

using cs::Vec;

TEST_CASE("identical frames report the infinite sentinel") {
  const Vec frame(16, 0.3);
  CHECK(std::isinf(cs::psnr(frame, frame, 4, 4)));
}

TEST_CASE("constant offset closed form") {
  const Vec ref(16, 0.0);
  const Vec est(16, 0.5);
  CHECK(cs::psnr(ref, est, 4, 4) == doctest::Approx(20.0 * std::log10(2.0)).epsilon(1e-12));
}

TEST_CASE("zone masking ignores error outside the zone") {
  Vec ref(16, 0.2);
  Vec est = ref;
  est[15] = 0.9;  // outside the zone below
  const std::vector<uint32_t> zone{0, 1, 4, 5};
  CHECK(std::isinf(cs::psnr(ref, est, 4, 4, &zone)));

  const std::vector<uint32_t> empty;
  CHECK_THROWS_AS(cs::psnr(ref, est, 4, 4, &empty), cs::EmptyZone);
  CHECK_THROWS_AS(cs::psnr(ref, Vec(15, 0.0), 4, 4), cs::LengthMismatch);
}

TEST_CASE("report splits zones and cross-checks the weighted mean") {
  const size_t n = 64;
  Vec ref(n, 0.0), est(n, 0.0);
  std::vector<uint32_t> region;
  for (uint32_t i = 0; i < n / 4; ++i) region.push_back(i);
  // Concealed MSE 0.1, outside MSE 0.001.
  for (uint32_t i = 0; i < n; ++i) {
    est[i] = i < n / 4 ? std::sqrt(0.1) : std::sqrt(0.001);
  }
  const cs::PsnrReport report = cs::psnr_report(ref, est, 8, 8, region);
  REQUIRE(report.concealed_db.has_value());
  CHECK(*report.concealed_db == doctest::Approx(10.0 * std::log10(1.0 / 0.1)).epsilon(1e-12));
  CHECK(report.outside_db == doctest::Approx(10.0 * std::log10(1.0 / 0.001)).epsilon(1e-12));
  CHECK(report.whole_db == doctest::Approx(10.0 * std::log10(1.0 / 0.02575)).epsilon(1e-12));
  CHECK(report.concealed_count + report.outside_count == n);
}

TEST_CASE("empty region reports concealed as not applicable") {
  Vec ref(16, 0.1), est(16, 0.2);
  const cs::PsnrReport report = cs::psnr_report(ref, est, 4, 4, {});
  CHECK(!report.concealed_db.has_value());
  CHECK(report.outside_db == doctest::Approx(report.whole_db).epsilon(1e-12));
}

TEST_CASE("adding error never raises a containing zone's psnr") {
  cs::Xoshiro256ss rng(91);
  const Vec ref = cstest::random_vec(rng, 64);
  Vec est = ref;
  std::vector<uint32_t> region{3, 9, 12};
  est[3] += 0.05;
  double prev_whole = cs::psnr(ref, est, 8, 8);
  double prev_zone = cs::psnr(ref, est, 8, 8, &region);
  for (int step = 0; step < 5; ++step) {
    est[3] += 0.1;
    const double whole = cs::psnr(ref, est, 8, 8);
    const double zone = cs::psnr(ref, est, 8, 8, &region);
    CHECK(whole < prev_whole);
    CHECK(zone < prev_zone);
    prev_whole = whole;
    prev_zone = zone;
  }
}
