// Copyright 2026 The grng Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <quadmath.h>

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "grng/error.hpp"
#include "grng/transforms.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

namespace grng {
namespace {

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

double ulps_apart(double got, __float128 want) {
  const double w = static_cast<double>(want);
  return static_cast<double>(fabsq(static_cast<__float128>(got) - want)) / ulp(w == 0.0 ? 0x1p-1022 : w);
}

TEST(Algorithm, Ids) {
  for (Algorithm a : {Algorithm::kBoxMuller, Algorithm::kPolar, Algorithm::kCentralLimit}) {
    EXPECT_EQ(parse_algorithm(algorithm_id(a)), a);
  }
  EXPECT_EQ(algorithm_id(Algorithm::kBoxMuller), "box-muller");
  EXPECT_EQ(algorithm_id(Algorithm::kPolar), "polar");
  EXPECT_EQ(algorithm_id(Algorithm::kCentralLimit), "clt");
  EXPECT_GRNG_ERROR(parse_algorithm("ziggurat"), Errc::kInvalidArgument);
}

TEST(BoxMuller, RadiusTwoQuarterTurn) {
  const GaussianPair p = box_muller(std::exp(-2.0), 0.25);
  EXPECT_NEAR(p.alpha, 2.0, 2 * ulp(2.0));
  EXPECT_EQ(p.beta, 0.0);
}

TEST(BoxMuller, OracleSpotValue) {
  const GaussianPair p = box_muller(0.5, 0.3);
  EXPECT_LE(ulps_apart(p.alpha, oracle::kBoxMullerHalfPoint3Alpha), 2.0);
  EXPECT_LE(ulps_apart(p.beta, oracle::kBoxMullerHalfPoint3Beta), 2.0);
}

TEST(BoxMuller, QuadrantAnglesAreExact) {
  const double r = std::sqrt(-2.0 * std::log(0.25));
  const std::array<std::array<double, 3>, 4> cases = {{{0.25, 1, 0}, {0.5, 0, -1}, {0.75, -1, 0}, {0.125, 0, 0}}};
  for (const auto& [u2, s, c] : cases) {
    const GaussianPair p = box_muller(0.25, u2);
    if (u2 == 0.125) {
      EXPECT_NEAR(p.alpha, p.beta, 2 * ulp(p.alpha));
    } else {
      // The quarter-turn points land exactly on the axes.
      if (s == 0) EXPECT_EQ(p.alpha, 0.0);
      else EXPECT_NEAR(p.alpha, s * r, ulp(r));
      if (c == 0) EXPECT_EQ(p.beta, 0.0);
      else EXPECT_NEAR(p.beta, c * r, ulp(r));
    }
  }
}

TEST(BoxMuller, PythagoreanIdentity) {
  test::SplitMix rng(11);
  for (int i = 0; i < 100000; ++i) {
    const double u1 = rng.uniform(), u2 = rng.uniform();
    const GaussianPair p = box_muller(u1, u2);
    const long double lhs = static_cast<long double>(p.alpha) * p.alpha + static_cast<long double>(p.beta) * p.beta;
    const double rhs = -2.0 * static_cast<double>(logq(static_cast<__float128>(u1)));
    ASSERT_LE(std::fabs(static_cast<double>(lhs - rhs)), 2 * ulp(rhs)) << u1 << ' ' << u2;
  }
}

TEST(BoxMuller, MatchesQuadPrecisionOracle) {
  test::SplitMix rng(12);
  for (int i = 0; i < 20000; ++i) {
    const double u1 = rng.uniform(), u2 = rng.uniform();
    const __float128 r = sqrtq(-2 * logq(u1));
    const GaussianPair p = box_muller(u1, u2);
    ASSERT_LE(ulps_apart(p.alpha, r * sinq(2 * M_PIq * u2)), 2.0) << u1 << ' ' << u2;
    ASSERT_LE(ulps_apart(p.beta, r * cosq(2 * M_PIq * u2)), 2.0) << u1 << ' ' << u2;
  }
}

TEST(BoxMuller, DomainErrors) {
  for (auto [u1, u2] : std::array<std::array<double, 2>, 6>{
           {{0.0, 0.5}, {1.0, 0.5}, {-0.1, 0.5}, {0.5, 0.0}, {0.5, 1.0}, {NAN, 0.5}}}) {
    EXPECT_GRNG_ERROR(box_muller(u1, u2), Errc::kDomainError);
  }
}

TEST(Polar, SpotValues) {
  const auto p = polar(0.8, 0.5);
  ASSERT_TRUE(p.has_value());
  EXPECT_LE(ulps_apart(p->alpha, static_cast<__float128>(0.8 * 2 - 1) * oracle::kPolarFactorS036), 2.0);
  EXPECT_EQ(p->beta, 0.0);
  EXPECT_FALSE(polar(0.95, 0.95).has_value());
  const PolarDraw d = polar_draw(0.95, 0.95);
  EXPECT_NEAR(d.s, 1.62, 1e-15);
  EXPECT_FALSE(d.accepted);
  // s = 0 is rejected like s >= 1.
  EXPECT_FALSE(polar(0.5, 0.5).has_value());
  EXPECT_FALSE(polar_draw(0.5, 0.5).accepted);
}

TEST(Polar, RatioAndOracle) {
  test::SplitMix rng(13);
  int accepted = 0;
  for (int i = 0; i < 20000; ++i) {
    const double u1 = rng.uniform(), u2 = rng.uniform();
    const PolarDraw d = polar_draw(u1, u2);
    const auto p = polar(u1, u2);
    ASSERT_EQ(d.accepted, p.has_value());
    ASSERT_EQ(d.accepted, d.s > 0.0 && d.s < 1.0);
    if (!p) continue;
    ++accepted;
    const __float128 v1 = 2 * static_cast<__float128>(u1) - 1, v2 = 2 * static_cast<__float128>(u2) - 1;
    const __float128 s = v1 * v1 + v2 * v2;
    const __float128 f = sqrtq(-2 * logq(s) / s);
    ASSERT_LE(ulps_apart(p->alpha, v1 * f), 2.0);
    ASSERT_LE(ulps_apart(p->beta, v2 * f), 2.0);
    if (d.v2 != 0.0) {
      ASSERT_NEAR(p->alpha / p->beta, d.v1 / d.v2, 4 * ulp(d.v1 / d.v2));
    }
  }
  EXPECT_GT(accepted, 15000);
}

TEST(Polar, DomainErrors) {
  EXPECT_GRNG_ERROR(polar(0.0, 0.5), Errc::kDomainError);
  EXPECT_GRNG_ERROR(polar(0.5, 1.0), Errc::kDomainError);
}

TEST(CentralLimit, CenterAndScale) {
  EXPECT_EQ(clt_center(12), 6.0);
  EXPECT_EQ(clt_scale(12), 1.0);
  EXPECT_EQ(clt_scale(3), std::sqrt(0.25));
  const std::vector<double> halves(12, 0.5);
  EXPECT_EQ(central_limit(halves), 0.0);
  const std::vector<double> v = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.85, 0.9};
  ASSERT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 7.2, 1e-14);
  EXPECT_NEAR(central_limit(v), 1.2, 1e-14);
}

TEST(CentralLimit, SupportBound) {
  test::SplitMix rng(14);
  for (unsigned k : {2u, 3u, 12u, 48u}) {
    std::vector<double> us(k);
    const double bound = std::sqrt(3.0 * k);
    for (int i = 0; i < 10000; ++i) {
      for (auto& u : us) u = rng.uniform();
      ASSERT_LE(std::fabs(central_limit(us, CltConfig{k})), bound);
    }
    std::vector<double> high(k, std::nextafter(1.0, 0.0));
    EXPECT_LE(central_limit(high, CltConfig{k}), bound);
    EXPECT_NEAR(central_limit(high, CltConfig{k}), bound, 1e-12);
  }
}

TEST(CentralLimit, Errors) {
  const std::vector<double> eleven(11, 0.5);
  EXPECT_GRNG_ERROR(central_limit(eleven), Errc::kLengthMismatch);
  const std::vector<double> one(1, 0.5);
  EXPECT_GRNG_ERROR(central_limit(one, CltConfig{1}), Errc::kInvalidArgument);
  std::vector<double> bad(12, 0.5);
  bad[3] = 1.0;
  EXPECT_GRNG_ERROR(central_limit(bad), Errc::kDomainError);
}

}  // namespace
}  // namespace grng
