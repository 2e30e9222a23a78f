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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Goodness-of-fit battery against the fully specified standard normal.
// Every test sorts or bins a private copy, so input order never matters.
namespace grng::stats {

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr std::size_t kDefaultChiSquareBins = 8;
// p-values below this are reported as "< 1e-300".
inline constexpr double kPValueFloor = 1e-300;

// Standard normal CDF, absolute error below 1e-12.
double normal_cdf(double x) noexcept;
// Upper tail 1 - Phi(x), accurate for large x.
double normal_sf(double x) noexcept;
// Inverse CDF for p in (0, 1).
double normal_quantile(double p);

struct Histogram {
  std::vector<double> edges;           // bins + 1, strictly increasing
  std::vector<std::uint64_t> counts;   // bins
  std::uint64_t total = 0;             // sum of counts
  std::uint64_t outside = 0;           // samples outside [edges.front(), edges.back()]

  std::string to_csv() const;  // bin_lo,bin_hi,count
};

// Bins are half-open [lo_i, hi_i) except the last, which is closed. The
// default range is [min, max] of the samples. Throws kEmptySample,
// kNonFiniteSample, or kInvalidArgument for bins == 0 or lo >= hi.
Histogram build_histogram(std::span<const double> samples, std::size_t bins,
                          std::optional<std::pair<double, double>> range = std::nullopt);

enum class TestKind { kChiSquare, kAndersonDarling, kKolmogorovSmirnov };

std::string_view test_id(TestKind kind) noexcept;  // "chi2" | "ad" | "ks"
std::optional<TestKind> parse_test_id(std::string_view id) noexcept;

struct TestReport {
  TestKind test;
  double statistic;
  double p_value;
  double alpha;
  bool rejected;  // p_value < alpha
  std::size_t n;
  std::optional<unsigned> dof;  // chi-square only

  bool p_below_floor() const noexcept { return p_value < kPValueFloor; }
  std::string p_value_text() const;  // "< 1e-300" below the floor
  // {test, statistic, p_value, alpha, rejected, n[, dof]}
  std::string to_json() const;
};

// Equal-probability bins under the standard normal (expected N/bins each),
// p-value from the chi-square upper tail with bins - 1 degrees of freedom.
// Throws kInsufficientSample below 50 samples.
TestReport chi_square_gof(std::span<const double> samples, double alpha = kDefaultAlpha,
                          std::size_t bins = kDefaultChiSquareBins);

// Case 0 (mean and variance known). Throws kInsufficientSample below 8
// samples and kNonFiniteSample for NaN or infinite values.
TestReport anderson_darling(std::span<const double> samples, double alpha = kDefaultAlpha);

// One-sample KS. Throws kEmptySample or kNonFiniteSample.
TestReport kolmogorov_smirnov(std::span<const double> samples, double alpha = kDefaultAlpha);

// P(A^2 <= a2) for a sample of size n under the null (Marsaglia & Marsaglia
// approximation) and its complement.
double anderson_darling_cdf(std::size_t n, double a2) noexcept;
double anderson_darling_sf(std::size_t n, double a2) noexcept;

// Exact P(D_n < d) (Marsaglia-Tsang-Wang matrix method).
double kolmogorov_cdf_exact(std::size_t n, double d);
// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda) noexcept;
// P(D_n >= d): exact below kKsExactLimit samples, else Q evaluated at
// (sqrt(n) + 0.12 + 0.11/sqrt(n)) d.
inline constexpr std::size_t kKsExactLimit = 100;
double kolmogorov_pvalue(std::size_t n, double d);

struct Moments {
  double mean;
  double variance;  // unbiased
  std::optional<double> skewness;
  std::optional<double> excess_kurtosis;
};

// Throws kInsufficientSample below two samples. Skewness and kurtosis are
// empty when every sample is equal.
Moments moments(std::span<const double> samples);

}  // namespace grng::stats
