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

#include "grng/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "grng/error.hpp"
#include "grng/fp_pipeline.hpp"
#include "grng/transforms.hpp"
#include "kernels_internal.hpp"

namespace grng::simd {
namespace {

void words_to_unit_scalar(std::span<const std::uint64_t> words, unsigned order, std::span<double> out) {
  const double scale = std::ldexp(1.0, -static_cast<int>(order));
  for (std::size_t i = 0; i < words.size(); ++i) out[i] = static_cast<double>(words[i]) * scale;
}

void polar_screen_scalar(std::span<const double> u1, std::span<const double> u2, std::span<std::uint8_t> accept) {
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const double v1 = 2.0 * u1[i] - 1.0;
    const double v2 = 2.0 * u2[i] - 1.0;
    const double s = v1 * v1 + v2 * v2;
    accept[i] = s > 0.0 && s < 1.0;
  }
}

void clt_standardize_scalar(std::span<const double> lanes, unsigned k, std::span<double> out) {
  const std::size_t n = out.size();
  const double center = clt_center(k);
  const double scale = clt_scale(k);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (unsigned i = 0; i < k; ++i) sum += lanes[i * n + j];
    out[j] = (sum - center) / scale;
  }
}

void clt_standardize_f32_scalar(std::span<const float> lanes, unsigned k, std::span<float> out) {
  const std::size_t n = out.size();
  std::vector<float> column(k);
  for (std::size_t j = 0; j < n; ++j) {
    for (unsigned i = 0; i < k; ++i) column[i] = lanes[i * n + j];
    out[j] = fp::central_limit_f32(column);
  }
}

void scale_scalar(std::span<const double> in, double factor, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] * factor;
}

std::array<double, 4> central_power_sums_scalar(std::span<const double> x, double shift) {
  std::array<double, 4> s{};
  for (double v : x) {
    const double d = v - shift;
    const double d2 = d * d;
    s[0] += d;
    s[1] += d2;
    s[2] += d2 * d;
    s[3] += d2 * d2;
  }
  return s;
}

constexpr KernelTable kScalar{
    Level::kScalar,         words_to_unit_scalar, polar_screen_scalar,      clt_standardize_scalar,
    clt_standardize_f32_scalar, scale_scalar,     central_power_sums_scalar};

const KernelTable& resolve() {
  if (const char* env = std::getenv("GRNG_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return kScalar;
    if (want == "avx2") return kernels_for(Level::kAvx2);
  }
  if (level_supported(Level::kAvx2)) return kernels_for(Level::kAvx2);
  return kScalar;
}

}  // namespace

std::string_view level_name(Level level) noexcept {
  switch (level) {
    case Level::kScalar: return "scalar";
    case Level::kAvx2: return "avx2";
  }
  return "unknown";
}

bool level_supported(Level level) noexcept {
  switch (level) {
    case Level::kScalar: return true;
    case Level::kAvx2:
#if defined(GRNG_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable& kernels_for(Level level) {
  if (!level_supported(level)) {
    throw Error(Errc::kInvalidArgument, std::string(level_name(level)) + " kernels are not available on this machine");
  }
#if defined(GRNG_HAVE_AVX2)
  if (level == Level::kAvx2) return detail::avx2_kernels();
#endif
  return kScalar;
}

const KernelTable& kernels() {
  static const KernelTable& table = resolve();
  return table;
}

}  // namespace grng::simd
