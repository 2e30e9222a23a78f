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

// AVX2 variants. This translation unit alone is compiled with -mavx2; callers
// reach it only through kernels_for(), which checks the CPU first.

#include <immintrin.h>

#include <cmath>

#include "grng/fp_pipeline.hpp"
#include "grng/transforms.hpp"
#include "kernels_internal.hpp"

namespace grng::simd::detail {
namespace {

constexpr std::size_t kDoubles = 4;
constexpr std::size_t kFloats = 8;

void words_to_unit_avx2(std::span<const std::uint64_t> words, unsigned order, std::span<double> out) {
  const double scale = std::ldexp(1.0, -static_cast<int>(order));
  std::size_t i = 0;
  if (order <= 52) {
    // Words below 2^52 drop straight into the mantissa of 2^52.
    const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000ll);
    const __m256d magic = _mm256_set1_pd(4503599627370496.0);
    const __m256d vscale = _mm256_set1_pd(scale);
    for (; i + kDoubles <= words.size(); i += kDoubles) {
      const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words.data() + i));
      const __m256d d = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(w, magic_bits)), magic);
      _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(d, vscale));
    }
  }
  for (; i < words.size(); ++i) out[i] = static_cast<double>(words[i]) * scale;
}

void polar_screen_avx2(std::span<const double> u1, std::span<const double> u2, std::span<std::uint8_t> accept) {
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kDoubles <= u1.size(); i += kDoubles) {
    const __m256d v1 = _mm256_sub_pd(_mm256_mul_pd(two, _mm256_loadu_pd(u1.data() + i)), one);
    const __m256d v2 = _mm256_sub_pd(_mm256_mul_pd(two, _mm256_loadu_pd(u2.data() + i)), one);
    const __m256d s = _mm256_add_pd(_mm256_mul_pd(v1, v1), _mm256_mul_pd(v2, v2));
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(s, zero, _CMP_GT_OQ), _mm256_cmp_pd(s, one, _CMP_LT_OQ));
    const int bits = _mm256_movemask_pd(ok);
    for (std::size_t l = 0; l < kDoubles; ++l) accept[i + l] = static_cast<std::uint8_t>((bits >> l) & 1);
  }
  for (; i < u1.size(); ++i) {
    const double v1 = 2.0 * u1[i] - 1.0;
    const double v2 = 2.0 * u2[i] - 1.0;
    const double s = v1 * v1 + v2 * v2;
    accept[i] = s > 0.0 && s < 1.0;
  }
}

void clt_standardize_avx2(std::span<const double> lanes, unsigned k, std::span<double> out) {
  const std::size_t n = out.size();
  const double center = clt_center(k);
  const double scale = clt_scale(k);
  const __m256d vcenter = _mm256_set1_pd(center);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t j = 0;
  for (; j + kDoubles <= n; j += kDoubles) {
    __m256d sum = _mm256_setzero_pd();
    for (unsigned i = 0; i < k; ++i) sum = _mm256_add_pd(sum, _mm256_loadu_pd(lanes.data() + i * n + j));
    _mm256_storeu_pd(out.data() + j, _mm256_div_pd(_mm256_sub_pd(sum, vcenter), vscale));
  }
  for (; j < n; ++j) {
    double sum = 0.0;
    for (unsigned i = 0; i < k; ++i) sum += lanes[i * n + j];
    out[j] = (sum - center) / scale;
  }
}

void clt_standardize_f32_avx2(std::span<const float> lanes, unsigned k, std::span<float> out) {
  const std::size_t n = out.size();
  // Constant branch of the datapath, evaluated by the same cores.
  const fp::F32Value kf = fp::F32Value::of(static_cast<float>(k));
  const float center = fp::core_mul(kf, fp::F32Value::of(fp::kHalfF32)).result.value();
  const float variance = fp::core_mul(kf, fp::F32Value::of(fp::kTwelfthF32)).result.value();
  const float sigma = fp::core_sqrt(fp::F32Value::of(variance)).result.value();
  const __m256 neg_center = _mm256_set1_ps(-center);
  const __m256 vsigma = _mm256_set1_ps(sigma);
  std::size_t j = 0;
  for (; j + kFloats <= n; j += kFloats) {
    __m256 sum = _mm256_loadu_ps(lanes.data() + j);
    for (unsigned i = 1; i < k; ++i) sum = _mm256_add_ps(sum, _mm256_loadu_ps(lanes.data() + i * n + j));
    _mm256_storeu_ps(out.data() + j, _mm256_div_ps(_mm256_add_ps(sum, neg_center), vsigma));
  }
  for (; j < n; ++j) {
    float sum = lanes[j];
    for (unsigned i = 1; i < k; ++i) sum += lanes[i * n + j];
    out[j] = (sum + -center) / sigma;
  }
}

void scale_avx2(std::span<const double> in, double factor, std::span<double> out) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + kDoubles <= in.size(); i += kDoubles) {
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(_mm256_loadu_pd(in.data() + i), f));
  }
  for (; i < in.size(); ++i) out[i] = in[i] * factor;
}

double hsum(__m256d v) {
  alignas(32) double lanes[kDoubles];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

std::array<double, 4> central_power_sums_avx2(std::span<const double> x, double shift) {
  const __m256d vshift = _mm256_set1_pd(shift);
  __m256d s1 = _mm256_setzero_pd(), s2 = s1, s3 = s1, s4 = s1;
  std::size_t i = 0;
  for (; i + kDoubles <= x.size(); i += kDoubles) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), vshift);
    const __m256d d2 = _mm256_mul_pd(d, d);
    s1 = _mm256_add_pd(s1, d);
    s2 = _mm256_add_pd(s2, d2);
    s3 = _mm256_add_pd(s3, _mm256_mul_pd(d2, d));
    s4 = _mm256_add_pd(s4, _mm256_mul_pd(d2, d2));
  }
  std::array<double, 4> s{hsum(s1), hsum(s2), hsum(s3), hsum(s4)};
  for (; i < x.size(); ++i) {
    const double d = x[i] - shift;
    const double d2 = d * d;
    s[0] += d;
    s[1] += d2;
    s[2] += d2 * d;
    s[3] += d2 * d2;
  }
  return s;
}

constexpr KernelTable kAvx2{Level::kAvx2,          words_to_unit_avx2, polar_screen_avx2,      clt_standardize_avx2,
                            clt_standardize_f32_avx2, scale_avx2,      central_power_sums_avx2};

}  // namespace

const KernelTable& avx2_kernels() noexcept { return kAvx2; }

}  // namespace grng::simd::detail
