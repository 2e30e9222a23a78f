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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops of the generators and the test battery. Each
// kernel has a portable scalar reference and, where the target allows, an
// AVX2 variant picked at runtime. Variants are bit-identical to the scalar
// reference except `central_power_sums`, which reassociates its sums.
namespace grng::simd {

enum class Level { kScalar, kAvx2 };

std::string_view level_name(Level level) noexcept;
bool level_supported(Level level) noexcept;

struct KernelTable {
  Level level;

  // out[i] = words[i] * 2^-order.
  void (*words_to_unit)(std::span<const std::uint64_t> words, unsigned order, std::span<double> out);

  // accept[i] = 0 < s < 1 with v = 2u - 1 and s = v1*v1 + v2*v2 in binary64,
  // matching grng::polar_draw.
  void (*polar_screen)(std::span<const double> u1, std::span<const double> u2, std::span<std::uint8_t> accept);

  // `lanes` holds k blocks of out.size() uniforms (block i feeds U_i).
  // out[j] = (sum_i lanes[i][j] - k/2) / sqrt(k/12), summed in lane order,
  // matching grng::central_limit.
  void (*clt_standardize)(std::span<const double> lanes, unsigned k, std::span<double> out);

  // Binary32 datapath version, matching fp::central_limit_f32.
  void (*clt_standardize_f32)(std::span<const float> lanes, unsigned k, std::span<float> out);

  // out[i] = in[i] * factor.
  void (*scale)(std::span<const double> in, double factor, std::span<double> out);

  // {sum d, sum d^2, sum d^3, sum d^4} with d = x - shift.
  std::array<double, 4> (*central_power_sums)(std::span<const double> x, double shift);
};

const KernelTable& scalar_kernels() noexcept;
// Throws Error(kInvalidArgument) if `level` is not supported on this CPU or
// was not compiled in.
const KernelTable& kernels_for(Level level);
// Best supported level, unless GRNG_SIMD=scalar|avx2 asks otherwise. Resolved
// once per process.
const KernelTable& kernels();

}  // namespace grng::simd
