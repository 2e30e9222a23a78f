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

#include <optional>
#include <span>
#include <string_view>

namespace grng {

enum class Algorithm { kBoxMuller, kPolar, kCentralLimit };

// "box-muller", "polar", "clt"
std::string_view algorithm_id(Algorithm algo) noexcept;
// Throws Error(kInvalidArgument) for an unknown id.
Algorithm parse_algorithm(std::string_view id);

struct GaussianPair {
  double alpha;
  double beta;
};

// alpha = sqrt(-2 ln u1) sin(2 pi u2), beta = sqrt(-2 ln u1) cos(2 pi u2).
// Both arguments must lie strictly inside (0, 1); throws kDomainError.
GaussianPair box_muller(double u1, double u2);

struct PolarDraw {
  double v1;
  double v2;
  double s;
  bool accepted;
};

// Maps a proposal onto the square (-1, 1)^2 with v = 2u - 1. The acceptance
// decision 0 < s < 1 is taken on s evaluated in binary64 (two rounded
// squares and a rounded sum), which is what the batched screening kernels
// reproduce.
PolarDraw polar_draw(double u1, double u2);

// Marsaglia polar transform. Returns nullopt when the proposal falls outside
// the open unit disk (or on its center).
std::optional<GaussianPair> polar(double u1, double u2);

struct CltConfig {
  static constexpr double kUniformMean = 0.5;
  static constexpr double kUniformVariance = 1.0 / 12.0;
  unsigned k = 12;
};

// Center k/2 and scale sqrt(k/12) of the sum of k uniforms.
double clt_center(unsigned k) noexcept;
double clt_scale(unsigned k) noexcept;

// z = (sum(us) - k/2) / sqrt(k/12). Throws kLengthMismatch if us.size() != k,
// kInvalidArgument if k < 2 and kDomainError for inputs outside (0, 1).
double central_limit(std::span<const double> us, const CltConfig& config = {});

}  // namespace grng
