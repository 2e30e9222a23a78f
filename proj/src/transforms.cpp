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

#include "grng/transforms.hpp"

#include <cmath>
#include <string>

#include "grng/error.hpp"

namespace grng {
namespace {

void require_open_unit(double u, const char* name) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(Errc::kDomainError, std::string(name) + " = " + std::to_string(u) + " is outside (0, 1)");
  }
}

constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;

// sin and cos of 2*pi*u. The quarter-turn index is removed exactly in binary64
// (u - q/4 is exact by Sterbenz for q >= 1) so accuracy holds near the zeros.
void sincos_turns(double u, long double& s, long double& c) {
  const double q = std::nearbyint(4.0 * u);
  const double r = u - 0.25 * q;  // |r| <= 1/8, exact
  const long double theta = kTwoPi * static_cast<long double>(r);
  const long double sr = std::sin(theta);
  const long double cr = std::cos(theta);
  switch (static_cast<int>(q) & 3) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

}  // namespace

std::string_view algorithm_id(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::kBoxMuller: return "box-muller";
    case Algorithm::kPolar: return "polar";
    case Algorithm::kCentralLimit: return "clt";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view id) {
  if (id == "box-muller") return Algorithm::kBoxMuller;
  if (id == "polar") return Algorithm::kPolar;
  if (id == "clt") return Algorithm::kCentralLimit;
  throw Error(Errc::kInvalidArgument, "unknown algorithm '" + std::string(id) + "' (expected box-muller, polar or clt)");
}

GaussianPair box_muller(double u1, double u2) {
  require_open_unit(u1, "u1");
  require_open_unit(u2, "u2");
  const long double radius = std::sqrt(-2.0L * std::log(static_cast<long double>(u1)));
  long double s, c;
  sincos_turns(u2, s, c);
  return {static_cast<double>(radius * s), static_cast<double>(radius * c)};
}

PolarDraw polar_draw(double u1, double u2) {
  require_open_unit(u1, "u1");
  require_open_unit(u2, "u2");
  const double v1 = 2.0 * u1 - 1.0;
  const double v2 = 2.0 * u2 - 1.0;
  const double s = v1 * v1 + v2 * v2;
  return {v1, v2, s, s > 0.0 && s < 1.0};
}

std::optional<GaussianPair> polar(double u1, double u2) {
  const PolarDraw d = polar_draw(u1, u2);
  if (!d.accepted) return std::nullopt;
  // Redo the radial factor in extended precision; for inputs with at most
  // 32 significant bits s is exact there.
  const long double v1 = 2.0L * u1 - 1.0L;
  const long double v2 = 2.0L * u2 - 1.0L;
  const long double s = v1 * v1 + v2 * v2;
  const long double factor = std::sqrt(-2.0L * std::log(s) / s);
  return GaussianPair{static_cast<double>(v1 * factor), static_cast<double>(v2 * factor)};
}

double clt_center(unsigned k) noexcept { return static_cast<double>(k) * CltConfig::kUniformMean; }

// sqrt(k * sigma^2) with sigma^2 = 1/12, formed as k / 12 so that k = 12 gives
// exactly 1.
double clt_scale(unsigned k) noexcept { return std::sqrt(static_cast<double>(k) / 12.0); }

double central_limit(std::span<const double> us, const CltConfig& config) {
  if (config.k < 2) throw Error(Errc::kInvalidArgument, "central-limit width k must be >= 2");
  if (us.size() != config.k) {
    throw Error(Errc::kLengthMismatch,
                "expected " + std::to_string(config.k) + " uniforms, got " + std::to_string(us.size()));
  }
  double sum = 0.0;
  for (double u : us) {
    require_open_unit(u, "u");
    sum += u;
  }
  return (sum - clt_center(config.k)) / clt_scale(config.k);
}

}  // namespace grng
