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

#include "grng/urng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "grng/error.hpp"

namespace grng {
namespace {

constexpr std::uint64_t mask_below(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t parse_seed(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    int base = 10;
    std::string_view digits = s;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
      base = 16;
      digits.remove_prefix(2);
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, base);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return v;
  }
  throw Error(Errc::kParseError, "seed must be an unsigned integer or a decimal/hex string");
}

}  // namespace

void LfsrConfig::validate() const {
  if (order < 2 || order > 64) {
    throw Error(Errc::kBadPolynomial, "order must be in [2, 64], got " + std::to_string(order));
  }
  if (taps.degree() != order) {
    throw Error(Errc::kBadPolynomial, "taps " + taps.to_string() + " do not have degree " + std::to_string(order));
  }
  if (!taps.has_constant_term()) {
    throw Error(Errc::kBadPolynomial, "taps " + taps.to_string() + " lack the constant term");
  }
  if (seed == 0) throw Error(Errc::kZeroSeed, "the all-zero register never leaves itself");
  if ((seed & ~mask_below(order)) != 0) {
    throw Error(Errc::kBadSeed, "seed is wider than " + std::to_string(order) + " bits");
  }
}

gf2::Poly default_polynomial() {
  static constexpr unsigned kTerms[] = {32, 8, 5, 2, 0};
  return gf2::Poly::from_exponents(kTerms);
}

LfsrConfig default_lfsr_config(std::uint64_t seed) {
  return LfsrConfig{32, default_polynomial(), seed};
}

std::string lfsr_config_to_json(const LfsrConfig& config) {
  nlohmann::json j;
  j["order"] = config.order;
  j["taps"] = config.taps.to_string();
  j["taps_hex"] = config.taps.to_hex();
  j["seed"] = config.seed;
  return j.dump(2);
}

LfsrConfig lfsr_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParseError, e.what());
  }
  if (!j.is_object() || (!j.contains("taps") && !j.contains("taps_hex"))) {
    throw Error(Errc::kParseError, "LFSR config needs a 'taps' or 'taps_hex' field");
  }
  const std::string taps_text = j.contains("taps") ? j["taps"].get<std::string>() : j["taps_hex"].get<std::string>();
  LfsrConfig config;
  config.taps = gf2::Poly::parse(taps_text);
  if (j.contains("taps") && j.contains("taps_hex") &&
      gf2::Poly::parse(j["taps_hex"].get<std::string>()) != config.taps) {
    throw Error(Errc::kBadPolynomial, "'taps' and 'taps_hex' disagree");
  }
  config.order = j.contains("order") ? j["order"].get<unsigned>() : config.taps.degree();
  config.seed = j.contains("seed") ? parse_seed(j["seed"]) : 1;
  config.validate();
  return config;
}

Lfsr::Lfsr(const LfsrConfig& config)
    : config_(config),
      order_(config.order),
      top_shift_(config.order - 1),
      mask_(mask_below(config.order)),
      feedback_(config.taps.low()),
      state_(config.seed),
      scale_(std::ldexp(1.0, -static_cast<int>(config.order))) {
  config.validate();
}

UniformSample Lfsr::next_uniform() noexcept {
  std::uint64_t word = next_word();
  while (word == 0) {
    ++resamples_;
    word = next_word();
  }
  return UniformSample{static_cast<double>(word) * scale_, word};
}

bool verify_primitive(const LfsrConfig& config) {
  return gf2::is_primitive(config.taps);
}

PrimitivityReport check_polynomial(const LfsrConfig& config) {
  const bool primitive = verify_primitive(config);
  if (primitive) return {true, mask_below(config.order)};
  if (config.order > 32) return {false, 0};
  Lfsr lfsr(config);
  const std::uint64_t start = lfsr.state();
  std::uint64_t period = 0;
  do {
    lfsr.step();
    ++period;
  } while (lfsr.state() != start);
  return {false, period};
}

std::vector<std::uint64_t> derive_lane_seeds(std::uint64_t master, std::size_t lanes, unsigned order) {
  const std::uint64_t mask = mask_below(order);
  if (order < 64 && lanes > mask) {
    throw Error(Errc::kInvalidArgument, "more lanes than distinct nonzero " + std::to_string(order) + "-bit seeds");
  }
  std::vector<std::uint64_t> seeds;
  seeds.reserve(lanes);
  std::uint64_t state = master;
  while (seeds.size() < lanes) {
    std::uint64_t seed = splitmix64(state) & mask;
    if (seed == 0) seed = 1;
    if (std::find(seeds.begin(), seeds.end(), seed) != seeds.end()) continue;
    seeds.push_back(seed);
  }
  return seeds;
}

}  // namespace grng
