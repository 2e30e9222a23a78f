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
#include <string>
#include <vector>

#include "grng/gf2.hpp"

namespace grng {

// Register order, characteristic polynomial and nonzero seed of a
// multi-return shift register generator (Galois-form LFSR).
struct LfsrConfig {
  unsigned order = 32;
  gf2::Poly taps;
  std::uint64_t seed = 1;

  // Throws kZeroSeed, kBadSeed or kBadPolynomial.
  void validate() const;

  friend bool operator==(const LfsrConfig&, const LfsrConfig&) = default;
};

// x^32 + x^8 + x^5 + x^2 + 1, the default generator polynomial.
gf2::Poly default_polynomial();
LfsrConfig default_lfsr_config(std::uint64_t seed = 1);

// Both taps spellings are accepted on input; output uses the polynomial
// string plus the hex mask.
std::string lfsr_config_to_json(const LfsrConfig& config);
LfsrConfig lfsr_config_from_json(const std::string& text);

struct UniformSample {
  double value;               // strictly inside (0, 1)
  std::uint64_t source_word;  // the n-bit word it was built from
};

// Result of checking the taps polynomial. A non-primitive polynomial is still
// usable; `period` then holds the measured cycle length through the seed when
// it could be enumerated (order <= 32), else 0.
struct PrimitivityReport {
  bool primitive;
  std::uint64_t period;
};

class Lfsr {
 public:
  explicit Lfsr(const LfsrConfig& config);

  // One clock: the bit leaving the top of the register is returned and fed
  // back into every tapped position.
  int step() noexcept {
    const int out = static_cast<int>((state_ >> top_shift_) & 1u);
    state_ = (state_ << 1) & mask_;
    state_ ^= feedback_ & (std::uint64_t{0} - static_cast<std::uint64_t>(out));
    ++steps_;
    return out;
  }

  // Packs the next `order` output bits most-significant first.
  std::uint64_t next_word() noexcept {
    std::uint64_t word = 0;
    for (unsigned i = 0; i < order_; ++i) word = (word << 1) | static_cast<std::uint64_t>(step());
    return word;
  }

  // word / 2^order, drawing a fresh word whenever the packed word is zero.
  UniformSample next_uniform() noexcept;

  std::uint64_t state() const noexcept { return state_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }
  std::uint64_t zero_word_resamples() const noexcept { return resamples_; }
  const LfsrConfig& config() const noexcept { return config_; }

 private:
  LfsrConfig config_;
  unsigned order_;
  unsigned top_shift_;
  std::uint64_t mask_;
  std::uint64_t feedback_;
  std::uint64_t state_;
  std::uint64_t steps_ = 0;
  std::uint64_t resamples_ = 0;
  double scale_;
};

// Throws kFactorizationUnavailable outside 1..64.
bool verify_primitive(const LfsrConfig& config);
PrimitivityReport check_polynomial(const LfsrConfig& config);

// Seeds for independent LFSR lanes derived from one master seed with the
// splitmix64 finalizer, truncated to `order` bits, zero remapped to 1 and
// collisions skipped. Lane i uses the i-th splitmix64 output of `master`.
std::vector<std::uint64_t> derive_lane_seeds(std::uint64_t master, std::size_t lanes, unsigned order);

}  // namespace grng
