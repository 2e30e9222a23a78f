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
#include <span>
#include <string>
#include <string_view>

namespace grng::gf2 {

// A nonzero polynomial over GF(2) of degree 0..64, stored as the implicit
// leading term x^degree plus the coefficients c_0..c_{degree-1} in `low`.
class Poly {
 public:
  constexpr Poly() = default;
  // Throws Error(kBadPolynomial) if `low` has bits at or above `degree`.
  Poly(unsigned degree, std::uint64_t low);

  // Builds a polynomial from the exponents of its nonzero terms.
  static Poly from_exponents(std::span<const unsigned> exponents);
  // Accepts "x^32+x^8+x^5+x^2+1" or a full hex mask with the x^n bit
  // included ("0x100000125").
  static Poly parse(std::string_view text);

  constexpr unsigned degree() const noexcept { return degree_; }
  constexpr std::uint64_t low() const noexcept { return low_; }
  constexpr bool has_constant_term() const noexcept {
    return degree_ == 0 || (low_ & 1u) != 0;
  }
  bool coefficient(unsigned i) const noexcept;

  std::string to_string() const;  // "x^4+x+1"
  std::string to_hex() const;     // "0x13"

  friend constexpr bool operator==(const Poly&, const Poly&) = default;

 private:
  unsigned degree_ = 0;
  std::uint64_t low_ = 0;
};

// Arithmetic in GF(2)[x]/(f). Residues are kept below x^degree(f).
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, const Poly& f) noexcept;
std::uint64_t powmod_x(std::uint64_t exponent, const Poly& f) noexcept;

// Distinct prime factors of 2^n - 1, for 1 <= n <= 64. Throws
// Error(kFactorizationUnavailable) outside that range.
std::span<const std::uint64_t> mersenne_prime_factors(unsigned n);

// True iff f is primitive: x has multiplicative order exactly 2^n - 1 modulo f.
bool is_primitive(const Poly& f);

}  // namespace grng::gf2
