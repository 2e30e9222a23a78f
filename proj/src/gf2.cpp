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

#include "grng/gf2.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <vector>

#include "grng/error.hpp"

namespace grng::gf2 {
namespace {

constexpr std::uint64_t mask_below(unsigned bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

const std::vector<std::vector<std::uint64_t>>& factor_table() {
  static const std::vector<std::vector<std::uint64_t>> table = {
#include "mersenne_factors.inc"
  };
  return table;
}

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

Poly parse_hex(std::string_view digits, std::string_view original) {
  // Up to 65 significant bits: x^64 needs one bit above a 64-bit word.
  unsigned __int128 value = 0;
  if (digits.empty()) throw Error(Errc::kBadPolynomial, "empty hex mask '" + std::string(original) + "'");
  for (char c : digits) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw Error(Errc::kBadPolynomial, "bad hex digit in '" + std::string(original) + "'");
    if (value >> 120) throw Error(Errc::kBadPolynomial, "hex mask too wide: '" + std::string(original) + "'");
    value = (value << 4) | static_cast<unsigned>(d);
  }
  if (value == 0) throw Error(Errc::kBadPolynomial, "zero polynomial");
  unsigned degree = 0;
  for (unsigned b = 127; b > 0; --b) {
    if ((value >> b) & 1u) {
      degree = b;
      break;
    }
  }
  if (degree > 64) throw Error(Errc::kBadPolynomial, "degree above 64 in '" + std::string(original) + "'");
  return Poly(degree, static_cast<std::uint64_t>(value) & mask_below(degree));
}

Poly parse_terms(const std::string& text, std::string_view original) {
  std::vector<unsigned> exponents;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('+', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view term(text.data() + pos, end - pos);
    if (term.empty()) throw Error(Errc::kBadPolynomial, "empty term in '" + std::string(original) + "'");
    unsigned exponent = 0;
    if (term == "1") {
      exponent = 0;
    } else if (term == "x") {
      exponent = 1;
    } else if (term.size() > 2 && term[0] == 'x' && term[1] == '^') {
      auto digits = term.substr(2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw Error(Errc::kBadPolynomial, "bad exponent in '" + std::string(original) + "'");
      }
    } else {
      throw Error(Errc::kBadPolynomial, "cannot parse term '" + std::string(term) + "'");
    }
    exponents.push_back(exponent);
    pos = end + 1;
  }
  return Poly::from_exponents(exponents);
}

}  // namespace

Poly::Poly(unsigned degree, std::uint64_t low) : degree_(degree), low_(low) {
  if (degree > 64) throw Error(Errc::kBadPolynomial, "degree above 64");
  if ((low & ~mask_below(degree)) != 0) {
    throw Error(Errc::kBadPolynomial, "coefficient bits at or above the degree");
  }
}

Poly Poly::from_exponents(std::span<const unsigned> exponents) {
  if (exponents.empty()) throw Error(Errc::kBadPolynomial, "no terms");
  const unsigned degree = *std::max_element(exponents.begin(), exponents.end());
  if (degree > 64) throw Error(Errc::kBadPolynomial, "degree above 64");
  std::uint64_t low = 0;
  bool lead_seen = false;
  for (unsigned e : exponents) {
    // Repeated terms cancel over GF(2); reject them rather than guess intent.
    if (e == degree) {
      if (lead_seen) throw Error(Errc::kBadPolynomial, "repeated leading term");
      lead_seen = true;
      continue;
    }
    const std::uint64_t bit = std::uint64_t{1} << e;
    if (low & bit) throw Error(Errc::kBadPolynomial, "repeated term x^" + std::to_string(e));
    low |= bit;
  }
  return Poly(degree, low);
}

Poly Poly::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    return parse_hex(std::string_view(s).substr(2), text);
  }
  if (s.empty()) throw Error(Errc::kBadPolynomial, "empty polynomial");
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return parse_terms(s, text);
}

bool Poly::coefficient(unsigned i) const noexcept {
  if (i == degree_) return true;
  if (i > degree_) return false;
  return ((low_ >> i) & 1u) != 0;
}

std::string Poly::to_string() const {
  std::string out;
  for (int i = static_cast<int>(degree_); i >= 0; --i) {
    if (!coefficient(static_cast<unsigned>(i))) continue;
    if (!out.empty()) out += '+';
    if (i == 0) out += '1';
    else if (i == 1) out += 'x';
    else out += "x^" + std::to_string(i);
  }
  return out;
}

std::string Poly::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  unsigned __int128 value = (static_cast<unsigned __int128>(1) << degree_) | low_;
  std::string out;
  do {
    out.push_back(kDigits[static_cast<unsigned>(value & 0xF)]);
    value >>= 4;
  } while (value != 0);
  std::reverse(out.begin(), out.end());
  return "0x" + out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, const Poly& f) noexcept {
  const unsigned n = f.degree();
  if (n == 0) return 0;
  const std::uint64_t top = std::uint64_t{1} << (n - 1);
  const std::uint64_t mask = mask_below(n);
  std::uint64_t result = 0;
  while (b != 0) {
    if (b & 1u) result ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & mask;
    if (carry) a ^= f.low();
  }
  return result;
}

std::uint64_t powmod_x(std::uint64_t exponent, const Poly& f) noexcept {
  const unsigned n = f.degree();
  if (n == 0) return 0;
  std::uint64_t base = n == 1 ? f.low() : 2;  // x mod f
  std::uint64_t result = 1;
  while (exponent != 0) {
    if (exponent & 1u) result = mulmod(result, base, f);
    base = mulmod(base, base, f);
    exponent >>= 1;
  }
  return result;
}

std::span<const std::uint64_t> mersenne_prime_factors(unsigned n) {
  const auto& table = factor_table();
  if (n == 0 || n > table.size()) {
    throw Error(Errc::kFactorizationUnavailable,
                "no factorization of 2^" + std::to_string(n) + " - 1 in the built-in table");
  }
  return table[n - 1];
}

bool is_primitive(const Poly& f) {
  const unsigned n = f.degree();
  if (n == 0 || !f.has_constant_term()) return false;
  const std::uint64_t period = mask_below(n);  // 2^n - 1
  const auto factors = mersenne_prime_factors(n);
  if (powmod_x(period, f) != 1) return false;
  return std::none_of(factors.begin(), factors.end(),
                      [&](std::uint64_t p) { return powmod_x(period / p, f) == 1; });
}

}  // namespace grng::gf2
