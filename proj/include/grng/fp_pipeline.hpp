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
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grng/transforms.hpp"

// Binary32 emulation of the floating-point IP-core datapaths. Every core
// rounds its result to binary32 exactly once; exceptions surface as flags,
// never as C++ errors.
namespace grng::fp {

struct F32Value {
  std::uint32_t bits = 0;

  static constexpr F32Value of(float f) noexcept { return {std::bit_cast<std::uint32_t>(f)}; }
  // Round-to-nearest-even conversion, as an integer/fixed-to-float converter
  // in front of the cores would do.
  static F32Value from_double(double d) noexcept { return of(static_cast<float>(d)); }

  constexpr float value() const noexcept { return std::bit_cast<float>(bits); }
  std::string hex() const;  // 8 lowercase hex digits

  friend constexpr bool operator==(F32Value, F32Value) = default;
};

struct CoreFlags {
  bool zero = false;
  bool nan = false;
  bool overflow = false;
  bool underflow = false;

  friend constexpr bool operator==(const CoreFlags&, const CoreFlags&) = default;
};

struct CoreResult {
  F32Value result;
  CoreFlags flags;
};

enum class CoreKind : std::uint8_t { kLog, kSin, kCos, kDiv, kSqrt, kMul, kAdd, kAccumulate, kBipolar };
inline constexpr std::size_t kCoreKindCount = 9;

// "LOG", "SIN", "COS", "DIV", "SQRT", "MUL", "ADD", "ACC", "BIPOLAR"
std::string_view core_name(CoreKind kind) noexcept;
std::optional<CoreKind> parse_core_name(std::string_view name) noexcept;

enum class TrigMode { kSin, kCos };

// LOG: zero iff x == 1, nan iff x < 0 or x is NaN.
CoreResult core_log(F32Value x) noexcept;
// SIN/COS: no exception ports.
CoreResult core_sincos(F32Value x, TrigMode mode) noexcept;
// DIV: overflow iff the quotient is infinite; underflow iff the quotient is
// zero or subnormal while neither operand is zero; nan iff 0/0, inf/inf or a
// NaN operand; zero iff the quotient is zero.
CoreResult core_div(F32Value a, F32Value b) noexcept;
// SQRT: nan iff x < 0 or NaN, zero iff the result is zero, overflow iff the
// result is infinite.
CoreResult core_sqrt(F32Value x) noexcept;
// External multiplier and adder. Flags: zero/nan on the result, overflow for
// an infinite result from finite operands, underflow for a subnormal result
// (or, for MUL, a zero product of nonzero operands).
CoreResult core_mul(F32Value a, F32Value b) noexcept;
CoreResult core_add(F32Value a, F32Value b) noexcept;
// Input conditioning for the polar datapath: 2u - 1 with one rounding.
CoreResult core_bipolar(F32Value u) noexcept;

using CoreCounts = std::array<std::uint64_t, kCoreKindCount>;

inline std::uint64_t& count_of(CoreCounts& counts, CoreKind kind) noexcept {
  return counts[static_cast<std::size_t>(kind)];
}
inline std::uint64_t count_of(const CoreCounts& counts, CoreKind kind) noexcept {
  return counts[static_cast<std::size_t>(kind)];
}

// Core invocations of one pass through a graph. For the polar graph a
// rejected proposal stops after the acceptance test.
CoreCounts static_core_counts(Algorithm algo, unsigned k = 12, bool accepted = true);

enum class ControlEvent : std::uint8_t { kNone, kCleared, kClockDisabled };

struct CoreRecord {
  CoreKind core;
  std::uint8_t arity;
  std::array<F32Value, 2> inputs;
  F32Value output;
  CoreFlags flags;
  unsigned latency;
  unsigned ready_cycle;  // cycle at which the output is valid
  ControlEvent event;
};

struct FlagCounts {
  std::uint64_t zero = 0;
  std::uint64_t nan = 0;
  std::uint64_t overflow = 0;
  std::uint64_t underflow = 0;
};

struct PipelineTrace {
  std::vector<CoreRecord> records;
  CoreCounts invocations{};
  FlagCounts flag_counts;
  unsigned latency_cycles = 0;  // critical path through the graph

  std::string to_json(Algorithm algo, bool accepted) const;
};

struct PipelineOptions {
  std::array<unsigned, kCoreKindCount> latency = {1, 1, 1, 1, 1, 1, 1, 1, 1};
  // Cores whose aclr port is held high (output register reads +0) or whose
  // clk_en is low (no new result; the reset value +0 is observed). Both are
  // recorded as events in the trace; bit i corresponds to CoreKind i.
  std::uint32_t aclr_mask = 0;
  std::uint32_t clk_disabled_mask = 0;
};

struct GraphOutput {
  std::vector<F32Value> outputs;  // alpha, beta (pair graphs) or z; empty if rejected
  bool accepted = true;
  PipelineTrace trace;
};

// Runs one pass of the Box-Muller, polar or central-limit datapath on binary32
// uniforms. Arity is 2 for the pair graphs and k for central-limit; throws
// Error(kArityMismatch) otherwise.
GraphOutput run_graph(Algorithm algo, std::span<const F32Value> inputs, const PipelineOptions& options = {});

// Trace-free versions of the same datapaths for bulk generation. Results are
// bit-identical to run_graph with default options; `counts` accumulates
// core invocations when non-null.
struct PairF32 {
  float alpha;
  float beta;
};
PairF32 box_muller_f32(float u1, float u2, CoreCounts* counts = nullptr) noexcept;
std::optional<PairF32> polar_f32(float u1, float u2, CoreCounts* counts = nullptr) noexcept;
float central_limit_f32(std::span<const float> us, CoreCounts* counts = nullptr) noexcept;

// Binary32 constants wired into the datapaths.
inline constexpr float kTwoPiF32 = 6.28318530717958647692f;
inline constexpr float kMinusTwoF32 = -2.0f;
inline constexpr float kHalfF32 = 0.5f;
inline constexpr float kTwelfthF32 = 1.0f / 12.0f;

}  // namespace grng::fp
