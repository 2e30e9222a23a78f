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

#include "grng/fp_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "grng/error.hpp"

namespace grng::fp {
namespace {

constexpr std::array<std::string_view, kCoreKindCount> kCoreNames = {
    "LOG", "SIN", "COS", "DIV", "SQRT", "MUL", "ADD", "ACC", "BIPOLAR"};

bool is_zero(float f) noexcept { return f == 0.0f; }
bool is_subnormal(float f) noexcept { return std::fpclassify(f) == FP_SUBNORMAL; }

CoreResult make(float r, CoreFlags flags) noexcept { return {F32Value::of(r), flags}; }

// A value travelling between cores together with the cycle it becomes valid.
struct Wire {
  F32Value v;
  unsigned ready = 0;
};

Wire constant(float f) noexcept { return {F32Value::of(f), 0}; }

class RecordingTracer {
 public:
  RecordingTracer(const PipelineOptions& options, PipelineTrace& trace) : options_(options), trace_(trace) {}

  template <class Core>
  Wire apply(CoreKind kind, Core&& core, Wire a) {
    return record(kind, 1, core(a.v), {a.v, F32Value{}}, a.ready);
  }

  template <class Core>
  Wire apply(CoreKind kind, Core&& core, Wire a, Wire b) {
    return record(kind, 2, core(a.v, b.v), {a.v, b.v}, std::max(a.ready, b.ready));
  }

 private:
  Wire record(CoreKind kind, std::uint8_t arity, CoreResult r, std::array<F32Value, 2> in, unsigned ready_in) {
    const auto idx = static_cast<std::size_t>(kind);
    const std::uint32_t bit = std::uint32_t{1} << idx;
    ControlEvent event = ControlEvent::kNone;
    if (options_.aclr_mask & bit) event = ControlEvent::kCleared;
    else if (options_.clk_disabled_mask & bit) event = ControlEvent::kClockDisabled;
    if (event != ControlEvent::kNone) r = CoreResult{F32Value{0}, CoreFlags{}};

    const unsigned latency = options_.latency[idx];
    const unsigned ready = ready_in + latency;
    trace_.records.push_back(CoreRecord{kind, arity, in, r.result, r.flags, latency, ready, event});
    ++trace_.invocations[idx];
    trace_.flag_counts.zero += r.flags.zero;
    trace_.flag_counts.nan += r.flags.nan;
    trace_.flag_counts.overflow += r.flags.overflow;
    trace_.flag_counts.underflow += r.flags.underflow;
    trace_.latency_cycles = std::max(trace_.latency_cycles, ready);
    return {r.result, ready};
  }

  const PipelineOptions& options_;
  PipelineTrace& trace_;
};

class CountingTracer {
 public:
  explicit CountingTracer(CoreCounts* counts) noexcept : counts_(counts) {}

  template <class Core>
  Wire apply(CoreKind kind, Core&& core, Wire a) noexcept {
    bump(kind);
    return {core(a.v).result, 0};
  }

  template <class Core>
  Wire apply(CoreKind kind, Core&& core, Wire a, Wire b) noexcept {
    bump(kind);
    return {core(a.v, b.v).result, 0};
  }

 private:
  void bump(CoreKind kind) noexcept {
    if (counts_ != nullptr) ++count_of(*counts_, kind);
  }
  CoreCounts* counts_;
};

const auto kLogCore = [](F32Value x) { return core_log(x); };
const auto kSinCore = [](F32Value x) { return core_sincos(x, TrigMode::kSin); };
const auto kCosCore = [](F32Value x) { return core_sincos(x, TrigMode::kCos); };
const auto kSqrtCore = [](F32Value x) { return core_sqrt(x); };
const auto kBipolarCore = [](F32Value x) { return core_bipolar(x); };
const auto kDivCore = [](F32Value a, F32Value b) { return core_div(a, b); };
const auto kMulCore = [](F32Value a, F32Value b) { return core_mul(a, b); };
const auto kAddCore = [](F32Value a, F32Value b) { return core_add(a, b); };

// Box-Muller: LOG -> x(-2) -> SQRT gives the radius; u2 x 2pi feeds SIN and
// COS; two output multipliers.
template <class Tracer>
std::array<Wire, 2> box_muller_graph(Tracer& t, Wire u1, Wire u2) {
  const Wire ln_u1 = t.apply(CoreKind::kLog, kLogCore, u1);
  const Wire minus_two_ln = t.apply(CoreKind::kMul, kMulCore, ln_u1, constant(kMinusTwoF32));
  const Wire radius = t.apply(CoreKind::kSqrt, kSqrtCore, minus_two_ln);
  const Wire theta = t.apply(CoreKind::kMul, kMulCore, u2, constant(kTwoPiF32));
  const Wire sin_theta = t.apply(CoreKind::kSin, kSinCore, theta);
  const Wire cos_theta = t.apply(CoreKind::kCos, kCosCore, theta);
  return {t.apply(CoreKind::kMul, kMulCore, radius, sin_theta), t.apply(CoreKind::kMul, kMulCore, radius, cos_theta)};
}

// Polar: v = 2u - 1, s = v1^2 + v2^2, accept 0 < s < 1, then
// factor = sqrt(-2 ln s / s) and the two output multipliers.
template <class Tracer>
std::optional<std::array<Wire, 2>> polar_graph(Tracer& t, Wire u1, Wire u2) {
  const Wire v1 = t.apply(CoreKind::kBipolar, kBipolarCore, u1);
  const Wire v2 = t.apply(CoreKind::kBipolar, kBipolarCore, u2);
  const Wire v1_sq = t.apply(CoreKind::kMul, kMulCore, v1, v1);
  const Wire v2_sq = t.apply(CoreKind::kMul, kMulCore, v2, v2);
  const Wire s = t.apply(CoreKind::kAdd, kAddCore, v1_sq, v2_sq);
  const float sv = s.v.value();
  if (!(sv > 0.0f && sv < 1.0f)) return std::nullopt;
  const Wire ln_s = t.apply(CoreKind::kLog, kLogCore, s);
  const Wire minus_two_ln = t.apply(CoreKind::kMul, kMulCore, ln_s, constant(kMinusTwoF32));
  const Wire quotient = t.apply(CoreKind::kDiv, kDivCore, minus_two_ln, s);
  const Wire factor = t.apply(CoreKind::kSqrt, kSqrtCore, quotient);
  return std::array<Wire, 2>{t.apply(CoreKind::kMul, kMulCore, v1, factor),
                             t.apply(CoreKind::kMul, kMulCore, v2, factor)};
}

// Central limit: an accumulating adder forms S, then
// z = (S + (-(k x 1/2))) / SQRT(k x 1/12).
template <class Tracer, class Input>
Wire central_limit_graph(Tracer& t, std::span<const Input> us) {
  auto wire_of = [](const Input& in) {
    if constexpr (std::is_same_v<Input, float>) return constant(in);
    else return Wire{in, 0};
  };
  Wire sum = wire_of(us[0]);
  for (std::size_t i = 1; i < us.size(); ++i) sum = t.apply(CoreKind::kAccumulate, kAddCore, sum, wire_of(us[i]));
  const Wire k = constant(static_cast<float>(us.size()));
  const Wire center = t.apply(CoreKind::kMul, kMulCore, k, constant(kHalfF32));
  const Wire deviation = t.apply(CoreKind::kAdd, kAddCore, sum, Wire{F32Value::of(-center.v.value()), center.ready});
  const Wire variance = t.apply(CoreKind::kMul, kMulCore, k, constant(kTwelfthF32));
  const Wire sigma = t.apply(CoreKind::kSqrt, kSqrtCore, variance);
  return t.apply(CoreKind::kDiv, kDivCore, deviation, sigma);
}

const char* event_name(ControlEvent e) {
  switch (e) {
    case ControlEvent::kNone: return "none";
    case ControlEvent::kCleared: return "aclr";
    case ControlEvent::kClockDisabled: return "clk_en_low";
  }
  return "none";
}

}  // namespace

std::string F32Value::hex() const {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", bits);
  return buf;
}

std::string_view core_name(CoreKind kind) noexcept { return kCoreNames[static_cast<std::size_t>(kind)]; }

std::optional<CoreKind> parse_core_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kCoreNames.size(); ++i) {
    if (kCoreNames[i] == name) return static_cast<CoreKind>(i);
  }
  return std::nullopt;
}

CoreResult core_log(F32Value x) noexcept {
  const float v = x.value();
  const float r = static_cast<float>(std::log(static_cast<double>(v)));
  return make(r, CoreFlags{.zero = v == 1.0f, .nan = v < 0.0f || std::isnan(v)});
}

CoreResult core_sincos(F32Value x, TrigMode mode) noexcept {
  const double v = x.value();
  return make(static_cast<float>(mode == TrigMode::kSin ? std::sin(v) : std::cos(v)), CoreFlags{});
}

CoreResult core_div(F32Value a, F32Value b) noexcept {
  const float x = a.value();
  const float y = b.value();
  const float r = x / y;
  CoreFlags f;
  f.nan = std::isnan(r);
  f.overflow = std::isinf(r);
  f.zero = is_zero(r);
  f.underflow = !f.nan && (is_zero(r) || is_subnormal(r)) && !is_zero(x) && !is_zero(y);
  return make(r, f);
}

CoreResult core_sqrt(F32Value x) noexcept {
  const float v = x.value();
  const float r = std::sqrt(v);
  return make(r, CoreFlags{.zero = is_zero(r), .nan = v < 0.0f || std::isnan(v), .overflow = std::isinf(r)});
}

CoreResult core_mul(F32Value a, F32Value b) noexcept {
  const float x = a.value();
  const float y = b.value();
  const float r = x * y;
  CoreFlags f;
  f.zero = is_zero(r);
  f.nan = std::isnan(r);
  f.overflow = std::isinf(r) && std::isfinite(x) && std::isfinite(y);
  f.underflow = is_subnormal(r) || (is_zero(r) && !is_zero(x) && !is_zero(y) && std::isfinite(x) && std::isfinite(y));
  return make(r, f);
}

CoreResult core_add(F32Value a, F32Value b) noexcept {
  const float x = a.value();
  const float y = b.value();
  const float r = x + y;
  CoreFlags f;
  f.zero = is_zero(r);
  f.nan = std::isnan(r);
  f.overflow = std::isinf(r) && std::isfinite(x) && std::isfinite(y);
  f.underflow = is_subnormal(r);
  return make(r, f);
}

CoreResult core_bipolar(F32Value u) noexcept {
  // 2u is exact (barring overflow), so only the subtraction rounds.
  const float r = 2.0f * u.value() - 1.0f;
  CoreFlags f;
  f.zero = is_zero(r);
  f.nan = std::isnan(r);
  return make(r, f);
}

CoreCounts static_core_counts(Algorithm algo, unsigned k, bool accepted) {
  CoreCounts c{};
  switch (algo) {
    case Algorithm::kBoxMuller:
      count_of(c, CoreKind::kLog) = 1;
      count_of(c, CoreKind::kSqrt) = 1;
      count_of(c, CoreKind::kSin) = 1;
      count_of(c, CoreKind::kCos) = 1;
      count_of(c, CoreKind::kMul) = 4;
      break;
    case Algorithm::kPolar:
      count_of(c, CoreKind::kBipolar) = 2;
      count_of(c, CoreKind::kMul) = accepted ? 5 : 2;
      count_of(c, CoreKind::kAdd) = 1;
      if (accepted) {
        count_of(c, CoreKind::kLog) = 1;
        count_of(c, CoreKind::kDiv) = 1;
        count_of(c, CoreKind::kSqrt) = 1;
      }
      break;
    case Algorithm::kCentralLimit:
      count_of(c, CoreKind::kAccumulate) = k - 1;
      count_of(c, CoreKind::kMul) = 2;
      count_of(c, CoreKind::kAdd) = 1;
      count_of(c, CoreKind::kSqrt) = 1;
      count_of(c, CoreKind::kDiv) = 1;
      break;
  }
  return c;
}

GraphOutput run_graph(Algorithm algo, std::span<const F32Value> inputs, const PipelineOptions& options) {
  GraphOutput out;
  RecordingTracer t(options, out.trace);
  switch (algo) {
    case Algorithm::kBoxMuller:
    case Algorithm::kPolar: {
      if (inputs.size() != 2) {
        throw Error(Errc::kArityMismatch, std::string(algorithm_id(algo)) + " graph takes 2 inputs, got " +
                                              std::to_string(inputs.size()));
      }
      if (algo == Algorithm::kBoxMuller) {
        const auto ab = box_muller_graph(t, Wire{inputs[0]}, Wire{inputs[1]});
        out.outputs = {ab[0].v, ab[1].v};
      } else if (const auto ab = polar_graph(t, Wire{inputs[0]}, Wire{inputs[1]})) {
        out.outputs = {(*ab)[0].v, (*ab)[1].v};
      } else {
        out.accepted = false;
      }
      break;
    }
    case Algorithm::kCentralLimit:
      if (inputs.size() < 2) {
        throw Error(Errc::kArityMismatch, "central-limit graph needs k >= 2 inputs, got " + std::to_string(inputs.size()));
      }
      out.outputs = {central_limit_graph(t, inputs).v};
      break;
  }
  return out;
}

PairF32 box_muller_f32(float u1, float u2, CoreCounts* counts) noexcept {
  CountingTracer t(counts);
  const auto ab = box_muller_graph(t, constant(u1), constant(u2));
  return {ab[0].v.value(), ab[1].v.value()};
}

std::optional<PairF32> polar_f32(float u1, float u2, CoreCounts* counts) noexcept {
  CountingTracer t(counts);
  const auto ab = polar_graph(t, constant(u1), constant(u2));
  if (!ab) return std::nullopt;
  return PairF32{(*ab)[0].v.value(), (*ab)[1].v.value()};
}

float central_limit_f32(std::span<const float> us, CoreCounts* counts) noexcept {
  CountingTracer t(counts);
  return central_limit_graph(t, us).v.value();
}

std::string PipelineTrace::to_json(Algorithm algo, bool accepted) const {
  nlohmann::ordered_json j;
  j["algorithm"] = algorithm_id(algo);
  j["accepted"] = accepted;
  j["latency_cycles"] = latency_cycles;
  nlohmann::ordered_json inv = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kCoreKindCount; ++i) {
    if (invocations[i] != 0) inv[std::string(kCoreNames[i])] = invocations[i];
  }
  j["invocations"] = inv;
  j["flag_counts"] = {{"zero", flag_counts.zero},
                      {"nan", flag_counts.nan},
                      {"overflow", flag_counts.overflow},
                      {"underflow", flag_counts.underflow}};
  nlohmann::ordered_json recs = nlohmann::ordered_json::array();
  for (const CoreRecord& r : records) {
    nlohmann::ordered_json rec;
    rec["core"] = core_name(r.core);
    nlohmann::ordered_json in = nlohmann::ordered_json::array();
    for (std::uint8_t i = 0; i < r.arity; ++i) in.push_back(r.inputs[i].hex());
    rec["input_bits_hex"] = in;
    rec["output_bits_hex"] = r.output.hex();
    rec["flags"] = {{"zero", r.flags.zero}, {"nan", r.flags.nan}, {"overflow", r.flags.overflow},
                    {"underflow", r.flags.underflow}};
    rec["latency"] = r.latency;
    rec["ready_cycle"] = r.ready_cycle;
    rec["event"] = event_name(r.event);
    recs.push_back(std::move(rec));
  }
  j["records"] = recs;
  return j.dump(2);
}

}  // namespace grng::fp
