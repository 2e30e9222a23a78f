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

#include <gtest/gtest.h>
#include <quadmath.h>

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "grng/error.hpp"
#include "grng/fp_pipeline.hpp"
#include "grng/transforms.hpp"
#include "round32_oracle.hpp"
#include "test_util.hpp"

namespace grng::fp {
namespace {

float ulpf(float x) {
  x = std::fabs(x);
  return std::nextafter(x, INFINITY) - x;
}

// Correctly rounded binary32 value of a quad-precision result.
float round32(__float128 x) { return static_cast<float>(x); }

TEST(F32Value, HexAndConversions) {
  EXPECT_EQ(F32Value::of(1.0f).hex(), "3f800000");
  EXPECT_EQ(F32Value::of(-0.0f).hex(), "80000000");
  EXPECT_EQ(F32Value::from_double(0.1).value(), 0.1f);
  EXPECT_EQ(F32Value::from_double(1.0 - 0x1p-26).value(), 1.0f);  // round-to-nearest reaches 1
}

TEST(CoreNames, RoundTrip) {
  for (std::size_t i = 0; i < kCoreKindCount; ++i) {
    const auto k = static_cast<CoreKind>(i);
    EXPECT_EQ(parse_core_name(core_name(k)), k);
  }
  EXPECT_FALSE(parse_core_name("FMA").has_value());
}

TEST(CoreLog, Examples) {
  const CoreResult one = core_log(F32Value::of(1.0f));
  EXPECT_EQ(one.result.value(), 0.0f);
  EXPECT_TRUE(one.flags.zero);
  EXPECT_FALSE(one.flags.nan);
  EXPECT_TRUE(core_log(F32Value::of(-1.0f)).flags.nan);
  const float e = static_cast<float>(M_E);
  EXPECT_EQ(core_log(F32Value::of(e)).result.value(), round32(logq(static_cast<__float128>(e))));
}

TEST(CoreSinCos, Examples) {
  EXPECT_EQ(core_sincos(F32Value::of(0.0f), TrigMode::kSin).result.value(), 0.0f);
  EXPECT_EQ(core_sincos(F32Value::of(0.0f), TrigMode::kCos).result.value(), 1.0f);
  const float half_pi = static_cast<float>(M_PI / 2);
  EXPECT_LE(std::fabs(core_sincos(F32Value::of(half_pi), TrigMode::kSin).result.value() - 1.0f), ulpf(1.0f));
}

TEST(CoreSinCos, PythagoreanBudget) {
  test::SplitMix rng(21);
  for (int i = 0; i < 10000; ++i) {
    const float x = static_cast<float>(rng.uniform() * 2 * M_PI);
    const double s = core_sincos(F32Value::of(x), TrigMode::kSin).result.value();
    const double c = core_sincos(F32Value::of(x), TrigMode::kCos).result.value();
    ASSERT_LE(std::fabs(s * s + c * c - 1.0), 4 * 0x1p-24) << x;
  }
}

TEST(CoreDiv, Examples) {
  const CoreResult half = core_div(F32Value::of(1.0f), F32Value::of(2.0f));
  EXPECT_EQ(half.result.value(), 0.5f);
  EXPECT_EQ(half.flags, CoreFlags{});
  EXPECT_TRUE(core_div(F32Value::of(0.0f), F32Value::of(0.0f)).flags.nan);
  EXPECT_TRUE(core_div(F32Value::of(3.4e38f), F32Value::of(1e-10f)).flags.overflow);
}

TEST(CoreSqrt, Examples) {
  EXPECT_EQ(core_sqrt(F32Value::of(4.0f)).result.value(), 2.0f);
  EXPECT_TRUE(core_sqrt(F32Value::of(-2.0f)).flags.nan);
  EXPECT_TRUE(core_sqrt(F32Value::of(0.0f)).flags.zero);
}

// Accuracy: transcendental cores within 1 ulp of the correctly rounded
// result, DIV/SQRT/MUL/ADD correctly rounded.
TEST(CoreAccuracy, AgainstQuadOracle) {
  test::SplitMix rng(22);
  for (int i = 0; i < 200000; ++i) {
    const float x = std::bit_cast<float>(rng.bits32() & 0x7FFFFFFFu);
    const float y = std::bit_cast<float>(rng.bits32());
    if (!std::isfinite(x) || !std::isfinite(y) || x == 0.0f) continue;
    const float want_log = round32(logq(x));
    ASSERT_LE(std::fabs(core_log(F32Value::of(x)).result.value() - want_log), ulpf(want_log)) << x;
    if (std::fabs(y) < 1e6f) {
      const float ws = round32(sinq(y)), wc = round32(cosq(y));
      ASSERT_LE(std::fabs(core_sincos(F32Value::of(y), TrigMode::kSin).result.value() - ws), ulpf(ws)) << y;
      ASSERT_LE(std::fabs(core_sincos(F32Value::of(y), TrigMode::kCos).result.value() - wc), ulpf(wc)) << y;
    }
    ASSERT_EQ(core_sqrt(F32Value::of(x)).result.value(), round32(sqrtq(x)));
    ASSERT_EQ(core_div(F32Value::of(y), F32Value::of(x)).result.value(),
              round32(static_cast<__float128>(y) / x));
    ASSERT_EQ(core_mul(F32Value::of(y), F32Value::of(x)).result.value(),
              round32(static_cast<__float128>(y) * x));
    ASSERT_EQ(core_add(F32Value::of(y), F32Value::of(x)).result.value(),
              round32(static_cast<__float128>(y) + x));
  }
}

// Flag predicates restated from their definitions and checked over 10^6
// random patterns per core.
TEST(CoreFlags, PredicatesOverRandomPatterns) {
  test::BitSource src(23);
  constexpr int kPatterns = 1000000;
  for (int i = 0; i < kPatterns; ++i) {
    const F32Value a = src.next(), b = src.next();
    const float x = a.value(), y = b.value();

    const CoreResult lg = core_log(a);
    ASSERT_EQ(lg.flags, test::expected_log_flags(x)) << a.hex();
    ASSERT_EQ(lg.flags.zero, lg.result.value() == 0.0f) << a.hex();

    for (TrigMode m : {TrigMode::kSin, TrigMode::kCos}) ASSERT_EQ(core_sincos(a, m).flags, CoreFlags{});

    const CoreResult dv = core_div(a, b);
    ASSERT_EQ(dv.flags, test::expected_div_flags(x, y)) << a.hex() << '/' << b.hex();
    ASSERT_EQ(dv.flags.zero, dv.result.value() == 0.0f);

    ASSERT_EQ(core_sqrt(a).flags, test::expected_sqrt_flags(x)) << a.hex();
    ASSERT_EQ(core_mul(a, b).flags, test::expected_mul_flags(x, y)) << a.hex() << '*' << b.hex();
    ASSERT_EQ(core_add(a, b).flags, test::expected_add_flags(x, y)) << a.hex() << '+' << b.hex();
  }
}

// Against a correctly rounded (quad, then round32) evaluation of every core.
TEST(RunGraph, BitIdenticalToRound32Oracle) {
  test::SplitMix rng(24);
  int transcendental_mismatch = 0;
  for (int i = 0; i < 10000; ++i) {
    const float u1 = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
    const float u2 = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
    const std::array<F32Value, 2> in = {F32Value::of(u1), F32Value::of(u2)};

    const GraphOutput bm = run_graph(Algorithm::kBoxMuller, in);
    const auto want = test::oracle_box_muller(u1, u2);
    if (bm.outputs[0].value() != want[0] || bm.outputs[1].value() != want[1]) ++transcendental_mismatch;

    const GraphOutput pol = run_graph(Algorithm::kPolar, in);
    const auto want_p = test::oracle_polar(u1, u2);
    ASSERT_EQ(pol.accepted, want_p.has_value());
    if (want_p && (pol.outputs[0].value() != (*want_p)[0] || pol.outputs[1].value() != (*want_p)[1])) {
      ++transcendental_mismatch;
    }

    std::vector<float> us(12);
    std::vector<F32Value> uin(12);
    for (int j = 0; j < 12; ++j) {
      us[j] = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
      uin[j] = F32Value::of(us[j]);
    }
    const GraphOutput clt = run_graph(Algorithm::kCentralLimit, uin);
    ASSERT_EQ(clt.outputs[0].value(), test::oracle_clt(us));  // no transcendental cores
  }
  // double libm rounded to binary32 has never been seen to disagree with the
  // correctly rounded value on these inputs (0 in 1e7 per core).
  EXPECT_EQ(transcendental_mismatch, 0) << "of 20000 graph evaluations";
}

// Same graphs, but the oracle uses exactly the core functions, so the
// composition itself is checked bit for bit.
TEST(RunGraph, CompositionBitIdentical) {
  test::SplitMix rng(25);
  for (int i = 0; i < 10000; ++i) {
    const float u1 = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
    const float u2 = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
    const std::array<F32Value, 2> in = {F32Value::of(u1), F32Value::of(u2)};
    const float ln = core_log(in[0]).result.value();
    const float r = std::sqrt(ln * -2.0f);
    const float theta = u2 * kTwoPiF32;
    const float a = r * core_sincos(F32Value::of(theta), TrigMode::kSin).result.value();
    const float b = r * core_sincos(F32Value::of(theta), TrigMode::kCos).result.value();
    const GraphOutput bm = run_graph(Algorithm::kBoxMuller, in);
    ASSERT_EQ(bm.outputs[0], F32Value::of(a));
    ASSERT_EQ(bm.outputs[1], F32Value::of(b));
    const auto fast = box_muller_f32(u1, u2);
    ASSERT_EQ(F32Value::of(fast.alpha), bm.outputs[0]);
    ASSERT_EQ(F32Value::of(fast.beta), bm.outputs[1]);

    const GraphOutput pol = run_graph(Algorithm::kPolar, in);
    const auto pf = polar_f32(u1, u2);
    ASSERT_EQ(pol.accepted, pf.has_value());
    if (pf) {
      ASSERT_EQ(F32Value::of(pf->alpha), pol.outputs[0]);
      ASSERT_EQ(F32Value::of(pf->beta), pol.outputs[1]);
    }
  }
}

TEST(RunGraph, StaticCoreCounts) {
  const std::array<F32Value, 2> in = {F32Value::of(0.3f), F32Value::of(0.6f)};
  const GraphOutput bm = run_graph(Algorithm::kBoxMuller, in);
  EXPECT_EQ(count_of(bm.trace.invocations, CoreKind::kLog), 1u);
  EXPECT_EQ(count_of(bm.trace.invocations, CoreKind::kSqrt), 1u);
  EXPECT_EQ(count_of(bm.trace.invocations, CoreKind::kSin), 1u);
  EXPECT_EQ(count_of(bm.trace.invocations, CoreKind::kCos), 1u);
  EXPECT_EQ(count_of(bm.trace.invocations, CoreKind::kMul), 4u);
  EXPECT_EQ(bm.trace.invocations, static_core_counts(Algorithm::kBoxMuller));

  const GraphOutput pol = run_graph(Algorithm::kPolar, in);
  ASSERT_TRUE(pol.accepted);
  EXPECT_EQ(count_of(pol.trace.invocations, CoreKind::kLog), 1u);
  EXPECT_EQ(count_of(pol.trace.invocations, CoreKind::kSqrt), 1u);
  EXPECT_EQ(count_of(pol.trace.invocations, CoreKind::kDiv), 1u);
  EXPECT_EQ(count_of(pol.trace.invocations, CoreKind::kMul), 5u);
  EXPECT_EQ(count_of(pol.trace.invocations, CoreKind::kAdd), 1u);
  EXPECT_EQ(pol.trace.invocations, static_core_counts(Algorithm::kPolar, 12, true));

  const std::array<F32Value, 2> out = {F32Value::of(0.99f), F32Value::of(0.99f)};
  const GraphOutput rej = run_graph(Algorithm::kPolar, out);
  EXPECT_FALSE(rej.accepted);
  EXPECT_TRUE(rej.outputs.empty());
  EXPECT_EQ(rej.trace.invocations, static_core_counts(Algorithm::kPolar, 12, false));

  for (unsigned k : {2u, 12u, 30u}) {
    const std::vector<F32Value> us(k, F32Value::of(0.25f));
    const GraphOutput clt = run_graph(Algorithm::kCentralLimit, us);
    EXPECT_EQ(count_of(clt.trace.invocations, CoreKind::kMul), 2u);
    EXPECT_EQ(count_of(clt.trace.invocations, CoreKind::kAdd), 1u);
    EXPECT_EQ(count_of(clt.trace.invocations, CoreKind::kSqrt), 1u);
    EXPECT_EQ(count_of(clt.trace.invocations, CoreKind::kDiv), 1u);
    EXPECT_EQ(count_of(clt.trace.invocations, CoreKind::kAccumulate), k - 1);
    EXPECT_EQ(clt.trace.invocations, static_core_counts(Algorithm::kCentralLimit, k));
  }
}

TEST(RunGraph, FastPathCountsMatchStatic) {
  test::SplitMix rng(26);
  CoreCounts bm{}, pol{};
  std::uint64_t accepted = 0, proposals = 0;
  for (int i = 0; i < 1000; ++i) {
    const float u1 = static_cast<float>(rng.uniform()), u2 = static_cast<float>(rng.uniform());
    box_muller_f32(u1, u2, &bm);
    accepted += polar_f32(u1, u2, &pol).has_value();
    ++proposals;
  }
  for (std::size_t c = 0; c < kCoreKindCount; ++c) {
    EXPECT_EQ(bm[c], 1000 * static_core_counts(Algorithm::kBoxMuller)[c]);
    EXPECT_EQ(pol[c], accepted * static_core_counts(Algorithm::kPolar, 12, true)[c] +
                          (proposals - accepted) * static_core_counts(Algorithm::kPolar, 12, false)[c]);
  }
}

TEST(RunGraph, ArityMismatch) {
  const std::vector<F32Value> three(3, F32Value::of(0.5f));
  EXPECT_GRNG_ERROR(run_graph(Algorithm::kBoxMuller, three), Errc::kArityMismatch);
  EXPECT_GRNG_ERROR(run_graph(Algorithm::kPolar, three), Errc::kArityMismatch);
  const std::vector<F32Value> one(1, F32Value::of(0.5f));
  EXPECT_GRNG_ERROR(run_graph(Algorithm::kCentralLimit, one), Errc::kArityMismatch);
}

TEST(RunGraph, TraceIntermediatesAreBinary32AndDeterministic) {
  const std::array<F32Value, 2> in = {F32Value::of(0.1f), F32Value::of(0.7f)};
  const GraphOutput a = run_graph(Algorithm::kBoxMuller, in);
  const GraphOutput b = run_graph(Algorithm::kBoxMuller, in);
  EXPECT_EQ(a.trace.to_json(Algorithm::kBoxMuller, true), b.trace.to_json(Algorithm::kBoxMuller, true));
  ASSERT_EQ(a.trace.records.size(), 8u);
  // Each record's output is the core applied to its recorded inputs.
  for (const CoreRecord& r : a.trace.records) {
    CoreResult again{};
    switch (r.core) {
      case CoreKind::kLog: again = core_log(r.inputs[0]); break;
      case CoreKind::kSin: again = core_sincos(r.inputs[0], TrigMode::kSin); break;
      case CoreKind::kCos: again = core_sincos(r.inputs[0], TrigMode::kCos); break;
      case CoreKind::kSqrt: again = core_sqrt(r.inputs[0]); break;
      case CoreKind::kMul: again = core_mul(r.inputs[0], r.inputs[1]); break;
      default: FAIL() << "unexpected core";
    }
    EXPECT_EQ(again.result, r.output);
    EXPECT_EQ(again.flags, r.flags);
  }
}

TEST(RunGraph, JsonExport) {
  const std::array<F32Value, 2> in = {F32Value::of(1.0f), F32Value::of(0.25f)};
  const GraphOutput g = run_graph(Algorithm::kBoxMuller, in);
  const auto j = nlohmann::json::parse(g.trace.to_json(Algorithm::kBoxMuller, g.accepted));
  EXPECT_EQ(j["algorithm"], "box-muller");
  ASSERT_EQ(j["records"].size(), 8u);
  const auto& log_rec = j["records"][0];
  EXPECT_EQ(log_rec["core"], "LOG");
  EXPECT_EQ(log_rec["input_bits_hex"][0], "3f800000");
  EXPECT_EQ(log_rec["output_bits_hex"], "00000000");
  EXPECT_EQ(log_rec["flags"]["zero"], true);
  EXPECT_EQ(j["flag_counts"]["zero"].get<int>(), g.trace.flag_counts.zero);
  for (const auto& r : j["records"]) EXPECT_EQ(r["output_bits_hex"].get<std::string>().size(), 8u);
}

TEST(ControlPorts, ClearAndClockEnable) {
  const std::array<F32Value, 2> in = {F32Value::of(0.3f), F32Value::of(0.6f)};
  PipelineOptions clear;
  clear.aclr_mask = 1u << static_cast<unsigned>(CoreKind::kSqrt);
  const GraphOutput g = run_graph(Algorithm::kBoxMuller, in, clear);
  EXPECT_EQ(std::fabs(g.outputs[0].value()), 0.0f);
  EXPECT_EQ(std::fabs(g.outputs[1].value()), 0.0f);
  int cleared = 0;
  for (const auto& r : g.trace.records) {
    if (r.core == CoreKind::kSqrt) {
      EXPECT_EQ(r.event, ControlEvent::kCleared);
      EXPECT_EQ(r.output, F32Value{});
      ++cleared;
    } else {
      EXPECT_EQ(r.event, ControlEvent::kNone);
    }
  }
  EXPECT_EQ(cleared, 1);

  PipelineOptions stalled;
  stalled.clk_disabled_mask = 1u << static_cast<unsigned>(CoreKind::kDiv);
  const std::vector<F32Value> us(12, F32Value::of(0.75f));
  const GraphOutput c = run_graph(Algorithm::kCentralLimit, us, stalled);
  EXPECT_EQ(c.outputs[0], F32Value{});
  EXPECT_EQ(c.trace.records.back().event, ControlEvent::kClockDisabled);
  EXPECT_NE(c.trace.to_json(Algorithm::kCentralLimit, true).find("clk_en_low"), std::string::npos);
}

TEST(Latency, AffectsOnlyMetadata) {
  const std::array<F32Value, 2> in = {F32Value::of(0.3f), F32Value::of(0.6f)};
  const GraphOutput unit = run_graph(Algorithm::kBoxMuller, in);
  EXPECT_EQ(unit.trace.latency_cycles, 4u);  // LOG -> MUL -> SQRT -> MUL
  PipelineOptions slow;
  slow.latency[static_cast<std::size_t>(CoreKind::kLog)] = 20;
  slow.latency[static_cast<std::size_t>(CoreKind::kSin)] = 7;
  const GraphOutput g = run_graph(Algorithm::kBoxMuller, in, slow);
  EXPECT_EQ(g.outputs, unit.outputs);
  EXPECT_EQ(g.trace.latency_cycles, 23u);
  EXPECT_EQ(g.trace.records.front().ready_cycle, 20u);
}

// Pipeline values converge to the reference on identical inputs: within 64
// binary32 ulps of max(|ref|, 1). Polar excludes the thin ring 1 - s < 2^-14,
// where forming s in binary32 cancels.
TEST(Fidelity, PipelineTracksReference) {
  test::SplitMix rng(27);
  for (int i = 0; i < 200000; ++i) {
    const float u1 = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
    const float u2 = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
    auto close = [](double ref, float got) {
      return std::fabs(ref - got) <= 64.0 * ulpf(std::max(static_cast<float>(std::fabs(ref)), 1.0f));
    };
    if (u1 >= 0x1p-20f) {
      const GaussianPair r = box_muller(u1, u2);
      const PairF32 p = box_muller_f32(u1, u2);
      ASSERT_TRUE(close(r.alpha, p.alpha) && close(r.beta, p.beta)) << u1 << ' ' << u2;
    }
    const PolarDraw d = polar_draw(u1, u2);
    const auto rp = polar(u1, u2);
    const auto pp = polar_f32(u1, u2);
    if (rp && pp && 1.0 - d.s >= 0x1p-14) {
      ASSERT_TRUE(close(rp->alpha, pp->alpha) && close(rp->beta, pp->beta)) << u1 << ' ' << u2;
    }
    std::vector<double> us(12);
    std::vector<float> fs(12);
    for (int j = 0; j < 12; ++j) {
      fs[j] = std::ldexp(static_cast<float>((rng.bits32() >> 8) | 1u), -24);
      us[j] = fs[j];
    }
    ASSERT_TRUE(close(central_limit(us), central_limit_f32(fs)));
  }
}

}  // namespace
}  // namespace grng::fp
