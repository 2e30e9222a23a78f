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
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "grng/fp_pipeline.hpp"
#include "grng/transforms.hpp"
#include "grng/urng.hpp"

namespace grng {

enum class PrecisionMode { kReference, kPipeline };

std::string_view precision_mode_id(PrecisionMode mode) noexcept;  // "reference" | "pipeline"
PrecisionMode parse_precision_mode(std::string_view id);

// Uniform variates in (0, 1) arranged in independent lanes; lane i feeds U_i
// of a transform.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual std::size_t lanes() const noexcept = 0;
  // Throws Error(kSourceExhausted) if the lane cannot supply out.size() values.
  virtual void fill(std::size_t lane, std::span<double> out) = 0;
  // Values left in a lane, or nullopt for an unbounded lane.
  virtual std::optional<std::size_t> remaining(std::size_t /*lane*/) const { return std::nullopt; }
};

// One LFSR per lane, all sharing a polynomial, with distinct seeds.
class LfsrSource final : public UniformSource {
 public:
  LfsrSource(const gf2::Poly& taps, std::span<const std::uint64_t> seeds);
  // Lane seeds derived from `master_seed` with derive_lane_seeds.
  static std::unique_ptr<LfsrSource> from_master_seed(std::uint64_t master_seed, std::size_t lanes,
                                                      const gf2::Poly& taps = default_polynomial());

  std::size_t lanes() const noexcept override { return lfsrs_.size(); }
  void fill(std::size_t lane, std::span<double> out) override;

  const Lfsr& lane(std::size_t i) const { return lfsrs_.at(i); }
  std::uint64_t uniforms_drawn() const noexcept { return drawn_; }

 private:
  std::vector<Lfsr> lfsrs_;
  std::vector<std::uint64_t> words_;
  std::uint64_t drawn_ = 0;
};

// Fixed per-lane values, mainly for tests and replay.
class VectorSource final : public UniformSource {
 public:
  explicit VectorSource(std::vector<std::vector<double>> lanes);

  std::size_t lanes() const noexcept override { return lanes_.size(); }
  void fill(std::size_t lane, std::span<double> out) override;
  std::optional<std::size_t> remaining(std::size_t lane) const override;

 private:
  std::vector<std::vector<double>> lanes_;
  std::vector<std::size_t> pos_;
};

// Uniform consumption attributed to emitted outputs.
struct Consumption {
  std::uint64_t outputs = 0;
  std::uint64_t uniforms = 0;
  std::uint64_t proposals = 0;  // transform evaluations (pairs, polar proposals, CLT sums)
  std::uint64_t rejected = 0;   // polar proposals outside the unit disk
};

struct StreamOptions {
  Algorithm algorithm = Algorithm::kBoxMuller;
  PrecisionMode mode = PrecisionMode::kReference;
  unsigned k = 12;                // central-limit width
  std::size_t batch = 4096;       // proposals drawn per lane per refill
};

// Number of source lanes a configuration reads from: 2 for the pair
// transforms, k for central-limit.
std::size_t lanes_required(const StreamOptions& options) noexcept;

// Drives one transform over a uniform source. Pair transforms hold the
// second value of a pair for the next call, so every output is used.
// Pipeline mode rounds the uniforms to binary32 and runs the emulated
// datapath; values are returned widened to double.
class GaussianStream {
 public:
  // Throws kArityMismatch if the source lane count does not match, and
  // kInvalidArgument for k < 2 or a zero batch.
  GaussianStream(const StreamOptions& options, std::unique_ptr<UniformSource> source);

  std::vector<double> generate(std::size_t count);
  void generate_into(std::span<double> out);
  double next();

  const StreamOptions& options() const noexcept { return options_; }
  const Consumption& consumption() const noexcept { return consumption_; }
  // Pipeline mode only: graph core invocations attributed to the values
  // emitted so far, like `consumption` (a pair counts with its first value).
  const fp::CoreCounts& core_counts() const noexcept { return core_counts_; }
  UniformSource& source() noexcept { return *source_; }

 private:
  struct Ready {
    double value;
    std::uint32_t uniforms;
    std::uint32_t proposals;
    std::uint32_t rejected;
  };

  void refill();
  void produce_box_muller(std::span<const double> u1, std::span<const double> u2);
  void produce_polar(std::span<const double> u1, std::span<const double> u2);
  void produce_central_limit(std::span<const double> lanes);

  StreamOptions options_;
  std::unique_ptr<UniformSource> source_;
  std::deque<Ready> ready_;
  std::vector<double> buffer_;
  Consumption consumption_;
  fp::CoreCounts core_counts_{};
  fp::CoreCounts cores_accepted_{};
  fp::CoreCounts cores_rejected_{};
  std::uint32_t pending_rejects_ = 0;
};

// stream(algo, source, count): `count` outputs plus their consumption.
struct StreamResult {
  std::vector<double> values;
  Consumption consumption;
};
StreamResult stream(const StreamOptions& options, std::unique_ptr<UniformSource> source, std::size_t count);

}  // namespace grng
