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

#include "grng/stream.hpp"

#include <algorithm>
#include <string>

#include "grng/error.hpp"
#include "grng/kernels.hpp"

namespace grng {

std::string_view precision_mode_id(PrecisionMode mode) noexcept {
  return mode == PrecisionMode::kReference ? "reference" : "pipeline";
}

PrecisionMode parse_precision_mode(std::string_view id) {
  if (id == "reference") return PrecisionMode::kReference;
  if (id == "pipeline") return PrecisionMode::kPipeline;
  throw Error(Errc::kInvalidArgument, "unknown mode '" + std::string(id) + "' (expected reference or pipeline)");
}

LfsrSource::LfsrSource(const gf2::Poly& taps, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw Error(Errc::kInvalidArgument, "an LFSR source needs at least one lane");
  lfsrs_.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (seeds[i] == seeds[j]) throw Error(Errc::kBadSeed, "lane seeds must differ");
    }
    lfsrs_.emplace_back(LfsrConfig{taps.degree(), taps, seeds[i]});
  }
}

std::unique_ptr<LfsrSource> LfsrSource::from_master_seed(std::uint64_t master_seed, std::size_t lanes,
                                                         const gf2::Poly& taps) {
  const auto seeds = derive_lane_seeds(master_seed, lanes, taps.degree());
  return std::make_unique<LfsrSource>(taps, seeds);
}

void LfsrSource::fill(std::size_t lane, std::span<double> out) {
  Lfsr& lfsr = lfsrs_.at(lane);
  words_.resize(out.size());
  for (auto& w : words_) {
    w = lfsr.next_word();
    while (w == 0) w = lfsr.next_word();
  }
  simd::kernels().words_to_unit(words_, lfsr.config().order, out);
  drawn_ += out.size();
}

VectorSource::VectorSource(std::vector<std::vector<double>> lanes) : lanes_(std::move(lanes)), pos_(lanes_.size(), 0) {}

std::optional<std::size_t> VectorSource::remaining(std::size_t lane) const {
  return lanes_.at(lane).size() - pos_.at(lane);
}

void VectorSource::fill(std::size_t lane, std::span<double> out) {
  const auto& values = lanes_.at(lane);
  std::size_t& pos = pos_.at(lane);
  if (values.size() - pos < out.size()) {
    throw Error(Errc::kSourceExhausted, "lane " + std::to_string(lane) + " has " + std::to_string(values.size() - pos) +
                                            " values left, " + std::to_string(out.size()) + " requested");
  }
  std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(pos), out.size(), out.begin());
  pos += out.size();
}

std::size_t lanes_required(const StreamOptions& options) noexcept {
  return options.algorithm == Algorithm::kCentralLimit ? options.k : 2;
}

GaussianStream::GaussianStream(const StreamOptions& options, std::unique_ptr<UniformSource> source)
    : options_(options), source_(std::move(source)) {
  if (options_.k < 2) throw Error(Errc::kInvalidArgument, "central-limit width k must be >= 2");
  if (options_.batch == 0) throw Error(Errc::kInvalidArgument, "batch must be positive");
  if (!source_) throw Error(Errc::kInvalidArgument, "null uniform source");
  if (source_->lanes() != lanes_required(options_)) {
    throw Error(Errc::kArityMismatch, std::string(algorithm_id(options_.algorithm)) + " needs " +
                                          std::to_string(lanes_required(options_)) + " source lanes, got " +
                                          std::to_string(source_->lanes()));
  }
  cores_accepted_ = fp::static_core_counts(options_.algorithm, options_.k, true);
  cores_rejected_ = fp::static_core_counts(options_.algorithm, options_.k, false);
}

void GaussianStream::refill() {
  const std::size_t lanes = lanes_required(options_);
  std::size_t batch = options_.batch;
  for (std::size_t l = 0; l < lanes; ++l) {
    if (const auto left = source_->remaining(l)) batch = std::min(batch, *left);
  }
  if (batch == 0) throw Error(Errc::kSourceExhausted, "uniform source has no values left");
  buffer_.resize(lanes * batch);
  for (std::size_t l = 0; l < lanes; ++l) source_->fill(l, std::span(buffer_).subspan(l * batch, batch));
  const std::span<const double> all(buffer_);
  switch (options_.algorithm) {
    case Algorithm::kBoxMuller: produce_box_muller(all.first(batch), all.subspan(batch, batch)); break;
    case Algorithm::kPolar: produce_polar(all.first(batch), all.subspan(batch, batch)); break;
    case Algorithm::kCentralLimit: produce_central_limit(all); break;
  }
}

void GaussianStream::produce_box_muller(std::span<const double> u1, std::span<const double> u2) {
  for (std::size_t i = 0; i < u1.size(); ++i) {
    double a, b;
    if (options_.mode == PrecisionMode::kReference) {
      const GaussianPair p = box_muller(u1[i], u2[i]);
      a = p.alpha;
      b = p.beta;
    } else {
      const fp::PairF32 p = fp::box_muller_f32(static_cast<float>(u1[i]), static_cast<float>(u2[i]));
      a = p.alpha;
      b = p.beta;
    }
    ready_.push_back({a, 2, 1, 0});
    ready_.push_back({b, 0, 0, 0});
  }
}

void GaussianStream::produce_polar(std::span<const double> u1, std::span<const double> u2) {
  const std::size_t n = u1.size();
  if (options_.mode == PrecisionMode::kReference) {
    std::vector<std::uint8_t> accept(n);
    simd::kernels().polar_screen(u1, u2, accept);
    for (std::size_t i = 0; i < n; ++i) {
      if (!accept[i]) {
        ++pending_rejects_;
        continue;
      }
      const auto p = polar(u1[i], u2[i]);
      const std::uint32_t proposals = pending_rejects_ + 1;
      ready_.push_back({p->alpha, 2 * proposals, proposals, pending_rejects_});
      ready_.push_back({p->beta, 0, 0, 0});
      pending_rejects_ = 0;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = fp::polar_f32(static_cast<float>(u1[i]), static_cast<float>(u2[i]));
    if (!p) {
      ++pending_rejects_;
      continue;
    }
    const std::uint32_t proposals = pending_rejects_ + 1;
    ready_.push_back({p->alpha, 2 * proposals, proposals, pending_rejects_});
    ready_.push_back({p->beta, 0, 0, 0});
    pending_rejects_ = 0;
  }
}

void GaussianStream::produce_central_limit(std::span<const double> lanes) {
  const unsigned k = options_.k;
  const std::size_t n = lanes.size() / k;
  if (options_.mode == PrecisionMode::kReference) {
    std::vector<double> z(n);
    simd::kernels().clt_standardize(lanes, k, z);
    for (double v : z) ready_.push_back({v, k, 1, 0});
    return;
  }
  std::vector<float> lanes32(lanes.size());
  for (std::size_t i = 0; i < lanes.size(); ++i) lanes32[i] = static_cast<float>(lanes[i]);
  std::vector<float> z(n);
  simd::kernels().clt_standardize_f32(lanes32, k, z);
  for (float v : z) ready_.push_back({v, k, 1, 0});
}

void GaussianStream::generate_into(std::span<double> out) {
  for (double& v : out) {
    while (ready_.empty()) refill();
    const Ready r = ready_.front();
    ready_.pop_front();
    v = r.value;
    ++consumption_.outputs;
    consumption_.uniforms += r.uniforms;
    consumption_.proposals += r.proposals;
    consumption_.rejected += r.rejected;
    if (options_.mode == PrecisionMode::kPipeline && r.proposals != 0) {
      // Graph invocations follow from the proposal tally, so they are
      // attributed to outputs exactly like the uniforms.
      for (std::size_t c = 0; c < fp::kCoreKindCount; ++c) {
        core_counts_[c] += cores_accepted_[c] * (r.proposals - r.rejected) + cores_rejected_[c] * r.rejected;
      }
    }
  }
}

std::vector<double> GaussianStream::generate(std::size_t count) {
  std::vector<double> out(count);
  generate_into(out);
  return out;
}

double GaussianStream::next() {
  double v;
  generate_into(std::span(&v, 1));
  return v;
}

StreamResult stream(const StreamOptions& options, std::unique_ptr<UniformSource> source, std::size_t count) {
  GaussianStream s(options, std::move(source));
  StreamResult r;
  r.values = s.generate(count);
  r.consumption = s.consumption();
  return r;
}

}  // namespace grng
