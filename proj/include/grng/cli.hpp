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
#include <iosfwd>
#include <vector>

#include "grng/fp_pipeline.hpp"
#include "grng/gf2.hpp"
#include "grng/stream.hpp"

namespace grng::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct RunConfig {
  Algorithm algorithm = Algorithm::kBoxMuller;
  PrecisionMode mode = PrecisionMode::kReference;
  unsigned k = 12;
  std::size_t n = 0;
  std::uint64_t master_seed = 1;
  std::size_t shards = 1;
  gf2::Poly taps = default_polynomial();
};

struct RunOutput {
  std::vector<double> values;  // shard-major
  Consumption consumption;     // summed over shards
  fp::CoreCounts core_counts{};
  std::vector<std::vector<std::uint64_t>> lane_seeds;  // per shard
};

// Shard s gets lanes [s*L, (s+1)*L) of derive_lane_seeds(master_seed, shards*L)
// and the next n/shards (+1 for the first n%shards) values. Shards run
// concurrently; the output order depends only on the config.
RunOutput run_generation(const RunConfig& config);

// Entry point for the `grng` executable. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grng::cli
