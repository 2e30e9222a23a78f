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

// Gaussian modulation of coherent-state quadratures: each state |q + ip> is
// drawn with Q ~ P ~ N(0, V) from a standard-normal stream.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grng/stream.hpp"

namespace grng::qkd {

struct QuadraturePair {
  double q;  // shot-noise units
  double p;
};

struct ModulationConfig {
  double variance = 1.0;  // V > 0
  std::size_t count = 0;  // pairs

  // Throws Error(kInvalidArgument) unless V is finite and positive.
  void validate() const;
};

// q_j = sqrt(V) g_{2j}, p_j = sqrt(V) g_{2j+1}. Needs 2 * count values.
std::vector<QuadraturePair> quadrature_stream(std::span<const double> normals, const ModulationConfig& config);
std::vector<QuadraturePair> quadrature_stream(GaussianStream& source, const ModulationConfig& config);

std::string to_csv(std::span<const QuadraturePair> pairs);   // header "q,p"
std::string to_json(std::span<const QuadraturePair> pairs);  // [{"q":..,"p":..}, ...]

}  // namespace grng::qkd
