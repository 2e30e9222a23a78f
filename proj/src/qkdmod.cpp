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

#include "grng/qkdmod.hpp"

#include <charconv>
#include <cmath>

#include "grng/error.hpp"
#include "grng/kernels.hpp"

namespace grng::qkd {
namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

void ModulationConfig::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw Error(Errc::kInvalidArgument, "modulation variance must be finite and > 0");
  }
}

std::vector<QuadraturePair> quadrature_stream(std::span<const double> normals, const ModulationConfig& config) {
  config.validate();
  if (normals.size() / 2 < config.count) {
    throw Error(Errc::kSourceExhausted, "quadrature stream needs " + std::to_string(2 * config.count) +
                                            " normal values, got " + std::to_string(normals.size()));
  }
  std::vector<double> scaled(2 * config.count);
  simd::kernels().scale(normals.first(scaled.size()), std::sqrt(config.variance), scaled);
  std::vector<QuadraturePair> pairs(config.count);
  for (std::size_t j = 0; j < config.count; ++j) pairs[j] = {scaled[2 * j], scaled[2 * j + 1]};
  return pairs;
}

std::vector<QuadraturePair> quadrature_stream(GaussianStream& source, const ModulationConfig& config) {
  config.validate();
  const std::vector<double> normals = source.generate(2 * config.count);
  return quadrature_stream(normals, config);
}

std::string to_csv(std::span<const QuadraturePair> pairs) {
  std::string out = "q,p\n";
  for (const auto& [q, p] : pairs) {
    append_double(out, q);
    out += ',';
    append_double(out, p);
    out += '\n';
  }
  return out;
}

std::string to_json(std::span<const QuadraturePair> pairs) {
  std::string out = "[";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ',';
    out += "{\"q\":";
    append_double(out, pairs[i].q);
    out += ",\"p\":";
    append_double(out, pairs[i].p);
    out += '}';
  }
  out += "]\n";
  return out;
}

}  // namespace grng::qkd
