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

// Sample files: CSV (one value per line), JSON array, or a little-endian
// binary dump behind a 16-byte header {"GRNG", mode:u32, count:u64}.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grng/stream.hpp"

namespace grng::io {

enum class SampleFormat { kCsv, kJson, kBinary };

std::string_view format_id(SampleFormat format) noexcept;  // "csv" | "json" | "bin"
SampleFormat parse_format(std::string_view id);

inline constexpr char kBinaryMagic[4] = {'G', 'R', 'N', 'G'};
inline constexpr std::size_t kBinaryHeaderSize = 16;

// Pipeline-mode binary output stores binary32; values must be float-exact.
void write_samples(std::ostream& out, std::span<const double> values, SampleFormat format,
                   PrecisionMode mode = PrecisionMode::kReference);

struct SampleSet {
  std::vector<double> values;
  SampleFormat format;
  std::optional<PrecisionMode> mode;  // binary files only
};

// Sniffs the format: binary magic, then '[' for JSON, else CSV. CSV may start
// with a single non-numeric header line. Throws Error(kParseError).
SampleSet parse_samples(std::string_view bytes);
SampleSet read_samples_file(const std::string& path);  // "-" reads stdin

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

}  // namespace grng::io
