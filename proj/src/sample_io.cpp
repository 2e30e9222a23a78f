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

#include "grng/sample_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "grng/error.hpp"

namespace grng::io {
namespace {

static_assert(std::endian::native == std::endian::little, "binary sample format assumes a little-endian host");

template <typename T>
void put_le(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T get_le(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

SampleSet parse_binary(std::string_view bytes) {
  if (bytes.size() < kBinaryHeaderSize) throw Error(Errc::kParseError, "truncated binary sample header");
  const auto mode_raw = get_le<std::uint32_t>(bytes.data() + 4);
  const auto count = get_le<std::uint64_t>(bytes.data() + 8);
  if (mode_raw > 1) throw Error(Errc::kParseError, "unknown binary sample mode " + std::to_string(mode_raw));
  const PrecisionMode mode = mode_raw == 0 ? PrecisionMode::kReference : PrecisionMode::kPipeline;
  const std::size_t width = mode == PrecisionMode::kReference ? 8 : 4;
  const std::size_t payload = bytes.size() - kBinaryHeaderSize;
  if (count > payload / width || payload != count * width) {
    throw Error(Errc::kParseError, "binary sample payload is " + std::to_string(payload) + " bytes, header says " +
                                       std::to_string(count) + " values of " + std::to_string(width) + " bytes");
  }
  SampleSet set{std::vector<double>(count), SampleFormat::kBinary, mode};
  const char* p = bytes.data() + kBinaryHeaderSize;
  for (std::size_t i = 0; i < count; ++i, p += width) {
    set.values[i] = width == 8 ? get_le<double>(p) : static_cast<double>(get_le<float>(p));
  }
  return set;
}

SampleSet parse_json(std::string_view bytes) {
  // A flat array of numbers; a hand-rolled scan keeps 10^6-value files fast.
  SampleSet set{{}, SampleFormat::kJson, std::nullopt};
  std::string_view s = trim(bytes);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw Error(Errc::kParseError, "expected a JSON array");
  s = trim(s.substr(1, s.size() - 2));
  if (s.empty()) return set;
  std::size_t index = 0;
  while (true) {
    const std::size_t comma = s.find(',');
    const std::string_view item = s.substr(0, comma);
    const auto v = parse_number(item);
    if (!v) throw Error(Errc::kParseError, "JSON element " + std::to_string(index) + " is not a number");
    set.values.push_back(*v);
    ++index;
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return set;
}

SampleSet parse_csv(std::string_view bytes) {
  SampleSet set{{}, SampleFormat::kCsv, std::nullopt};
  std::size_t line_no = 0;
  while (!bytes.empty()) {
    const std::size_t nl = bytes.find('\n');
    std::string_view line = bytes.substr(0, nl);
    bytes.remove_prefix(nl == std::string_view::npos ? bytes.size() : nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto v = parse_number(line);
    if (!v) {
      if (line_no == 1) continue;  // header
      throw Error(Errc::kParseError, "line " + std::to_string(line_no) + ": not a number: '" +
                                         std::string(line.substr(0, 40)) + "'");
    }
    set.values.push_back(*v);
  }
  return set;
}

}  // namespace

std::string_view format_id(SampleFormat format) noexcept {
  switch (format) {
    case SampleFormat::kCsv: return "csv";
    case SampleFormat::kJson: return "json";
    case SampleFormat::kBinary: return "bin";
  }
  return "unknown";
}

SampleFormat parse_format(std::string_view id) {
  if (id == "csv") return SampleFormat::kCsv;
  if (id == "json") return SampleFormat::kJson;
  if (id == "bin") return SampleFormat::kBinary;
  throw Error(Errc::kInvalidArgument, "unknown format '" + std::string(id) + "' (expected csv, json or bin)");
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_samples(std::ostream& out, std::span<const double> values, SampleFormat format, PrecisionMode mode) {
  std::string buf;
  switch (format) {
    case SampleFormat::kCsv:
      buf.reserve(values.size() * 22);
      for (double v : values) {
        buf += format_double(v);
        buf += '\n';
      }
      break;
    case SampleFormat::kJson:
      buf.reserve(values.size() * 23 + 4);
      buf += '[';
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buf += ',';
        buf += format_double(values[i]);
      }
      buf += "]\n";
      break;
    case SampleFormat::kBinary: {
      const bool narrow = mode == PrecisionMode::kPipeline;
      buf.append(kBinaryMagic, 4);
      put_le<std::uint32_t>(buf, narrow ? 1u : 0u);
      put_le<std::uint64_t>(buf, values.size());
      for (double v : values) {
        if (narrow) {
          const float f = static_cast<float>(v);
          if (static_cast<double>(f) != v && !std::isnan(v)) {
            throw Error(Errc::kInvalidArgument, "pipeline binary output needs binary32-exact values");
          }
          put_le(buf, f);
        } else {
          put_le(buf, v);
        }
      }
      break;
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(Errc::kIoError, "failed to write samples");
}

SampleSet parse_samples(std::string_view bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kBinaryMagic, 4) == 0) return parse_binary(bytes);
  const std::string_view t = trim(bytes);
  if (!t.empty() && t.front() == '[') return parse_json(bytes);
  return parse_csv(bytes);
}

SampleSet read_samples_file(const std::string& path) {
  std::string bytes;
  if (path == "-") {
    bytes.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes = std::move(ss).str();
  }
  return parse_samples(bytes);
}

}  // namespace grng::io
