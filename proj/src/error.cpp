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

#include "grng/error.hpp"

namespace grng {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kZeroSeed: return "ZeroSeed";
    case Errc::kBadPolynomial: return "BadPolynomial";
    case Errc::kBadSeed: return "BadSeed";
    case Errc::kFactorizationUnavailable: return "FactorizationUnavailable";
    case Errc::kDomainError: return "DomainError";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kArityMismatch: return "ArityMismatch";
    case Errc::kEmptySample: return "EmptySample";
    case Errc::kInsufficientSample: return "InsufficientSample";
    case Errc::kNonFiniteSample: return "NonFiniteSample";
    case Errc::kSourceExhausted: return "SourceExhausted";
    case Errc::kParseError: return "ParseError";
    case Errc::kIoError: return "IoError";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace grng
