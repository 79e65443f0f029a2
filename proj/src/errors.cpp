// Copyright 2026 The hofspec Authors
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

#include "hofspec/errors.hpp"

namespace hofspec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NonUnitary: return "NonUnitary";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::NonPositiveSample: return "NonPositiveSample";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::CenterOutOfRange: return "CenterOutOfRange";
    case ErrorCode::DegenerateAlphas: return "DegenerateAlphas";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  return code == ErrorCode::NonHermitian || code == ErrorCode::NonUnitary ||
         code == ErrorCode::NoConvergence;
}

}  // namespace hofspec
