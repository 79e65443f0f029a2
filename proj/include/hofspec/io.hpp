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

#pragma once

// Persistence: spectrum CSV files, ring plots, butterfly tables and the
// on-disk spectrum cache. Every writer goes through a temp file and an atomic
// rename, so a failed run never leaves a partial output behind.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hofspec/analysis.hpp"

namespace hofspec::io {

using spectra::SpectrumSet;

inline constexpr const char* kVersion = "0.1.0";

/// Locale-independent round-trip text for a double: "0" for zero, positional
/// notation with 18 significant digits for 1e-4 <= |v| < 1e16, scientific
/// otherwise.
std::string format_real(double v);
/// Parses text produced by format_real (or any plain decimal); throws InvalidArgument.
double parse_real(const std::string& text);

/// Replaces `path` with `contents` via a temp file in the same directory.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

std::string spectrum_csv(const SpectrumSet& s);
SpectrumSet parse_spectrum_csv(const std::string& text);
void write_spectrum_csv(const SpectrumSet& s, const std::filesystem::path& path);
SpectrumSet read_spectrum_csv(const std::filesystem::path& path);

/// One ring per spectrum, radius increasing with list index. Throws
/// InvalidArgument on an empty list or mixed alpha and KindMismatch for
/// real-line input.
std::string rings_svg(const std::vector<SpectrumSet>& rings);
void write_rings_svg(const std::vector<SpectrumSet>& rings, const std::filesystem::path& path);

std::string butterfly_csv(const analysis::ButterflyDataset& ds);

/// Canonical text of every field that determines a spectrum.
std::string cache_key_text(const operators::OperatorParams& params, const spectra::GridSpec& grid,
                           const linalg::Tolerances& tol);
/// 16 hex digits of FNV-1a over cache_key_text.
std::string cache_key(const operators::OperatorParams& params, const spectra::GridSpec& grid,
                      const linalg::Tolerances& tol);

/// Loads <dir>/<key>.csv when present, otherwise computes and stores it.
SpectrumSet cached_spectrum(const std::filesystem::path& dir, const operators::OperatorParams& params,
                            const spectra::GridSpec& grid, const spectra::SweepOptions& opts = {},
                            bool* hit = nullptr);
/// Removes cached spectra; returns how many files were deleted.
std::size_t cache_clear(const std::filesystem::path& dir);

}  // namespace hofspec::io
