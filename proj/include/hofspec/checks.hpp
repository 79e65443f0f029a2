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

// Executable spectral identities and bounds. Every check is a pure function
// of its CheckConfig, and configs round-trip through JSON so a whole
// verification run can be replayed from a manifest.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hofspec/analysis.hpp"

namespace hofspec::checks {

using operators::OperatorKind;
using operators::RationalAlpha;

enum class CheckId {
  ThetaPeriod,
  ThetaContinuity,
  MotherEquality,
  SpectralMapping,
  AubryAndre,
  BandCount,
  AlphaContinuity,
  KappaCubed,
  LastMeasureTrend,
  GridRefinement,
  DcpEigensystem,
  PowerLaw,
  BandwidthOrdering,
  ZoomSelfSimilarity,
  AlphaJump,
};

const std::vector<CheckId>& all_checks();
/// Upper-case identifier, e.g. MOTHER_EQUALITY.
std::string to_string(CheckId id);
/// Accepts MOTHER_EQUALITY or mother-equality; throws UnknownCheck.
CheckId parse_check_id(const std::string& text);

struct CheckConfig {
  std::vector<OperatorKind> kinds;
  std::vector<RationalAlpha> alphas;
  std::vector<double> kappas;
  std::vector<double> lambdas;
  std::vector<double> thetas;
  std::vector<int> grids;
  std::vector<std::int64_t> q_values;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  /// Accepted interval for range-type checks.
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> factors;
  std::optional<double> center;
  std::int64_t n_max = 0;
  int min_bands = 0;
  /// theta-continuity slope: bound = lipschitz |kappa lambda| |sin pi (t1 - t2)|
  /// (|lambda| for kind H).
  double lipschitz = 0.0;
};

/// Parameters used by the acceptance suite.
CheckConfig default_config(CheckId id);

std::string config_to_json(const CheckConfig& cfg);
/// Fields absent from the JSON keep their values from `base`.
CheckConfig config_from_json(const std::string& json, const CheckConfig& base);

struct CheckReport {
  std::string check_id;
  std::string params;  // JSON of the config used
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string notes;
};

std::string report_to_json(const CheckReport& r);

CheckReport run_check(CheckId id, const CheckConfig& cfg, const spectra::SweepOptions& opts = {});

/// The rational with denominator q used for theta checks: the golden
/// convergent with that denominator when one exists, else 1/q.
RationalAlpha alpha_for_denominator(std::int64_t q);

}  // namespace hofspec::checks
