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

// Acceptance run: one line per criterion, each backed by one or more checks
// with their default configurations. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "hofspec/checks.hpp"
#include "hofspec/errors.hpp"

using namespace hofspec::checks;

namespace {

struct Criterion {
  int number;
  const char* title;
  std::vector<CheckId> checks;
};

const std::vector<Criterion> kCriteria = {
    {1, "mother spectrum equals the union over theta", {CheckId::MotherEquality}},
    {2, "grid refinement stays within error bounds", {CheckId::GridRefinement}},
    {3, "theta periodicity and continuity", {CheckId::ThetaPeriod, CheckId::ThetaContinuity}},
    {4, "DC^p eigensystem", {CheckId::DcpEigensystem}},
    {5, "band count for H", {CheckId::BandCount}},
    {6, "total bandwidth power law and ordering", {CheckId::PowerLaw, CheckId::BandwidthOrdering}},
    {7, "continuity in alpha", {CheckId::AlphaContinuity}},
    {8, "Aubry-Andre duality", {CheckId::AubryAndre}},
    {9, "spectral mapping of UH", {CheckId::SpectralMapping}},
    {10, "kicked vs exact Harper error is cubic in kappa", {CheckId::KappaCubed}},
    {11, "zoom self-similarity", {CheckId::ZoomSelfSimilarity}},
    {12, "spectrum is discontinuous in irrational alpha", {CheckId::AlphaJump}},
};

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : kCriteria) {
    bool pass = true;
    std::string detail;
    for (CheckId id : c.checks) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const CheckReport r = run_check(id, default_config(id));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        pass = pass && r.pass;
        char buf[256];
        std::snprintf(buf, sizeof buf, " [%s %s measured=%.6g bound=%.6g %.1fs]", r.check_id.c_str(),
                      r.pass ? "pass" : "fail", r.measured, r.bound, secs);
        detail += buf;
        if (!r.pass) std::fprintf(stderr, "%s notes:\n%s\n", r.check_id.c_str(), r.notes.c_str());
      } catch (const hofspec::Error& e) {
        pass = false;
        detail += " [" + to_string(id) + " error: " + e.what() + "]";
      }
    }
    failed += !pass;
    std::printf("criterion %d: %s %s%s\n", c.number, pass ? "PASS" : "FAIL", c.title, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", kCriteria.size() - static_cast<std::size_t>(failed), kCriteria.size());
  return failed == 0 ? 0 : 1;
}
