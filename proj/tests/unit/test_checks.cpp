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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hofspec/checks.hpp"
#include "hofspec/errors.hpp"
#include "json.hpp"

using namespace hofspec;
using namespace hofspec::checks;

TEST_CASE("check ids parse in either spelling") {
  CHECK(parse_check_id("mother-equality") == CheckId::MotherEquality);
  CHECK(parse_check_id("MOTHER_EQUALITY") == CheckId::MotherEquality);
  CHECK(parse_check_id("Theta-Period") == CheckId::ThetaPeriod);
  for (CheckId id : all_checks()) CHECK(parse_check_id(to_string(id)) == id);
  try {
    parse_check_id("nope");
    FAIL("expected UnknownCheck");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCheck);
  }
}

TEST_CASE("configs round-trip through JSON") {
  for (CheckId id : all_checks()) {
    const CheckConfig c = default_config(id);
    const CheckConfig back = config_from_json(config_to_json(c), CheckConfig{});
    CHECK(config_to_json(back) == config_to_json(c));
  }
  CheckConfig base = default_config(CheckId::MotherEquality);
  const auto over = config_from_json(R"({"alphas": ["3/7"], "center": 0.25})", base);
  REQUIRE(over.alphas.size() == 1);
  CHECK(over.alphas[0].str() == "3/7");
  CHECK(over.kappas == base.kappas);
  CHECK(*over.center == 0.25);
  CHECK_THROWS_AS(config_from_json(R"({"bogus": 1})", base), Error);
  CHECK_THROWS_AS(config_from_json(R"({"alphas": ["4/6"]})", base), Error);
  CHECK_THROWS_AS(config_from_json("[1,2]", base), Error);
  CHECK_THROWS_AS(config_from_json("{", base), Error);
}

TEST_CASE("alpha_for_denominator prefers golden convergents") {
  CHECK(alpha_for_denominator(2).str() == "1/2");
  CHECK(alpha_for_denominator(13).str() == "8/13");
  CHECK(alpha_for_denominator(233).str() == "144/233");
  CHECK(alpha_for_denominator(7).str() == "1/7");
  CHECK(alpha_for_denominator(1).str() == "0/1");
}

TEST_CASE("mother equality at 8/13, kappa 0.5, N=40 passes within 2 grid bounds") {
  auto cfg = default_config(CheckId::MotherEquality);
  cfg.alphas = {RationalAlpha(8, 13)};
  cfg.kappas = {0.5};
  const auto r = run_check(CheckId::MotherEquality, cfg);
  CHECK(r.pass);
  CHECK(r.measured <= r.bound);
  CHECK(r.bound == doctest::Approx(0.0241661).epsilon(1e-5));
  CHECK(r.check_id == "MOTHER_EQUALITY");
}

TEST_CASE("band count at q=2 is one band") {
  auto cfg = default_config(CheckId::BandCount);
  cfg.q_values = {2, 3};
  cfg.grids = {60};
  const auto r = run_check(CheckId::BandCount, cfg);
  CHECK(r.pass);
  CHECK(r.notes.find("q=2 N=60 bands=1 expected=1") != std::string::npos);
}

TEST_CASE("fast default checks pass") {
  for (CheckId id : {CheckId::DcpEigensystem, CheckId::AubryAndre, CheckId::SpectralMapping,
                     CheckId::AlphaJump, CheckId::ThetaPeriod}) {
    const auto r = run_check(id, default_config(id));
    INFO(r.check_id << "\n" << r.notes);
    CHECK(r.pass);
    CHECK(r.measured <= r.bound);
  }
}

TEST_CASE("reports follow pass == measured <= bound") {
  auto cfg = default_config(CheckId::SpectralMapping);
  cfg.tolerance = -1.0;
  const auto r = run_check(CheckId::SpectralMapping, cfg);
  CHECK_FALSE(r.pass);
  CHECK(r.bound == -1.0);
  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["check_id"] == "SPECTRAL_MAPPING");
  CHECK(j["pass"] == false);
  CHECK(j["params"]["tolerance"] == -1.0);
}

TEST_CASE("theta continuity slope is configurable") {
  auto cfg = default_config(CheckId::ThetaContinuity);
  cfg.q_values = {8};
  cfg.trials = 5;
  cfg.kinds = {OperatorKind::UKH};
  cfg.lipschitz = 4.0;
  const auto r = run_check(CheckId::ThetaContinuity, cfg);
  CHECK(r.pass);
  CHECK(r.notes.find("needed slope=") != std::string::npos);
}

TEST_CASE("checks are deterministic for a fixed config") {
  auto cfg = default_config(CheckId::ThetaContinuity);
  cfg.q_values = {3};
  cfg.trials = 4;
  const auto a = run_check(CheckId::ThetaContinuity, cfg);
  const auto b = run_check(CheckId::ThetaContinuity, cfg);
  CHECK(a.measured == b.measured);
  CHECK(a.notes == b.notes);
}

TEST_CASE("bad configs are rejected") {
  auto cfg = default_config(CheckId::KappaCubed);
  cfg.grids = {0};
  CHECK_THROWS_AS(run_check(CheckId::KappaCubed, cfg), Error);
  cfg = default_config(CheckId::AlphaContinuity);
  cfg.alphas.erase(cfg.alphas.begin() + 1, cfg.alphas.end());
  CHECK_THROWS_AS(run_check(CheckId::AlphaContinuity, cfg), Error);
}
