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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hofspec/hofspec.h"

namespace fs = std::filesystem;

namespace {

hofspec_params ukh_mother() {
  hofspec_params p{};
  p.kind = HOFSPEC_KIND_UKH;
  p.kappa = 1.0;
  p.lambda = 1.0;
  p.p = 8;
  p.q = 13;
  p.theta_mother = 1;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(hofspec_version()) == "0.1.0");
  CHECK(std::string(hofspec_status_string(HOFSPEC_OK)) == "ok");
  CHECK(hofspec_status_string(static_cast<hofspec_status>(99)) != nullptr);
}

TEST_CASE("unreduced alpha reports NOT_COPRIME with a message") {
  int64_t p = 0, q = 0;
  CHECK(hofspec_parse_alpha("4/6", &p, &q) == HOFSPEC_NOT_COPRIME);
  CHECK(std::string(hofspec_last_error()).find("4/6") != std::string::npos);
  CHECK(hofspec_parse_alpha("8/13", &p, &q) == HOFSPEC_OK);
  CHECK(p == 8);
  CHECK(q == 13);
  CHECK(hofspec_parse_alpha("x", &p, &q) == HOFSPEC_INVALID_ARGUMENT);

  hofspec_params bad = ukh_mother();
  bad.p = 4;
  bad.q = 6;
  hofspec_grid g{4, 4};
  hofspec_spectrum* s = nullptr;
  CHECK(hofspec_spectrum_compute(&bad, &g, nullptr, &s) == HOFSPEC_NOT_COPRIME);
  CHECK(s == nullptr);
}

TEST_CASE("NULL and invalid arguments are rejected") {
  hofspec_spectrum* s = nullptr;
  hofspec_grid g{4, 4};
  const hofspec_params p = ukh_mother();
  CHECK(hofspec_spectrum_compute(nullptr, &g, nullptr, &s) == HOFSPEC_INVALID_ARGUMENT);
  CHECK(hofspec_spectrum_compute(&p, nullptr, nullptr, &s) == HOFSPEC_INVALID_ARGUMENT);
  CHECK(hofspec_spectrum_compute(&p, &g, nullptr, nullptr) == HOFSPEC_INVALID_ARGUMENT);
  hofspec_grid zero{0, 4};
  CHECK(hofspec_spectrum_compute(&p, &zero, nullptr, &s) == HOFSPEC_INVALID_ARGUMENT);
  hofspec_options o;
  hofspec_options_default(&o);
  o.tol_unitary = -1;
  CHECK(hofspec_spectrum_compute(&p, &g, &o, &s) == HOFSPEC_INVALID_ARGUMENT);
  hofspec_params k = p;
  k.kind = 9;
  CHECK(hofspec_spectrum_compute(&k, &g, nullptr, &s) == HOFSPEC_INVALID_ARGUMENT);
  CHECK(hofspec_spectrum_size(nullptr) == 0);
  hofspec_spectrum_free(nullptr);
  hofspec_bands_free(nullptr);
  hofspec_report_free(nullptr);
  hofspec_zoom_free(nullptr);
  char buf[4];
  CHECK(hofspec_format_real(1.0, buf, sizeof buf) == HOFSPEC_INVALID_ARGUMENT);
}

TEST_CASE("compute, inspect, write and read back a spectrum") {
  const hofspec_params p = ukh_mother();
  hofspec_grid g{6, 6};
  hofspec_spectrum* s = nullptr;
  REQUIRE(hofspec_spectrum_compute(&p, &g, nullptr, &s) == HOFSPEC_OK);
  const size_t n = hofspec_spectrum_size(s);
  CHECK(n > 13);
  CHECK(n <= 13 * 36);
  CHECK(hofspec_spectrum_is_circle(s) == 1);
  double bound = 0;
  REQUIRE(hofspec_grid_error_bound(&p, &g, &bound) == HOFSPEC_OK);
  CHECK(hofspec_spectrum_error_bound(s) == bound);

  std::vector<double> re(n), im(n), ph(n);
  CHECK(hofspec_spectrum_points(s, re.data(), im.data(), n - 1) == HOFSPEC_INVALID_ARGUMENT);
  REQUIRE(hofspec_spectrum_points(s, re.data(), im.data(), n) == HOFSPEC_OK);
  REQUIRE(hofspec_spectrum_eigenphases(s, ph.data(), n) == HOFSPEC_OK);
  for (size_t i = 0; i < n; ++i) CHECK(std::hypot(re[i], im[i]) == doctest::Approx(1.0).epsilon(1e-10));
  for (size_t i = 1; i < n; ++i) CHECK(ph[i - 1] <= ph[i]);

  const fs::path dir = fs::temp_directory_path() / "hofspec_capi_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string path = (dir / "s.csv").string();
  REQUIRE(hofspec_spectrum_write_csv(s, path.c_str()) == HOFSPEC_OK);
  hofspec_spectrum* back = nullptr;
  REQUIRE(hofspec_spectrum_read_csv(path.c_str(), &back) == HOFSPEC_OK);
  double d = -1;
  REQUIRE(hofspec_hausdorff(s, back, 0, &d) == HOFSPEC_OK);
  CHECK(d == 0.0);
  hofspec_params got{};
  REQUIRE(hofspec_spectrum_params(back, &got) == HOFSPEC_OK);
  CHECK(got.p == 8);
  CHECK(got.theta_mother == 1);

  CHECK(hofspec_spectrum_write_csv(s, (dir / "no" / "x.csv").string().c_str()) == HOFSPEC_IO);
  CHECK_FALSE(fs::exists(dir / "no"));
  CHECK(hofspec_spectrum_read_csv((dir / "missing.csv").string().c_str(), &back) == HOFSPEC_IO);

  const hofspec_spectrum* rings[] = {s, back};
  REQUIRE(hofspec_rings_write_svg(rings, 2, (dir / "r.svg").string().c_str()) == HOFSPEC_OK);
  CHECK(slurp(dir / "r.svg").find("<svg") != std::string::npos);

  hofspec_params h{};
  h.kind = HOFSPEC_KIND_H;
  h.lambda = 1;
  h.p = 8;
  h.q = 13;
  h.theta = 0.25;
  hofspec_spectrum* line = nullptr;
  REQUIRE(hofspec_spectrum_compute(&h, &g, nullptr, &line) == HOFSPEC_OK);
  CHECK(hofspec_spectrum_is_circle(line) == 0);
  CHECK(hofspec_hausdorff(s, line, 0, &d) == HOFSPEC_KIND_MISMATCH);
  CHECK(hofspec_spectrum_eigenphases(line, ph.data(), n) == HOFSPEC_KIND_MISMATCH);

  hofspec_bands* b = nullptr;
  REQUIRE(hofspec_bands_merge(line, -1, &b) == HOFSPEC_OK);
  CHECK(hofspec_bands_merge_gap(b) == std::max(4 * hofspec_spectrum_error_bound(line), 1e-9));
  CHECK(hofspec_bands_count(b) >= 1);
  double lo = 0, hi = 0;
  REQUIRE(hofspec_bands_get(b, 0, &lo, &hi) == HOFSPEC_OK);
  CHECK(lo <= hi);
  CHECK(hofspec_bands_get(b, 999, &lo, &hi) == HOFSPEC_INVALID_ARGUMENT);
  hofspec_bands_free(b);

  hofspec_spectrum_free(line);
  hofspec_spectrum_free(back);
  hofspec_spectrum_free(s);
  fs::remove_all(dir);
}

TEST_CASE("cached compute matches a cold one") {
  const fs::path dir = fs::temp_directory_path() / "hofspec_capi_cache";
  fs::remove_all(dir);
  const hofspec_params p = ukh_mother();
  hofspec_grid g{5, 5};
  hofspec_spectrum *a = nullptr, *b = nullptr;
  int hit = -1;
  REQUIRE(hofspec_spectrum_compute_cached(&p, &g, nullptr, dir.string().c_str(), &hit, &a) == HOFSPEC_OK);
  CHECK(hit == 0);
  REQUIRE(hofspec_spectrum_compute_cached(&p, &g, nullptr, dir.string().c_str(), &hit, &b) == HOFSPEC_OK);
  CHECK(hit == 1);
  double d = -1;
  REQUIRE(hofspec_hausdorff(a, b, 1, &d) == HOFSPEC_OK);
  CHECK(d == 0.0);
  char key[32];
  REQUIRE(hofspec_cache_key(&p, &g, nullptr, key, sizeof key) == HOFSPEC_OK);
  CHECK(fs::exists(dir / (std::string(key) + ".csv")));
  size_t removed = 0;
  REQUIRE(hofspec_cache_clear(dir.string().c_str(), &removed) == HOFSPEC_OK);
  CHECK(removed == 1);
  hofspec_spectrum_free(a);
  hofspec_spectrum_free(b);
  fs::remove_all(dir);
}

TEST_CASE("analysis entry points") {
  int64_t p[5], q[5];
  REQUIRE(hofspec_golden_convergents(5, p, q) == HOFSPEC_OK);
  CHECK(p[4] == 8);
  CHECK(q[4] == 13);
  size_t n = 0;
  REQUIRE(hofspec_farey(5, p, q, 5, &n) == HOFSPEC_OK);
  CHECK(n == 9);
  const int64_t qs[] = {10, 100};
  const double ws[] = {1.0, 0.01};
  double a = 0, e = 0, r = 0;
  REQUIRE(hofspec_powerlaw_fit(qs, ws, 2, &a, &e, &r) == HOFSPEC_OK);
  CHECK(e == doctest::Approx(-2.0));
  CHECK(a == doctest::Approx(100.0));
  CHECK(hofspec_powerlaw_fit(qs, ws, 1, &a, &e, &r) == HOFSPEC_INVALID_ARGUMENT);
  double w = 0;
  REQUIRE(hofspec_alpha_jump_witness(1, 0.5, 1.0 / 3, 0, 10000, &w) == HOFSPEC_OK);
  CHECK(w >= std::sqrt(3.0) / 2 - 1e-9);
  CHECK(hofspec_alpha_jump_witness(1, 0.5, 0.5, 0, 10, &w) == HOFSPEC_INVALID_ARGUMENT);
  const double ph[] = {-1, 0.5, 2};
  double med = 9;
  REQUIRE(hofspec_phase_median(ph, 3, &med) == HOFSPEC_OK);
  CHECK(med == 0.5);
  CHECK(hofspec_phase_median(ph, 0, &med) == HOFSPEC_EMPTY);
}

TEST_CASE("zoom handle") {
  hofspec_params p = ukh_mother();
  p.p = 5;
  p.q = 8;
  hofspec_grid g{6, 6};
  const double factors[] = {4.0, 2.0};
  hofspec_zoom* z = nullptr;
  REQUIRE(hofspec_zoom_run(&p, &g, factors, 2, nullptr, nullptr, &z) == HOFSPEC_OK);
  CHECK(hofspec_zoom_window_count(z) == 3);
  double lo = 0, hi = 0;
  size_t pts = 0, bands = 0;
  REQUIRE(hofspec_zoom_window(z, 1, &lo, &hi, &pts, &bands) == HOFSPEC_OK);
  CHECK(hi - lo == doctest::Approx(2 * M_PI / 4));
  std::vector<double> buf(pts);
  CHECK(hofspec_zoom_window_points(z, 1, buf.data(), pts) == HOFSPEC_OK);
  for (double v : buf) CHECK(std::abs(std::remainder(v - hofspec_zoom_center(z), 2 * M_PI)) <= (hi - lo) / 2 + 1e-12);
  hofspec_zoom_free(z);
  const double far = 4.0;
  CHECK(hofspec_zoom_run(&p, &g, factors, 2, &far, nullptr, &z) == HOFSPEC_INVALID_ARGUMENT);
}

TEST_CASE("checks through the C API") {
  CHECK(hofspec_check_count() == 15);
  CHECK(std::string(hofspec_check_name(0)) == "THETA_PERIOD");
  CHECK(hofspec_check_name(99) == nullptr);
  char* cfg = nullptr;
  REQUIRE(hofspec_check_default_config("mother-equality", &cfg) == HOFSPEC_OK);
  CHECK(std::string(cfg).find("\"kappas\"") != std::string::npos);
  hofspec_string_free(cfg);
  hofspec_report* r = nullptr;
  CHECK(hofspec_check_run("no-such-check", nullptr, nullptr, &r) == HOFSPEC_UNKNOWN_CHECK);
  CHECK(hofspec_check_run("spectral-mapping", "{\"bogus\":1}", nullptr, &r) == HOFSPEC_INVALID_ARGUMENT);
  REQUIRE(hofspec_check_run("mother-equality", R"({"alphas":["8/13"],"kappas":[0.5]})", nullptr, &r) ==
          HOFSPEC_OK);
  CHECK(hofspec_report_pass(r) == 1);
  CHECK(hofspec_report_measured(r) <= hofspec_report_bound(r));
  CHECK(std::string(hofspec_report_check_id(r)) == "MOTHER_EQUALITY");
  CHECK(std::string(hofspec_report_json(r)).find("\"pass\": true") != std::string::npos);
  hofspec_report_free(r);
}
