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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "hofspec/errors.hpp"
#include "hofspec/io.hpp"

using namespace hofspec;
using namespace hofspec::io;
namespace fs = std::filesystem;
using operators::OperatorKind;
using operators::RationalAlpha;
using spectra::GridSpec;
using spectra::OperatorParams;
using spectra::SpectrumKind;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hofspec_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t file_count(const fs::path& dir) {
  std::size_t n = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++n;
  return n;
}

const OperatorParams kUkh{OperatorKind::UKH, 1.0, 1.0, RationalAlpha(8, 13), std::nullopt};

}  // namespace

TEST_CASE("format_real examples") {
  CHECK(format_real(1.0) == "1.00000000000000000");
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(-2.5) == "-2.50000000000000000");
  CHECK(format_real(0.001) == "0.00100000000000000002");
  CHECK(format_real(1e-5) == "1.00000000000000008e-05");
  CHECK(format_real(123.0) == "123.000000000000000");
  CHECK_THROWS_AS(format_real(NAN), Error);
}

TEST_CASE("property: format_real round-trips every double") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::uint64_t> bits;
  int tested = 0;
  while (tested < 20000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    ++tested;
    CHECK(parse_real(format_real(v)) == v);
  }
  for (double v : {std::numbers::pi, 1e-4, 9.99999999999999e15, 1e16, 5e-324, 1.7976931348623157e308})
    CHECK(parse_real(format_real(v)) == v);
  CHECK_THROWS_AS(parse_real("1.0x"), Error);
  CHECK_THROWS_AS(parse_real(""), Error);
}

TEST_CASE("single point at 1 writes one row") {
  const spectra::SpectrumSet s(SpectrumKind::UnitCircle, {linalg::Complex(1, 0)}, kUkh, GridSpec::square(1), 0.5);
  const std::string csv = spectrum_csv(s);
  CHECK(csv.find("\nre,im,eigenphase\n1.00000000000000000,0,0\n") != std::string::npos);
  CHECK(csv.find("# error_bound=0.500000000000000000\n") != std::string::npos);
  CHECK(csv.find("# theta=mother\n") != std::string::npos);
}

TEST_CASE("spectrum CSV round-trips exactly") {
  for (auto kind : {OperatorKind::H, OperatorKind::UKH, OperatorKind::UORDKR}) {
    OperatorParams p = kUkh;
    p.kind = kind;
    p.kappa = 0.7;
    if (kind == OperatorKind::UORDKR) p.theta = 0.1;
    const auto s = spectra::compute_spectrum(p, GridSpec{5, 3});
    const std::string text = spectrum_csv(s);
    const auto back = parse_spectrum_csv(text);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(back.points()[i] == s.points()[i]);
    CHECK(back.error_bound() == s.error_bound());
    CHECK(back.error_bound() == spectra::grid_error_bound(p, GridSpec{5, 3}));
    CHECK(back.grid() == s.grid());
    CHECK(back.params().theta == s.params().normalized().theta);
    CHECK(spectrum_csv(back) == text);
  }
}

TEST_CASE("malformed CSV is rejected") {
  const auto s = spectra::compute_spectrum(kUkh, GridSpec::square(2));
  std::string text = spectrum_csv(s);
  CHECK_THROWS_AS(parse_spectrum_csv(text + "1,2\n"), Error);
  CHECK_THROWS_AS(parse_spectrum_csv(text + "abc,0,0\n"), Error);
  std::string no_kind = text;
  no_kind.erase(no_kind.find("# kind="), no_kind.find('\n', no_kind.find("# kind=")) - no_kind.find("# kind=") + 1);
  CHECK_THROWS_AS(parse_spectrum_csv(no_kind), Error);
  std::string wrong_count = text;
  wrong_count.replace(wrong_count.find("# points="), 9, "# points=9");
  CHECK_THROWS_AS(parse_spectrum_csv(wrong_count), Error);
}

TEST_CASE("atomic writes leave no partial files") {
  TempDir dir;
  write_atomic(dir.path / "a.txt", "hello");
  CHECK(slurp(dir.path / "a.txt") == "hello");
  write_atomic(dir.path / "a.txt", "again");
  CHECK(slurp(dir.path / "a.txt") == "again");
  CHECK(file_count(dir.path) == 1);
  try {
    write_atomic(dir.path / "missing" / "b.txt", "x");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
  CHECK_FALSE(fs::exists(dir.path / "missing"));
  try {
    read_spectrum_csv(dir.path / "nope.csv");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("ring SVG") {
  std::vector<linalg::Complex> full;
  for (int k = 0; k < 20000; ++k) full.push_back(std::polar(1.0, -std::numbers::pi + 2 * std::numbers::pi * (k + 0.5) / 20000));
  const spectra::SpectrumSet ring(SpectrumKind::UnitCircle, full, kUkh, GridSpec::square(1), 0);
  const std::string one = rings_svg({ring});
  CHECK(one.find("<circle") != std::string::npos);
  CHECK(one.find("<path") == std::string::npos);
  CHECK(one.find(">Re<") != std::string::npos);
  CHECK(one.find(">Im<") != std::string::npos);

  std::vector<spectra::SpectrumSet> six;
  for (double k : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    OperatorParams p = kUkh;
    p.kappa = k;
    six.push_back(spectra::compute_spectrum(p, GridSpec::square(4)));
  }
  const std::string svg = rings_svg(six);
  CHECK(svg == rings_svg(six));
  std::size_t groups = 0;
  for (auto pos = svg.find("<g><title>kind="); pos != std::string::npos; pos = svg.find("<g><title>kind=", pos + 1))
    ++groups;
  CHECK(groups == 6);
  CHECK(svg.find("kappa=8.00000000000000000") != std::string::npos);

  CHECK_THROWS_AS(rings_svg({}), Error);
  const auto h = spectra::compute_spectrum(OperatorParams{OperatorKind::H, 0, 1, RationalAlpha(8, 13), std::nullopt},
                                           GridSpec::square(2));
  try {
    rings_svg({h});
    FAIL("expected KindMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KindMismatch);
  }
  OperatorParams other = kUkh;
  other.alpha = RationalAlpha(5, 8);
  CHECK_THROWS_AS(rings_svg({six[0], spectra::compute_spectrum(other, GridSpec::square(2))}), Error);

  TempDir dir;
  CHECK_THROWS_AS(write_rings_svg({}, dir.path / "r.svg"), Error);
  CHECK_FALSE(fs::exists(dir.path / "r.svg"));
}

TEST_CASE("cache keys change with every field") {
  const GridSpec g = GridSpec::square(10);
  const linalg::Tolerances tol;
  const std::string base = cache_key(kUkh, g, tol);
  CHECK(base.size() == 16);
  CHECK(cache_key(kUkh, g, tol) == base);
  std::vector<std::string> keys{base};
  auto vary = [&](auto&& edit) {
    OperatorParams p = kUkh;
    GridSpec gg = g;
    linalg::Tolerances t = tol;
    edit(p, gg, t);
    keys.push_back(cache_key(p, gg, t));
  };
  vary([](auto& p, auto&, auto&) { p.kind = OperatorKind::UORDKR; });
  vary([](auto& p, auto&, auto&) { p.kappa = std::nextafter(1.0, 2.0); });
  vary([](auto& p, auto&, auto&) { p.lambda = 0.5; });
  vary([](auto& p, auto&, auto&) { p.alpha = RationalAlpha(5, 13); });
  vary([](auto& p, auto&, auto&) { p.alpha = RationalAlpha(8, 21); });
  vary([](auto& p, auto&, auto&) { p.theta = 0.0; });
  vary([](auto& p, auto&, auto&) { p.theta = 0.25; });
  vary([](auto&, auto& gg, auto&) { gg.n_x = 11; });
  vary([](auto&, auto& gg, auto&) { gg.n_theta = 11; });
  vary([](auto&, auto&, auto& t) { t.hermitian = 1e-11; });
  vary([](auto&, auto&, auto& t) { t.unitary = 1e-9; });
  vary([](auto&, auto&, auto& t) { t.eig_residual = 1e-9; });
  std::sort(keys.begin(), keys.end());
  CHECK(std::unique(keys.begin(), keys.end()) == keys.end());
  CHECK(cache_key_text(kUkh, g, tol).find(kVersion) != std::string::npos);
}

TEST_CASE("cache hits are byte-identical to cold computation") {
  TempDir dir;
  bool hit = true;
  const auto cold = cached_spectrum(dir.path, kUkh, GridSpec::square(6), {}, &hit);
  CHECK_FALSE(hit);
  const auto warm = cached_spectrum(dir.path, kUkh, GridSpec::square(6), {}, &hit);
  CHECK(hit);
  CHECK(spectrum_csv(warm) == spectrum_csv(cold));
  CHECK(spectrum_csv(warm) == spectrum_csv(spectra::compute_spectrum(kUkh, GridSpec::square(6))));
  cached_spectrum(dir.path, kUkh, GridSpec::square(5));
  std::ofstream(dir.path / "keep.txt") << "x";
  CHECK(cache_clear(dir.path) == 2);
  CHECK(fs::exists(dir.path / "keep.txt"));
  CHECK(cache_clear(dir.path / "absent") == 0);
}

TEST_CASE("butterfly CSV layout") {
  const auto ds = analysis::butterfly(OperatorKind::UKH, 1, 1, 3, 4);
  const std::string csv = butterfly_csv(ds);
  CHECK(csv.find("# q_max=3\n") != std::string::npos);
  CHECK(csv.find("p,q,eigenphase\n1,2,") != std::string::npos);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == ds.rows.size() + 7);
}
