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
#include <numbers>
#include <random>

#include "hofspec/analysis.hpp"
#include "hofspec/errors.hpp"
#include "hofspec/spectrum.hpp"

using namespace hofspec;
using namespace hofspec::spectra;
using operators::OperatorKind;
using operators::RationalAlpha;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

OperatorParams mother(OperatorKind k, double kappa, double lambda, RationalAlpha a) {
  return OperatorParams{k, kappa, lambda, a, std::nullopt};
}

SpectrumSet circle(std::vector<double> phases) {
  std::vector<Complex> pts;
  for (double p : phases) pts.push_back(std::polar(1.0, p));
  return SpectrumSet(SpectrumKind::UnitCircle, pts, OperatorParams{}, GridSpec{}, 0.0);
}

SpectrumSet line(std::vector<double> values) {
  std::vector<Complex> pts;
  for (double v : values) pts.emplace_back(v, 0.0);
  return SpectrumSet(SpectrumKind::RealLine, pts, OperatorParams{}, GridSpec{}, 0.0);
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec::square(0).validate(), Error);
  CHECK_NOTHROW(GridSpec::square(1).validate());
  CHECK_THROWS_AS((GridSpec{3, -1}.validate()), Error);
}

TEST_CASE("mother H at q=2 equals the closed-form cloud on the same grid") {
  // Eigenvalues are +-2 sqrt(cos^2 2 pi x + cos^2 2 pi theta) at x = j/(2N), theta = k/(2N).
  const int n = 25;
  const SpectrumSet s = mother_spectrum(mother(OperatorKind::H, 0, 1, RationalAlpha(1, 2)), GridSpec::square(n));
  std::vector<double> ref;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double cx = std::cos(kTwoPi * j / (2.0 * n)), ct = std::cos(kTwoPi * k / (2.0 * n));
      const double r = 2.0 * std::sqrt(cx * cx + ct * ct);
      ref.push_back(r);
      ref.push_back(-r);
    }
  CHECK(analysis::hausdorff(s, line(ref)) < 1e-12);
  CHECK(s.real_values().front() == doctest::Approx(-2.0 * std::sqrt(2.0)));
  CHECK(s.real_values().back() == doctest::Approx(2.0 * std::sqrt(2.0)));
  // The true spectrum is one band [-2 sqrt 2, 2 sqrt 2].
  const auto b = merge_bands(s, default_merge_gap(s));
  REQUIRE(b.bands.size() == 1);
  CHECK(b.bands[0].lo == doctest::Approx(-2.0 * std::sqrt(2.0)));
}

TEST_CASE("grid error bounds follow the half-step formulas") {
  const RationalAlpha a(8, 13);
  const double step = kTwoPi / (40.0 * 13.0);
  CHECK(grid_error_bound(mother(OperatorKind::UKH, 1, 1, a), GridSpec::square(40)) == doctest::Approx(2 * step));
  CHECK(2 * grid_error_bound(mother(OperatorKind::UKH, 1, 1, a), GridSpec::square(40)) ==
        doctest::Approx(0.0483322).epsilon(1e-5));
  CHECK(grid_error_bound(mother(OperatorKind::UORDKR, 0.5, 1, a), GridSpec::square(40)) ==
        doctest::Approx(0.5 * 2 * step));
  CHECK(grid_error_bound(mother(OperatorKind::H, 0, 2, a), GridSpec::square(40)) == doctest::Approx(3 * step));
  OperatorParams fixed{OperatorKind::UORDKR, 2.0, 1.5, a, 0.1};
  CHECK(grid_error_bound(fixed, GridSpec::square(40)) == doctest::Approx(2.0 * 2.5 * step));
  fixed.kind = OperatorKind::UKH;
  CHECK(grid_error_bound(fixed, GridSpec::square(40)) == doctest::Approx(2.0 * step));
  // Unequal grids use each step separately.
  CHECK(grid_error_bound(mother(OperatorKind::UH, 1, 2, a), GridSpec{20, 40}) ==
        doctest::Approx(2 * step + 2 * step));
}

TEST_CASE("property: a coarse estimate is within both bounds of a fine one") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  const RationalAlpha alphas[] = {RationalAlpha(1, 3), RationalAlpha(2, 5), RationalAlpha(5, 8)};
  for (int t = 0; t < 12; ++t) {
    const auto kind = static_cast<OperatorKind>(t % 4);
    const RationalAlpha a = alphas[t % 3];
    OperatorParams p{kind, 0.2 + 2 * u(rng), 0.2 + 2 * u(rng), a, std::nullopt};
    if (t % 2) p.theta = u(rng);
    const SpectrumSet coarse = compute_spectrum(p, GridSpec::square(4));
    const SpectrumSet fine = compute_spectrum(p, GridSpec::square(48));
    CHECK(analysis::hausdorff(coarse, fine) <= coarse.error_bound() + fine.error_bound());
  }
}

TEST_CASE("sweeps are identical for any thread count") {
  const auto p = mother(OperatorKind::UKH, 1, 1, RationalAlpha(8, 13));
  SweepOptions one{1, {}};
  SweepOptions four{4, {}};
  const auto a = mother_spectrum(p, GridSpec::square(12), one);
  const auto b = mother_spectrum(p, GridSpec::square(12), four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.points()[i] == b.points()[i]);
}

TEST_CASE("sweep order and sizes") {
  const auto p = mother(OperatorKind::H, 0, 1, RationalAlpha(2, 5));
  const auto s = sweep(p, GridSpec{3, 2});
  REQUIRE(s.size() == 6);
  CHECK(s[1].at.x == 0.0);
  CHECK(s[1].at.theta == doctest::Approx(1.0 / 10.0));
  CHECK(s[2].at.x == doctest::Approx(1.0 / 15.0));
  for (const auto& g : s) CHECK(g.values.size() == 5);
  OperatorParams fixed = p;
  fixed.theta = 0.3;
  CHECK(sweep(fixed, GridSpec{3, 7}).size() == 3);
  CHECK_THROWS_AS(spectrum_fixed_theta(p, GridSpec::square(2)), Error);
  CHECK_THROWS_AS(mother_spectrum(fixed, GridSpec::square(2)), Error);
}

TEST_CASE("SpectrumSet sorting, dedup and validation") {
  const auto s = line({3.0, 1.0, 1.0 + 1e-13, 2.0});
  REQUIRE(s.size() == 3);
  CHECK(s.real_values() == std::vector<double>{1.0, 2.0, 3.0});
  const auto c = circle({kPi, -kPi + 1e-14, 0.5});
  CHECK(c.size() == 2);
  CHECK_THROWS_AS(SpectrumSet(SpectrumKind::UnitCircle, {Complex(1.1, 0)}, OperatorParams{}, GridSpec{}, 0),
                  Error);
  CHECK_THROWS_AS(c.real_values(), Error);
  const auto neg = line({1.0, 2.0}).scaled(-2.0);
  CHECK(neg.real_values() == std::vector<double>{-4.0, -2.0});
  const auto ph = eigenphases(circle({0.1, -0.2}));
  REQUIRE(ph.size() == 2);
  CHECK(ph[0] == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(ph[1] == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("merge_bands on the line") {
  const auto s = line({0.0, 0.1, 0.2, 1.0, 1.05, 3.0});
  const auto b = merge_bands(s, 0.15);
  REQUIRE(b.bands.size() == 3);
  CHECK(b.bands[0].hi == doctest::Approx(0.2));
  CHECK(b.bands[1].lo == doctest::Approx(1.0));
  CHECK(b.bands[2].length() == 0.0);
  CHECK(analysis::total_bandwidth(b) == doctest::Approx(0.25));
  CHECK(merge_bands(s, 10.0).bands.size() == 1);
}

TEST_CASE("merge_bands on the circle joins across the seam") {
  const auto s = circle({3.0, 3.1, -3.1, -3.0, 0.0, 0.05});
  const auto b = merge_bands(s, 0.3);
  REQUIRE(b.bands.size() == 2);
  // The wrapping arc starts near 3.0 and runs past pi.
  bool found = false;
  for (const auto& band : b.bands)
    if (band.lo == doctest::Approx(3.0)) {
      found = true;
      CHECK(band.hi == doctest::Approx(kTwoPi - 3.0));
    }
  CHECK(found);
  std::vector<double> dense;
  for (int k = 0; k < 100; ++k) dense.push_back(-kPi + kTwoPi * k / 100.0 + 0.001);
  const auto full = merge_bands(circle(dense), 0.1);
  REQUIRE(full.bands.size() == 1);
  CHECK(full.bands[0].length() == doctest::Approx(kTwoPi));
}

TEST_CASE("property: re-merging a band list is idempotent") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> ph;
    for (int k = 0; k < 40; ++k) ph.push_back(u(rng));
    const double gap = 0.02 + 0.2 * (t % 5);
    const auto circ = merge_bands(circle(ph), gap);
    const auto again = merge_bands(circ, gap);
    REQUIRE(again.bands.size() == circ.bands.size());
    for (std::size_t i = 0; i < circ.bands.size(); ++i) {
      CHECK(again.bands[i].lo == doctest::Approx(circ.bands[i].lo));
      CHECK(again.bands[i].hi == doctest::Approx(circ.bands[i].hi));
    }
    std::vector<double> vals(ph.begin(), ph.end());
    const auto lin = merge_bands(line(vals), gap);
    CHECK(merge_bands(lin, gap).bands.size() == lin.bands.size());
  }
}

TEST_CASE("index bands of mother H cover the union cloud") {
  const auto p = mother(OperatorKind::H, 0, 1, RationalAlpha(1, 3));
  const auto samples = sweep(p, GridSpec::square(40));
  const auto b = index_bands(samples, SpectrumKind::RealLine);
  REQUIRE(b.bands.size() == 3);
  const SpectrumSet s = mother_spectrum(p, GridSpec::square(40));
  for (double v : s.real_values()) {
    bool inside = false;
    for (const auto& band : b.bands) inside = inside || (v >= band.lo - 1e-12 && v <= band.hi + 1e-12);
    CHECK(inside);
  }
  // Same count as gap merging on this easy case.
  CHECK(merge_bands(s, default_merge_gap(s)).bands.size() == 3);
}

TEST_CASE("index bands on the circle for a unitary mother spectrum") {
  const auto p = mother(OperatorKind::UKH, 1, 1, RationalAlpha(2, 5));
  const auto b = index_bands(p, GridSpec::square(20));
  CHECK(b.kind == SpectrumKind::UnitCircle);
  CHECK(b.bands.size() >= 1);
  CHECK(b.bands.size() <= 5);
  for (const auto& band : b.bands) {
    CHECK(band.lo > -kPi - 1e-12);
    CHECK(band.lo <= kPi);
    CHECK(band.hi >= band.lo);
  }
}

TEST_CASE("parallel_for rethrows the lowest-index failure") {
  std::vector<int> hits(50, 0);
  CHECK_THROWS_WITH(parallel_for(50, 3,
                                 [&](std::size_t i) {
                                   hits[i] = 1;
                                   if (i == 7 || i == 30) throw std::runtime_error("boom " + std::to_string(i));
                                 }),
                    "boom 7");
  parallel_for(0, 2, [](std::size_t) { FAIL("no work expected"); });
}
