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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hofspec/spectrum.hpp"

namespace hofspec::analysis {

using operators::OperatorKind;
using operators::RationalAlpha;
using spectra::BandList;
using spectra::SpectrumKind;
using spectra::SpectrumSet;

enum class CircleMetric { Chordal, Arc };

/// Exact Hausdorff distance between two finite point sets. Real-line sets use
/// |x - y|; circle sets use the chordal distance by default.
double hausdorff(const SpectrumSet& x, const SpectrumSet& y,
                 CircleMetric metric = CircleMetric::Chordal);

/// Sum of band lengths (radians on the circle).
double total_bandwidth(const BandList& b);

/// Bands of b intersecting the closed window [lo, hi] (eigenphase
/// coordinates on the circle, values on the line).
std::size_t count_bands_in_window(const BandList& b, double lo, double hi);

struct PowerLawFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  double residual = 0.0;  // RMS of log-log residuals
  int n_points = 0;
};

/// Ordinary least squares on (ln q, ln w).
PowerLawFit powerlaw_fit(const std::vector<std::pair<std::int64_t, double>>& samples);

/// 1/2, 2/3, 3/5, 5/8, ... (ratios of consecutive Fibonacci numbers).
std::vector<RationalAlpha> golden_convergents(int count);

/// Reduced p/q with 1 <= q <= q_max and 0 < p < q, ascending by value.
std::vector<RationalAlpha> farey_rationals(std::int64_t q_max);

struct ButterflyRow {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double value = 0.0;  // eigenphase, or real eigenvalue for kind H
};

struct ButterflyDataset {
  OperatorKind kind = OperatorKind::H;
  double kappa = 0.0;
  double lambda = 1.0;
  std::int64_t q_max = 1;
  int grid_n = 1;
  std::vector<ButterflyRow> rows;  // sorted by (q, p, value)
};

/// Mother spectrum for every Farey fraction up to q_max, on an n x n grid
/// with n = max(1, round(grid_n / q)).
ButterflyDataset butterfly(OperatorKind kind, double kappa, double lambda, std::int64_t q_max,
                           int grid_n, const spectra::SweepOptions& opts = {});

struct ZoomWindow {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> points;
};

/// Window 0 is (-pi, pi]; window k+1 is centred on `center` with width
/// width_k / factors[k].
std::vector<ZoomWindow> zoom_windows(const std::vector<double>& eigenphases, double center,
                                     const std::vector<double>& factors);

struct ZoomResult {
  double center = 0.0;
  SpectrumSet spectrum;
  BandList bands;  // index bands of the same sweep
  std::vector<ZoomWindow> windows;
  std::vector<std::size_t> band_counts;  // bands meeting each window
};

/// Mother unitary spectrum, its index bands and the nested zoom windows.
/// Without a center the phase median is used.
ZoomResult zoom(const operators::OperatorParams& params, const spectra::GridSpec& grid,
                const std::vector<double>& factors, std::optional<double> center = std::nullopt,
                const spectra::SweepOptions& opts = {});

/// Median of a sorted eigenphase list.
double phase_median(const std::vector<double>& eigenphases);

/// max over |n| <= n_max of |2 lambda sin(pi n (a1 + a2) + 2 pi theta) sin(pi n (a1 - a2))|,
/// a lower bound for ||H(a1) - H(a2)||.
double alpha_jump_witness(double lambda, double alpha1, double alpha2, double theta,
                          std::int64_t n_max);

}  // namespace hofspec::analysis
