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

// Grid sweeps over the phase cell [0, 1/q)^2, certified Hausdorff error
// bounds for the resulting point clouds, and conversion of clouds to bands.

#include <functional>
#include <vector>

#include "hofspec/linalg.hpp"
#include "hofspec/operators.hpp"

namespace hofspec::spectra {

using linalg::Complex;
using operators::OperatorKind;
using operators::OperatorParams;

/// Uniform grid anchored at 0: x_j = j / (n_x q), theta_k = k / (n_theta q).
struct GridSpec {
  int n_x = 1;
  int n_theta = 1;

  static GridSpec square(int n) { return GridSpec{n, n}; }
  void validate() const;
  bool operator==(const GridSpec&) const = default;
};

enum class SpectrumKind { RealLine, UnitCircle };

const char* to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_of(OperatorKind kind);

struct SweepOptions {
  /// 0 uses std::thread::hardware_concurrency().
  int threads = 0;
  linalg::Tolerances tol{};
};

class SpectrumSet {
 public:
  SpectrumSet() = default;
  /// Sorts (ascending value, or by principal argument on the circle) and
  /// merges points closer than 1e-12.
  SpectrumSet(SpectrumKind kind, std::vector<Complex> points, OperatorParams params,
              GridSpec grid, double error_bound);

  SpectrumKind kind() const { return kind_; }
  const std::vector<Complex>& points() const { return points_; }
  const OperatorParams& params() const { return params_; }
  const GridSpec& grid() const { return grid_; }
  double error_bound() const { return error_bound_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// Real-line values; throws WrongKind on the circle.
  std::vector<double> real_values() const;

  /// Multiplies every real-line point by s (re-sorting when s < 0).
  SpectrumSet scaled(double s) const;

  static constexpr double kDedupTolerance = 1e-12;

 private:
  SpectrumKind kind_ = SpectrumKind::RealLine;
  std::vector<Complex> points_;
  OperatorParams params_{};
  GridSpec grid_{};
  double error_bound_ = 0.0;
};

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Disjoint closed intervals, or arcs in eigenphase coordinates. An arc has
/// lo in (-pi, pi] and hi = lo + length, so hi may exceed pi when it wraps.
struct BandList {
  SpectrumKind kind = SpectrumKind::RealLine;
  std::vector<Band> bands;
  double merge_gap = 0.0;
};

/// Eigenvalues at one grid point, sorted like a SpectrumSet but with
/// multiplicity kept.
struct GridSample {
  operators::PhasePoint at;
  std::vector<Complex> values;
};

/// Raw per-grid-point eigenvalues in row-major (x outer, theta inner) order.
std::vector<GridSample> sweep(const OperatorParams& params, const GridSpec& grid,
                              const SweepOptions& opts = {});

/// Eigenvalues of the q x q image of params at one phase point.
std::vector<Complex> eigenvalues_at(const OperatorParams& params, operators::PhasePoint at,
                                    const linalg::Tolerances& tol = {});

SpectrumSet spectrum_fixed_theta(const OperatorParams& params, const GridSpec& grid,
                                 const SweepOptions& opts = {});
SpectrumSet mother_spectrum(const OperatorParams& params, const GridSpec& grid,
                            const SweepOptions& opts = {});
/// Dispatches on params.is_mother().
SpectrumSet compute_spectrum(const OperatorParams& params, const GridSpec& grid,
                             const SweepOptions& opts = {});

/// Certified Hausdorff distance between the grid estimate and the true
/// spectrum. The grid is periodic mod 1/q in both phases, so every phase lies
/// within half a grid step of a sample.
double grid_error_bound(const OperatorParams& params, const GridSpec& grid);

/// Principal arguments in (-pi, pi], ascending.
std::vector<double> eigenphases(const SpectrumSet& s);

/// Splits the sorted cloud wherever consecutive points (circularly on the
/// unit circle) are more than merge_gap apart.
BandList merge_bands(const SpectrumSet& s, double merge_gap);
/// Re-merges bands whose separation is at most merge_gap.
BandList merge_bands(const BandList& b, double merge_gap);
/// merge_gap = 4 * error_bound.
double default_merge_gap(const SpectrumSet& s);

/// Band k is the range of the k-th ordered eigenvalue over the grid; on the
/// circle the ordering starts at the widest empty arc of the whole cloud.
/// Overlapping bands are joined.
BandList index_bands(const std::vector<GridSample>& samples, SpectrumKind kind);
BandList index_bands(const OperatorParams& params, const GridSpec& grid,
                     const SweepOptions& opts = {});

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first failure
/// by index is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace hofspec::spectra
