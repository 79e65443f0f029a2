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

#include "hofspec/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "hofspec/errors.hpp"

namespace hofspec::spectra {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pi(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

std::vector<operators::PhasePoint> grid_points(const OperatorParams& params, const GridSpec& grid) {
  const double q = static_cast<double>(params.alpha.q());
  std::vector<operators::PhasePoint> pts;
  if (params.is_mother()) {
    pts.reserve(static_cast<std::size_t>(grid.n_x) * static_cast<std::size_t>(grid.n_theta));
    for (int j = 0; j < grid.n_x; ++j)
      for (int k = 0; k < grid.n_theta; ++k)
        pts.push_back({j / (grid.n_x * q), k / (grid.n_theta * q)});
  } else {
    pts.reserve(static_cast<std::size_t>(grid.n_x));
    for (int j = 0; j < grid.n_x; ++j) pts.push_back({j / (grid.n_x * q), *params.theta});
  }
  return pts;
}

void sort_points(SpectrumKind kind, std::vector<Complex>& v) {
  if (kind == SpectrumKind::UnitCircle) {
    std::sort(v.begin(), v.end(), linalg::circle_less);
  } else {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
  }
}

/// Joins sorted-by-lo intervals that overlap or sit within gap of each other.
std::vector<Band> join_sorted(std::vector<Band> in, double gap) {
  std::vector<Band> out;
  for (const Band& b : in) {
    if (!out.empty() && b.lo - out.back().hi <= gap)
      out.back().hi = std::max(out.back().hi, b.hi);
    else
      out.push_back(b);
  }
  return out;
}

/// Arc version of join_sorted, including the seam between last and first.
std::vector<Band> join_arcs(std::vector<Band> arcs, double gap) {
  std::sort(arcs.begin(), arcs.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
  std::vector<Band> out = join_sorted(std::move(arcs), gap);
  while (out.size() > 1) {
    Band& first = out.front();
    const Band& last = out.back();
    if (first.lo + kTwoPi - last.hi > gap) break;
    // The last arc runs over the seam into the first one.
    Band merged{last.lo, std::max(last.hi, first.hi + kTwoPi)};
    out.pop_back();
    out.front() = merged;
    std::sort(out.begin(), out.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
    out = join_sorted(std::move(out), gap);
  }
  for (const Band& b : out)
    if (b.length() >= kTwoPi) return {Band{-kPi, kPi}};
  if (out.size() == 1 && out.front().length() >= kTwoPi - gap) return {Band{-kPi, kPi}};
  return out;
}

}  // namespace

void GridSpec::validate() const {
  if (n_x < 1 || n_theta < 1)
    throw Error(ErrorCode::InvalidArgument, "grid sizes must be >= 1");
}

const char* to_string(SpectrumKind kind) {
  return kind == SpectrumKind::UnitCircle ? "unit_circle" : "real_line";
}

SpectrumKind spectrum_kind_of(OperatorKind kind) {
  return kind == OperatorKind::H ? SpectrumKind::RealLine : SpectrumKind::UnitCircle;
}

SpectrumSet::SpectrumSet(SpectrumKind kind, std::vector<Complex> points, OperatorParams params,
                         GridSpec grid, double error_bound)
    : kind_(kind), params_(std::move(params)), grid_(grid), error_bound_(error_bound) {
  if (!(error_bound >= 0.0)) throw Error(ErrorCode::InvalidArgument, "error bound must be >= 0");
  for (const Complex& z : points) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::InvalidArgument, "spectrum point is not finite");
    if (kind == SpectrumKind::UnitCircle && std::abs(std::abs(z) - 1.0) > 1e-10)
      throw Error(ErrorCode::InvalidArgument, "unit-circle spectrum point off the circle");
  }
  sort_points(kind, points);
  points_.reserve(points.size());
  for (const Complex& z : points)
    if (points_.empty() || std::abs(z - points_.back()) > kDedupTolerance) points_.push_back(z);
  if (kind == SpectrumKind::UnitCircle && points_.size() > 1 &&
      std::abs(points_.back() - points_.front()) <= kDedupTolerance)
    points_.pop_back();
}

std::vector<double> SpectrumSet::real_values() const {
  if (kind_ != SpectrumKind::RealLine)
    throw Error(ErrorCode::WrongKind, "real values requested from a unit-circle spectrum");
  std::vector<double> out;
  out.reserve(points_.size());
  for (const Complex& z : points_) out.push_back(z.real());
  return out;
}

SpectrumSet SpectrumSet::scaled(double s) const {
  if (kind_ != SpectrumKind::RealLine)
    throw Error(ErrorCode::WrongKind, "only real-line spectra can be scaled");
  std::vector<Complex> pts;
  pts.reserve(points_.size());
  for (const Complex& z : points_) pts.push_back(z * s);
  return SpectrumSet(kind_, std::move(pts), params_, grid_, error_bound_ * std::abs(s));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mutex;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
        failed.store(true);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<Complex> eigenvalues_at(const OperatorParams& params, operators::PhasePoint at,
                                    const linalg::Tolerances& tol) {
  if (params.kind == OperatorKind::H)
    return linalg::eig_hermitian(operators::harper_hermitian(params, at), false, tol).values;
  return linalg::eig_unitary(operators::unitary_image(params, at), false, tol).values;
}

std::vector<GridSample> sweep(const OperatorParams& raw, const GridSpec& grid,
                              const SweepOptions& opts) {
  grid.validate();
  const OperatorParams params = raw.normalized();
  const auto pts = grid_points(params, grid);
  std::vector<GridSample> out(pts.size());
  parallel_for(pts.size(), opts.threads, [&](std::size_t i) {
    try {
      out[i] = GridSample{pts[i], eigenvalues_at(params, pts[i], opts.tol)};
    } catch (const Error& e) {
      std::ostringstream os;
      os.precision(17);
      os << e.what() << " (grid point x=" << pts[i].x << ", theta=" << pts[i].theta << ")";
      throw Error(e.code(), os.str());
    }
  });
  return out;
}

SpectrumSet spectrum_fixed_theta(const OperatorParams& raw, const GridSpec& grid,
                                 const SweepOptions& opts) {
  if (raw.is_mother())
    throw Error(ErrorCode::InvalidArgument, "fixed-theta sweep needs a theta value");
  const OperatorParams params = raw.normalized();
  const auto samples = sweep(params, grid, opts);
  std::vector<Complex> pts;
  pts.reserve(samples.size() * static_cast<std::size_t>(params.alpha.q()));
  for (const auto& s : samples) pts.insert(pts.end(), s.values.begin(), s.values.end());
  return SpectrumSet(spectrum_kind_of(params.kind), std::move(pts), params, grid,
                     grid_error_bound(params, grid));
}

SpectrumSet mother_spectrum(const OperatorParams& raw, const GridSpec& grid,
                            const SweepOptions& opts) {
  if (!raw.is_mother())
    throw Error(ErrorCode::InvalidArgument, "mother sweep called with a fixed theta");
  const OperatorParams params = raw.normalized();
  const auto samples = sweep(params, grid, opts);
  std::vector<Complex> pts;
  pts.reserve(samples.size() * static_cast<std::size_t>(params.alpha.q()));
  for (const auto& s : samples) pts.insert(pts.end(), s.values.begin(), s.values.end());
  return SpectrumSet(spectrum_kind_of(params.kind), std::move(pts), params, grid,
                     grid_error_bound(params, grid));
}

SpectrumSet compute_spectrum(const OperatorParams& params, const GridSpec& grid,
                             const SweepOptions& opts) {
  return params.is_mother() ? mother_spectrum(params, grid, opts)
                            : spectrum_fixed_theta(params, grid, opts);
}

double grid_error_bound(const OperatorParams& raw, const GridSpec& grid) {
  grid.validate();
  const OperatorParams params = raw.normalized();
  const double q = static_cast<double>(params.alpha.q());
  const double step_x = kTwoPi / (grid.n_x * q);
  const double step_t = kTwoPi / (grid.n_theta * q);
  const double k = std::abs(params.kappa);
  const double l = std::abs(params.lambda);
  const bool mother = params.is_mother();
  switch (params.kind) {
    case OperatorKind::H:
      return mother ? step_x + l * step_t : step_x;
    case OperatorKind::UH:
    case OperatorKind::UKH:
      return mother ? k * step_x + k * l * step_t : k * step_x;
    case OperatorKind::UORDKR:
      // x also shifts beta, so the fixed-theta Lipschitz constant picks up lambda.
      return mother ? k * step_x + k * l * step_t : k * (1.0 + l) * step_x;
  }
  return 0.0;
}

std::vector<double> eigenphases(const SpectrumSet& s) {
  if (s.kind() != SpectrumKind::UnitCircle)
    throw Error(ErrorCode::WrongKind, "eigenphases need a unit-circle spectrum");
  std::vector<double> out;
  out.reserve(s.size());
  for (const Complex& z : s.points()) out.push_back(linalg::principal_arg(z));
  std::sort(out.begin(), out.end());
  return out;
}

double default_merge_gap(const SpectrumSet& s) { return std::max(4.0 * s.error_bound(), 1e-9); }

BandList merge_bands(const SpectrumSet& s, double merge_gap) {
  if (!(merge_gap > 0.0)) throw Error(ErrorCode::InvalidArgument, "merge gap must be > 0");
  if (s.empty()) throw Error(ErrorCode::EmptySpectrum, "cannot merge an empty spectrum");
  BandList out{s.kind(), {}, merge_gap};

  if (s.kind() == SpectrumKind::RealLine) {
    const auto v = s.real_values();
    Band cur{v.front(), v.front()};
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] - cur.hi > merge_gap) {
        out.bands.push_back(cur);
        cur = Band{v[i], v[i]};
      } else {
        cur.hi = v[i];
      }
    }
    out.bands.push_back(cur);
    return out;
  }

  const auto ph = eigenphases(s);
  const std::size_t n = ph.size();
  auto gap_after = [&](std::size_t i) {
    return i + 1 < n ? ph[i + 1] - ph[i] : ph[0] + kTwoPi - ph[n - 1];
  };
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i)
    if (gap_after(i) > merge_gap) {
      start = (i + 1) % n;
      break;
    }
  if (start == n) {
    out.bands.push_back(Band{-kPi, kPi});
    return out;
  }
  Band cur{ph[start], ph[start]};
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = (start + step) % n;
    const double g = gap_after(i);
    if (step + 1 == n) break;
    if (g > merge_gap) {
      out.bands.push_back(cur);
      const double lo = ph[(i + 1) % n];
      cur = Band{lo, lo};
    } else {
      cur.hi += g;
    }
  }
  out.bands.push_back(cur);
  std::sort(out.bands.begin(), out.bands.end(),
            [](const Band& a, const Band& b) { return a.lo < b.lo; });
  return out;
}

BandList merge_bands(const BandList& b, double merge_gap) {
  if (!(merge_gap >= 0.0)) throw Error(ErrorCode::InvalidArgument, "merge gap must be >= 0");
  if (b.bands.empty()) throw Error(ErrorCode::EmptySpectrum, "cannot merge an empty band list");
  BandList out{b.kind, {}, merge_gap};
  if (b.kind == SpectrumKind::RealLine) {
    auto sorted = b.bands;
    std::sort(sorted.begin(), sorted.end(), [](const Band& x, const Band& y) { return x.lo < y.lo; });
    out.bands = join_sorted(std::move(sorted), merge_gap);
  } else {
    out.bands = join_arcs(b.bands, merge_gap);
  }
  return out;
}

BandList index_bands(const std::vector<GridSample>& samples, SpectrumKind kind) {
  if (samples.empty() || samples.front().values.empty())
    throw Error(ErrorCode::EmptySpectrum, "no samples to build bands from");
  const std::size_t q = samples.front().values.size();
  for (const auto& s : samples)
    if (s.values.size() != q)
      throw Error(ErrorCode::InvalidArgument, "grid samples have differing eigenvalue counts");

  std::vector<double> lo(q, INFINITY), hi(q, -INFINITY);
  BandList out{kind, {}, 0.0};

  if (kind == SpectrumKind::RealLine) {
    std::vector<double> v(q);
    for (const auto& s : samples) {
      for (std::size_t k = 0; k < q; ++k) v[k] = s.values[k].real();
      std::sort(v.begin(), v.end());
      for (std::size_t k = 0; k < q; ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
    }
    std::vector<Band> bands;
    for (std::size_t k = 0; k < q; ++k) bands.push_back({lo[k], hi[k]});
    std::sort(bands.begin(), bands.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
    out.bands = join_sorted(std::move(bands), 0.0);
    return out;
  }

  // Cut the circle in the middle of the widest empty arc of the whole cloud.
  std::vector<double> all;
  all.reserve(samples.size() * q);
  for (const auto& s : samples)
    for (const Complex& z : s.values) all.push_back(linalg::principal_arg(z));
  std::sort(all.begin(), all.end());
  double widest = all.front() + kTwoPi - all.back();
  double cut = all.back() + 0.5 * widest;
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    const double g = all[i + 1] - all[i];
    if (g > widest) {
      widest = g;
      cut = all[i] + 0.5 * g;
    }
  }

  std::vector<double> rel(q);
  for (const auto& s : samples) {
    for (std::size_t k = 0; k < q; ++k) {
      double r = std::fmod(linalg::principal_arg(s.values[k]) - cut, kTwoPi);
      if (r < 0) r += kTwoPi;
      rel[k] = r;
    }
    std::sort(rel.begin(), rel.end());
    for (std::size_t k = 0; k < q; ++k) {
      lo[k] = std::min(lo[k], rel[k]);
      hi[k] = std::max(hi[k], rel[k]);
    }
  }
  std::vector<Band> bands;
  for (std::size_t k = 0; k < q; ++k) bands.push_back({lo[k], hi[k]});
  std::sort(bands.begin(), bands.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
  bands = join_sorted(std::move(bands), 0.0);
  for (Band& b : bands) {
    const double len = b.length();
    b.lo = wrap_pi(cut + b.lo);
    b.hi = b.lo + len;
  }
  std::sort(bands.begin(), bands.end(), [](const Band& a, const Band& b) { return a.lo < b.lo; });
  out.bands = std::move(bands);
  return out;
}

BandList index_bands(const OperatorParams& params, const GridSpec& grid, const SweepOptions& opts) {
  return index_bands(sweep(params, grid, opts), spectrum_kind_of(params.kind));
}

}  // namespace hofspec::spectra
