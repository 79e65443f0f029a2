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

#include "hofspec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hofspec/errors.hpp"

namespace hofspec::analysis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double directed_real(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (double x : a) {
    auto it = std::lower_bound(b.begin(), b.end(), x);
    double best = INFINITY;
    if (it != b.end()) best = std::min(best, *it - x);
    if (it != b.begin()) best = std::min(best, x - *std::prev(it));
    worst = std::max(worst, best);
  }
  return worst;
}

double directed_circle(const std::vector<linalg::Complex>& a, const std::vector<linalg::Complex>& b,
                       const std::vector<double>& b_phase, CircleMetric metric) {
  const std::size_t n = b.size();
  auto dist = [&](linalg::Complex z, double phase, std::size_t j) {
    if (metric == CircleMetric::Chordal) return std::abs(z - b[j]);
    return std::abs(std::remainder(phase - b_phase[j], kTwoPi));
  };
  double worst = 0.0;
  for (const linalg::Complex& z : a) {
    const double phase = linalg::principal_arg(z);
    const std::size_t hi =
        static_cast<std::size_t>(std::lower_bound(b_phase.begin(), b_phase.end(), phase) -
                                 b_phase.begin());
    // Nearest by chord is nearest by angle, so the two angular neighbours
    // (with wraparound) are the only candidates.
    const double d = std::min(dist(z, phase, hi % n), dist(z, phase, (hi + n - 1) % n));
    worst = std::max(worst, d);
  }
  return worst;
}

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

}  // namespace

double hausdorff(const SpectrumSet& x, const SpectrumSet& y, CircleMetric metric) {
  if (x.kind() != y.kind())
    throw Error(ErrorCode::KindMismatch, "Hausdorff distance between different spectrum kinds");
  if (x.empty() || y.empty()) throw Error(ErrorCode::EmptySpectrum, "Hausdorff of an empty set");
  if (x.kind() == SpectrumKind::RealLine) {
    const auto a = x.real_values();
    const auto b = y.real_values();
    return std::max(directed_real(a, b), directed_real(b, a));
  }
  auto phases = [](const SpectrumSet& s) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& z : s.points()) out.push_back(linalg::principal_arg(z));
    return out;
  };
  const auto px = phases(x);
  const auto py = phases(y);
  return std::max(directed_circle(x.points(), y.points(), py, metric),
                  directed_circle(y.points(), x.points(), px, metric));
}

double total_bandwidth(const BandList& b) {
  double total = 0.0;
  for (const auto& band : b.bands) total += band.length();
  return total;
}

std::size_t count_bands_in_window(const BandList& b, double lo, double hi) {
  std::size_t n = 0;
  for (const auto& band : b.bands) {
    if (b.kind == SpectrumKind::RealLine) {
      if (band.lo <= hi && band.hi >= lo) ++n;
      continue;
    }
    for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
      if (band.lo + shift <= hi && band.hi + shift >= lo) {
        ++n;
        break;
      }
    }
  }
  return n;
}

PowerLawFit powerlaw_fit(const std::vector<std::pair<std::int64_t, double>>& samples) {
  if (samples.size() < 2) throw Error(ErrorCode::TooFewSamples, "power-law fit needs >= 2 samples");
  std::vector<double> lx, ly;
  for (const auto& [q, w] : samples) {
    if (q <= 0 || !(w > 0.0) || !std::isfinite(w))
      throw Error(ErrorCode::NonPositiveSample, "power-law samples must be positive");
    lx.push_back(std::log(static_cast<double>(q)));
    ly.push_back(std::log(w));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::TooFewSamples, "power-law fit needs two distinct q");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.n_points = static_cast<int>(lx.size());
  return fit;
}

std::vector<RationalAlpha> golden_convergents(int count) {
  if (count < 1 || count > 88)
    throw Error(ErrorCode::InvalidArgument, "convergent count must be in [1, 88]");
  std::vector<RationalAlpha> out;
  std::int64_t p = 1, q = 2;
  for (int i = 0; i < count; ++i) {
    out.emplace_back(p, q);
    const std::int64_t next = p + q;
    p = q;
    q = next;
  }
  return out;
}

std::vector<RationalAlpha> farey_rationals(std::int64_t q_max) {
  if (q_max < 1) throw Error(ErrorCode::InvalidArgument, "q_max must be >= 1");
  std::vector<RationalAlpha> out;
  for (std::int64_t q = 2; q <= q_max; ++q)
    for (std::int64_t p = 1; p < q; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  std::sort(out.begin(), out.end(), [](const RationalAlpha& a, const RationalAlpha& b) {
    return a.p() * b.q() < b.p() * a.q();
  });
  return out;
}

ButterflyDataset butterfly(OperatorKind kind, double kappa, double lambda, std::int64_t q_max,
                           int grid_n, const spectra::SweepOptions& opts) {
  if (grid_n < 1) throw Error(ErrorCode::InvalidArgument, "butterfly grid must be >= 1");
  ButterflyDataset ds{kind, kind == OperatorKind::H ? 0.0 : kappa, lambda, q_max, grid_n, {}};
  for (const RationalAlpha& a : farey_rationals(q_max)) {
    operators::OperatorParams params{kind, kappa, lambda, a, std::nullopt};
    const int n = std::max(
        1, static_cast<int>(std::lround(static_cast<double>(grid_n) / static_cast<double>(a.q()))));
    const SpectrumSet s = spectra::mother_spectrum(params, spectra::GridSpec::square(n), opts);
    const std::vector<double> values =
        s.kind() == SpectrumKind::RealLine ? s.real_values() : spectra::eigenphases(s);
    for (double v : values) ds.rows.push_back({a.p(), a.q(), v});
  }
  std::sort(ds.rows.begin(), ds.rows.end(), [](const ButterflyRow& a, const ButterflyRow& b) {
    if (a.q != b.q) return a.q < b.q;
    if (a.p != b.p) return a.p < b.p;
    return a.value < b.value;
  });
  return ds;
}

std::vector<ZoomWindow> zoom_windows(const std::vector<double>& eigenphases, double center,
                                     const std::vector<double>& factors) {
  if (!(center > -kPi && center <= kPi))
    throw Error(ErrorCode::CenterOutOfRange, "zoom center must lie in (-pi, pi]");
  for (double f : factors)
    if (!(f > 1.0)) throw Error(ErrorCode::InvalidArgument, "zoom factors must be > 1");

  std::vector<ZoomWindow> out;
  out.push_back({-kPi, kPi, eigenphases});
  double width = kTwoPi;
  for (double f : factors) {
    width /= f;
    ZoomWindow w{center - 0.5 * width, center + 0.5 * width, {}};
    for (double e : eigenphases)
      for (double shift : {0.0, -kTwoPi, kTwoPi})
        if (e + shift >= w.lo && e + shift <= w.hi) {
          w.points.push_back(e + shift);
          break;
        }
    std::sort(w.points.begin(), w.points.end());
    out.push_back(std::move(w));
  }
  return out;
}

ZoomResult zoom(const operators::OperatorParams& params, const spectra::GridSpec& grid,
                const std::vector<double>& factors, std::optional<double> center,
                const spectra::SweepOptions& opts) {
  if (!params.is_mother() || spectra::spectrum_kind_of(params.kind) != SpectrumKind::UnitCircle)
    throw Error(ErrorCode::InvalidArgument, "zoom needs a mother unitary operator");
  const auto samples = spectra::sweep(params, grid, opts);
  std::vector<linalg::Complex> pts;
  for (const auto& s : samples) pts.insert(pts.end(), s.values.begin(), s.values.end());
  ZoomResult r;
  r.spectrum = SpectrumSet(SpectrumKind::UnitCircle, std::move(pts), params.normalized(), grid,
                           spectra::grid_error_bound(params, grid));
  r.bands = spectra::index_bands(samples, SpectrumKind::UnitCircle);
  const auto phases = spectra::eigenphases(r.spectrum);
  r.center = center ? *center : phase_median(phases);
  r.windows = zoom_windows(phases, r.center, factors);
  for (const auto& w : r.windows) r.band_counts.push_back(count_bands_in_window(r.bands, w.lo, w.hi));
  return r;
}

double phase_median(const std::vector<double>& eigenphases) {
  if (eigenphases.empty()) throw Error(ErrorCode::EmptySpectrum, "median of an empty spectrum");
  const std::size_t n = eigenphases.size();
  return n % 2 ? eigenphases[n / 2] : 0.5 * (eigenphases[n / 2 - 1] + eigenphases[n / 2]);
}

double alpha_jump_witness(double lambda, double alpha1, double alpha2, double theta,
                          std::int64_t n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  if (near_integer(alpha1) || near_integer(alpha2) || near_integer(alpha1 + alpha2) ||
      near_integer(alpha1 - alpha2))
    throw Error(ErrorCode::DegenerateAlphas, "alpha1, alpha2 and alpha1 +- alpha2 must be non-integers");
  double best = 0.0;
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    const double nn = static_cast<double>(n);
    const double v = 2.0 * lambda * std::sin(kPi * nn * (alpha1 + alpha2) + kTwoPi * theta) *
                     std::sin(kPi * nn * (alpha1 - alpha2));
    best = std::max(best, std::abs(v));
  }
  return best;
}

}  // namespace hofspec::analysis
