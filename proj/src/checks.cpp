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

#include "hofspec/checks.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "hofspec/errors.hpp"
#include "json.hpp"

namespace hofspec::checks {

using nlohmann::json;
using operators::OperatorParams;
using spectra::GridSpec;
using spectra::SpectrumSet;
using spectra::SweepOptions;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::pair<CheckId, const char*>>& names() {
  static const std::vector<std::pair<CheckId, const char*>> table = {
      {CheckId::ThetaPeriod, "THETA_PERIOD"},
      {CheckId::ThetaContinuity, "THETA_CONTINUITY"},
      {CheckId::MotherEquality, "MOTHER_EQUALITY"},
      {CheckId::SpectralMapping, "SPECTRAL_MAPPING"},
      {CheckId::AubryAndre, "AUBRY_ANDRE"},
      {CheckId::BandCount, "BAND_COUNT"},
      {CheckId::AlphaContinuity, "ALPHA_CONTINUITY"},
      {CheckId::KappaCubed, "KAPPA_CUBED"},
      {CheckId::LastMeasureTrend, "LAST_MEASURE_TREND"},
      {CheckId::GridRefinement, "GRID_REFINEMENT"},
      {CheckId::DcpEigensystem, "DCP_EIGENSYSTEM"},
      {CheckId::PowerLaw, "POWER_LAW"},
      {CheckId::BandwidthOrdering, "BANDWIDTH_ORDERING"},
      {CheckId::ZoomSelfSimilarity, "ZOOM_SELF_SIMILARITY"},
      {CheckId::AlphaJump, "ALPHA_JUMP"},
  };
  return table;
}

OperatorParams make(OperatorKind kind, double kappa, double lambda, RationalAlpha alpha,
                    std::optional<double> theta = std::nullopt) {
  return OperatorParams{kind, kappa, lambda, alpha, theta};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <class T>
const T& first(const std::vector<T>& v, const char* what) {
  if (v.empty()) throw Error(ErrorCode::InvalidArgument, std::string("check config needs ") + what);
  return v.front();
}

int grid_n(const CheckConfig& cfg) { return first(cfg.grids, "grids"); }

/// Tracks the trial with the largest measured/bound ratio.
struct Worst {
  double measured = 0.0;
  double bound = 0.0;
  double ratio = -1.0;
  bool pass = true;

  void add(double m, double b) {
    pass = pass && m <= b;
    const double r = b > 0.0 ? m / b : (m > 0.0 ? INFINITY : 0.0);
    if (r > ratio) {
      ratio = r;
      measured = m;
      bound = b;
    }
  }
};

CheckReport finish(CheckId id, const CheckConfig& cfg, const Worst& w, std::string notes) {
  return CheckReport{to_string(id), config_to_json(cfg), w.measured, w.bound, w.pass,
                     std::move(notes)};
}

CheckReport count_report(CheckId id, const CheckConfig& cfg, int failures, std::string notes) {
  return CheckReport{to_string(id), config_to_json(cfg), static_cast<double>(failures), 0.0,
                     failures == 0, std::move(notes)};
}

SpectrumSet circle_set(std::vector<linalg::Complex> pts) {
  return SpectrumSet(spectra::SpectrumKind::UnitCircle, std::move(pts), OperatorParams{}, GridSpec{},
                     0.0);
}

double bandwidth_cached(const OperatorParams& params, const GridSpec& grid, const SweepOptions& opts) {
  // Several checks reuse the same widths; key on the full (params, grid) tuple.
  static std::mutex mu;
  static std::map<std::string, double> memo;
  const OperatorParams p = params.normalized();
  std::ostringstream key;
  key << std::hexfloat << operators::to_string(p.kind) << '|' << p.kappa << '|' << p.lambda << '|'
      << p.alpha.str() << '|' << (p.theta ? *p.theta : -1.0) << '|' << grid.n_x << '|'
      << grid.n_theta;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key.str()); it != memo.end()) return it->second;
  }
  const double w = analysis::total_bandwidth(spectra::index_bands(p, grid, opts));
  std::lock_guard lock(mu);
  memo[key.str()] = w;
  return w;
}

// --- individual checks -----------------------------------------------------

CheckReport theta_period(const CheckConfig& cfg, const SweepOptions& opts, bool continuity) {
  const CheckId id = continuity ? CheckId::ThetaContinuity : CheckId::ThetaPeriod;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  Worst w;
  std::ostringstream notes;
  for (std::int64_t q : cfg.q_values) {
    const RationalAlpha alpha = alpha_for_denominator(q);
    for (OperatorKind kind : cfg.kinds) {
      const double kappa = first(cfg.kappas, "kappas");
      const double lambda = first(cfg.lambdas, "lambdas");
      Worst local;
      double slope = 0.0;  // smallest slope that would have covered every trial
      for (int t = 0; t < cfg.trials; ++t) {
        const double t1 = unit(rng);
        const double t2 = continuity ? unit(rng) : t1 + 1.0 / static_cast<double>(q);
        const auto p1 = make(kind, kappa, lambda, alpha, t1);
        const auto p2 = make(kind, kappa, lambda, alpha, t2);
        const SpectrumSet s1 = spectra::spectrum_fixed_theta(p1, grid, opts);
        const SpectrumSet s2 = spectra::spectrum_fixed_theta(p2, grid, opts);
        const double grid_terms = s1.error_bound() + s2.error_bound();
        const double d = analysis::hausdorff(s1, s2);
        double bound = grid_terms;
        if (continuity) {
          const double scale = std::abs(kind == OperatorKind::H ? lambda : kappa * lambda) *
                               std::abs(std::sin(kPi * (t1 - t2)));
          bound += cfg.lipschitz * scale;
          if (scale > 0.0) slope = std::max(slope, (d - grid_terms) / scale);
        }
        local.add(d, bound);
      }
      w.add(local.measured, local.bound);
      w.pass = w.pass && local.pass;
      notes << operators::to_string(kind) << " alpha=" << alpha.str() << " worst d=" << fmt(local.measured)
            << " bound=" << fmt(local.bound);
      if (continuity) notes << " needed slope=" << fmt(slope);
      notes << (local.pass ? "" : " FAIL") << '\n';
    }
  }
  return finish(id, cfg, w, notes.str());
}

CheckReport mother_equality(const CheckConfig& cfg, const SweepOptions& opts) {
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  Worst w;
  std::ostringstream notes;
  for (const RationalAlpha& a : cfg.alphas)
    for (double kappa : cfg.kappas)
      for (double lambda : cfg.lambdas) {
        const SpectrumSet ukh =
            spectra::mother_spectrum(make(OperatorKind::UKH, kappa, lambda, a), grid, opts);
        const SpectrumSet ord =
            spectra::mother_spectrum(make(OperatorKind::UORDKR, kappa, lambda, a), grid, opts);
        const double d = analysis::hausdorff(ukh, ord);
        const double b = ukh.error_bound() + ord.error_bound();
        w.add(d, b);
        notes << "alpha=" << a.str() << " kappa=" << fmt(kappa) << " lambda=" << fmt(lambda)
              << " d=" << fmt(d) << " bound=" << fmt(b) << (d <= b ? "" : " FAIL") << '\n';
      }
  return finish(CheckId::MotherEquality, cfg, w, notes.str());
}

CheckReport grid_refinement(const CheckConfig& cfg, const SweepOptions& opts) {
  const RationalAlpha a = first(cfg.alphas, "alphas");
  const double kappa = first(cfg.kappas, "kappas");
  const double lambda = first(cfg.lambdas, "lambdas");
  Worst w;
  std::ostringstream notes;
  for (OperatorKind kind : cfg.kinds) {
    std::vector<std::optional<double>> scopes{std::nullopt};
    for (double t : cfg.thetas) scopes.emplace_back(t);
    for (const auto& theta : scopes) {
      const auto params = make(kind, kappa, lambda, a, theta);
      for (int n : cfg.grids) {
        const SpectrumSet coarse = spectra::compute_spectrum(params, GridSpec::square(n), opts);
        const SpectrumSet fine = spectra::compute_spectrum(params, GridSpec::square(2 * n), opts);
        const double d = analysis::hausdorff(coarse, fine);
        const double b = coarse.error_bound() + fine.error_bound();
        w.add(d, b);
        notes << operators::to_string(kind) << (theta ? " theta=" + fmt(*theta) : " mother")
              << " N=" << n << " d=" << fmt(d) << " bound=" << fmt(b) << (d <= b ? "" : " FAIL")
              << '\n';
      }
    }
  }
  return finish(CheckId::GridRefinement, cfg, w, notes.str());
}

CheckReport spectral_mapping(const CheckConfig& cfg, const SweepOptions& opts) {
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  Worst w;
  std::ostringstream notes;
  for (const RationalAlpha& a : cfg.alphas)
    for (double kappa : cfg.kappas)
      for (double lambda : cfg.lambdas) {
        const auto h = spectra::sweep(make(OperatorKind::H, 0.0, lambda, a), grid, opts);
        const auto u = spectra::sweep(make(OperatorKind::UH, kappa, lambda, a), grid, opts);
        double worst = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
          std::vector<linalg::Complex> mapped;
          for (const auto& e : h[i].values)
            mapped.push_back(std::polar(1.0, -kappa * e.real()));
          worst = std::max(worst, analysis::hausdorff(circle_set(std::move(mapped)),
                                                      circle_set(u[i].values)));
        }
        w.add(worst, cfg.tolerance);
        notes << "alpha=" << a.str() << " kappa=" << fmt(kappa) << " max pointwise d=" << fmt(worst)
              << '\n';
      }
  return finish(CheckId::SpectralMapping, cfg, w, notes.str());
}

CheckReport aubry_andre(const CheckConfig& cfg, const SweepOptions& opts) {
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  Worst w;
  std::ostringstream notes;
  for (const RationalAlpha& a : cfg.alphas)
    for (double lambda : cfg.lambdas) {
      if (lambda == 0.0) throw Error(ErrorCode::InvalidArgument, "Aubry-Andre check needs lambda != 0");
      const SpectrumSet s = spectra::mother_spectrum(make(OperatorKind::H, 0.0, lambda, a), grid, opts);
      const SpectrumSet dual =
          spectra::mother_spectrum(make(OperatorKind::H, 0.0, 1.0 / lambda, a), grid, opts)
              .scaled(lambda);
      const double d = analysis::hausdorff(s, dual);
      w.add(d, cfg.tolerance);
      notes << "alpha=" << a.str() << " lambda=" << fmt(lambda) << " d=" << fmt(d) << '\n';
    }
  return finish(CheckId::AubryAndre, cfg, w, notes.str());
}

CheckReport band_count(const CheckConfig& cfg, const SweepOptions& opts) {
  const double lambda = first(cfg.lambdas, "lambdas");
  int failures = 0;
  std::ostringstream notes;
  for (std::int64_t q : cfg.q_values) {
    const RationalAlpha a(1, q);
    const std::size_t expected = static_cast<std::size_t>(q % 2 ? q : q - 1);
    for (int n : cfg.grids) {
      const SpectrumSet s =
          spectra::mother_spectrum(make(OperatorKind::H, 0.0, lambda, a), GridSpec::square(n), opts);
      const auto bands = spectra::merge_bands(s, spectra::default_merge_gap(s));
      const bool ok = bands.bands.size() == expected;
      failures += ok ? 0 : 1;
      notes << "q=" << q << " N=" << n << " bands=" << bands.bands.size() << " expected=" << expected
            << (ok ? "" : " FAIL") << '\n';
    }
  }
  return count_report(CheckId::BandCount, cfg, failures, notes.str());
}

CheckReport alpha_continuity(const CheckConfig& cfg, const SweepOptions& opts) {
  if (cfg.alphas.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "alpha continuity needs two alphas");
  const double kappa = first(cfg.kappas, "kappas");
  const double lambda = first(cfg.lambdas, "lambdas");
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  Worst w;
  std::ostringstream notes;
  for (std::size_t i = 0; i + 1 < cfg.alphas.size(); ++i) {
    const RationalAlpha a1 = cfg.alphas[i], a2 = cfg.alphas[i + 1];
    const SpectrumSet s1 = spectra::mother_spectrum(make(OperatorKind::UKH, kappa, lambda, a1), grid, opts);
    const SpectrumSet s2 = spectra::mother_spectrum(make(OperatorKind::UKH, kappa, lambda, a2), grid, opts);
    const double core = 36.0 * std::sqrt(6.0 * kPi * std::abs(kappa * lambda * (a2.value() - a1.value())));
    const double b = core + s1.error_bound() + s2.error_bound();
    const double d = analysis::hausdorff(s1, s2);
    w.add(d, b);
    notes << a1.str() << " vs " << a2.str() << " d=" << fmt(d) << " bound=" << fmt(b) << '\n';
  }
  return finish(CheckId::AlphaContinuity, cfg, w, notes.str());
}

CheckReport kappa_cubed(const CheckConfig& cfg, const SweepOptions& opts) {
  const RationalAlpha a = first(cfg.alphas, "alphas");
  const double lambda = first(cfg.lambdas, "lambdas");
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  if (!(cfg.lower > 0.0 && cfg.upper > cfg.lower))
    throw Error(ErrorCode::InvalidArgument, "kappa-cubed check needs 0 < lower < upper");
  auto distance = [&](double kappa) {
    return analysis::hausdorff(
        spectra::mother_spectrum(make(OperatorKind::UKH, kappa, lambda, a), grid, opts),
        spectra::mother_spectrum(make(OperatorKind::UH, kappa, lambda, a), grid, opts));
  };
  // The bracket [lower, upper] is symmetric in log2 around its midpoint.
  const double mid = 0.5 * (std::log2(cfg.lower) + std::log2(cfg.upper));
  const double half = 0.5 * (std::log2(cfg.upper) - std::log2(cfg.lower));
  std::map<double, double> d;
  Worst w;
  std::ostringstream notes;
  for (double kappa : cfg.kappas) {
    for (double k : {kappa, 2.0 * kappa})
      if (!d.count(k)) d[k] = distance(k);
    const double r = d[2.0 * kappa] / d[kappa];
    const double dev = std::isfinite(r) && r > 0.0 ? std::abs(std::log2(r) - mid) : INFINITY;
    w.add(dev, half);
    notes << "kappa=" << fmt(kappa) << " D=" << fmt(d[kappa]) << " D(2kappa)=" << fmt(d[2.0 * kappa])
          << " ratio=" << fmt(r) << '\n';
  }
  return finish(CheckId::KappaCubed, cfg, w, notes.str());
}

std::vector<RationalAlpha> fib_alphas(const std::vector<std::int64_t>& qs) {
  std::vector<RationalAlpha> out;
  for (std::int64_t q : qs) out.push_back(alpha_for_denominator(q));
  return out;
}

CheckReport last_measure_trend(const CheckConfig& cfg, const SweepOptions& opts) {
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  const double ref = first(cfg.lambdas, "lambdas");
  int failures = 0;
  std::ostringstream notes;
  double prev = INFINITY;
  for (const RationalAlpha& a : fib_alphas(cfg.q_values)) {
    const double w_ref = bandwidth_cached(make(OperatorKind::H, 0.0, ref, a), grid, opts);
    notes << "q=" << a.q() << " W(" << fmt(ref) << ")=" << fmt(w_ref);
    for (std::size_t i = 1; i < cfg.lambdas.size(); ++i) {
      const double w = bandwidth_cached(make(OperatorKind::H, 0.0, cfg.lambdas[i], a), grid, opts);
      const bool ok = w_ref < w;
      failures += ok ? 0 : 1;
      notes << " W(" << fmt(cfg.lambdas[i]) << ")=" << fmt(w) << (ok ? "" : " FAIL");
    }
    const bool decreasing = w_ref < prev;
    failures += decreasing ? 0 : 1;
    notes << (decreasing ? "" : " not decreasing in q") << '\n';
    prev = w_ref;
  }
  return count_report(CheckId::LastMeasureTrend, cfg, failures, notes.str());
}

CheckReport dcp_eigensystem(const CheckConfig& cfg) {
  Worst w;
  std::ostringstream notes;
  for (std::int64_t q : cfg.q_values) {
    const auto cs = operators::clock_shift(q);
    double worst_q = 0.0;
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const RationalAlpha a(p, q);
      const auto es = operators::build_dcp_eigensystem(a);
      linalg::ComplexMatrix m = cs.clock;
      for (std::int64_t k = 0; k < p; ++k) m = m * cs.shift;
      linalg::ComplexMatrix lam = linalg::ComplexMatrix::Zero(q, q);
      for (std::int64_t k = 0; k < q; ++k) lam(k, k) = es.values[static_cast<std::size_t>(k)];
      const double residual = linalg::max_abs(m * es.vectors - es.vectors * lam);
      const double orth = linalg::max_abs(es.vectors.adjoint() * es.vectors -
                                          linalg::ComplexMatrix::Identity(q, q));
      const auto brute = linalg::eig_unitary(linalg::UnitaryMatrix(m), false);
      const double spec = analysis::hausdorff(circle_set(brute.values), circle_set(es.values));
      worst_q = std::max({worst_q, residual, orth, spec});
    }
    w.add(worst_q, cfg.tolerance);
    notes << "q=" << q << " worst=" << fmt(worst_q) << '\n';
  }
  return finish(CheckId::DcpEigensystem, cfg, w, notes.str());
}

CheckReport power_law(const CheckConfig& cfg, const SweepOptions& opts) {
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  const double kappa = first(cfg.kappas, "kappas");
  const double lambda = first(cfg.lambdas, "lambdas");
  std::vector<std::pair<std::int64_t, double>> samples;
  std::ostringstream notes;
  for (const RationalAlpha& a : fib_alphas(cfg.q_values)) {
    const double w = bandwidth_cached(make(OperatorKind::UKH, kappa, lambda, a), grid, opts);
    samples.emplace_back(a.q(), w);
    notes << "q=" << a.q() << " W=" << fmt(w) << '\n';
  }
  const auto fit = analysis::powerlaw_fit(samples);
  const double mid = 0.5 * (cfg.lower + cfg.upper);
  const double half = 0.5 * (cfg.upper - cfg.lower);
  Worst w;
  w.add(std::abs(fit.exponent - mid), half);
  notes << "exponent=" << fmt(fit.exponent) << " prefactor=" << fmt(fit.prefactor)
        << " accepted=[" << fmt(cfg.lower) << ", " << fmt(cfg.upper) << "]\n";
  return finish(CheckId::PowerLaw, cfg, w, notes.str());
}

CheckReport bandwidth_ordering(const CheckConfig& cfg, const SweepOptions& opts) {
  const GridSpec grid = GridSpec::square(grid_n(cfg));
  const double kappa = first(cfg.kappas, "kappas");
  const double ref = first(cfg.lambdas, "lambdas");
  int failures = 0;
  std::ostringstream notes;
  for (const RationalAlpha& a : fib_alphas(cfg.q_values)) {
    const double w_ref = bandwidth_cached(make(OperatorKind::UKH, kappa, ref, a), grid, opts);
    notes << "q=" << a.q() << " W(" << fmt(ref) << ")=" << fmt(w_ref);
    for (std::size_t i = 1; i < cfg.lambdas.size(); ++i) {
      const double w = bandwidth_cached(make(OperatorKind::UKH, kappa, cfg.lambdas[i], a), grid, opts);
      const bool ok = w_ref < w;
      failures += ok ? 0 : 1;
      notes << " W(" << fmt(cfg.lambdas[i]) << ")=" << fmt(w) << (ok ? "" : " FAIL");
    }
    notes << '\n';
  }
  return count_report(CheckId::BandwidthOrdering, cfg, failures, notes.str());
}

CheckReport zoom_self_similarity(const CheckConfig& cfg, const SweepOptions& opts) {
  const auto params = make(OperatorKind::UKH, first(cfg.kappas, "kappas"),
                           first(cfg.lambdas, "lambdas"), first(cfg.alphas, "alphas"));
  const auto z = analysis::zoom(params, GridSpec::square(grid_n(cfg)), cfg.factors, cfg.center, opts);
  int failures = 0;
  std::ostringstream notes;
  notes << "center=" << fmt(z.center) << '\n';
  for (std::size_t k = 0; k < z.windows.size(); ++k) {
    const auto& win = z.windows[k];
    const bool ok = !win.points.empty() && z.band_counts[k] >= static_cast<std::size_t>(cfg.min_bands);
    failures += ok ? 0 : 1;
    notes << "window " << k << " [" << fmt(win.lo) << ", " << fmt(win.hi) << "] points=" << win.points.size()
          << " bands=" << z.band_counts[k] << (ok ? "" : " FAIL") << '\n';
  }
  return count_report(CheckId::ZoomSelfSimilarity, cfg, failures, notes.str());
}

double distance_to_integer(double v) { return std::abs(v - std::round(v)); }

CheckReport alpha_jump(const CheckConfig& cfg) {
  const double lambda = first(cfg.lambdas, "lambdas");
  const double target = std::sqrt(3.0) / 2.0 * std::abs(lambda);
  std::vector<std::array<double, 3>> triples;
  if (cfg.alphas.size() >= 2)
    triples.push_back({cfg.alphas[0].value(), cfg.alphas[1].value(),
                       cfg.thetas.empty() ? 0.0 : cfg.thetas.front()});
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Random draws stay 1e-3 away from the degenerate set so that the finite
  // n_max search window can resolve the supremum.
  while (static_cast<int>(triples.size()) < cfg.trials + (cfg.alphas.size() >= 2 ? 1 : 0)) {
    const double a1 = unit(rng), a2 = unit(rng), th = unit(rng);
    if (std::min({distance_to_integer(a1), distance_to_integer(a2), distance_to_integer(a1 + a2),
                  distance_to_integer(a1 - a2)}) < 1e-3)
      continue;
    triples.push_back({a1, a2, th});
  }
  Worst w;
  std::ostringstream notes;
  for (const auto& [a1, a2, th] : triples) {
    const double v = analysis::alpha_jump_witness(lambda, a1, a2, th, cfg.n_max);
    w.add(target - v, cfg.tolerance);
    notes << "alpha1=" << fmt(a1) << " alpha2=" << fmt(a2) << " theta=" << fmt(th)
          << " witness=" << fmt(v) << '\n';
  }
  return finish(CheckId::AlphaJump, cfg, w, notes.str());
}

}  // namespace

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& [id, name] : names()) v.push_back(id);
    return v;
  }();
  return ids;
}

std::string to_string(CheckId id) {
  for (const auto& [k, name] : names())
    if (k == id) return name;
  return "UNKNOWN";
}

CheckId parse_check_id(const std::string& text) {
  std::string norm;
  for (char c : text) norm.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (const auto& [id, name] : names())
    if (norm == name) return id;
  throw Error(ErrorCode::UnknownCheck, "unknown check id '" + text + "'");
}

RationalAlpha alpha_for_denominator(std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "denominator must be >= 1");
  if (q == 1) return RationalAlpha(0, 1);
  std::int64_t p = 1, d = 2;
  while (d < q) {
    const std::int64_t next = p + d;
    p = d;
    d = next;
  }
  return d == q ? RationalAlpha(p, q) : RationalAlpha(1, q);
}

CheckConfig default_config(CheckId id) {
  const std::vector<OperatorKind> all_kinds{OperatorKind::H, OperatorKind::UH, OperatorKind::UKH,
                                            OperatorKind::UORDKR};
  CheckConfig c;
  c.kappas = {1.0};
  c.lambdas = {1.0};
  switch (id) {
    case CheckId::ThetaPeriod:
    case CheckId::ThetaContinuity:
      c.kinds = all_kinds;
      c.q_values = {2, 3, 5, 13};
      c.grids = {32};
      c.trials = 50;
      c.seed = id == CheckId::ThetaPeriod ? 20261019 : 20261020;
      if (id == CheckId::ThetaContinuity) c.lipschitz = 2.0;
      break;
    case CheckId::MotherEquality:
      c.alphas = {RationalAlpha(8, 13), RationalAlpha(13, 41)};
      c.kappas = {0.5, 1.0, 2.0};
      c.grids = {40};
      break;
    case CheckId::SpectralMapping:
      c.alphas = {RationalAlpha(1, 2), RationalAlpha(8, 13)};
      c.grids = {20};
      c.tolerance = 1e-10;
      break;
    case CheckId::AubryAndre:
      c.alphas = {RationalAlpha(8, 13)};
      c.lambdas = {0.5, 2.0};
      c.grids = {40};
      c.tolerance = 1e-9;
      break;
    case CheckId::BandCount:
      c.q_values = {2, 3, 4, 5, 7, 8};
      c.grids = {200, 400};
      break;
    case CheckId::AlphaContinuity:
      c.alphas = {RationalAlpha(89, 144), RationalAlpha(144, 233)};
      c.grids = {10};
      break;
    case CheckId::KappaCubed:
      c.alphas = {RationalAlpha(8, 13)};
      c.kappas = {0.025, 0.05, 0.1};
      c.grids = {60};
      c.lower = 4.0;
      c.upper = 16.0;
      break;
    case CheckId::LastMeasureTrend:
      c.q_values = {5, 8, 13, 21, 34};
      c.lambdas = {1.0, 0.5, 2.0};
      c.grids = {40};
      break;
    case CheckId::GridRefinement:
      c.kinds = all_kinds;
      c.alphas = {RationalAlpha(8, 13)};
      c.thetas = {0.0};
      c.grids = {10, 20, 40};
      break;
    case CheckId::DcpEigensystem:
      for (std::int64_t q = 1; q <= 12; ++q) c.q_values.push_back(q);
      c.tolerance = 1e-10;
      break;
    case CheckId::PowerLaw:
    case CheckId::BandwidthOrdering:
      c.q_values = {13, 21, 34, 55, 89, 144, 233};
      c.grids = {16};
      if (id == CheckId::PowerLaw) {
        c.lower = -1.47;
        c.upper = -0.97;
      } else {
        c.lambdas = {1.0, 2.0 / 3.0, 1.2};
      }
      break;
    case CheckId::ZoomSelfSimilarity:
      c.alphas = {RationalAlpha(233, 377)};
      c.grids = {8};
      c.factors = {20.0, 10.0};
      c.min_bands = 2;
      break;
    case CheckId::AlphaJump:
      c.alphas = {RationalAlpha(1, 2), RationalAlpha(1, 3)};
      c.thetas = {0.0};
      c.trials = 20;
      c.seed = 20261021;
      c.n_max = 10000;
      c.tolerance = 1e-9;
      break;
  }
  return c;
}

std::string config_to_json(const CheckConfig& c) {
  json j;
  j["kinds"] = json::array();
  for (auto k : c.kinds) j["kinds"].push_back(operators::to_string(k));
  j["alphas"] = json::array();
  for (const auto& a : c.alphas) j["alphas"].push_back(a.str());
  j["kappas"] = c.kappas;
  j["lambdas"] = c.lambdas;
  j["thetas"] = c.thetas;
  j["grids"] = c.grids;
  j["q_values"] = c.q_values;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  j["lower"] = c.lower;
  j["upper"] = c.upper;
  j["factors"] = c.factors;
  j["center"] = c.center ? json(*c.center) : json(nullptr);
  j["n_max"] = c.n_max;
  j["min_bands"] = c.min_bands;
  j["lipschitz"] = c.lipschitz;
  return j.dump();
}

CheckConfig config_from_json(const std::string& text, const CheckConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("check config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "check config must be a JSON object");
  CheckConfig c = base;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "kinds") {
        c.kinds.clear();
        for (const auto& k : v) c.kinds.push_back(operators::parse_kind(k.get<std::string>()));
      } else if (key == "alphas") {
        c.alphas.clear();
        for (const auto& a : v) c.alphas.push_back(RationalAlpha::parse(a.get<std::string>()));
      } else if (key == "kappas") {
        c.kappas = v.get<std::vector<double>>();
      } else if (key == "lambdas") {
        c.lambdas = v.get<std::vector<double>>();
      } else if (key == "thetas") {
        c.thetas = v.get<std::vector<double>>();
      } else if (key == "grids") {
        c.grids = v.get<std::vector<int>>();
      } else if (key == "q_values") {
        c.q_values = v.get<std::vector<std::int64_t>>();
      } else if (key == "trials") {
        c.trials = v.get<int>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "tolerance") {
        c.tolerance = v.get<double>();
      } else if (key == "lower") {
        c.lower = v.get<double>();
      } else if (key == "upper") {
        c.upper = v.get<double>();
      } else if (key == "factors") {
        c.factors = v.get<std::vector<double>>();
      } else if (key == "center") {
        c.center = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      } else if (key == "n_max") {
        c.n_max = v.get<std::int64_t>();
      } else if (key == "lipschitz") {
        c.lipschitz = v.get<double>();
      } else if (key == "min_bands") {
        c.min_bands = v.get<int>();
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown check config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad check config value: ") + e.what());
  }
  return c;
}

std::string report_to_json(const CheckReport& r) {
  json j;
  j["check_id"] = r.check_id;
  j["params"] = json::parse(r.params);
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  j["measured"] = num(r.measured);
  j["bound"] = num(r.bound);
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  return j.dump(2);
}

CheckReport run_check(CheckId id, const CheckConfig& cfg, const SweepOptions& opts) {
  for (int n : cfg.grids)
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "grid sizes must be >= 1");
  switch (id) {
    case CheckId::ThetaPeriod: return theta_period(cfg, opts, false);
    case CheckId::ThetaContinuity: return theta_period(cfg, opts, true);
    case CheckId::MotherEquality: return mother_equality(cfg, opts);
    case CheckId::SpectralMapping: return spectral_mapping(cfg, opts);
    case CheckId::AubryAndre: return aubry_andre(cfg, opts);
    case CheckId::BandCount: return band_count(cfg, opts);
    case CheckId::AlphaContinuity: return alpha_continuity(cfg, opts);
    case CheckId::KappaCubed: return kappa_cubed(cfg, opts);
    case CheckId::LastMeasureTrend: return last_measure_trend(cfg, opts);
    case CheckId::GridRefinement: return grid_refinement(cfg, opts);
    case CheckId::DcpEigensystem: return dcp_eigensystem(cfg);
    case CheckId::PowerLaw: return power_law(cfg, opts);
    case CheckId::BandwidthOrdering: return bandwidth_ordering(cfg, opts);
    case CheckId::ZoomSelfSimilarity: return zoom_self_similarity(cfg, opts);
    case CheckId::AlphaJump: return alpha_jump(cfg);
  }
  throw Error(ErrorCode::UnknownCheck, "unhandled check id");
}

}  // namespace hofspec::checks
