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

#include "hofspec/hofspec.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "hofspec/checks.hpp"
#include "hofspec/errors.hpp"
#include "hofspec/io.hpp"

using namespace hofspec;

struct hofspec_spectrum {
  spectra::SpectrumSet set;
};
struct hofspec_bands {
  spectra::BandList list;
};
struct hofspec_report {
  checks::CheckReport report;
  std::string json;
};
struct hofspec_zoom {
  analysis::ZoomResult result;
};

namespace {

thread_local std::string g_last_error;

hofspec_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotCoprime: return HOFSPEC_NOT_COPRIME;
    case ErrorCode::NonHermitian:
    case ErrorCode::NonUnitary:
    case ErrorCode::NoConvergence: return HOFSPEC_NUMERICAL;
    case ErrorCode::WrongKind:
    case ErrorCode::KindMismatch: return HOFSPEC_KIND_MISMATCH;
    case ErrorCode::EmptySpectrum: return HOFSPEC_EMPTY;
    case ErrorCode::UnknownCheck: return HOFSPEC_UNKNOWN_CHECK;
    case ErrorCode::Io: return HOFSPEC_IO;
    default: return HOFSPEC_INVALID_ARGUMENT;
  }
}

template <class F>
hofspec_status guard(F&& body) {
  try {
    body();
    return HOFSPEC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HOFSPEC_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HOFSPEC_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return HOFSPEC_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

operators::OperatorKind kind_of(int k) {
  switch (k) {
    case HOFSPEC_KIND_H: return operators::OperatorKind::H;
    case HOFSPEC_KIND_UH: return operators::OperatorKind::UH;
    case HOFSPEC_KIND_UKH: return operators::OperatorKind::UKH;
    case HOFSPEC_KIND_UORDKR: return operators::OperatorKind::UORDKR;
    default: throw Error(ErrorCode::InvalidArgument, "unknown operator kind " + std::to_string(k));
  }
}

int kind_code(operators::OperatorKind k) {
  switch (k) {
    case operators::OperatorKind::H: return HOFSPEC_KIND_H;
    case operators::OperatorKind::UH: return HOFSPEC_KIND_UH;
    case operators::OperatorKind::UKH: return HOFSPEC_KIND_UKH;
    case operators::OperatorKind::UORDKR: return HOFSPEC_KIND_UORDKR;
  }
  return HOFSPEC_KIND_H;
}

operators::OperatorParams params_of(const hofspec_params* p) {
  require(p != nullptr, "params is NULL");
  operators::OperatorParams out{kind_of(p->kind), p->kappa, p->lambda,
                                operators::RationalAlpha(p->p, p->q), std::nullopt};
  if (!p->theta_mother) out.theta = p->theta;
  return out;
}

spectra::GridSpec grid_of(const hofspec_grid* g) {
  require(g != nullptr, "grid is NULL");
  spectra::GridSpec out{g->n_x, g->n_theta};
  out.validate();
  return out;
}

spectra::SweepOptions options_of(const hofspec_options* o) {
  spectra::SweepOptions out;
  if (!o) return out;
  require(o->threads >= 0, "threads must be >= 0");
  out.threads = o->threads;
  out.tol.hermitian = o->tol_hermitian;
  out.tol.unitary = o->tol_unitary;
  out.tol.eig_residual = o->tol_eig_residual;
  require(out.tol.hermitian > 0 && out.tol.unitary > 0 && out.tol.eig_residual > 0,
          "tolerances must be positive");
  return out;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* hofspec_version(void) { return io::kVersion; }

const char* hofspec_last_error(void) { return g_last_error.c_str(); }

const char* hofspec_status_string(hofspec_status status) {
  switch (status) {
    case HOFSPEC_OK: return "ok";
    case HOFSPEC_INVALID_ARGUMENT: return "invalid argument";
    case HOFSPEC_NOT_COPRIME: return "not coprime";
    case HOFSPEC_NUMERICAL: return "numerical failure";
    case HOFSPEC_IO: return "i/o failure";
    case HOFSPEC_KIND_MISMATCH: return "kind mismatch";
    case HOFSPEC_EMPTY: return "empty spectrum";
    case HOFSPEC_UNKNOWN_CHECK: return "unknown check";
    case HOFSPEC_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void hofspec_options_default(hofspec_options* opts) {
  if (!opts) return;
  const linalg::Tolerances tol;
  opts->threads = 0;
  opts->tol_hermitian = tol.hermitian;
  opts->tol_unitary = tol.unitary;
  opts->tol_eig_residual = tol.eig_residual;
}

hofspec_status hofspec_parse_kind(const char* text, int* kind) {
  return guard([&] {
    require(text && kind, "NULL argument");
    *kind = kind_code(operators::parse_kind(text));
  });
}

hofspec_status hofspec_parse_alpha(const char* text, int64_t* p, int64_t* q) {
  return guard([&] {
    require(text && p && q, "NULL argument");
    const auto a = operators::RationalAlpha::parse(text);
    *p = a.p();
    *q = a.q();
  });
}

hofspec_status hofspec_format_real(double v, char* buf, size_t cap) {
  return guard([&] {
    require(buf != nullptr, "NULL buffer");
    const std::string s = io::format_real(v);
    require(s.size() + 1 <= cap, "buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

hofspec_status hofspec_spectrum_compute(const hofspec_params* params, const hofspec_grid* grid,
                                        const hofspec_options* opts, hofspec_spectrum** out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new hofspec_spectrum{spectra::compute_spectrum(params_of(params), grid_of(grid), options_of(opts))};
  });
}

hofspec_status hofspec_spectrum_compute_cached(const hofspec_params* params, const hofspec_grid* grid,
                                               const hofspec_options* opts, const char* cache_dir,
                                               int* hit, hofspec_spectrum** out) {
  return guard([&] {
    require(out && cache_dir, "NULL argument");
    bool h = false;
    *out = new hofspec_spectrum{
        io::cached_spectrum(cache_dir, params_of(params), grid_of(grid), options_of(opts), &h)};
    if (hit) *hit = h ? 1 : 0;
  });
}

void hofspec_spectrum_free(hofspec_spectrum* s) { delete s; }

size_t hofspec_spectrum_size(const hofspec_spectrum* s) { return s ? s->set.size() : 0; }

int hofspec_spectrum_is_circle(const hofspec_spectrum* s) {
  return s && s->set.kind() == spectra::SpectrumKind::UnitCircle ? 1 : 0;
}

double hofspec_spectrum_error_bound(const hofspec_spectrum* s) { return s ? s->set.error_bound() : NAN; }

hofspec_status hofspec_spectrum_params(const hofspec_spectrum* s, hofspec_params* out) {
  return guard([&] {
    require(s && out, "NULL argument");
    const auto& p = s->set.params();
    out->kind = kind_code(p.kind);
    out->kappa = p.kappa;
    out->lambda = p.lambda;
    out->p = p.alpha.p();
    out->q = p.alpha.q();
    out->theta_mother = p.is_mother() ? 1 : 0;
    out->theta = p.theta.value_or(0.0);
  });
}

hofspec_status hofspec_spectrum_points(const hofspec_spectrum* s, double* re, double* im, size_t cap) {
  return guard([&] {
    require(s && re && im, "NULL argument");
    require(cap >= s->set.size(), "buffer too small");
    for (std::size_t i = 0; i < s->set.size(); ++i) {
      re[i] = s->set.points()[i].real();
      im[i] = s->set.points()[i].imag();
    }
  });
}

hofspec_status hofspec_spectrum_eigenphases(const hofspec_spectrum* s, double* out, size_t cap) {
  return guard([&] {
    require(s && out, "NULL argument");
    const auto ph = spectra::eigenphases(s->set);
    require(cap >= ph.size(), "buffer too small");
    std::copy(ph.begin(), ph.end(), out);
  });
}

hofspec_status hofspec_spectrum_write_csv(const hofspec_spectrum* s, const char* path) {
  return guard([&] {
    require(s && path, "NULL argument");
    io::write_spectrum_csv(s->set, path);
  });
}

hofspec_status hofspec_spectrum_read_csv(const char* path, hofspec_spectrum** out) {
  return guard([&] {
    require(path && out, "NULL argument");
    *out = new hofspec_spectrum{io::read_spectrum_csv(path)};
  });
}

hofspec_status hofspec_rings_write_svg(const hofspec_spectrum* const* rings, size_t n, const char* path) {
  return guard([&] {
    require(path != nullptr && (n == 0 || rings != nullptr), "NULL argument");
    std::vector<spectra::SpectrumSet> sets;
    for (size_t i = 0; i < n; ++i) {
      require(rings[i] != nullptr, "NULL spectrum in ring list");
      sets.push_back(rings[i]->set);
    }
    io::write_rings_svg(sets, path);
  });
}

hofspec_status hofspec_hausdorff(const hofspec_spectrum* a, const hofspec_spectrum* b, int arc_metric,
                                 double* out) {
  return guard([&] {
    require(a && b && out, "NULL argument");
    *out = analysis::hausdorff(a->set, b->set,
                               arc_metric ? analysis::CircleMetric::Arc : analysis::CircleMetric::Chordal);
  });
}

hofspec_status hofspec_grid_error_bound(const hofspec_params* params, const hofspec_grid* grid, double* out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = spectra::grid_error_bound(params_of(params), grid_of(grid));
  });
}

hofspec_status hofspec_bands_merge(const hofspec_spectrum* s, double merge_gap, hofspec_bands** out) {
  return guard([&] {
    require(s && out, "NULL argument");
    require(!std::isnan(merge_gap), "merge gap is NaN");
    const double gap = merge_gap < 0 ? spectra::default_merge_gap(s->set) : merge_gap;
    *out = new hofspec_bands{spectra::merge_bands(s->set, gap)};
  });
}

hofspec_status hofspec_bands_index(const hofspec_params* params, const hofspec_grid* grid,
                                   const hofspec_options* opts, hofspec_bands** out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = new hofspec_bands{spectra::index_bands(params_of(params), grid_of(grid), options_of(opts))};
  });
}

void hofspec_bands_free(hofspec_bands* b) { delete b; }

size_t hofspec_bands_count(const hofspec_bands* b) { return b ? b->list.bands.size() : 0; }

hofspec_status hofspec_bands_get(const hofspec_bands* b, size_t i, double* lo, double* hi) {
  return guard([&] {
    require(b && lo && hi, "NULL argument");
    require(i < b->list.bands.size(), "band index out of range");
    *lo = b->list.bands[i].lo;
    *hi = b->list.bands[i].hi;
  });
}

double hofspec_bands_total_width(const hofspec_bands* b) { return b ? analysis::total_bandwidth(b->list) : NAN; }

double hofspec_bands_merge_gap(const hofspec_bands* b) { return b ? b->list.merge_gap : NAN; }

size_t hofspec_bands_count_in_window(const hofspec_bands* b, double lo, double hi) {
  return b ? analysis::count_bands_in_window(b->list, lo, hi) : 0;
}

hofspec_status hofspec_golden_convergents(int count, int64_t* p, int64_t* q) {
  return guard([&] {
    require(p && q, "NULL argument");
    const auto v = analysis::golden_convergents(count);
    for (std::size_t i = 0; i < v.size(); ++i) {
      p[i] = v[i].p();
      q[i] = v[i].q();
    }
  });
}

hofspec_status hofspec_farey(int64_t q_max, int64_t* p, int64_t* q, size_t cap, size_t* n) {
  return guard([&] {
    require(n != nullptr && (cap == 0 || (p && q)), "NULL argument");
    const auto v = analysis::farey_rationals(q_max);
    *n = v.size();
    for (std::size_t i = 0; i < v.size() && i < cap; ++i) {
      p[i] = v[i].p();
      q[i] = v[i].q();
    }
  });
}

hofspec_status hofspec_powerlaw_fit(const int64_t* q, const double* w, size_t n, double* prefactor,
                                    double* exponent, double* residual) {
  return guard([&] {
    require(n == 0 || (q && w), "NULL argument");
    std::vector<std::pair<std::int64_t, double>> samples;
    for (size_t i = 0; i < n; ++i) samples.emplace_back(q[i], w[i]);
    const auto fit = analysis::powerlaw_fit(samples);
    if (prefactor) *prefactor = fit.prefactor;
    if (exponent) *exponent = fit.exponent;
    if (residual) *residual = fit.residual;
  });
}

hofspec_status hofspec_butterfly_write_csv(int kind, double kappa, double lambda, int64_t q_max, int grid_n,
                                           const hofspec_options* opts, const char* path, size_t* rows) {
  return guard([&] {
    require(path != nullptr, "path is NULL");
    const auto ds = analysis::butterfly(kind_of(kind), kappa, lambda, q_max, grid_n, options_of(opts));
    io::write_atomic(path, io::butterfly_csv(ds));
    if (rows) *rows = ds.rows.size();
  });
}

hofspec_status hofspec_phase_median(const double* phases, size_t n, double* out) {
  return guard([&] {
    require(out != nullptr && (n == 0 || phases), "NULL argument");
    *out = analysis::phase_median(std::vector<double>(phases, phases + n));
  });
}

hofspec_status hofspec_alpha_jump_witness(double lambda, double alpha1, double alpha2, double theta,
                                          int64_t n_max, double* out) {
  return guard([&] {
    require(out != nullptr, "out is NULL");
    *out = analysis::alpha_jump_witness(lambda, alpha1, alpha2, theta, n_max);
  });
}

hofspec_status hofspec_zoom_run(const hofspec_params* params, const hofspec_grid* grid, const double* factors,
                                size_t n_factors, const double* center, const hofspec_options* opts,
                                hofspec_zoom** out) {
  return guard([&] {
    require(out != nullptr && (n_factors == 0 || factors), "NULL argument");
    std::optional<double> c;
    if (center) c = *center;
    *out = new hofspec_zoom{analysis::zoom(params_of(params), grid_of(grid),
                                           std::vector<double>(factors, factors + n_factors), c,
                                           options_of(opts))};
  });
}

void hofspec_zoom_free(hofspec_zoom* z) { delete z; }

double hofspec_zoom_center(const hofspec_zoom* z) { return z ? z->result.center : NAN; }

size_t hofspec_zoom_window_count(const hofspec_zoom* z) { return z ? z->result.windows.size() : 0; }

hofspec_status hofspec_zoom_window(const hofspec_zoom* z, size_t i, double* lo, double* hi, size_t* n_points,
                                   size_t* n_bands) {
  return guard([&] {
    require(z != nullptr, "zoom is NULL");
    require(i < z->result.windows.size(), "window index out of range");
    const auto& w = z->result.windows[i];
    if (lo) *lo = w.lo;
    if (hi) *hi = w.hi;
    if (n_points) *n_points = w.points.size();
    if (n_bands) *n_bands = z->result.band_counts[i];
  });
}

hofspec_status hofspec_zoom_window_points(const hofspec_zoom* z, size_t i, double* out, size_t cap) {
  return guard([&] {
    require(z && out, "NULL argument");
    require(i < z->result.windows.size(), "window index out of range");
    const auto& pts = z->result.windows[i].points;
    require(cap >= pts.size(), "buffer too small");
    std::copy(pts.begin(), pts.end(), out);
  });
}

size_t hofspec_check_count(void) { return checks::all_checks().size(); }

const char* hofspec_check_name(size_t i) {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto id : checks::all_checks()) v.push_back(checks::to_string(id));
    return v;
  }();
  return i < names.size() ? names[i].c_str() : nullptr;
}

hofspec_status hofspec_check_default_config(const char* check_id, char** json_out) {
  return guard([&] {
    require(check_id && json_out, "NULL argument");
    *json_out = dup_string(checks::config_to_json(checks::default_config(checks::parse_check_id(check_id))));
  });
}

hofspec_status hofspec_check_run(const char* check_id, const char* config_json, const hofspec_options* opts,
                                 hofspec_report** out) {
  return guard([&] {
    require(check_id && out, "NULL argument");
    const auto id = checks::parse_check_id(check_id);
    auto cfg = checks::default_config(id);
    if (config_json) cfg = checks::config_from_json(config_json, cfg);
    auto report = checks::run_check(id, cfg, options_of(opts));
    std::string json = checks::report_to_json(report);
    *out = new hofspec_report{std::move(report), std::move(json)};
  });
}

void hofspec_report_free(hofspec_report* r) { delete r; }

const char* hofspec_report_check_id(const hofspec_report* r) { return r ? r->report.check_id.c_str() : ""; }

int hofspec_report_pass(const hofspec_report* r) { return r && r->report.pass ? 1 : 0; }

double hofspec_report_measured(const hofspec_report* r) { return r ? r->report.measured : NAN; }

double hofspec_report_bound(const hofspec_report* r) { return r ? r->report.bound : NAN; }

const char* hofspec_report_notes(const hofspec_report* r) { return r ? r->report.notes.c_str() : ""; }

const char* hofspec_report_json(const hofspec_report* r) { return r ? r->json.c_str() : ""; }

hofspec_status hofspec_cache_key(const hofspec_params* params, const hofspec_grid* grid,
                                 const hofspec_options* opts, char* buf, size_t cap) {
  return guard([&] {
    require(buf != nullptr, "NULL buffer");
    const std::string key = io::cache_key(params_of(params), grid_of(grid), options_of(opts).tol);
    require(key.size() + 1 <= cap, "buffer too small");
    std::memcpy(buf, key.c_str(), key.size() + 1);
  });
}

hofspec_status hofspec_cache_clear(const char* cache_dir, size_t* removed) {
  return guard([&] {
    require(cache_dir != nullptr, "cache_dir is NULL");
    const std::size_t n = io::cache_clear(cache_dir);
    if (removed) *removed = n;
  });
}

void hofspec_string_free(char* s) { delete[] s; }

}  // extern "C"
