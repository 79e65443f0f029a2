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

#include "hofspec/operators.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <shared_mutex>

#include "hofspec/errors.hpp"

namespace hofspec::operators {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// omega^n for n = 0..q-1, each from its own exact angle.
std::vector<Complex> roots_of_unity(std::int64_t q) {
  std::vector<Complex> w(static_cast<std::size_t>(q));
  for (std::int64_t n = 0; n < q; ++n)
    w[static_cast<std::size_t>(n)] = std::polar(1.0, kTwoPi * static_cast<double>(n) / q);
  return w;
}

void require_dimension(std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::InvalidDimension, "q must be >= 1, got " + std::to_string(q));
}

void require_kind(const OperatorParams& params, OperatorKind kind) {
  if (params.kind != kind)
    throw Error(ErrorCode::WrongKind, std::string("builder for kind ") + to_string(kind) +
                                                " called with kind " + to_string(params.kind));
}

double fixed_theta(const OperatorParams& params) {
  if (!params.theta)
    throw Error(ErrorCode::InvalidArgument,
                "mother parameters need an explicit (x, theta) phase point");
  return *params.theta;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

/// diag(exp(-i s cos 2 pi (y + k j / q))).
std::vector<Complex> exp_cos_diag(double s, std::int64_t k, double y, std::int64_t q) {
  const auto c = cos_diag_entries(k, y, q);
  std::vector<Complex> d(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) d[j] = std::polar(1.0, -s * c[j]);
  return d;
}

ComplexMatrix harper_matrix(const OperatorParams& params, PhasePoint at) {
  const std::int64_t q = params.alpha.q();
  const auto gx = cos_diag_entries(1, at.x, q);
  const auto gt = cos_diag_entries(params.alpha.p(), at.theta, q);
  std::vector<Complex> d(gt.size());
  for (std::size_t j = 0; j < gt.size(); ++j) d[j] = 2.0 * params.lambda * gt[j];
  ComplexMatrix h = fourier_conjugate_diagonal(d);
  for (std::int64_t j = 0; j < q; ++j) h(j, j) += 2.0 * gx[static_cast<std::size_t>(j)];
  // The circulant is Hermitian up to rounding; make it exact.
  ComplexMatrix sym = 0.5 * (h + h.adjoint());
  return sym;
}

}  // namespace

RationalAlpha::RationalAlpha(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "alpha denominator must be >= 1");
  if (p < 0 || p >= q)
    throw Error(ErrorCode::InvalidArgument, "alpha numerator must satisfy 0 <= p < q");
  if (std::gcd(p, q) != 1)
    throw Error(ErrorCode::NotCoprime,
                std::to_string(p) + "/" + std::to_string(q) + " is not in lowest terms");
}

RationalAlpha RationalAlpha::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "alpha must be written p/q, got '" + text + "'");
  std::int64_t p = 0, q = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto r1 = std::from_chars(b, b + slash, p);
  auto r2 = std::from_chars(b + slash + 1, e, q);
  if (r1.ec != std::errc{} || r1.ptr != b + slash || r2.ec != std::errc{} || r2.ptr != e)
    throw Error(ErrorCode::InvalidArgument, "alpha must be written p/q, got '" + text + "'");
  return RationalAlpha(p, q);
}

std::string RationalAlpha::str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

const char* to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::H: return "h";
    case OperatorKind::UH: return "uh";
    case OperatorKind::UKH: return "ukh";
    case OperatorKind::UORDKR: return "uordkr";
  }
  return "?";
}

OperatorKind parse_kind(const std::string& text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "h") return OperatorKind::H;
  if (t == "uh") return OperatorKind::UH;
  if (t == "ukh") return OperatorKind::UKH;
  if (t == "uordkr" || t == "ordkr") return OperatorKind::UORDKR;
  throw Error(ErrorCode::InvalidArgument, "unknown operator kind '" + text + "'");
}

double wrap_unit(double y) {
  double r = y - std::floor(y);
  if (r >= 1.0) r = 0.0;
  return r;
}

OperatorParams OperatorParams::normalized() const {
  require_finite(kappa, "kappa");
  require_finite(lambda, "lambda");
  OperatorParams out = *this;
  if (theta) {
    require_finite(*theta, "theta");
    out.theta = wrap_unit(*theta);
  }
  if (kind == OperatorKind::H) out.kappa = 0.0;
  return out;
}

ComplexMatrix dft_matrix(std::int64_t q) {
  require_dimension(q);
  const auto w = roots_of_unity(q);
  const double s = 1.0 / std::sqrt(static_cast<double>(q));
  ComplexMatrix f(q, q);
  for (std::int64_t j = 0; j < q; ++j)
    for (std::int64_t k = 0; k < q; ++k) f(j, k) = s * w[static_cast<std::size_t>(mod(j * k, q))];
  return f;
}

ClockShift clock_shift(std::int64_t q) {
  require_dimension(q);
  const auto w = roots_of_unity(q);
  ClockShift cs{ComplexMatrix::Zero(q, q), ComplexMatrix::Zero(q, q)};
  for (std::int64_t j = 0; j < q; ++j) {
    cs.shift(j, mod(j + 1, q)) = 1.0;
    cs.clock(j, j) = w[static_cast<std::size_t>(j)];
  }
  return cs;
}

std::vector<double> cos_diag_entries(std::int64_t k, double y, std::int64_t q) {
  require_dimension(q);
  const double base = wrap_unit(y);
  std::vector<double> out(static_cast<std::size_t>(q));
  for (std::int64_t j = 0; j < q; ++j) {
    const double shift = static_cast<double>(mod(k * j, q)) / static_cast<double>(q);
    out[static_cast<std::size_t>(j)] = std::cos(kTwoPi * (base + shift));
  }
  return out;
}

HermitianMatrix cos_diag(std::int64_t k, double y, std::int64_t q) {
  const auto c = cos_diag_entries(k, y, q);
  ComplexMatrix g = ComplexMatrix::Zero(q, q);
  for (std::int64_t j = 0; j < q; ++j) g(j, j) = c[static_cast<std::size_t>(j)];
  return HermitianMatrix(std::move(g));
}

ComplexMatrix fourier_conjugate_diagonal(const std::vector<Complex>& d) {
  const auto q = static_cast<std::int64_t>(d.size());
  require_dimension(q);
  const auto w = roots_of_unity(q);
  std::vector<Complex> c(d.size());
  for (std::int64_t r = 0; r < q; ++r) {
    Complex acc = 0.0;
    for (std::int64_t m = 0; m < q; ++m)
      acc += d[static_cast<std::size_t>(m)] * w[static_cast<std::size_t>(mod(r * m, q))];
    c[static_cast<std::size_t>(r)] = acc / static_cast<double>(q);
  }
  ComplexMatrix out(q, q);
  for (std::int64_t j = 0; j < q; ++j)
    for (std::int64_t k = 0; k < q; ++k) out(j, k) = c[static_cast<std::size_t>(mod(j - k, q))];
  return out;
}

HermitianMatrix harper_hermitian(const OperatorParams& params, double x) {
  return harper_hermitian(params, PhasePoint{x, fixed_theta(params)});
}

HermitianMatrix harper_hermitian(const OperatorParams& params, PhasePoint at) {
  require_kind(params, OperatorKind::H);
  require_finite(params.lambda, "lambda");
  return HermitianMatrix(harper_matrix(params, at));
}

UnitaryMatrix unitary_harper(const OperatorParams& params, double x) {
  return unitary_harper(params, PhasePoint{x, fixed_theta(params)});
}

UnitaryMatrix unitary_harper(const OperatorParams& params, PhasePoint at) {
  require_kind(params, OperatorKind::UH);
  require_finite(params.kappa, "kappa");
  require_finite(params.lambda, "lambda");
  return linalg::expm_i_hermitian(HermitianMatrix(harper_matrix(params, at)), params.kappa);
}

UnitaryMatrix kicked_harper(const OperatorParams& params, double x) {
  return kicked_harper(params, PhasePoint{x, fixed_theta(params)});
}

UnitaryMatrix kicked_harper(const OperatorParams& params, PhasePoint at) {
  require_kind(params, OperatorKind::UKH);
  require_finite(params.kappa, "kappa");
  require_finite(params.lambda, "lambda");
  const std::int64_t q = params.alpha.q();
  const auto left = exp_cos_diag(2.0 * params.kappa, 1, at.x, q);
  const auto right =
      exp_cos_diag(2.0 * params.kappa * params.lambda, params.alpha.p(), at.theta, q);
  ComplexMatrix m = fourier_conjugate_diagonal(right);
  for (std::int64_t j = 0; j < q; ++j) m.row(j) *= left[static_cast<std::size_t>(j)];
  return UnitaryMatrix::trusted(std::move(m));
}

DcpEigensystem build_dcp_eigensystem(const RationalAlpha& alpha) {
  const std::int64_t p = alpha.p(), q = alpha.q();
  // Phases are tracked as integers in units of 2 pi / (2q), so every entry is
  // an exactly reduced root of unity of order 2q.
  const std::int64_t two_q = 2 * q;
  const bool odd = (p * (q - 1)) % 2 != 0;
  const std::int64_t mu_units = odd ? 1 : 0;

  DcpEigensystem es;
  es.phi = odd ? 1.0 / static_cast<double>(two_q) : 0.0;
  es.values.resize(static_cast<std::size_t>(q));
  for (std::int64_t k = 0; k < q; ++k)
    es.values[static_cast<std::size_t>(k)] =
        std::polar(1.0, std::numbers::pi * static_cast<double>(mod(mu_units + 2 * k, two_q)) / q);

  // u_{(m p) mod q} = omega^{-p m (m-1)/2} nu^m u_0, with u_0 = 1/sqrt(q).
  es.vectors = ComplexMatrix(q, q);
  const double s = 1.0 / std::sqrt(static_cast<double>(q));
  for (std::int64_t m = 0; m < q; ++m) {
    const std::int64_t row = mod(m * p, q);
    const std::int64_t chirp = mod(-p * mod(m * (m - 1), two_q), two_q);
    for (std::int64_t k = 0; k < q; ++k) {
      const std::int64_t units = mod(chirp + mu_units * m + 2 * mod(k * m, q), two_q);
      es.vectors(row, k) = std::polar(s, std::numbers::pi * static_cast<double>(units) / q);
    }
  }
  return es;
}

const DcpEigensystem& dcp_eigensystem(const RationalAlpha& alpha) {
  static std::shared_mutex mutex;
  static std::map<std::pair<std::int64_t, std::int64_t>, std::unique_ptr<DcpEigensystem>> memo;
  const auto key = std::make_pair(alpha.p(), alpha.q());
  {
    std::shared_lock lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return *it->second;
  }
  auto built = std::make_unique<DcpEigensystem>(build_dcp_eigensystem(alpha));
  std::unique_lock lock(mutex);
  auto [it, inserted] = memo.try_emplace(key, std::move(built));
  return *it->second;
}

UnitaryMatrix ordkr(const OperatorParams& params, double x) {
  return ordkr(params, PhasePoint{x, fixed_theta(params)});
}

UnitaryMatrix ordkr(const OperatorParams& params, PhasePoint at) {
  require_kind(params, OperatorKind::UORDKR);
  require_finite(params.kappa, "kappa");
  require_finite(params.lambda, "lambda");
  const std::int64_t q = params.alpha.q();
  const DcpEigensystem& es = dcp_eigensystem(params.alpha);
  const double beta = at.x + at.theta + 0.5 * params.alpha.value() + es.phi;

  const auto left = exp_cos_diag(2.0 * params.kappa, 1, at.x, q);
  const auto mid = exp_cos_diag(2.0 * params.kappa * params.lambda, 1, beta, q);
  linalg::ComplexVector d(q);
  for (std::int64_t j = 0; j < q; ++j) d(j) = mid[static_cast<std::size_t>(j)];
  ComplexMatrix m = es.vectors * d.asDiagonal() * es.vectors.adjoint();
  for (std::int64_t j = 0; j < q; ++j) m.row(j) *= left[static_cast<std::size_t>(j)];
  return UnitaryMatrix::trusted(std::move(m));
}

UnitaryMatrix unitary_image(const OperatorParams& params, PhasePoint at) {
  switch (params.kind) {
    case OperatorKind::UH: return unitary_harper(params, at);
    case OperatorKind::UKH: return kicked_harper(params, at);
    case OperatorKind::UORDKR: return ordkr(params, at);
    case OperatorKind::H: break;
  }
  throw Error(ErrorCode::WrongKind, "kind h has no unitary image; use harper_hermitian");
}

}  // namespace hofspec::operators
