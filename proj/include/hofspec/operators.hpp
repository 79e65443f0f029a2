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

// q x q images of the almost Mathieu, unitary Harper, kicked Harper and
// on-resonance double kicked rotor operators at rational frequency p/q.
//
// With omega = exp(2 pi i / q):
//   F[j][k] = omega^{jk} / sqrt(q)            discrete Fourier transform
//   C[j][(j+1) mod q] = 1                     cyclic shift, C = F D F^{-1}
//   D = diag(1, omega, ..., omega^{q-1})      clock
//   G(k, y) = diag(cos 2 pi (y + k j / q))
// The representation at base point x sends the position generator to
// e^{2 pi i x} D and the rotation by p/q to C^p = F D^p F^{-1}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hofspec/linalg.hpp"

namespace hofspec::operators {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::HermitianMatrix;
using linalg::UnitaryMatrix;

/// Reduced fraction p/q with 0 <= p < q, or 0/1.
class RationalAlpha {
 public:
  /// Throws NotCoprime when gcd(p, q) != 1 and InvalidArgument when out of range.
  RationalAlpha(std::int64_t p, std::int64_t q);

  /// Parses "p/q".
  static RationalAlpha parse(const std::string& text);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
  std::string str() const;

  bool operator==(const RationalAlpha&) const = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

enum class OperatorKind { H, UH, UKH, UORDKR };

const char* to_string(OperatorKind kind);
/// Accepts h, uh, ukh, uordkr in any case.
OperatorKind parse_kind(const std::string& text);

struct OperatorParams {
  OperatorKind kind = OperatorKind::H;
  double kappa = 0.0;
  double lambda = 1.0;
  RationalAlpha alpha{0, 1};
  /// nullopt selects the mother operator (union over theta).
  std::optional<double> theta;

  bool is_mother() const { return !theta.has_value(); }

  /// Checks finiteness, reduces theta mod 1 and zeroes kappa for kind H.
  OperatorParams normalized() const;
};

/// Phase point (x, theta) at which a q x q image is evaluated.
struct PhasePoint {
  double x = 0.0;
  double theta = 0.0;
};

/// Eigenbasis of D C^p: D C^p E = E diag(values), mu = exp(2 pi i phi).
struct DcpEigensystem {
  std::vector<Complex> values;
  ComplexMatrix vectors;
  double phi = 0.0;
};

ComplexMatrix dft_matrix(std::int64_t q);

struct ClockShift {
  ComplexMatrix shift;  // C
  ComplexMatrix clock;  // D
};
ClockShift clock_shift(std::int64_t q);

/// G(k, y) as a dense diagonal matrix.
HermitianMatrix cos_diag(std::int64_t k, double y, std::int64_t q);
/// Diagonal of G(k, y).
std::vector<double> cos_diag_entries(std::int64_t k, double y, std::int64_t q);

/// F diag(d) F^{-1}, a circulant; built in O(q^2).
ComplexMatrix fourier_conjugate_diagonal(const std::vector<Complex>& d);

/// 2 G(1,x) + 2 lambda F G(p,theta) F^{-1}.
HermitianMatrix harper_hermitian(const OperatorParams& params, double x);
HermitianMatrix harper_hermitian(const OperatorParams& params, PhasePoint at);

/// exp(-i kappa H(x, theta)).
UnitaryMatrix unitary_harper(const OperatorParams& params, double x);
UnitaryMatrix unitary_harper(const OperatorParams& params, PhasePoint at);

/// exp(-2i kappa G(1,x)) F exp(-2i kappa lambda G(p,theta)) F^{-1}.
UnitaryMatrix kicked_harper(const OperatorParams& params, double x);
UnitaryMatrix kicked_harper(const OperatorParams& params, PhasePoint at);

/// Closed-form eigensystem of D C^p. Results are memoized per (p, q).
const DcpEigensystem& dcp_eigensystem(const RationalAlpha& alpha);
/// Same construction without the memo table.
DcpEigensystem build_dcp_eigensystem(const RationalAlpha& alpha);

/// exp(-2i kappa G(1,x)) E diag(exp(-2i kappa lambda cos 2 pi (beta + j/q))) E^{-1}
/// with beta = x + theta + alpha/2 + phi.
UnitaryMatrix ordkr(const OperatorParams& params, double x);
UnitaryMatrix ordkr(const OperatorParams& params, PhasePoint at);

/// Unitary image for params.kind (UH, UKH or UORDKR) at the phase point.
UnitaryMatrix unitary_image(const OperatorParams& params, PhasePoint at);

/// Reduces a real number into [0, 1).
double wrap_unit(double y);

}  // namespace hofspec::operators
