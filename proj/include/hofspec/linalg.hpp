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

// Dense complex matrices and the eigensolvers used by every spectrum sweep.
// Hermitian input goes through a tridiagonal QR solver, unitary input through
// a complex Schur factorization; both are provided by Eigen.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace hofspec::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct Tolerances {
  double hermitian = 1e-12;     // relative to ||A||_max
  double unitary = 1e-10;       // ||A A* - I||_max
  double eig_residual = 1e-10;  // relative to ||A||_2

  bool operator==(const Tolerances&) const = default;
};

double max_abs(const ComplexMatrix& a);

/// Largest singular value.
double norm2(const ComplexMatrix& a);

/// FNV-1a over the raw entries; used to identify a matrix in diagnostics.
std::uint64_t matrix_hash(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = Tolerances{}.hermitian);
bool is_unitary(const ComplexMatrix& a, double tol = Tolerances{}.unitary);

class HermitianMatrix {
 public:
  /// Throws NonHermitian when ||A - A*||_max exceeds tol * ||A||_max.
  explicit HermitianMatrix(ComplexMatrix a, double tol = Tolerances{}.hermitian);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

class UnitaryMatrix {
 public:
  /// Throws NonUnitary when ||A A* - I||_max exceeds tol.
  explicit UnitaryMatrix(ComplexMatrix a, double tol = Tolerances{}.unitary);

  /// For matrices that are unitary by construction (products of unitary
  /// factors). Skips the O(q^3) check; eig_unitary still rejects non-normal
  /// input through its Schur residual.
  static UnitaryMatrix trusted(ComplexMatrix a);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  struct TrustedTag {};
  UnitaryMatrix(ComplexMatrix a, TrustedTag) : m_(std::move(a)) {}
  ComplexMatrix m_;
};

struct EigenDecomposition {
  std::vector<Complex> values;
  /// Columns are eigenvectors in the order of `values`.
  std::optional<ComplexMatrix> vectors;
};

/// Ascending real eigenvalues; orthonormal eigenvectors when requested.
EigenDecomposition eig_hermitian(const HermitianMatrix& a, bool want_vectors,
                                 const Tolerances& tol = {});

/// Unit-modulus eigenvalues sorted by principal argument in (-pi, pi], ties
/// by imaginary part. Each value is renormalized to |z| = 1.
EigenDecomposition eig_unitary(const UnitaryMatrix& u, bool want_vectors,
                               const Tolerances& tol = {});

/// exp(-i s A) for Hermitian A, formed as V exp(-i s Lambda) V*.
UnitaryMatrix expm_i_hermitian(const HermitianMatrix& a, double s, const Tolerances& tol = {});

/// Principal argument folded into (-pi, pi].
double principal_arg(Complex z);

/// Ordering used for every unit-circle point list.
bool circle_less(Complex a, Complex b);

}  // namespace hofspec::linalg
