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

#include "hofspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hofspec/errors.hpp"

namespace hofspec::linalg {

namespace {

std::string describe(const ComplexMatrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols() << " matrix, hash " << std::hex << matrix_hash(a);
  return os.str();
}

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw Error(ErrorCode::InvalidDimension, "expected a non-empty square matrix");
  if (!a.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
}

std::vector<std::size_t> sorted_order(const std::vector<Complex>& v, bool on_circle) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (on_circle) return circle_less(v[i], v[j]);
    if (v[i].real() != v[j].real()) return v[i].real() < v[j].real();
    return v[i].imag() < v[j].imag();
  });
  return order;
}

}  // namespace

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double norm2(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

std::uint64_t matrix_hash(const ComplexMatrix& a) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double d) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &d, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  };
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      mix(a(i, j).real());
      mix(a(i, j).imag());
    }
  return h;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = max_abs(a);
  return max_abs(a - a.adjoint()) <= tol * scale;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const ComplexMatrix gram = a * a.adjoint();
  return max_abs(gram - ComplexMatrix::Identity(a.rows(), a.cols())) <= tol;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix a, double tol) : m_(std::move(a)) {
  require_square(m_);
  if (!is_hermitian(m_, tol))
    throw Error(ErrorCode::NonHermitian, "||A - A*||_max exceeds tolerance for " + describe(m_));
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix a, double tol) : m_(std::move(a)) {
  require_square(m_);
  if (!is_unitary(m_, tol))
    throw Error(ErrorCode::NonUnitary, "||A A* - I||_max exceeds tolerance for " + describe(m_));
}

UnitaryMatrix UnitaryMatrix::trusted(ComplexMatrix a) {
  require_square(a);
  return UnitaryMatrix(std::move(a), TrustedTag{});
}

double principal_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

bool circle_less(Complex a, Complex b) {
  const double pa = principal_arg(a), pb = principal_arg(b);
  if (pa != pb) return pa < pb;
  return a.imag() < b.imag();
}

EigenDecomposition eig_hermitian(const HermitianMatrix& a, bool want_vectors,
                                 const Tolerances& tol) {
  const ComplexMatrix& m = a.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence,
                "Hermitian QR iteration budget exhausted for " + describe(m));

  const Eigen::VectorXd& w = solver.eigenvalues();
  EigenDecomposition out;
  out.values.reserve(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) out.values.emplace_back(w(i), 0.0);

  // Eigen already returns ascending values; keep the explicit sort so the
  // ordering contract does not hinge on the backend.
  const auto order = sorted_order(out.values, false);
  std::vector<Complex> sorted(out.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = out.values[order[i]];
  out.values = std::move(sorted);

  if (want_vectors) {
    const ComplexMatrix& v = solver.eigenvectors();
    ComplexMatrix vs(v.rows(), v.cols());
    for (std::size_t i = 0; i < order.size(); ++i)
      vs.col(static_cast<Eigen::Index>(i)) = v.col(static_cast<Eigen::Index>(order[i]));

    const double scale = std::max(std::abs(out.values.front().real()),
                                  std::abs(out.values.back().real()));
    for (Eigen::Index k = 0; k < vs.cols(); ++k) {
      const double lam = out.values[static_cast<std::size_t>(k)].real();
      const double res = (m * vs.col(k) - lam * vs.col(k)).norm();
      if (res > tol.eig_residual * scale + 1e-300)
        throw Error(ErrorCode::NoConvergence,
                    "eigenpair residual above tolerance for " + describe(m));
    }
    out.vectors = std::move(vs);
  }
  return out;
}

EigenDecomposition eig_unitary(const UnitaryMatrix& u, bool want_vectors, const Tolerances& tol) {
  const ComplexMatrix& m = u.matrix();
  Eigen::ComplexSchur<ComplexMatrix> schur(m.rows());
  schur.compute(m, want_vectors);
  if (schur.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence,
                "complex Schur iteration budget exhausted for " + describe(m));

  // For a normal matrix the triangular factor is diagonal, and the column of
  // T above the diagonal is exactly the eigenpair residual A q_k - t_kk q_k.
  const ComplexMatrix& t = schur.matrixT();
  const Eigen::Index n = t.rows();
  std::vector<Complex> raw(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double res = k == 0 ? 0.0 : t.col(k).head(k).norm();
    if (res > tol.eig_residual)
      throw Error(ErrorCode::NonUnitary,
                  "Schur factor is not diagonal (input not normal) for " + describe(m));
    const Complex z = t(k, k);
    const double r = std::abs(z);
    if (std::abs(r - 1.0) > tol.unitary)
      throw Error(ErrorCode::NonUnitary, "eigenvalue off the unit circle for " + describe(m));
    raw[static_cast<std::size_t>(k)] = z / r;
  }

  const auto order = sorted_order(raw, true);
  EigenDecomposition out;
  out.values.reserve(raw.size());
  for (std::size_t i : order) out.values.push_back(raw[i]);
  if (want_vectors) {
    const ComplexMatrix& q = schur.matrixU();
    ComplexMatrix vs(q.rows(), q.cols());
    for (std::size_t i = 0; i < order.size(); ++i)
      vs.col(static_cast<Eigen::Index>(i)) = q.col(static_cast<Eigen::Index>(order[i]));
    out.vectors = std::move(vs);
  }
  return out;
}

UnitaryMatrix expm_i_hermitian(const HermitianMatrix& a, double s, const Tolerances& tol) {
  if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "non-finite exponent scale");
  const EigenDecomposition eig = eig_hermitian(a, true, tol);
  const ComplexMatrix& v = *eig.vectors;
  ComplexVector phase(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k)
    phase(k) = std::polar(1.0, -s * eig.values[static_cast<std::size_t>(k)].real());
  ComplexMatrix out = v * phase.asDiagonal() * v.adjoint();
  return UnitaryMatrix::trusted(std::move(out));
}

}  // namespace hofspec::linalg
