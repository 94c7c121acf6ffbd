// Copyright 2026 The qsupermap Authors
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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsm {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Every operator in the library is one of
/// these; dimensions are always explicit and never broadcast.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
struct DimensionError : Error {
  using Error::Error;
};

/// A parameter lies outside the domain of the operation (probabilities,
/// normalization, purity).
struct DomainError : Error {
  using Error::Error;
};

/// A matrix fails the Hermitian / unit-trace / PSD checks of a state.
struct InvalidStateError : Error {
  using Error::Error;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

namespace pauli {

inline ComplexMatrix identity(Eigen::Index d = 2) {
  return ComplexMatrix::Identity(d, d);
}

inline ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

inline ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

/// |k><k| on a d-dimensional space.
inline ComplexMatrix projector(Eigen::Index d, Eigen::Index k) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(k, k) = 1.0;
  return m;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline bool is_finite(const ComplexMatrix& a) {
  return a.real().allFinite() && a.imag().allFinite();
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol) {
  return a.rows() == a.cols() && max_abs_diff(a, a.adjoint()) <= tol;
}

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

/// Block-diagonal diag(a, b); the off-diagonal blocks are exactly zero.
inline ComplexMatrix direct_sum(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  ComplexMatrix out =
      ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

/// Real eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> eig_hermitian(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("eig_hermitian: matrix is not square");
  }
  if (!is_hermitian(h)) {
    throw InvalidStateError("eig_hermitian: matrix is not Hermitian");
  }
  const Eigen::MatrixXcd col_major = h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      col_major, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace detail {

// -sum l log2 l with the clamp rule: eigenvalues in [-kPsdTol, 0) count as
// zero, anything more negative is an error.
inline double entropy_from_spectrum(std::span<const double> spectrum) {
  double s = 0.0;
  for (double l : spectrum) {
    if (l < -kPsdTol) {
      throw InvalidStateError("entropy: eigenvalue " + std::to_string(l) +
                              " below PSD tolerance");
    }
    l = std::clamp(l, 0.0, 1.0);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

// Entropy of a matrix already known to be a state; skips the validation
// round-trip for optimizer inner loops.
inline double entropy_bits(const ComplexMatrix& rho) {
  const Eigen::MatrixXcd h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return entropy_from_spectrum({ev.data(), static_cast<std::size_t>(ev.size())});
}

}  // namespace detail

/// Hermitian, positive semidefinite, unit-trace matrix. Validated on
/// construction and immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) { validate(); }

  static DensityMatrix pure(const ComplexVector& ket) {
    const double n = ket.norm();
    if (!(n > 0.0)) throw DomainError("DensityMatrix::pure: zero vector");
    const ComplexVector v = ket / n;
    return DensityMatrix(v * v.adjoint());
  }

  static DensityMatrix basis(Eigen::Index dim, Eigen::Index k) {
    return DensityMatrix(projector(dim, k));
  }

  static DensityMatrix maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) /
                         static_cast<double>(dim));
  }

  /// Qubit state from a Bloch vector with |r| <= 1.
  static DensityMatrix bloch(double rx, double ry, double rz) {
    return DensityMatrix(0.5 * (pauli::identity() + rx * pauli::x() +
                                ry * pauli::y() + rz * pauli::z()));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  double purity() const { return (m_ * m_).trace().real(); }
  bool is_pure(double tol = 1e-9) const {
    return std::abs(purity() - 1.0) <= tol;
  }

 private:
  void validate() const {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
      throw InvalidStateError("DensityMatrix: matrix must be square and "
                              "non-empty");
    }
    if (!is_finite(m_)) {
      throw InvalidStateError("DensityMatrix: non-finite entry");
    }
    if (!is_hermitian(m_)) {
      throw InvalidStateError("DensityMatrix: not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > kTraceTol) {
      throw InvalidStateError("DensityMatrix: trace differs from 1");
    }
    const auto spectrum = eig_hermitian(m_);
    if (spectrum.front() < -kPsdTol) {
      throw InvalidStateError("DensityMatrix: negative eigenvalue");
    }
  }

  ComplexMatrix m_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

/// Reduced state on the subsystems listed in `keep`. `dims` factorizes
/// rho.dim() with subsystem 0 most significant.
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   std::span<const Eigen::Index> dims,
                                   std::span<const std::size_t> keep) {
  if (dims.empty()) throw DimensionError("partial_trace: empty factorization");
  const Eigen::Index total = std::accumulate(
      dims.begin(), dims.end(), Eigen::Index{1}, std::multiplies<>());
  if (total != rho.dim() ||
      std::any_of(dims.begin(), dims.end(), [](auto d) { return d <= 0; })) {
    throw DimensionError("partial_trace: subsystem dimensions do not "
                         "multiply to the state dimension");
  }
  if (keep.empty()) throw DimensionError("partial_trace: nothing to keep");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) {
      throw DimensionError("partial_trace: bad subsystem index");
    }
    kept[k] = true;
  }

  const std::size_t n = dims.size();
  Eigen::Index kept_dim = 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (kept[s]) kept_dim *= dims[s];
  }

  // Split a flat index into (kept-index, traced-index).
  auto split = [&](Eigen::Index flat) {
    std::vector<Eigen::Index> digits(n);
    for (std::size_t s = n; s-- > 0;) {
      digits[s] = flat % dims[s];
      flat /= dims[s];
    }
    Eigen::Index k = 0;
    Eigen::Index t = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (kept[s]) {
        k = k * dims[s] + digits[s];
      } else {
        t = t * dims[s] + digits[s];
      }
    }
    return std::pair{k, t};
  };

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < total; ++r) {
    const auto [kr, tr] = split(r);
    for (Eigen::Index c = 0; c < total; ++c) {
      const auto [kc, tc] = split(c);
      if (tr == tc) out(kr, kc) += m(r, c);
    }
  }
  return DensityMatrix(std::move(out));
}

/// S(rho) = -Tr(rho log2 rho), in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  const auto spectrum = eig_hermitian(rho.matrix());
  return detail::entropy_from_spectrum(spectrum);
}

}  // namespace qsm
