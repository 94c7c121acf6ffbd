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

#include "qsupermap/qmatrix.hpp"

#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qsm {

inline constexpr double kCompletenessTol = 1e-10;

/// Max-abs deviation of sum_i K_i^dagger K_i from the identity on d_in.
/// Returns +inf for an empty or ragged list.
inline double completeness_deviation(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) return std::numeric_limits<double>::infinity();
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      return std::numeric_limits<double>::infinity();
    }
    sum.noalias() += k.adjoint() * k;
  }
  return max_abs_diff(sum, ComplexMatrix::Identity(cols, cols));
}

inline bool verify_completeness(std::span<const ComplexMatrix> kraus,
                                double tol = kCompletenessTol) {
  return completeness_deviation(kraus) <= tol;
}

/// A quantum channel as an ordered Kraus list. All operators share the shape
/// d_out x d_in and satisfy completeness; both are checked on construction.
class Channel {
 public:
  explicit Channel(std::vector<ComplexMatrix> kraus, std::string label = {})
      : kraus_(std::move(kraus)), label_(std::move(label)) {
    if (kraus_.empty()) throw DimensionError("Channel: empty Kraus list");
    d_out_ = kraus_.front().rows();
    d_in_ = kraus_.front().cols();
    for (const auto& k : kraus_) {
      if (k.rows() != d_out_ || k.cols() != d_in_) {
        throw DimensionError("Channel: Kraus operators differ in shape");
      }
      if (!is_finite(k)) throw DomainError("Channel: non-finite Kraus entry");
    }
    if (!verify_completeness(kraus_)) {
      throw DomainError("Channel '" + label_ +
                        "': Kraus operators violate completeness");
    }
  }

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  std::size_t kraus_count() const { return kraus_.size(); }
  Eigen::Index d_in() const { return d_in_; }
  Eigen::Index d_out() const { return d_out_; }
  const std::string& label() const { return label_; }

 private:
  std::vector<ComplexMatrix> kraus_;
  Eigen::Index d_in_ = 0;
  Eigen::Index d_out_ = 0;
  std::string label_;
};

inline bool verify_completeness(const Channel& ch,
                                double tol = kCompletenessTol) {
  return verify_completeness(ch.kraus(), tol);
}

namespace detail {

inline ComplexMatrix apply_kraus(std::span<const ComplexMatrix> kraus,
                                 const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(kraus.front().rows(),
                                          kraus.front().rows());
  for (const auto& k : kraus) out.noalias() += k * rho * k.adjoint();
  return out;
}

inline void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + ": probability " +
                      std::to_string(p) + " outside [0, 1]");
  }
}

}  // namespace detail

/// rho -> sum_i K_i rho K_i^dagger.
inline DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.d_in()) {
    throw DimensionError("apply: state dimension " +
                         std::to_string(rho.dim()) +
                         " does not match channel input " +
                         std::to_string(ch.d_in()));
  }
  return DensityMatrix(detail::apply_kraus(ch.kraus(), rho.matrix()));
}

inline Channel identity_channel(Eigen::Index d = 2) {
  return Channel({ComplexMatrix::Identity(d, d)}, "identity");
}

inline Channel bit_flip(double p) {
  detail::check_probability(p, "bit_flip");
  return Channel({std::sqrt(1.0 - p) * pauli::identity(),
                  std::sqrt(p) * pauli::x()},
                 "bitflip");
}

inline Channel phase_flip(double p) {
  detail::check_probability(p, "phase_flip");
  return Channel({std::sqrt(1.0 - p) * pauli::identity(),
                  std::sqrt(p) * pauli::z()},
                 "phaseflip");
}

inline Channel pauli_channel(double px, double py, double pz) {
  if (!(px >= 0.0 && py >= 0.0 && pz >= 0.0)) {
    throw DomainError("pauli_channel: negative probability");
  }
  const double p = px + py + pz;
  // Summation slack so that pauli(p/3, p/3, p/3) at p = 1 is accepted.
  if (p > 1.0 + 1e-12) {
    throw DomainError("pauli_channel: total error probability exceeds 1");
  }
  return Channel({std::sqrt(std::max(0.0, 1.0 - p)) * pauli::identity(),
                  std::sqrt(px) * pauli::x(), std::sqrt(py) * pauli::y(),
                  std::sqrt(pz) * pauli::z()},
                 "pauli");
}

inline Channel depolarizing(double p) {
  detail::check_probability(p, "depolarizing");
  const Channel c = pauli_channel(p / 3.0, p / 3.0, p / 3.0);
  return Channel(c.kraus(), "depolarizing");
}

/// Normalized per-Kraus amplitudes describing how a channel acts on the
/// vacuum sector.
class VacuumAmplitudes {
 public:
  explicit VacuumAmplitudes(std::vector<Complex> amps)
      : amps_(std::move(amps)) {
    if (amps_.empty()) throw DomainError("VacuumAmplitudes: empty");
    if (std::abs(norm2() - 1.0) > 1e-10) {
      throw DomainError("VacuumAmplitudes: sum |gamma_i|^2 = " +
                        std::to_string(norm2()) + " is not 1");
    }
  }

  VacuumAmplitudes(std::initializer_list<double> amps)
      : VacuumAmplitudes(std::vector<Complex>(amps.begin(), amps.end())) {}

  /// (1, 0, ..., 0): only the first Kraus operator touches the vacuum.
  static VacuumAmplitudes concentrated(std::size_t n) {
    std::vector<Complex> a(n, 0.0);
    a.at(0) = 1.0;
    return VacuumAmplitudes(std::move(a));
  }

  static VacuumAmplitudes uniform(std::size_t n) {
    return VacuumAmplitudes(
        std::vector<Complex>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  }

  /// Rescales `values` onto the unit sphere if they are within `slack` of
  /// it; rejects anything further away.
  static VacuumAmplitudes normalized_within(std::span<const double> values,
                                            double slack) {
    double n2 = 0.0;
    for (double v : values) n2 += v * v;
    if (!(std::abs(n2 - 1.0) <= slack)) {
      throw DomainError("VacuumAmplitudes: squared norm " +
                        std::to_string(n2) + " not within " +
                        std::to_string(slack) + " of 1");
    }
    const double n = std::sqrt(n2);
    std::vector<Complex> a;
    a.reserve(values.size());
    for (double v : values) a.emplace_back(v / n);
    return VacuumAmplitudes(std::move(a));
  }

  std::size_t size() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  const std::vector<Complex>& values() const { return amps_; }

 private:
  double norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  std::vector<Complex> amps_;
};

/// K~_i = K_i (+) gamma_i |vac><vac|, the vacuum being the last basis vector.
class VacuumExtendedChannel {
 public:
  VacuumExtendedChannel(Channel base, VacuumAmplitudes amps)
      : base_(std::move(base)), amps_(std::move(amps)) {
    if (amps_.size() != base_.kraus_count()) {
      throw DimensionError("vacuum_extend: " + std::to_string(amps_.size()) +
                           " amplitudes for " +
                           std::to_string(base_.kraus_count()) +
                           " Kraus operators");
    }
  }

  const Channel& base() const { return base_; }
  const VacuumAmplitudes& amplitudes() const { return amps_; }

  std::vector<ComplexMatrix> extended_kraus() const {
    std::vector<ComplexMatrix> out;
    out.reserve(base_.kraus_count());
    for (std::size_t i = 0; i < base_.kraus_count(); ++i) {
      ComplexMatrix vac(1, 1);
      vac(0, 0) = amps_[i];
      out.push_back(direct_sum(base_.kraus()[i], vac));
    }
    return out;
  }

  Channel extended() const {
    return Channel(extended_kraus(), base_.label() + "+vac");
  }

 private:
  Channel base_;
  VacuumAmplitudes amps_;
};

inline VacuumExtendedChannel vacuum_extend(Channel ch, VacuumAmplitudes amps) {
  return VacuumExtendedChannel(std::move(ch), std::move(amps));
}

inline VacuumExtendedChannel vacuum_extend(Channel ch) {
  const auto n = ch.kraus_count();
  return VacuumExtendedChannel(std::move(ch), VacuumAmplitudes::concentrated(n));
}

/// Kraus representation of minimal length, read off the Choi matrix. The
/// channel is unchanged; only the environment basis is rotated and
/// truncated.
inline Channel minimal_kraus(const Channel& ch, double cutoff = 1e-13) {
  const Eigen::Index n = ch.d_in() * ch.d_out();
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& k : ch.kraus()) {
    // Row-major storage makes the data pointer the vectorization.
    const Eigen::Map<const Eigen::VectorXcd> v(k.data(), n);
    choi.noalias() += v * v.adjoint();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(choi);
  std::vector<ComplexMatrix> out;
  for (Eigen::Index m = n; m-- > 0;) {
    const double l = solver.eigenvalues()(m);
    if (l <= cutoff) break;
    ComplexMatrix k(ch.d_out(), ch.d_in());
    Eigen::Map<Eigen::VectorXcd>(k.data(), n) =
        std::sqrt(l) * solver.eigenvectors().col(m);
    out.push_back(std::move(k));
  }
  return Channel(std::move(out), ch.label());
}

}  // namespace qsm
