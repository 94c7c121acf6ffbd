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

#include "qsupermap/channels.hpp"
#include "qsupermap/nelder_mead.hpp"

#include <array>
#include <cstdint>
#include <numbers>
#include <random>
#include <variant>

namespace qsm {

struct EnsembleMember {
  double probability;
  DensityMatrix state;
};

/// Finite ensemble of pure states with a probability distribution.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members)
      : members_(std::move(members)) {
    if (members_.empty()) throw DomainError("Ensemble: no members");
    double total = 0.0;
    for (const auto& m : members_) {
      if (!(m.probability >= 0.0)) {
        throw DomainError("Ensemble: negative probability");
      }
      if (!m.state.is_pure()) throw DomainError("Ensemble: state not pure");
      if (m.state.dim() != members_.front().state.dim()) {
        throw DimensionError("Ensemble: states differ in dimension");
      }
      total += m.probability;
    }
    if (std::abs(total - 1.0) > 1e-10) {
      throw DomainError("Ensemble: probabilities sum to " +
                        std::to_string(total));
    }
  }

  /// {(p0, |0>), (1 - p0, |1>)}.
  static Ensemble computational_basis(double p0 = 0.5) {
    return Ensemble({{p0, DensityMatrix::basis(2, 0)},
                     {1.0 - p0, DensityMatrix::basis(2, 1)}});
  }

  const std::vector<EnsembleMember>& members() const { return members_; }
  Eigen::Index dim() const { return members_.front().state.dim(); }

 private:
  std::vector<EnsembleMember> members_;
};

/// Which ensembles the classical-capacity search ranges over.
enum class EnsembleSearch {
  /// |0> and |1> with a free probability split. This is the encoding the
  /// reference closed forms are written for.
  ComputationalBasis,
  /// Up to `ensemble_size` arbitrary pure qubit states (Bloch angles) with
  /// free probabilities.
  BlochStates,
};

struct OptimizerConfig {
  int restarts = 8;
  int max_iterations = 2000;
  /// Absolute, in bits. Restarts must agree this closely to count as
  /// converged.
  double tolerance = 1e-6;
  std::uint64_t seed = 20240601;
  int ensemble_size = 4;
  EnsembleSearch ensemble_search = EnsembleSearch::ComputationalBasis;

  void validate() const {
    if (restarts < 1) throw DomainError("OptimizerConfig: restarts < 1");
    if (max_iterations < 1) {
      throw DomainError("OptimizerConfig: max_iterations < 1");
    }
    if (!(tolerance > 0.0)) {
      throw DomainError("OptimizerConfig: tolerance must be positive");
    }
    if (ensemble_size < 2 || ensemble_size > 4) {
      throw DomainError("OptimizerConfig: ensemble_size outside [2, 4]");
    }
  }
};

struct CapacityResult {
  /// Reported capacity in bits. Quantum capacities are clamped at zero.
  double value = 0.0;
  /// Optimum before clamping.
  double raw_value = 0.0;
  std::variant<Ensemble, DensityMatrix> argmax;
  bool converged = false;
  int evaluations = 0;
  /// Best value reached by each restart, in restart order.
  std::vector<double> restart_values;
};

namespace detail {

inline void require_input_dim(const Channel& ch, Eigen::Index d,
                              const char* what) {
  if (ch.d_in() != d) {
    throw DimensionError(std::string(what) + ": state dimension " +
                         std::to_string(d) + " does not match channel input " +
                         std::to_string(ch.d_in()));
  }
}

inline ComplexMatrix complementary_kraus_sum(const Channel& ch,
                                             const ComplexMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(ch.kraus_count());
  const auto& k = ch.kraus();
  ComplexMatrix w(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const ComplexMatrix krho = k[a] * rho;
    for (Eigen::Index b = a; b < n; ++b) {
      // Tr(K_a rho K_b^dagger) = sum_{rc} (K_a rho)_{rc} conj(K_b)_{rc}
      w(a, b) = (krho.array() * k[b].array().conjugate()).sum();
      w(b, a) = std::conj(w(a, b));
    }
  }
  return w;
}

// Images of the Pauli basis under a qubit-input linear map, so that
// map(rho) for rho = (1 + r.sigma)/2 is a four-term linear combination.
struct QubitImage {
  std::array<ComplexMatrix, 4> basis;  // map(1), map(X), map(Y), map(Z)

  template <typename Map>
  static QubitImage of(Map&& map) {
    return {{map(pauli::identity()), map(pauli::x()), map(pauli::y()),
             map(pauli::z())}};
  }

  ComplexMatrix at(double rx, double ry, double rz) const {
    return 0.5 * (basis[0] + rx * basis[1] + ry * basis[2] + rz * basis[3]);
  }
};

inline std::array<double, 3> bloch_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

inline std::array<double, 3> bloch_from_ball(const Eigen::Vector3d& x) {
  const double r = x.norm();
  const Eigen::Vector3d b = r > 1.0 ? Eigen::Vector3d(x / r) : x;
  return {b(0), b(1), b(2)};
}

inline DensityMatrix qubit_state(const std::array<double, 3>& b) {
  return DensityMatrix::bloch(b[0], b[1], b[2]);
}

inline DensityMatrix pure_qubit(double theta, double phi) {
  ComplexVector ket(2);
  ket << std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0);
  return DensityMatrix::pure(ket);
}

inline std::mt19937_64 restart_stream(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

// Reduction over restarts: highest value wins, ties go to the lowest index.
struct RestartBook {
  std::vector<double> values;
  std::vector<Eigen::VectorXd> points;
  bool all_simplex_converged = true;
  int evaluations = 0;

  void record(const NelderMeadResult& r) {
    values.push_back(-r.value);
    points.push_back(r.x);
    all_simplex_converged = all_simplex_converged && r.converged;
    evaluations += r.evaluations;
  }

  std::size_t best() const {
    std::size_t b = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] > values[b]) b = i;
    }
    return b;
  }

  bool converged(double tolerance) const {
    if (values.size() == 1) return all_simplex_converged;
    std::vector<double> v = values;
    std::sort(v.begin(), v.end(), std::greater<>());
    return v[0] - v[1] <= tolerance;
  }
};

inline NelderMeadOptions simplex_options(const OptimizerConfig& cfg) {
  NelderMeadOptions o;
  o.max_iterations = cfg.max_iterations;
  o.f_tolerance = cfg.tolerance * 1e-3;
  o.x_tolerance = 1e-6;
  return o;
}

}  // namespace detail

/// chi = S(sum_i p_i E(rho_i)) - sum_i p_i S(E(rho_i)), in bits.
inline double holevo_information(const Channel& ch, const Ensemble& ens) {
  detail::require_input_dim(ch, ens.dim(), "holevo_information");
  ComplexMatrix average = ComplexMatrix::Zero(ch.d_out(), ch.d_out());
  double conditional = 0.0;
  for (const auto& m : ens.members()) {
    const DensityMatrix out = apply(ch, m.state);
    average += m.probability * out.matrix();
    conditional += m.probability * von_neumann_entropy(out);
  }
  return von_neumann_entropy(DensityMatrix(average)) - conditional;
}

/// Environment output of the Stinespring dilation:
/// W_ab = Tr(K_a rho K_b^dagger).
inline DensityMatrix complementary_output(const Channel& ch,
                                          const DensityMatrix& rho) {
  detail::require_input_dim(ch, rho.dim(), "complementary_output");
  return DensityMatrix(detail::complementary_kraus_sum(ch, rho.matrix()));
}

/// I_c = S(E(rho)) - S(W(rho)); can be negative.
inline double coherent_information(const Channel& ch,
                                   const DensityMatrix& rho) {
  return von_neumann_entropy(apply(ch, rho)) -
         von_neumann_entropy(complementary_output(ch, rho));
}

/// One-shot classical capacity: Holevo information maximized over input
/// ensembles (see EnsembleSearch), by multistart Nelder-Mead. Restart 0
/// starts from the canonical ensemble {(1/2, |0>), (1/2, |1>)}.
inline CapacityResult classical_capacity(const Channel& ch,
                                         const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (ch.d_in() != 2) {
    throw DimensionError("classical_capacity: qubit input required");
  }
  const auto image = detail::QubitImage::of(
      [&](const ComplexMatrix& m) { return detail::apply_kraus(ch.kraus(), m); });
  const auto opts = detail::simplex_options(cfg);
  detail::RestartBook book;

  if (cfg.ensemble_search == EnsembleSearch::ComputationalBasis) {
    const ComplexMatrix out0 = image.at(0, 0, 1);
    const ComplexMatrix out1 = image.at(0, 0, -1);
    const double s0 = detail::entropy_bits(out0);
    const double s1 = detail::entropy_bits(out1);
    // p0 = sin^2(x)
    auto objective = [&](const Eigen::VectorXd& x) {
      const double p0 = std::pow(std::sin(x(0)), 2);
      return -(detail::entropy_bits(p0 * out0 + (1.0 - p0) * out1) -
               p0 * s0 - (1.0 - p0) * s1);
    };
    for (int r = 0; r < cfg.restarts; ++r) {
      auto rng = detail::restart_stream(cfg.seed, r);
      std::uniform_real_distribution<double> u(0.0, std::numbers::pi / 2);
      Eigen::VectorXd start(1);
      start(0) = r == 0 ? std::numbers::pi / 4 : u(rng);
      book.record(nelder_mead(objective, start, opts));
    }
    const auto b = book.best();
    const double p0 = std::pow(std::sin(book.points[b](0)), 2);
    CapacityResult res{book.values[b], book.values[b],
                       Ensemble::computational_basis(p0),
                       book.converged(cfg.tolerance), book.evaluations,
                       book.values};
    return res;
  }

  // Bloch-state ensembles: per member (theta, phi, u); weights u^2 / sum u^2.
  const int m = cfg.ensemble_size;
  auto decode = [m](const Eigen::VectorXd& x) {
    std::vector<double> w(m);
    double total = 0.0;
    for (int k = 0; k < m; ++k) total += w[k] = x(3 * k + 2) * x(3 * k + 2);
    for (auto& v : w) v /= total;
    return w;
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    const auto w = decode(x);
    ComplexMatrix average = ComplexMatrix::Zero(ch.d_out(), ch.d_out());
    double conditional = 0.0;
    for (int k = 0; k < m; ++k) {
      if (w[k] == 0.0) continue;
      const auto b = detail::bloch_from_angles(x(3 * k), x(3 * k + 1));
      const ComplexMatrix out = image.at(b[0], b[1], b[2]);
      average += w[k] * out;
      conditional += w[k] * detail::entropy_bits(out);
    }
    return -(detail::entropy_bits(average) - conditional);
  };
  for (int r = 0; r < cfg.restarts; ++r) {
    auto rng = detail::restart_stream(cfg.seed, r);
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> phi(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    Eigen::VectorXd start(3 * m);
    for (int k = 0; k < m; ++k) {
      if (r == 0) {
        start(3 * k) = k == 1 ? std::numbers::pi : (k == 0 ? 0.0 : std::numbers::pi / 2);
        start(3 * k + 1) = 0.0;
        start(3 * k + 2) = k < 2 ? 1.0 : 0.0;
      } else {
        start(3 * k) = theta(rng);
        start(3 * k + 1) = phi(rng);
        start(3 * k + 2) = weight(rng);
      }
    }
    book.record(nelder_mead(objective, start, opts));
  }
  const auto best = book.best();
  const auto& x = book.points[best];
  const auto w = decode(x);
  std::vector<EnsembleMember> members;
  double kept = 0.0;
  for (int k = 0; k < m; ++k) kept += w[k];
  for (int k = 0; k < m; ++k) {
    if (w[k] == 0.0) continue;
    members.push_back({w[k] / kept, detail::pure_qubit(x(3 * k), x(3 * k + 1))});
  }
  return {book.values[best], book.values[best], Ensemble(std::move(members)),
          book.converged(cfg.tolerance), book.evaluations, book.values};
}

/// One-shot quantum capacity: coherent information maximized over the Bloch
/// ball. Restart 0 starts from the maximally mixed state. The reported value
/// is max(0, optimum).
inline CapacityResult quantum_capacity(const Channel& ch,
                                       const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (ch.d_in() != 2) {
    throw DimensionError("quantum_capacity: qubit input required");
  }
  // The environment entropy does not depend on the Kraus representation, so
  // the search runs on the shortest one.
  const Channel compact = minimal_kraus(ch);
  const auto out_image = detail::QubitImage::of([&](const ComplexMatrix& m) {
    return detail::apply_kraus(compact.kraus(), m);
  });
  const auto env_image = detail::QubitImage::of([&](const ComplexMatrix& m) {
    return detail::complementary_kraus_sum(compact, m);
  });
  auto objective = [&](const Eigen::VectorXd& x) {
    const auto b = detail::bloch_from_ball(x);
    return -(detail::entropy_bits(out_image.at(b[0], b[1], b[2])) -
             detail::entropy_bits(env_image.at(b[0], b[1], b[2])));
  };

  const auto opts = detail::simplex_options(cfg);
  detail::RestartBook book;
  for (int r = 0; r < cfg.restarts; ++r) {
    auto rng = detail::restart_stream(cfg.seed, r);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit;
    Eigen::Vector3d start = Eigen::Vector3d::Zero();
    if (r > 0) {
      Eigen::Vector3d dir(gauss(rng), gauss(rng), gauss(rng));
      start = dir.normalized() * std::cbrt(unit(rng));
    }
    book.record(nelder_mead(objective, start, opts));
  }
  const auto best = book.best();
  DensityMatrix argmax =
      detail::qubit_state(detail::bloch_from_ball(book.points[best]));
  const double raw = book.values[best];
  return {std::max(0.0, raw), raw, std::move(argmax),
          book.converged(cfg.tolerance), book.evaluations, book.values};
}

}  // namespace qsm
