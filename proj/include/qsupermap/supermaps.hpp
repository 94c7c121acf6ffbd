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

// Higher-order compositions of channels. Composite spaces are ordered
// control-major: (outer control (x) inner control (x) target). For coherent
// superpositions the direct-sum block index plays the role of the path
// (control) qubit, so both kinds of supermap land in the same space.

#include "qsupermap/channels.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace qsm {

enum class SupermapKind {
  Switch,
  CoherentSup,
  SwitchOfSwitch,
  CohOfCoh,
  SwitchOfCoh,
  CohOfSwitch,
};

inline constexpr std::array kAllSupermapKinds = {
    SupermapKind::Switch,      SupermapKind::CoherentSup,
    SupermapKind::SwitchOfSwitch, SupermapKind::SwitchOfCoh,
    SupermapKind::CohOfSwitch, SupermapKind::CohOfCoh,
};

inline constexpr std::string_view to_token(SupermapKind k) {
  switch (k) {
    case SupermapKind::Switch: return "switch";
    case SupermapKind::CoherentSup: return "cohsup";
    case SupermapKind::SwitchOfSwitch: return "sos";
    case SupermapKind::CohOfCoh: return "coc";
    case SupermapKind::SwitchOfCoh: return "soc";
    case SupermapKind::CohOfSwitch: return "cos";
  }
  return "?";
}

inline std::optional<SupermapKind> parse_supermap_kind(std::string_view s) {
  for (auto k : kAllSupermapKinds) {
    if (to_token(k) == s) return k;
  }
  return std::nullopt;
}

inline constexpr bool is_nested(SupermapKind k) {
  return k != SupermapKind::Switch && k != SupermapKind::CoherentSup;
}

inline constexpr int control_qubits(SupermapKind k) {
  return is_nested(k) ? 2 : 1;
}

/// Pure state of the control register (one or two qubits).
class ControlState {
 public:
  explicit ControlState(DensityMatrix rho) : rho_(std::move(rho)) {}

  static ControlState from_ket(const ComplexVector& ket) {
    return ControlState(DensityMatrix::pure(ket));
  }

  /// |+> for one qubit, |++> for two.
  static ControlState plus(int qubits = 1) {
    ComplexVector ket = ComplexVector::Ones(Eigen::Index{1} << qubits);
    return from_ket(ket);
  }

  const DensityMatrix& state() const { return rho_; }
  Eigen::Index dim() const { return rho_.dim(); }

 private:
  DensityMatrix rho_;
};

inline ControlState default_control(SupermapKind k) {
  return ControlState::plus(control_qubits(k));
}

namespace detail {

// M_ij = B_j A_i (x) |0><0| + A_i B_j (x) |1><1|, control-major, i-major.
inline std::vector<ComplexMatrix> switch_kraus(
    std::span<const ComplexMatrix> a, std::span<const ComplexMatrix> b) {
  const auto d = a.front().rows();
  const ComplexMatrix p0 = projector(2, 0);
  const ComplexMatrix p1 = projector(2, 1);
  std::vector<ComplexMatrix> out;
  out.reserve(a.size() * b.size());
  for (const auto& ai : a) {
    for (const auto& bj : b) {
      if (ai.rows() != d || ai.cols() != d || bj.rows() != d ||
          bj.cols() != d) {
        throw DimensionError("switch: Kraus operators must be square and "
                             "of equal dimension");
      }
      out.push_back(tensor(p0, bj * ai) + tensor(p1, ai * bj));
    }
  }
  return out;
}

// N_ij = A_i beta_j (+) alpha_i B_j, i-major.
inline std::vector<ComplexMatrix> superpose_kraus(
    std::span<const ComplexMatrix> a, const VacuumAmplitudes& alpha,
    std::span<const ComplexMatrix> b, const VacuumAmplitudes& beta) {
  std::vector<ComplexMatrix> out;
  out.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out.push_back(direct_sum(beta[j] * a[i], alpha[i] * b[j]));
    }
  }
  return out;
}

inline void require_same_dims(const Channel& a, const Channel& b,
                              const char* what) {
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
    throw DimensionError(std::string(what) +
                         ": channels act on different spaces");
  }
}

}  // namespace detail

/// Quantum switch of e1 and e2: e1 then e2 on control |0>, e2 then e1 on |1>.
inline Channel quantum_switch(const Channel& e1, const Channel& e2) {
  detail::require_same_dims(e1, e2, "quantum_switch");
  if (e1.d_in() != e1.d_out()) {
    throw DimensionError("quantum_switch: channels must be square");
  }
  return Channel(detail::switch_kraus(e1.kraus(), e2.kraus()),
                 "S(" + e1.label() + "," + e2.label() + ")");
}

/// Coherent superposition of two vacuum-extended channels; path 0 carries e1.
inline Channel coherent_superposition(const VacuumExtendedChannel& e1,
                                      const VacuumExtendedChannel& e2) {
  detail::require_same_dims(e1.base(), e2.base(), "coherent_superposition");
  return Channel(
      detail::superpose_kraus(e1.base().kraus(), e1.amplitudes(),
                              e2.base().kraus(), e2.amplitudes()),
      "C(" + e1.base().label() + "," + e2.base().label() + ")");
}

/// Outer switch of S(e1, e2) and S(e3, e4), both driven by the same inner
/// control qubit.
inline Channel switch_of_switch(const Channel& e1, const Channel& e2,
                                const Channel& e3, const Channel& e4) {
  return quantum_switch(quantum_switch(e1, e2), quantum_switch(e3, e4));
}

/// Coherent superposition of C(e1, e2) and C(e3, e4). `outer_a` and
/// `outer_b` are the vacuum amplitudes of the two inner superpositions,
/// indexed by their composite Kraus index.
inline Channel coh_of_coh(const VacuumExtendedChannel& e1,
                          const VacuumExtendedChannel& e2,
                          const VacuumExtendedChannel& e3,
                          const VacuumExtendedChannel& e4,
                          const VacuumAmplitudes& outer_a,
                          const VacuumAmplitudes& outer_b) {
  return coherent_superposition(
      vacuum_extend(coherent_superposition(e1, e2), outer_a),
      vacuum_extend(coherent_superposition(e3, e4), outer_b));
}

inline Channel coh_of_coh(const VacuumExtendedChannel& e1,
                          const VacuumExtendedChannel& e2,
                          const VacuumExtendedChannel& e3,
                          const VacuumExtendedChannel& e4) {
  const auto na = e1.base().kraus_count() * e2.base().kraus_count();
  const auto nb = e3.base().kraus_count() * e4.base().kraus_count();
  return coh_of_coh(e1, e2, e3, e4, VacuumAmplitudes::concentrated(na),
                    VacuumAmplitudes::concentrated(nb));
}

inline Channel switch_of_coh(const VacuumExtendedChannel& e1,
                             const VacuumExtendedChannel& e2,
                             const VacuumExtendedChannel& e3,
                             const VacuumExtendedChannel& e4) {
  return quantum_switch(coherent_superposition(e1, e2),
                        coherent_superposition(e3, e4));
}

inline Channel coh_of_switch(const Channel& e1, const Channel& e2,
                             const Channel& e3, const Channel& e4,
                             const VacuumAmplitudes& outer_a,
                             const VacuumAmplitudes& outer_b) {
  return coherent_superposition(vacuum_extend(quantum_switch(e1, e2), outer_a),
                                vacuum_extend(quantum_switch(e3, e4), outer_b));
}

inline Channel coh_of_switch(const Channel& e1, const Channel& e2,
                             const Channel& e3, const Channel& e4) {
  const auto na = e1.kraus_count() * e2.kraus_count();
  const auto nb = e3.kraus_count() * e4.kraus_count();
  return coh_of_switch(e1, e2, e3, e4, VacuumAmplitudes::concentrated(na),
                       VacuumAmplitudes::concentrated(nb));
}

/// Freezes the control register at a pure state: A_mu = M_mu (|c> (x) 1).
/// The result maps the target space alone to the full output space.
inline Channel fix_control(const Channel& ch, const ControlState& control) {
  if (!control.state().is_pure()) {
    throw DomainError("fix_control: control state must be pure");
  }
  const Eigen::Index dc = control.dim();
  if (ch.d_in() % dc != 0) {
    throw DimensionError("fix_control: control dimension does not divide "
                         "the channel input");
  }
  const Eigen::Index dt = ch.d_in() / dc;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(control.state().matrix()));
  const ComplexVector c = solver.eigenvectors().col(dc - 1);
  const ComplexMatrix embed = tensor(ComplexMatrix(c), pauli::identity(dt));

  std::vector<ComplexMatrix> out;
  out.reserve(ch.kraus_count());
  for (const auto& m : ch.kraus()) out.push_back(m * embed);
  return Channel(std::move(out), ch.label() + "|c");
}

/// Traces out the leading `control_dim`-dimensional factor of the output:
/// B_{mu,k} = (<k| (x) 1) A_mu.
inline Channel discard_control(const Channel& ch, Eigen::Index control_dim) {
  if (control_dim <= 0 || ch.d_out() % control_dim != 0) {
    throw DimensionError("discard_control: control dimension does not "
                         "divide the channel output");
  }
  const Eigen::Index rest = ch.d_out() / control_dim;
  std::vector<ComplexMatrix> out;
  out.reserve(ch.kraus_count() * static_cast<std::size_t>(control_dim));
  for (const auto& a : ch.kraus()) {
    for (Eigen::Index k = 0; k < control_dim; ++k) {
      out.push_back(a.middleRows(k * rest, rest));
    }
  }
  return Channel(std::move(out), ch.label() + "/c");
}

}  // namespace qsm
