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

// Builds the effective target channel for a (configuration, family, p)
// point: channel catalog -> supermap -> control frozen at |+> / |++> ->
// optional discard of the control register.

#include "qsupermap/infotheory.hpp"
#include "qsupermap/oracle.hpp"

#include <array>
#include <optional>

namespace qsm {

/// What the receiver holds after the supermap.
enum class Readout {
  /// Target system only; control qubits are discarded. Reproduces the
  /// published curves.
  Target,
  /// Control register and target together.
  Full,
};

struct ScenarioOptions {
  /// Vacuum amplitudes of every elementary channel. Defaults to
  /// (1, 0, ..., 0).
  std::optional<VacuumAmplitudes> inner_amplitudes;
  /// Vacuum amplitudes of the two inner supermaps of CoC / CoS, indexed by
  /// their composite Kraus index. Default (1, 0, ..., 0).
  std::optional<VacuumAmplitudes> outer_a;
  std::optional<VacuumAmplitudes> outer_b;
  Readout readout = Readout::Target;
};

/// The four elementary channels E1..E4 for a family at noise p. Two-channel
/// supermaps use E1 and E2.
inline std::array<Channel, 4> family_channels(Family f, double p) {
  switch (f) {
    case Family::BitFlip:
      return {bit_flip(p), bit_flip(p), bit_flip(p), bit_flip(p)};
    case Family::PhaseFlip:
      return {phase_flip(p), phase_flip(p), phase_flip(p), phase_flip(p)};
    case Family::MixedAlternating:
      return {bit_flip(p), phase_flip(p), bit_flip(p), phase_flip(p)};
    case Family::MixedBlock:
      return {bit_flip(p), bit_flip(p), phase_flip(p), phase_flip(p)};
    case Family::Depolarizing:
      return {depolarizing(p), depolarizing(p), depolarizing(p),
              depolarizing(p)};
  }
  throw DomainError("family_channels: unknown family");
}

/// The supermap as a channel on (control register (x) target).
inline Channel build_supermap(SupermapKind kind, Family family, double p,
                              const ScenarioOptions& opts = {}) {
  if (!is_nested(kind) && family == Family::MixedBlock) {
    throw DomainError("mixed_block needs four channels; use a nested "
                      "configuration");
  }
  const auto e = family_channels(family, p);
  auto extend = [&](const Channel& c) {
    return opts.inner_amplitudes ? vacuum_extend(c, *opts.inner_amplitudes)
                                 : vacuum_extend(c);
  };
  auto outer = [](const std::optional<VacuumAmplitudes>& a, std::size_t n) {
    return a ? *a : VacuumAmplitudes::concentrated(n);
  };
  const auto n12 = e[0].kraus_count() * e[1].kraus_count();
  const auto n34 = e[2].kraus_count() * e[3].kraus_count();

  switch (kind) {
    case SupermapKind::Switch:
      return quantum_switch(e[0], e[1]);
    case SupermapKind::CoherentSup:
      return coherent_superposition(extend(e[0]), extend(e[1]));
    case SupermapKind::SwitchOfSwitch:
      return switch_of_switch(e[0], e[1], e[2], e[3]);
    case SupermapKind::CohOfCoh:
      return coh_of_coh(extend(e[0]), extend(e[1]), extend(e[2]),
                        extend(e[3]), outer(opts.outer_a, n12),
                        outer(opts.outer_b, n34));
    case SupermapKind::SwitchOfCoh:
      return switch_of_coh(extend(e[0]), extend(e[1]), extend(e[2]),
                           extend(e[3]));
    case SupermapKind::CohOfSwitch:
      return coh_of_switch(e[0], e[1], e[2], e[3], outer(opts.outer_a, n12),
                           outer(opts.outer_b, n34));
  }
  throw DomainError("build_supermap: unknown configuration");
}

/// Channel from the target qubit to what the receiver holds, with the
/// control register prepared in |+> or |++>.
inline Channel effective_channel(SupermapKind kind, Family family, double p,
                                 const ScenarioOptions& opts = {}) {
  const ControlState control = default_control(kind);
  Channel fixed = fix_control(build_supermap(kind, family, p, opts), control);
  if (opts.readout == Readout::Full) return fixed;
  return discard_control(fixed, control.dim());
}

inline CapacityResult evaluate_capacity(CapacityType type, const Channel& ch,
                                        const OptimizerConfig& cfg) {
  return type == CapacityType::Classical ? classical_capacity(ch, cfg)
                                         : quantum_capacity(ch, cfg);
}

}  // namespace qsm
