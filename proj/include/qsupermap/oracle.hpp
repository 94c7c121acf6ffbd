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

// Published closed-form capacity curves, transcribed expression by
// expression (including the ones that repeat) so they can be checked
// against each other and against the numerical optimizer.

#include "qsupermap/supermaps.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsm {

enum class Family {
  BitFlip,
  PhaseFlip,
  /// bit-flip, phase-flip, bit-flip, phase-flip. For the two-channel
  /// supermaps this is the (bit-flip, phase-flip) pair.
  MixedAlternating,
  /// bit-flip, bit-flip, phase-flip, phase-flip.
  MixedBlock,
  Depolarizing,
};

inline constexpr std::array kAllFamilies = {
    Family::BitFlip, Family::PhaseFlip, Family::MixedAlternating,
    Family::MixedBlock, Family::Depolarizing};

inline constexpr std::string_view to_token(Family f) {
  switch (f) {
    case Family::BitFlip: return "bitflip";
    case Family::PhaseFlip: return "phaseflip";
    case Family::MixedAlternating: return "mixed_alt";
    case Family::MixedBlock: return "mixed_block";
    case Family::Depolarizing: return "depolarizing";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (auto f : kAllFamilies) {
    if (to_token(f) == s) return f;
  }
  return std::nullopt;
}

enum class CapacityType { Classical, Quantum };

inline constexpr std::string_view to_token(CapacityType c) {
  return c == CapacityType::Classical ? "classical" : "quantum";
}

struct ClosedFormId {
  SupermapKind configuration;
  Family family;
  CapacityType capacity_type;

  friend bool operator==(const ClosedFormId&, const ClosedFormId&) = default;
};

inline std::string to_string(const ClosedFormId& id) {
  return std::string(to_token(id.configuration)) + "/" +
         std::string(to_token(id.family)) + "/" +
         std::string(to_token(id.capacity_type));
}

namespace closed_form_detail {

inline constexpr double kLn2 = std::numbers::ln2;

// x * atanh(y), with the limit 0 when the prefactor vanishes where |y| = 1.
inline double x_atanh(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::atanh(y);
}

// x * arccoth(y) = x * atanh(1/y); the reciprocal form stays finite at the
// pole of y.
inline double x_arccoth_of_reciprocal(double x, double inv_y) {
  if (x == 0.0) return 0.0;
  return x * std::atanh(inv_y);
}

// x * log(y) with 0 * log(0) = 0.
inline double x_log(double x, double y) {
  if (x == 0.0) return 0.0;
  return x * std::log(y);
}

inline double x_log2(double x, double y) { return x_log(x, y) / kLn2; }

// Limit of log(2 - 2p) + p log(p / (1 - p)) at p = 1: the divergent pieces
// combine into (1 - p) log(1 - p) -> 0.
inline double bit_phase_form(double p) {
  if (p == 1.0) return 1.0;
  return (std::log(2.0 - 2.0 * p) + x_log(p, p / (1.0 - p))) / kLn2;
}

inline double switch_bitflip_form(double p) {
  return (x_atanh(4.0 * p * (p - 1.0), std::pow(1.0 - 2.0 * p, 2)) +
          std::log(2.0 + 4.0 * p * (p - 1.0))) /
         kLn2;
}

inline double switch_depolarizing_form(double p) {
  const double ln512 = std::log(512.0);
  return (x_arccoth_of_reciprocal(8.0 * p * (2.0 * p - 3.0),
                                  std::pow(3.0 - 4.0 * p, 2) / 9.0) +
          ln512 + 9.0 * std::log(1.0 + 4.0 / 9.0 * p * (2.0 * p - 3.0))) /
         ln512;
}

inline double nested_depolarizing_form(double p) {
  return 1.0 +
         x_arccoth_of_reciprocal(8.0 * p * (2.0 * p - 3.0),
                                 std::pow(3.0 - 4.0 * p, 2) / 9.0) /
             (9.0 * kLn2) +
         std::log2(1.0 + 4.0 / 9.0 * p * (2.0 * p - 3.0));
}

inline double binary_form(double p) {
  return 1.0 + x_log2(p, p) + x_log2(1.0 - p, 1.0 - p);
}

inline double nested_block_form(double p) {
  return 1.0 + std::log2(1.0 + p * (p - 1.0)) +
         x_atanh(2.0 * p * (p - 1.0), 1.0 + 2.0 * p * (p - 1.0)) / kLn2;
}

inline double soc_alternating_form(double p) {
  return (x_atanh(2.0 * p * (p - 1.0), 1.0 + 2.0 * p * (p - 1.0)) +
          std::log(2.0 + 2.0 * p * (p - 1.0))) /
         kLn2;
}

inline double coh_bit_phase_form(double p) {
  return (x_log(2.0 - p, 2.0 - p) + x_log(p, p)) / std::log(4.0);
}

inline double coc_bit_phase_form(double p) {
  return 0.5 * (x_log2(2.0 - p, 2.0 - p) + x_log2(p, p));
}

inline double coh_depolarizing_form(double p) {
  const double ln8 = std::log(8.0);
  return 1.0 - x_atanh(4.0 * p, 1.0 - 4.0 * p / 3.0) / ln8 +
         3.0 * std::log(1.0 - 2.0 * p / 3.0) / ln8;
}

inline double quantum_switch_bitflip_form(double p) {
  // The printed decimals are 2/ln 2 and 1/ln 2.
  const double q = p * (p - 1.0);
  return 1.0 - (2.0 / kLn2) * x_log(q, -2.0 * q) +
         (1.0 / kLn2) * x_log(1.0 + 2.0 * q, 1.0 + 2.0 * q);
}

struct Entry {
  ClosedFormId id;
  double (*eval)(double);
};

inline double one(double) { return 1.0; }

// Classical lists follow each subsection's stated order: bit-flip,
// phase-flip, mixed (alternating, then block for the nested maps),
// depolarizing.
inline const std::vector<Entry>& table() {
  using K = SupermapKind;
  using F = Family;
  constexpr auto C = CapacityType::Classical;
  static const std::vector<Entry> t = {
      {{K::Switch, F::BitFlip, C}, switch_bitflip_form},
      {{K::Switch, F::PhaseFlip, C}, one},
      {{K::Switch, F::MixedAlternating, C}, bit_phase_form},
      {{K::Switch, F::Depolarizing, C}, switch_depolarizing_form},

      {{K::CoherentSup, F::BitFlip, C}, bit_phase_form},
      {{K::CoherentSup, F::PhaseFlip, C}, one},
      {{K::CoherentSup, F::MixedAlternating, C}, coh_bit_phase_form},
      {{K::CoherentSup, F::Depolarizing, C}, coh_depolarizing_form},

      {{K::SwitchOfSwitch, F::BitFlip, C}, switch_bitflip_form},
      {{K::SwitchOfSwitch, F::PhaseFlip, C}, one},
      {{K::SwitchOfSwitch, F::MixedAlternating, C}, binary_form},
      {{K::SwitchOfSwitch, F::MixedBlock, C}, nested_block_form},
      {{K::SwitchOfSwitch, F::Depolarizing, C}, nested_depolarizing_form},

      {{K::SwitchOfCoh, F::BitFlip, C}, switch_bitflip_form},
      {{K::SwitchOfCoh, F::PhaseFlip, C}, one},
      {{K::SwitchOfCoh, F::MixedAlternating, C}, soc_alternating_form},
      {{K::SwitchOfCoh, F::MixedBlock, C}, binary_form},
      {{K::SwitchOfCoh, F::Depolarizing, C}, nested_depolarizing_form},

      {{K::CohOfSwitch, F::BitFlip, C}, switch_bitflip_form},
      {{K::CohOfSwitch, F::PhaseFlip, C}, one},
      {{K::CohOfSwitch, F::MixedAlternating, C}, binary_form},
      {{K::CohOfSwitch, F::MixedBlock, C}, nested_block_form},
      {{K::CohOfSwitch, F::Depolarizing, C}, nested_depolarizing_form},

      {{K::CohOfCoh, F::BitFlip, C}, binary_form},
      {{K::CohOfCoh, F::PhaseFlip, C}, one},
      {{K::CohOfCoh, F::MixedAlternating, C}, coc_bit_phase_form},
      {{K::CohOfCoh, F::MixedBlock, C}, coc_bit_phase_form},
      {{K::CohOfCoh, F::Depolarizing, C}, coh_depolarizing_form},

      {{K::Switch, F::BitFlip, CapacityType::Quantum},
       quantum_switch_bitflip_form},
  };
  return t;
}

}  // namespace closed_form_detail

/// Every id with a published expression, in a fixed order.
inline std::vector<ClosedFormId> list_available() {
  std::vector<ClosedFormId> ids;
  for (const auto& e : closed_form_detail::table()) ids.push_back(e.id);
  return ids;
}

/// Published capacity in bits at noise parameter p, with removable
/// singularities at the endpoints replaced by their limits.
inline double closed_form(const ClosedFormId& id, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("closed_form: p outside [0, 1]");
  }
  for (const auto& e : closed_form_detail::table()) {
    if (e.id == id) return e.eval(p);
  }
  std::string msg = "closed_form: no published expression for " +
                    to_string(id) + "; available:";
  for (const auto& a : list_available()) msg += " " + to_string(a);
  throw DomainError(msg);
}

}  // namespace qsm
