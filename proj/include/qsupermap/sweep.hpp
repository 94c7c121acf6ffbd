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

// Library side of the command-line tool: parameter sweeps, oracle
// validation and vacuum-amplitude sweeps. Each cmd_* returns a process exit
// code and never throws for bad user input.

#include "qsupermap/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qsm {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNotConverged = 2,
  kExitToleranceUnachievable = 3,
};

enum class CapacitySelection { Classical, Quantum, Both };

inline std::optional<CapacitySelection> parse_capacity_selection(
    std::string_view s) {
  if (s == "classical") return CapacitySelection::Classical;
  if (s == "quantum") return CapacitySelection::Quantum;
  if (s == "both") return CapacitySelection::Both;
  return std::nullopt;
}

inline std::vector<CapacityType> expand(CapacitySelection s) {
  switch (s) {
    case CapacitySelection::Classical: return {CapacityType::Classical};
    case CapacitySelection::Quantum: return {CapacityType::Quantum};
    case CapacitySelection::Both:
      return {CapacityType::Classical, CapacityType::Quantum};
  }
  return {};
}

/// `steps` evenly spaced points from `start` to `end` inclusive. A single
/// step yields {start}.
inline std::vector<double> linear_grid(double start, double end, int steps) {
  if (steps < 1) throw DomainError("grid: p_steps must be >= 1");
  if (!(start <= end)) throw DomainError("grid: p_start > p_end");
  detail::check_probability(start, "grid");
  detail::check_probability(end, "grid");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) return {start};
  for (int i = 0; i < steps; ++i) {
    // Pin the last point exactly instead of accumulating rounding.
    g.push_back(i + 1 == steps ? end
                               : start + (end - start) * i / (steps - 1));
  }
  return g;
}

/// Rescales raw amplitudes within 1e-6 of the unit sphere; rejects others.
inline VacuumAmplitudes amplitudes_from_flags(std::span<const double> raw) {
  return VacuumAmplitudes::normalized_within(raw, 1e-6);
}

struct SweepSpec {
  SupermapKind configuration = SupermapKind::Switch;
  Family family = Family::BitFlip;
  CapacitySelection capacity_type = CapacitySelection::Both;
  double p_start = 0.0;
  double p_end = 1.0;
  /// Number of grid points, endpoints included.
  int p_steps = 21;
  /// Raw vacuum amplitudes of the elementary channels, normalized on use.
  std::optional<std::vector<double>> amplitudes;
  OptimizerConfig optimizer;
  Readout readout = Readout::Target;
  /// "-" writes to standard output.
  std::string output_path = "-";
};

struct SweepRow {
  double p = 0.0;
  std::string amplitude_label;  // vacuum sweeps only
  SupermapKind configuration = SupermapKind::Switch;
  Family family = Family::BitFlip;
  CapacityType capacity_type = CapacityType::Classical;
  double value = 0.0;
  bool converged = false;
  int restarts = 0;
  std::uint64_t seed = 0;
};

namespace sweep_detail {

inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

inline std::string amplitude_label(const VacuumAmplitudes& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ';';
    s += fmt9(a[i].real());
  }
  return s;
}

// Stable: rows arrive grouped per amplitude set, then by p.
inline void sort_rows(std::vector<SweepRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     if (a.p != b.p) return a.p < b.p;
                     return a.capacity_type < b.capacity_type;
                   });
}

// Writes to a file (binary, so LF stays LF) or stdout for "-".
inline bool write_text(const std::string& path, const std::string& text,
                       std::ostream& log) {
  if (path == "-") {
    std::cout << text << std::flush;
    return true;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    log << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  f << text;
  f.close();
  if (!f) {
    log << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

inline std::optional<VacuumAmplitudes> inner_amplitudes(
    const std::optional<std::vector<double>>& raw) {
  if (!raw) return std::nullopt;
  return amplitudes_from_flags(*raw);
}

}  // namespace sweep_detail

inline constexpr std::string_view kSweepCsvHeader =
    "p,configuration,family,capacity_type,value,converged,restarts,seed";
inline constexpr std::string_view kVacuumCsvHeader =
    "p,amplitude_set,configuration,family,capacity_type,value,converged,"
    "restarts,seed";

/// CSV text for rows in the given order. The amplitude-set column is emitted
/// only when `with_amplitude_set` is set.
inline std::string format_csv(const std::vector<SweepRow>& rows,
                              bool with_amplitude_set = false) {
  using sweep_detail::fmt9;
  std::string out(with_amplitude_set ? kVacuumCsvHeader : kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt9(r.p);
    out += ',';
    if (with_amplitude_set) {
      out += r.amplitude_label;
      out += ',';
    }
    out += to_token(r.configuration);
    out += ',';
    out += to_token(r.family);
    out += ',';
    out += to_token(r.capacity_type);
    out += ',';
    out += fmt9(r.value);
    out += r.converged ? ",true," : ",false,";
    out += std::to_string(r.restarts);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

/// Evaluates every (p, capacity type) point of a sweep, sorted by p then
/// capacity type. Throws on invalid specs.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                       std::ostream* progress = nullptr) {
  spec.optimizer.validate();
  const auto grid = linear_grid(spec.p_start, spec.p_end, spec.p_steps);
  ScenarioOptions opts;
  opts.inner_amplitudes = sweep_detail::inner_amplitudes(spec.amplitudes);
  opts.readout = spec.readout;

  std::vector<SweepRow> rows;
  for (double p : grid) {
    const Channel ch = effective_channel(spec.configuration, spec.family, p,
                                        opts);
    for (auto type : expand(spec.capacity_type)) {
      const auto res = evaluate_capacity(type, ch, spec.optimizer);
      rows.push_back({p, {}, spec.configuration, spec.family, type,
                      res.value, res.converged, spec.optimizer.restarts,
                      spec.optimizer.seed});
      if (progress) {
        *progress << "sweep " << to_token(spec.configuration) << '/'
                  << to_token(spec.family) << " p=" << sweep_detail::fmt9(p)
                  << ' ' << to_token(type) << " = "
                  << sweep_detail::fmt9(res.value)
                  << (res.converged ? "" : " (not converged)") << '\n';
      }
    }
  }
  sweep_detail::sort_rows(rows);
  return rows;
}

inline int cmd_sweep(const SweepSpec& spec, std::ostream& log = std::cerr) {
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(spec, &log);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!sweep_detail::write_text(spec.output_path, format_csv(rows), log)) {
    return kExitUsage;
  }
  const bool all = std::all_of(rows.begin(), rows.end(),
                               [](const SweepRow& r) { return r.converged; });
  return all ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------- validate

struct ValidateSpec {
  std::vector<double> grid = linear_grid(0.0, 1.0, 21);
  double tolerance = 1e-3;
  OptimizerConfig optimizer;
  /// Empty means every published expression.
  std::vector<ClosedFormId> ids;
  /// Optional CSV of every deviation, worst first. Empty for none.
  std::string csv_path;
};

struct Deviation {
  ClosedFormId id;
  double p = 0.0;
  double numeric = 0.0;
  double closed = 0.0;
  double deviation = 0.0;
  bool converged = false;
};

struct ValidationReport {
  std::vector<Deviation> rows;  // id-major, grid order

  double worst() const {
    double w = 0.0;
    for (const auto& r : rows) w = std::max(w, r.deviation);
    return w;
  }

  bool within(double tol) const {
    return std::all_of(rows.begin(), rows.end(),
                       [tol](const Deviation& d) { return d.deviation <= tol; });
  }
};

/// Numerical capacity of the target-readout channel against every
/// requested closed form on the grid.
inline ValidationReport validate_closed_forms(const ValidateSpec& spec) {
  spec.optimizer.validate();
  const auto ids = spec.ids.empty() ? list_available() : spec.ids;
  ValidationReport rep;
  for (const auto& id : ids) {
    for (double p : spec.grid) {
      const double closed = closed_form(id, p);
      const auto res = evaluate_capacity(
          id.capacity_type, effective_channel(id.configuration, id.family, p),
          spec.optimizer);
      rep.rows.push_back({id, p, res.value, closed,
                          std::abs(res.value - closed), res.converged});
    }
  }
  return rep;
}

inline std::string format_deviation_csv(const ValidationReport& rep) {
  using sweep_detail::fmt9;
  auto rows = rep.rows;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Deviation& a, const Deviation& b) {
                     return a.deviation > b.deviation;
                   });
  std::string out =
      "configuration,family,capacity_type,p,numeric,closed_form,deviation,"
      "converged\n";
  for (const auto& r : rows) {
    out += std::string(to_token(r.id.configuration)) + ',' +
           std::string(to_token(r.id.family)) + ',' +
           std::string(to_token(r.id.capacity_type)) + ',' + fmt9(r.p) +
           ',' + fmt9(r.numeric) + ',' + fmt9(r.closed) + ',' +
           fmt9(r.deviation) + (r.converged ? ",true\n" : ",false\n");
  }
  return out;
}

/// Prints one line per closed form with its worst deviation, then a
/// summary. Exit 0 iff every deviation is within tolerance, 3 otherwise.
inline int cmd_validate(const ValidateSpec& spec,
                        std::ostream& report = std::cout,
                        std::ostream& log = std::cerr) {
  if (spec.grid.empty()) {
    log << "error: validation grid is empty\n";
    return kExitUsage;
  }
  if (!(spec.tolerance > 0.0)) {
    log << "error: tolerance must be positive\n";
    return kExitUsage;
  }
  ValidationReport rep;
  try {
    rep = validate_closed_forms(spec);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  using sweep_detail::fmt9;
  std::size_t failing = 0;
  for (std::size_t i = 0; i < rep.rows.size();) {
    const auto& id = rep.rows[i].id;
    const Deviation* worst = &rep.rows[i];
    std::size_t j = i;
    for (; j < rep.rows.size() && rep.rows[j].id == id; ++j) {
      if (rep.rows[j].deviation > worst->deviation) worst = &rep.rows[j];
    }
    const bool ok = worst->deviation <= spec.tolerance;
    if (!ok) ++failing;
    report << (ok ? "ok   " : "FAIL ") << to_string(id)
           << "  max|numeric - closed| = " << fmt9(worst->deviation)
           << " at p=" << fmt9(worst->p) << '\n';
    i = j;
  }
  const std::size_t forms =
      spec.ids.empty() ? list_available().size() : spec.ids.size();
  if (failing == 0) {
    report << "all " << forms << " closed forms within tolerance ";
  } else {
    report << failing << " of " << forms << " closed forms exceed tolerance ";
  }
  report << fmt9(spec.tolerance) << " (worst " << fmt9(rep.worst()) << ")\n";

  if (!spec.csv_path.empty() &&
      !sweep_detail::write_text(spec.csv_path, format_deviation_csv(rep),
                                log)) {
    return kExitUsage;
  }
  return failing == 0 ? kExitOk : kExitToleranceUnachievable;
}

// ----------------------------------------------------------- vacuum sweep

/// The four amplitude sets of the depolarizing vacuum-amplitude study, in
/// increasing order of the first amplitude.
inline std::vector<std::vector<double>> default_vacuum_amplitude_sets() {
  const double s2 = std::sqrt(2.0);
  const double s3 = std::sqrt(3.0);
  const double s6 = std::sqrt(6.0);
  return {
      {0.5, 0.5, 0.5, 0.5},
      {1.0 / s2, 1.0 / s6, 1.0 / s6, 1.0 / s6},
      {s3 / 2.0, 1.0 / (2.0 * s3), 1.0 / (2.0 * s3), 1.0 / (2.0 * s3)},
      {1.0, 0.0, 0.0, 0.0},
  };
}

struct VacuumSweepSpec {
  Family family = Family::Depolarizing;
  /// Raw amplitudes, normalized on use. Empty means the four default sets.
  std::vector<std::vector<double>> amplitude_sets;
  std::vector<double> grid = linear_grid(0.0, 1.0, 21);
  OptimizerConfig optimizer;
  /// The amplitudes only shape the control/path coherences, so the control
  /// is kept by default.
  Readout readout = Readout::Full;
  std::string output_path = "-";
};

/// Quantum capacity of the coherent superposition for each amplitude set
/// (used for both channels) and grid point; sorted by p, stable in set
/// order.
inline std::vector<SweepRow> run_vacuum_sweep(const VacuumSweepSpec& spec,
                                              std::ostream* progress =
                                                  nullptr) {
  spec.optimizer.validate();
  const auto raw = spec.amplitude_sets.empty()
                       ? default_vacuum_amplitude_sets()
                       : spec.amplitude_sets;
  std::vector<VacuumAmplitudes> sets;
  for (const auto& r : raw) sets.push_back(amplitudes_from_flags(r));
  for (double p : spec.grid) detail::check_probability(p, "vacuum sweep");

  std::vector<SweepRow> rows;
  for (const auto& a : sets) {
    ScenarioOptions opts;
    opts.inner_amplitudes = a;
    opts.readout = spec.readout;
    const std::string label = sweep_detail::amplitude_label(a);
    for (double p : spec.grid) {
      const auto res = quantum_capacity(
          effective_channel(SupermapKind::CoherentSup, spec.family, p, opts),
          spec.optimizer);
      rows.push_back({p, label, SupermapKind::CoherentSup, spec.family,
                      CapacityType::Quantum, res.value, res.converged,
                      spec.optimizer.restarts, spec.optimizer.seed});
      if (progress) {
        *progress << "vacuum-sweep (" << label << ") p="
                  << sweep_detail::fmt9(p) << " = "
                  << sweep_detail::fmt9(res.value)
                  << (res.converged ? "" : " (not converged)") << '\n';
      }
    }
  }
  sweep_detail::sort_rows(rows);
  return rows;
}

inline int cmd_vacuum_sweep(const VacuumSweepSpec& spec,
                            std::ostream& log = std::cerr) {
  if (spec.grid.empty()) {
    log << "error: grid is empty\n";
    return kExitUsage;
  }
  std::vector<SweepRow> rows;
  try {
    rows = run_vacuum_sweep(spec, &log);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!sweep_detail::write_text(spec.output_path, format_csv(rows, true),
                                log)) {
    return kExitUsage;
  }
  const bool all = std::all_of(rows.begin(), rows.end(),
                               [](const SweepRow& r) { return r.converged; });
  return all ? kExitOk : kExitNotConverged;
}

}  // namespace qsm
