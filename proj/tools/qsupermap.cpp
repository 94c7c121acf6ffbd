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

#include "qsupermap/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

template <typename E>
std::map<std::string, E> token_map(auto const& all) {
  std::map<std::string, E> m;
  for (auto v : all) m.emplace(std::string(qsm::to_token(v)), v);
  return m;
}

struct Common {
  std::string capacity = "both";
  double p_start = 0.0;
  double p_end = 1.0;
  int p_steps = 21;
  int restarts = qsm::OptimizerConfig{}.restarts;
  double tol = qsm::OptimizerConfig{}.tolerance;
  std::uint64_t seed = qsm::OptimizerConfig{}.seed;
  std::string ensemble = "basis";
  std::string out = "-";
};

void add_grid(CLI::App* app, Common& c) {
  app->add_option("--p-start", c.p_start, "first noise parameter")
      ->capture_default_str();
  app->add_option("--p-end", c.p_end, "last noise parameter")
      ->capture_default_str();
  app->add_option("--p-steps", c.p_steps, "number of grid points")
      ->capture_default_str();
}

void add_optimizer(CLI::App* app, Common& c) {
  app->add_option("--restarts", c.restarts, "optimizer restarts")
      ->capture_default_str();
  app->add_option("--seed", c.seed, "base random seed")->capture_default_str();
  app->add_option("--ensemble", c.ensemble,
                  "classical ensemble search: basis or bloch")
      ->check(CLI::IsMember({"basis", "bloch"}))
      ->capture_default_str();
}

qsm::OptimizerConfig optimizer(const Common& c, double tol) {
  qsm::OptimizerConfig cfg;
  cfg.restarts = c.restarts;
  cfg.tolerance = tol;
  cfg.seed = c.seed;
  cfg.ensemble_search = c.ensemble == "bloch"
                            ? qsm::EnsembleSearch::BlochStates
                            : qsm::EnsembleSearch::ComputationalBasis;
  return cfg;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double x = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    v.push_back(x);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacities of quantum switches and coherent superpositions "
               "of noisy channels"};
  app.require_subcommand(1);

  const auto configs = token_map<qsm::SupermapKind>(qsm::kAllSupermapKinds);
  const auto families = token_map<qsm::Family>(qsm::kAllFamilies);
  const std::map<std::string, qsm::Readout> readouts = {
      {"target", qsm::Readout::Target}, {"full", qsm::Readout::Full}};

  // sweep
  Common sw;
  std::string sw_config = "switch";
  std::string sw_family = "bitflip";
  std::string sw_amps;
  std::string sw_readout = "target";
  auto* sweep = app.add_subcommand("sweep", "capacity over a grid of p");
  sweep->add_option("--config", sw_config, "configuration")
      ->transform(CLI::IsMember(configs))
      ->capture_default_str();
  sweep->add_option("--family", sw_family, "channel family")
      ->transform(CLI::IsMember(families))
      ->capture_default_str();
  sweep->add_option("--capacity", sw.capacity, "classical, quantum or both")
      ->check(CLI::IsMember({"classical", "quantum", "both"}))
      ->capture_default_str();
  add_grid(sweep, sw);
  add_optimizer(sweep, sw);
  sweep->add_option("--tol", sw.tol, "restart agreement tolerance (bits)")
      ->capture_default_str();
  sweep->add_option("--amps", sw_amps,
                    "vacuum amplitudes of each channel, comma separated");
  sweep->add_option("--readout", sw_readout,
                    "target (control discarded) or full")
      ->check(CLI::IsMember({"target", "full"}))
      ->capture_default_str();
  sweep->add_option("--out", sw.out, "CSV path, - for stdout")
      ->capture_default_str();

  // validate
  Common va;
  va.tol = 1e-3;
  va.out.clear();
  auto* validate =
      app.add_subcommand("validate", "numerical optimum vs closed forms");
  add_grid(validate, va);
  add_optimizer(validate, va);
  validate->add_option("--tol", va.tol, "allowed |numeric - closed| (bits)")
      ->capture_default_str();
  validate->add_option("--out", va.out, "optional CSV of deviations");

  // vacuum-sweep
  Common vs;
  std::string vs_family = "depolarizing";
  std::vector<std::string> vs_amps;
  std::string vs_readout = "full";
  auto* vacuum = app.add_subcommand(
      "vacuum-sweep", "quantum capacity of the coherent superposition per "
                      "vacuum-amplitude set");
  vacuum->add_option("--family", vs_family, "channel family")
      ->transform(CLI::IsMember(families))
      ->capture_default_str();
  vacuum->add_option("--amps", vs_amps,
                     "amplitude set, comma separated; repeat for more sets");
  add_grid(vacuum, vs);
  add_optimizer(vacuum, vs);
  vacuum->add_option("--tol", vs.tol, "restart agreement tolerance (bits)")
      ->capture_default_str();
  vacuum->add_option("--readout", vs_readout, "target or full")
      ->check(CLI::IsMember({"target", "full"}))
      ->capture_default_str();
  vacuum->add_option("--out", vs.out, "CSV path, - for stdout")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? qsm::kExitOk : qsm::kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      qsm::SweepSpec spec;
      spec.configuration = *qsm::parse_supermap_kind(sw_config);
      spec.family = *qsm::parse_family(sw_family);
      spec.capacity_type = *qsm::parse_capacity_selection(sw.capacity);
      spec.p_start = sw.p_start;
      spec.p_end = sw.p_end;
      spec.p_steps = sw.p_steps;
      if (!sw_amps.empty()) spec.amplitudes = parse_reals(sw_amps);
      spec.optimizer = optimizer(sw, sw.tol);
      spec.readout = readouts.at(sw_readout);
      spec.output_path = sw.out;
      return qsm::cmd_sweep(spec);
    }
    if (validate->parsed()) {
      qsm::ValidateSpec spec;
      spec.grid = qsm::linear_grid(va.p_start, va.p_end, va.p_steps);
      spec.tolerance = va.tol;
      spec.optimizer = optimizer(va, qsm::OptimizerConfig{}.tolerance);
      spec.csv_path = va.out;
      return qsm::cmd_validate(spec);
    }
    qsm::VacuumSweepSpec spec;
    spec.family = *qsm::parse_family(vs_family);
    for (const auto& a : vs_amps) spec.amplitude_sets.push_back(parse_reals(a));
    spec.grid = qsm::linear_grid(vs.p_start, vs.p_end, vs.p_steps);
    spec.optimizer = optimizer(vs, vs.tol);
    spec.readout = readouts.at(vs_readout);
    spec.output_path = vs.out;
    return qsm::cmd_vacuum_sweep(spec);
  } catch (const qsm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: not a number: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range: " << e.what() << '\n';
  }
  return qsm::kExitUsage;
}
