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


#include "qsupermap/scenario.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qsm;
using qsm::testing::h2;
using qsm::testing::random_state;
using Catch::Approx;

namespace {

Channel fixed_switch(const Channel& a, const Channel& b) {
  return fix_control(quantum_switch(a, b), ControlState::plus());
}

}  // namespace

TEST_CASE("Nelder-Mead minimizes the Rosenbrock function", "[infotheory]") {
  auto rosen = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
  };
  NelderMeadOptions opts;
  opts.max_iterations = 5000;
  opts.f_tolerance = 1e-14;
  opts.x_tolerance = 1e-9;
  const auto r = nelder_mead(rosen, Eigen::Vector2d(-1.2, 1.0), opts);
  CHECK(r.converged);
  CHECK(r.x(0) == Approx(1.0).margin(1e-6));
  CHECK(r.x(1) == Approx(1.0).margin(1e-6));
}

TEST_CASE("Nelder-Mead treats non-finite values as +inf", "[infotheory]") {
  auto f = [](const Eigen::VectorXd& x) {
    return x(0) < 0 ? std::nan("") : (x(0) - 1) * (x(0) - 1);
  };
  const auto r = nelder_mead(f, Eigen::VectorXd::Constant(1, 0.1));
  CHECK(r.x(0) == Approx(1.0).margin(1e-6));
}

TEST_CASE("ensembles validate their members", "[infotheory][error]") {
  CHECK_NOTHROW(Ensemble::computational_basis(0.3));
  CHECK_THROWS_AS(Ensemble({{0.6, DensityMatrix::basis(2, 0)},
                            {0.6, DensityMatrix::basis(2, 1)}}),
                  DomainError);
  CHECK_THROWS_AS(Ensemble({{1.0, DensityMatrix::maximally_mixed(2)}}),
                  DomainError);
  CHECK_THROWS_AS(Ensemble({{1.5, DensityMatrix::basis(2, 0)},
                            {-0.5, DensityMatrix::basis(2, 1)}}),
                  DomainError);
  CHECK_THROWS_AS(Ensemble({{0.5, DensityMatrix::basis(2, 0)},
                            {0.5, DensityMatrix::basis(3, 1)}}),
                  DimensionError);
  CHECK_THROWS_AS(Ensemble({}), DomainError);
}

TEST_CASE("Holevo information examples", "[infotheory]") {
  CHECK(holevo_information(identity_channel(), Ensemble::computational_basis())
        == Approx(1.0).margin(1e-12));
  const Ensemble single({{1.0, DensityMatrix::basis(2, 0)}});
  CHECK(holevo_information(depolarizing(0.3), single) ==
        Approx(0.0).margin(1e-12));
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    CHECK(holevo_information(fixed_switch(phase_flip(p), phase_flip(p)),
                             Ensemble::computational_basis()) ==
          Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("Holevo information matches the binary-entropy formula for a bit "
          "flip",
          "[infotheory]") {
  for (double p : {0.05, 0.3, 0.7}) {
    CHECK(holevo_information(bit_flip(p), Ensemble::computational_basis()) ==
          Approx(1.0 - h2(p)).margin(1e-12));
  }
}

TEST_CASE("Holevo information is bounded", "[infotheory][property]") {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = u(testing::rng());
    const auto ch = fix_control(
        build_supermap(SupermapKind::CohOfSwitch, Family::Depolarizing, p),
        ControlState::plus(2));
    const int m = 2 + trial % 3;
    std::vector<EnsembleMember> members;
    std::vector<double> w(m);
    double total = 0;
    for (auto& x : w) total += x = u(testing::rng());
    for (int k = 0; k < m; ++k) {
      members.push_back({w[k] / total, testing::random_pure(2)});
    }
    const double chi = holevo_information(ch, Ensemble(std::move(members)));
    CHECK(chi >= -1e-12);
    CHECK(chi <= std::min(std::log2(static_cast<double>(ch.d_out())),
                          std::log2(static_cast<double>(m))) +
                     1e-12);
  }
}

TEST_CASE("complementary output examples", "[infotheory]") {
  const auto rho = random_state(2);
  const auto w = complementary_output(identity_channel(), rho);
  REQUIRE(w.dim() == 1);
  CHECK(std::abs(w.matrix()(0, 0) - Complex(1.0)) <= 1e-15);

  for (double p : {0.1, 0.4}) {
    const auto wb =
        complementary_output(bit_flip(p), DensityMatrix::maximally_mixed(2));
    CHECK(std::abs(wb.matrix()(0, 0) - Complex(1 - p)) <= 1e-15);
    CHECK(std::abs(wb.matrix()(1, 1) - Complex(p)) <= 1e-15);
    CHECK(std::abs(wb.matrix()(0, 1)) <= 1e-15);
  }
}

TEST_CASE("complementary output matches Tr(K_a rho K_b^dagger)",
          "[infotheory]") {
  const auto ch = pauli_channel(0.1, 0.2, 0.3);
  const auto rho = random_state(2);
  const auto w = complementary_output(ch, rho).matrix();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(std::abs(w(a, b) - (ch.kraus()[a] * rho.matrix() *
                                ch.kraus()[b].adjoint())
                                   .trace()) <= 1e-15);
}

TEST_CASE("complementary output is a valid state for composed channels",
          "[infotheory][property]") {
  for (double p : testing::grid(0.1)) {
    for (auto k : kAllSupermapKinds) {
      const auto ch = effective_channel(k, Family::MixedAlternating, p);
      const auto rho = random_state(2);
      DensityMatrix w = DensityMatrix::maximally_mixed(1);
      REQUIRE_NOTHROW(w = complementary_output(ch, rho));
      CHECK(std::abs(w.matrix().trace() - Complex(1.0)) <= 1e-10);
    }
  }
}

TEST_CASE("coherent information examples", "[infotheory]") {
  CHECK(coherent_information(identity_channel(),
                             DensityMatrix::maximally_mixed(2)) ==
        Approx(1.0).margin(1e-12));
  CHECK(coherent_information(identity_channel(), testing::random_pure(2)) ==
        Approx(0.0).margin(1e-9));
}

TEST_CASE("coherent information does not depend on the Kraus representation",
          "[infotheory][property]") {
  const auto ch = effective_channel(SupermapKind::SwitchOfCoh,
                                    Family::Depolarizing, 0.2);
  const auto compact = minimal_kraus(ch);
  CHECK(compact.kraus_count() < ch.kraus_count());
  for (int trial = 0; trial < 3; ++trial) {
    const auto rho = random_state(2);
    CHECK(coherent_information(compact, rho) ==
          Approx(coherent_information(ch, rho)).margin(1e-9));
  }
}

TEST_CASE("capacities of the identity channel", "[infotheory]") {
  CHECK(classical_capacity(identity_channel()).value ==
        Approx(1.0).margin(1e-6));
  CHECK(quantum_capacity(identity_channel()).value == Approx(1.0).margin(1e-6));
  OptimizerConfig bloch;
  bloch.ensemble_search = EnsembleSearch::BlochStates;
  CHECK(classical_capacity(identity_channel(), bloch).value ==
        Approx(1.0).margin(1e-6));
}

TEST_CASE("classical capacity of the coherent superposition of bit flips "
          "vanishes at p = 1/2",
          "[infotheory]") {
  const auto ch = effective_channel(SupermapKind::CoherentSup,
                                    Family::BitFlip, 0.5);
  CHECK(classical_capacity(ch).value == Approx(0.0).margin(1e-3));
}

TEST_CASE("switch of fully depolarizing channels has nonzero classical "
          "capacity",
          "[infotheory]") {
  const auto ch = effective_channel(SupermapKind::Switch,
                                    Family::Depolarizing, 1.0);
  // Independent value: the composed target map shrinks the Bloch vector by
  // (1 - 4p/3)^2 = 1/9, so chi = 1 - h((1 - 1/9) / 2).
  const double expect = 1.0 - h2((1.0 - 1.0 / 9.0) / 2.0);
  const auto r = classical_capacity(ch);
  CHECK(r.value > 0.0);
  CHECK(r.value == Approx(expect).margin(1e-6));
}

TEST_CASE("quantum capacity of the bit-flip switch", "[infotheory]") {
  auto q = [](double p) {
    return quantum_capacity(
               effective_channel(SupermapKind::Switch, Family::BitFlip, p))
        .value;
  };
  CHECK(q(0.5) == Approx(0.0).margin(1e-3));
  CHECK(q(0.0) == Approx(1.0).margin(1e-3));
  CHECK(q(1.0) == Approx(1.0).margin(1e-3));
  // Composite map is a bit flip with q = 2p(1 - p); its one-shot coherent
  // information is maximized at the maximally mixed input.
  for (double p : {0.1, 0.3}) {
    CHECK(q(p) == Approx(1.0 - h2(2 * p * (1 - p))).margin(1e-6));
  }
}

TEST_CASE("quantum capacity reports max(0, optimum)", "[infotheory]") {
  const auto r = quantum_capacity(effective_channel(
      SupermapKind::SwitchOfSwitch, Family::Depolarizing, 0.5));
  // Pure inputs give I_c = 0, so the optimum sits at zero up to round-off.
  CHECK(r.raw_value == Approx(0.0).margin(1e-9));
  CHECK(r.value == std::max(0.0, r.raw_value));
  CHECK(r.value >= 0.0);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  CHECK(coherent_information(effective_channel(SupermapKind::SwitchOfSwitch,
                                               Family::Depolarizing, 0.5),
                             mixed) < 0.0);
  CHECK(std::holds_alternative<DensityMatrix>(r.argmax));
}

TEST_CASE("optimizer dominates canonical feasible points",
          "[infotheory][property]") {
  const auto canon = Ensemble::computational_basis();
  const auto mixed = DensityMatrix::maximally_mixed(2);
  OptimizerConfig bloch;
  bloch.ensemble_search = EnsembleSearch::BlochStates;
  bloch.restarts = 4;
  for (double p : testing::grid(0.1)) {
    for (auto k : kAllSupermapKinds) {
      for (auto f : {Family::BitFlip, Family::Depolarizing}) {
        const auto ch = effective_channel(k, f, p);
        const double chi = holevo_information(ch, canon);
        CHECK(classical_capacity(ch).value >= chi - 1e-9);
        // Representation-independent; the compact form keeps this cheap.
        CHECK(quantum_capacity(ch).raw_value >=
              coherent_information(minimal_kraus(ch), mixed) - 1e-9);
        if (k == SupermapKind::Switch) {
          CHECK(classical_capacity(ch, bloch).value >= chi - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("Bloch-state search agrees with the basis search when the "
          "optimum is a basis ensemble",
          "[infotheory]") {
  OptimizerConfig bloch;
  bloch.ensemble_search = EnsembleSearch::BlochStates;
  for (double p : {0.1, 0.35}) {
    const auto ch = depolarizing(p);
    CHECK(classical_capacity(ch, bloch).value ==
          Approx(classical_capacity(ch).value).margin(1e-5));
  }
}

TEST_CASE("capacity is 1 at p = 0 for every configuration",
          "[infotheory][property]") {
  for (auto k : kAllSupermapKinds) {
    for (auto f : {Family::BitFlip, Family::PhaseFlip, Family::Depolarizing}) {
      const auto ch = effective_channel(k, f, 0.0);
      CHECK(classical_capacity(ch).value == Approx(1.0).margin(1e-3));
      CHECK(quantum_capacity(ch).value == Approx(1.0).margin(1e-3));
    }
  }
}

TEST_CASE("doubling restarts does not move the optimum",
          "[infotheory][property]") {
  OptimizerConfig base;
  OptimizerConfig twice = base;
  twice.restarts = 2 * base.restarts;
  for (const auto& id : list_available()) {
    for (double p : testing::grid(0.05)) {
      const auto ch = effective_channel(id.configuration, id.family, p);
      const auto a = evaluate_capacity(id.capacity_type, ch, base);
      const auto b = evaluate_capacity(id.capacity_type, ch, twice);
      CHECK(std::abs(a.value - b.value) <= base.tolerance);
      CHECK(a.converged);
    }
  }
}

TEST_CASE("capacities are reproducible for a fixed seed", "[infotheory]") {
  const auto ch = effective_channel(SupermapKind::CohOfSwitch,
                                    Family::MixedBlock, 0.37);
  OptimizerConfig cfg;
  cfg.ensemble_search = EnsembleSearch::BlochStates;
  const auto a = classical_capacity(ch, cfg);
  const auto b = classical_capacity(ch, cfg);
  CHECK(a.value == b.value);
  CHECK(a.restart_values == b.restart_values);
  const auto qa = quantum_capacity(ch, cfg);
  const auto qb = quantum_capacity(ch, cfg);
  CHECK(qa.raw_value == qb.raw_value);
}

TEST_CASE("optimizer configuration is validated", "[infotheory][error]") {
  OptimizerConfig cfg;
  cfg.restarts = 0;
  CHECK_THROWS_AS(classical_capacity(identity_channel(), cfg), DomainError);
  cfg = {};
  cfg.tolerance = 0;
  CHECK_THROWS_AS(quantum_capacity(identity_channel(), cfg), DomainError);
  cfg = {};
  cfg.ensemble_size = 5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(classical_capacity(identity_channel(3)), DimensionError);
  CHECK_THROWS_AS(holevo_information(identity_channel(3),
                                     Ensemble::computational_basis()),
                  DimensionError);
}
