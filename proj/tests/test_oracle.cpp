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


#include "qsupermap/oracle.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <functional>

using namespace qsm;
using qsm::testing::h2;
using Catch::Approx;

namespace {

using K = SupermapKind;
using F = Family;
constexpr auto C = CapacityType::Classical;
constexpr auto Q = CapacityType::Quantum;

// Each printed expression reduces to one minus a binary entropy of a flip
// probability: p for a single flip, p/2 when a flip path is mixed with a
// dephasing path, 2p(1 - p) for two consecutive flips, p(1 - p) for the
// even mix of two consecutive bit flips and two consecutive phase flips,
// 2p/3 for one depolarizing channel, (1 - (1 - 4p/3)^2) / 2 for two.
double one_flip(double p) { return 1 - h2(p); }
double half_flip(double p) { return 1 - h2(p / 2); }
double two_flips(double p) { return 1 - h2(2 * p * (1 - p)); }
double block_mix(double p) { return 1 - h2(p * (1 - p)); }
double one_depol(double p) { return 1 - h2(2 * p / 3); }
double two_depol(double p) {
  const double s = 1 - 4 * p / 3;
  return 1 - h2((1 - s * s) / 2);
}
double unity(double) { return 1.0; }

struct Ref {
  ClosedFormId id;
  std::function<double(double)> f;
};

const std::vector<Ref>& reference() {
  static const std::vector<Ref> r = {
      {{K::Switch, F::BitFlip, C}, two_flips},
      {{K::Switch, F::PhaseFlip, C}, unity},
      {{K::Switch, F::MixedAlternating, C}, one_flip},
      {{K::Switch, F::Depolarizing, C}, two_depol},
      {{K::CoherentSup, F::BitFlip, C}, one_flip},
      {{K::CoherentSup, F::PhaseFlip, C}, unity},
      {{K::CoherentSup, F::MixedAlternating, C}, half_flip},
      {{K::CoherentSup, F::Depolarizing, C}, one_depol},
      {{K::SwitchOfSwitch, F::BitFlip, C}, two_flips},
      {{K::SwitchOfSwitch, F::PhaseFlip, C}, unity},
      {{K::SwitchOfSwitch, F::MixedAlternating, C}, one_flip},
      {{K::SwitchOfSwitch, F::MixedBlock, C}, block_mix},
      {{K::SwitchOfSwitch, F::Depolarizing, C}, two_depol},
      {{K::SwitchOfCoh, F::BitFlip, C}, two_flips},
      {{K::SwitchOfCoh, F::PhaseFlip, C}, unity},
      {{K::SwitchOfCoh, F::MixedAlternating, C}, block_mix},
      {{K::SwitchOfCoh, F::MixedBlock, C}, one_flip},
      {{K::SwitchOfCoh, F::Depolarizing, C}, two_depol},
      {{K::CohOfSwitch, F::BitFlip, C}, two_flips},
      {{K::CohOfSwitch, F::PhaseFlip, C}, unity},
      {{K::CohOfSwitch, F::MixedAlternating, C}, one_flip},
      {{K::CohOfSwitch, F::MixedBlock, C}, block_mix},
      {{K::CohOfSwitch, F::Depolarizing, C}, two_depol},
      {{K::CohOfCoh, F::BitFlip, C}, one_flip},
      {{K::CohOfCoh, F::PhaseFlip, C}, unity},
      {{K::CohOfCoh, F::MixedAlternating, C}, half_flip},
      {{K::CohOfCoh, F::MixedBlock, C}, half_flip},
      {{K::CohOfCoh, F::Depolarizing, C}, one_depol},
      {{K::Switch, F::BitFlip, Q}, two_flips},
  };
  return r;
}

}  // namespace

TEST_CASE("closed form examples", "[oracle]") {
  for (double p : testing::grid(0.1)) {
    CHECK(closed_form({K::Switch, F::PhaseFlip, C}, p) == 1.0);
  }
  CHECK(closed_form({K::CoherentSup, F::BitFlip, C}, 0.5) ==
        Approx(0.0).margin(1e-15));
  CHECK(closed_form({K::Switch, F::BitFlip, Q}, 0.5) ==
        Approx(0.0).margin(1e-15));
  CHECK(closed_form({K::Switch, F::BitFlip, Q}, 0.0) == Approx(1.0));
  CHECK(closed_form({K::Switch, F::BitFlip, Q}, 1.0) == Approx(1.0));
  CHECK(closed_form({K::Switch, F::Depolarizing, C}, 1.0) > 0.0);
}

TEST_CASE("list of available expressions", "[oracle]") {
  const auto ids = list_available();
  CHECK(ids.size() == reference().size());
  CHECK(std::count(ids.begin(), ids.end(),
                   ClosedFormId{K::Switch, F::Depolarizing, C}) == 1);
  CHECK(std::count_if(ids.begin(), ids.end(), [](const ClosedFormId& id) {
          return id.capacity_type == Q;
        }) == 1);
  CHECK(list_available() == ids);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) CHECK_FALSE(ids[i] == ids[j]);
  }
}

TEST_CASE("transcribed expressions match their entropy forms", "[oracle]") {
  for (const auto& r : reference()) {
    INFO(to_string(r.id));
    for (int i = 0; i <= 200; ++i) {
      const double p = i == 200 ? 1.0 : i / 200.0;
      INFO("p = " << p);
      CHECK(closed_form(r.id, p) == Approx(r.f(p)).margin(1e-12));
    }
  }
}

TEST_CASE("expressions are finite and within [0, 1] on a fine grid",
          "[oracle][property]") {
  for (const auto& id : list_available()) {
    for (int i = 0; i <= 200; ++i) {
      const double p = i == 200 ? 1.0 : i / 200.0;
      const double v = closed_form(id, p);
      INFO(to_string(id) << " p = " << p);
      CHECK(std::isfinite(v));
      CHECK(v >= -1e-12);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("printed duplicates agree identically", "[oracle][property]") {
  for (int i = 0; i <= 200; ++i) {
    const double p = i == 200 ? 1.0 : i / 200.0;
    const double sw = closed_form({K::Switch, F::BitFlip, C}, p);
    CHECK(closed_form({K::SwitchOfCoh, F::BitFlip, C}, p) == sw);
    CHECK(closed_form({K::CohOfSwitch, F::BitFlip, C}, p) == sw);
    const double dep = closed_form({K::CohOfSwitch, F::Depolarizing, C}, p);
    CHECK(closed_form({K::SwitchOfSwitch, F::Depolarizing, C}, p) == dep);
    CHECK(closed_form({K::SwitchOfCoh, F::Depolarizing, C}, p) == dep);
  }
}

TEST_CASE("removable singularities use their limits", "[oracle]") {
  // arccoth pole of the depolarizing expressions sits at p = 3/4.
  const double at = closed_form({K::Switch, F::Depolarizing, C}, 0.75);
  CHECK(std::isfinite(at));
  CHECK(at == Approx(0.0).margin(1e-12));
  CHECK(closed_form({K::Switch, F::BitFlip, C}, 0.0) == Approx(1.0));
  CHECK(closed_form({K::CoherentSup, F::BitFlip, C}, 1.0) == Approx(1.0));
  CHECK(closed_form({K::CohOfSwitch, F::MixedBlock, C}, 1.0) == Approx(1.0));
}

TEST_CASE("closed_form rejects unknown ids and bad p", "[oracle][error]") {
  CHECK_THROWS_AS(closed_form({K::CoherentSup, F::BitFlip, Q}, 0.2),
                  DomainError);
  try {
    closed_form({K::SwitchOfSwitch, F::Depolarizing, Q}, 0.2);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("switch/bitflip/quantum") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(closed_form({K::Switch, F::BitFlip, C}, -0.01), DomainError);
  CHECK_THROWS_AS(closed_form({K::Switch, F::BitFlip, C}, 1.01), DomainError);
}

TEST_CASE("family tokens round-trip", "[oracle]") {
  for (auto f : kAllFamilies) CHECK(parse_family(to_token(f)) == f);
  CHECK_FALSE(parse_family("bit-flip").has_value());
  CHECK(to_string({K::CohOfCoh, F::MixedBlock, C}) ==
        "coc/mixed_block/classical");
}
