// Copyright 2026 The fogvm Authors.
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


#include "support.hpp"

#include "fogvm/evaluate.hpp"

#include <doctest.h>

using namespace fogvm;
using namespace fogvm::test;

namespace {

// 160 km two-node line, one PON per node, 1600 users of a VM with
// T_v = 40000 Mbps at node 1.
Instance hand_instance() {
  Matrix u = Matrix::Zero(1, 2);
  u(0, 1) = 1600;
  return instance(topo(line(2, 160.0)), 1, {linear_vm(1, 50, 1, 25, 1600)}, u);
}

double at(const Instance& inst, Location l) {
  return total_power(inst, make_placement({{0, 0, 1, l, 40000}}, inst.vms)).total_w;
}

}  // namespace

TEST_SUITE("evaluate") {

TEST_CASE("hand-priced placements") {
  const Instance inst = hand_instance();
  // PON 2 * 1.5 * (1842 + 512 * 5) = 13206 in every case.
  // cloud 1.3 * (333 + 30 + 2 * 470), metro 1.5 * (2 * 30 + 470),
  // core 1.5 * (638 * 4 + 129 + 11 + 2 * 85)
  CHECK(at(inst, Location::cloud(0)) == doctest::Approx(13206 + 1693.9 + 795 + 4293));
  // Same node: no link, only aggregation ports.
  // core 1.5 * (638 * 3 + 170)
  CHECK(at(inst, Location::cloud(1)) == doctest::Approx(13206 + 1693.9 + 795 + 3126));
  // metro fog 1.4 * (333 + 13 + 940), metro gateway as above, idle core 255
  CHECK(at(inst, Location::metro_fog(1)) == doctest::Approx(13206 + 1800.4 + 795 + 255));
  // access fog 1.5 * (333 + 13 + 420)
  CHECK(at(inst, Location::access_fog(1, 0)) == doctest::Approx(13206 + 1149 + 255));
}

TEST_CASE("breakdown segments") {
  const Instance inst = hand_instance();
  const Evaluation e =
      evaluate(inst, make_placement({{0, 0, 1, Location::cloud(0), 40000}}, inst.vms));
  CHECK(e.breakdown.pon_w == doctest::Approx(13206));
  CHECK(e.breakdown.cloud_w == doctest::Approx(1693.9));
  CHECK(e.breakdown.metro_w == doctest::Approx(795));
  CHECK(e.breakdown.core_w == doctest::Approx(4293));
  CHECK(e.breakdown.metro_fog_w == 0.0);
  CHECK(e.core.arc_wavelengths.sum() == 1.0);
}

TEST_CASE("infeasible placements throw") {
  const Instance inst = hand_instance();
  const Placement p = make_placement({{0, 0, 1, Location::cloud(0), 30000}}, inst.vms);
  CHECK_THROWS_AS(evaluate(inst, p), InfeasiblePlacement);
  try {
    evaluate(inst, p);
  } catch (const InfeasiblePlacement& e) {
    CHECK_FALSE(e.violations().empty());
  }
}

TEST_CASE("no demand costs the PON floor plus idle optical switches") {
  const Instance inst = uniform_instance(topo(line(3)), 2, {linear_vm(1, 50, 1, 25)}, 0.0);
  CHECK(demand_units(inst).empty());
  const PowerBreakdown b = total_power(inst, make_placement({}, inst.vms));
  CHECK(b.total_w == doctest::Approx(6 * 6603 + 3 * 127.5));
}

TEST_CASE("units and candidates") {
  const Instance inst = uniform_instance(topo(star(4)), 2, {linear_vm(1, 50, 1, 25)}, 10.0);
  const auto units = demand_units(inst);
  CHECK(units.size() == 8);
  CHECK(units[1].node == 0);
  CHECK(units[1].pon == 1);
  CHECK(units[1].traffic_mbps == 250.0);
  const auto c = candidate_locations(inst, Restriction::None, units[3]);
  REQUIRE(c.size() == 6);
  CHECK(c[0] == Location::cloud(0));
  CHECK(c[3] == Location::cloud(3));
  CHECK(c[4] == Location::metro_fog(1));
  CHECK(c[5] == Location::access_fog(1, 1));
  CHECK(candidate_locations(inst, Restriction::CloudsOnly, units[3]).size() == 4);
  CHECK(candidate_locations(inst, Restriction::CloudsAndMetro, units[3]).size() == 5);
}

TEST_CASE("fast evaluator agrees with the full evaluation") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = build_instance(random_desk_scenario(seed));
    const auto units = demand_units(inst);
    AssignmentEvaluator fast(inst);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 10; ++k) {
      const auto where = random_assignment(inst, units, Restriction::None, rng);
      const Placement p = make_placement(servings_for(units, where), inst.vms);
      const Evaluation e = evaluate(inst, p);
      CHECK(close(fast.total_watts(units, where), e.breakdown.total_w));
      // PON power never depends on the placement.
      CHECK(close(e.breakdown.pon_w, pon_power(inst.attachment, inst.num_nodes(), inst.params)));
      CHECK(check_core_state(e.core, inst.topo()).empty());
    }
  }
}

TEST_CASE("sub-instance keeps the chosen VMs") {
  const Instance inst = uniform_instance(
      topo(line(3)), 1, {linear_vm(1, 50, 1, 25), linear_vm(2, 50, 1, 10), constant_vm(3, 5, 1)}, 7.0);
  const std::vector<int> pick{2, 0};
  const Instance sub = sub_instance(inst, pick);
  REQUIRE(sub.vms.size() == 2);
  CHECK(sub.demand.num_vms() == 2);
  const std::vector<int> ids{sub.vms[0].id, sub.vms[1].id};
  CHECK(std::find(ids.begin(), ids.end(), 2) == ids.end());
}

}  // TEST_SUITE
