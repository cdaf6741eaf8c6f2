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

#include "fogvm/heuristic.hpp"
#include "fogvm/oracle.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace fogvm;
using namespace fogvm::test;

namespace {

HeuristicOptions with(OfflineCosting c, Restriction r = Restriction::None) {
  HeuristicOptions h;
  h.costing = c;
  h.restriction = r;
  return h;
}

double recipe_price(const Instance& inst, const OfflineEntry& e, const Recipe& r) {
  const Instance single = canonical_instance(inst, e.key);
  return total_power(single, make_placement(apply_recipe(single, 0, r), single.vms)).total_w;
}

OfflineEntry entry(const VmTypeKey& key, int cloud_site) {
  OfflineEntry e;
  e.key = key;
  Recipe r;
  r.sites = {cloud_site};
  e.candidates = {r};
  return e;
}

}  // namespace

TEST_SUITE("heuristic") {

TEST_CASE("standalone prices are single-type network totals") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Instance inst = build_instance(random_desk_scenario(seed));
    const OfflineTable t = offline_phase(inst, with(OfflineCosting::Standalone));
    CHECK(t.costing == OfflineCosting::Standalone);
    for (const auto& e : t.entries) {
      for (const auto& r : e.candidates) {
        CHECK(close(r.power_w, recipe_price(inst, e, r), 1e-7));
      }
      for (const auto& r : e.candidates) CHECK(e.recipe().power_w <= r.power_w);
    }
  }
}

TEST_CASE("one VM: the online total is the recorded price") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Scenario s = random_desk_scenario(seed);
    s.vms.resize(1);
    s.demand.entries.erase(
        std::remove_if(s.demand.entries.begin(), s.demand.entries.end(),
                       [&](const ExplicitDemand& d) { return d.vm_id != s.vms[0].id; }),
        s.demand.entries.end());
    const Instance inst = build_instance(s);
    const auto h = with(OfflineCosting::Standalone);
    const OfflineTable t = offline_phase(inst, h);
    const HeuristicResult res = online_phase(inst, t, h);
    CHECK(close(res.evaluation.breakdown.total_w, t.entries.at(0).recipe().power_w, 1e-7));
  }
}

TEST_CASE("heuristic is feasible and never beats the oracle") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = build_instance(random_desk_scenario(seed));
    const HeuristicOptions h;
    const HeuristicResult res = online_phase(inst, offline_phase(inst, h), h);
    CHECK(validate(res.placement, inst.demand, inst.vms, inst.topo()).empty());
    const double best = solve_exact(inst).evaluation.breakdown.total_w;
    CHECK(res.evaluation.breakdown.total_w >= best * (1 - 1e-9));
    CHECK(res.unpruned_total_w >= res.evaluation.breakdown.total_w * (1 - 1e-12));
  }
}

TEST_CASE("type keys and classification") {
  VmSpec a = linear_vm(1, 50, 1, 25);
  VmSpec b = linear_vm(2, 50, 10, 25);
  VmSpec c = constant_vm(3, 50, 25);
  OfflineTable t;
  t.entries = {entry(type_key(a), 0), entry(type_key(b), 1)};
  std::sort(t.entries.begin(), t.entries.end(),
            [](const auto& x, const auto& y) { return x.key < y.key; });

  CHECK(&classify(t, a) == t.find(type_key(a)));
  VmSpec m3 = linear_vm(9, 50, 3, 25);
  CHECK(classify(t, m3).key == type_key(a));
  VmSpec m8 = linear_vm(9, 50, 8, 25);
  CHECK(classify(t, m8).key == type_key(b));
  CHECK_THROWS_AS(classify(t, m3, false), UnclassifiedVm);
  CHECK_THROWS_AS(classify(t, c), UnclassifiedVm);

  VmSpec a2 = a;
  a2.id = 77;
  CHECK(type_key(a2) == type_key(a));
  const std::vector<VmSpec> vms{b, a, a2, c};
  CHECK(vm_types(vms).size() == 3);
}

TEST_CASE("placement order") {
  std::vector<VmSpec> vms{linear_vm(1, 50, 1, 25), linear_vm(2, 50, 1, 25),
                          linear_vm(3, 50, 1, 25)};
  vms[0].popularity_share = 0.01;
  vms[1].popularity_share = 0.16;
  vms[2].popularity_share = 0.01;
  CHECK(placement_order(vms, OnlineOrder::Popularity) == std::vector<int>{1, 0, 2});
  CHECK(placement_order(vms, OnlineOrder::Catalog) == std::vector<int>{0, 1, 2});
}

TEST_CASE("offline tables are deterministic and round-trip through JSON") {
  const Instance inst = build_instance(random_desk_scenario(8));
  for (auto c : {OfflineCosting::Standalone, OfflineCosting::Amortized, OfflineCosting::Group}) {
    auto h = with(c);
    const OfflineTable a = offline_phase(inst, h);
    h.workers = 4;
    const OfflineTable b = offline_phase(inst, h);
    const nlohmann::json ja = offline_table_to_json(a, inst.topo());
    CHECK(ja == offline_table_to_json(b, inst.topo()));
    const OfflineTable back = offline_table_from_json(ja, inst.topo());
    CHECK(offline_table_to_json(back, inst.topo()) == ja);
    nlohmann::json bad = ja;
    bad["extra"] = 1;
    CHECK_THROWS(offline_table_from_json(bad, inst.topo()));
  }
}

TEST_CASE("restricting a table matches computing it directly") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = build_instance(random_desk_scenario(seed));
    for (auto c : {OfflineCosting::Standalone, OfflineCosting::Group}) {
      const OfflineTable full = offline_phase(inst, with(c));
      for (Restriction r : {Restriction::CloudsOnly, Restriction::CloudsAndMetro}) {
        const auto h = with(c, r);
        const OfflineTable derived = restrict_table(full, inst, h);
        const OfflineTable direct = offline_phase(inst, h);
        CHECK(offline_table_to_json(derived, inst.topo()) ==
              offline_table_to_json(direct, inst.topo()));
      }
    }
  }
}

TEST_CASE("group costing is locally optimal") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = build_instance(random_desk_scenario(seed));
    const auto h = with(OfflineCosting::Group);
    OfflineTable t = offline_phase(inst, h);
    const double total = online_phase(inst, t, h).evaluation.breakdown.total_w;
    for (auto& e : t.entries) {
      const int chosen = e.chosen;
      for (std::size_t i = 0; i < e.candidates.size(); ++i) {
        CHECK(e.candidates[static_cast<std::size_t>(chosen)].power_w <= e.candidates[i].power_w);
        e.chosen = static_cast<int>(i);
        const double alt = online_phase(inst, t, h).evaluation.breakdown.total_w;
        CHECK(alt >= total * (1 - 1e-9));
      }
      e.chosen = chosen;
    }
  }
}

TEST_CASE("fog recipes serve locally") {
  Matrix u = Matrix::Zero(1, 6);
  u(0, 1) = 10;
  u(0, 4) = 20;
  const Instance inst = instance(topo(line(3)), 2, {linear_vm(1, 50, 1, 25)}, u);
  Recipe mf;
  mf.kind = RecipeKind::AllMetroFogs;
  for (const auto& s : apply_recipe(inst, 0, mf)) CHECK(s.location == Location::metro_fog(s.node));
  Recipe af;
  af.kind = RecipeKind::AllAccessFogs;
  const auto sv = apply_recipe(inst, 0, af);
  REQUIRE(sv.size() == 2);
  CHECK(sv[1].location == Location::access_fog(2, 0));
  CHECK(sv[1].traffic_mbps == 500.0);
}

}  // TEST_SUITE
