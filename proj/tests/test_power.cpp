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

#include "fogvm/power.hpp"
#include "fogvm/routing.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace fogvm;
using namespace fogvm::test;

namespace {

EquipmentLedger empty_ledger(int n, int pons, int arcs) {
  EquipmentLedger e;
  for (Vector* v : {&e.cloud_servers, &e.cloud_ports, &e.cloud_switches,
                    &e.metro_fog_servers, &e.metro_fog_ports,
                    &e.metro_fog_switches, &e.metro_ports, &e.metro_switches,
                    &e.agg_cloud_ports, &e.agg_edge_ports, &e.optical_switches}) {
    v->setZero(n);
  }
  e.access_fog_servers.setZero(pons, n);
  e.access_fog_ports.setZero(pons, n);
  e.access_fog_switches.setZero(pons, n);
  e.arc_wavelengths.setZero(arcs);
  e.arc_fibers.setZero(arcs);
  return e;
}

}  // namespace

TEST_SUITE("power") {

TEST_CASE("device sizing") {
  CHECK(size_servers(125, 100) == 2.0);
  CHECK(size_servers(0, 100) == 0.0);
  CHECK(size_servers(900, 100) == 9.0);
  CHECK(size_servers(125, 100, Sizing::Fractional) == doctest::Approx(1.25));
  CHECK(size_ports_switches(52000, 40000, 600000) == std::pair<double, double>{2, 1});
  CHECK(size_ports_switches(600000, 40000, 600000) == std::pair<double, double>{15, 1});
  CHECK(size_ports_switches(0, 40000, 600000) == std::pair<double, double>{0, 0});
  // exact multiples built from inexact parts do not round up
  CHECK(size_units(3 * (40000.0 / 3), 40000, Sizing::Integral) == 1.0);
  CHECK(size_units(40000.1, 40000, Sizing::Integral) == 2.0);
}

TEST_CASE("PUE profiles") {
  const Pue b = best_practice_pue();
  CHECK(b.cloud == 1.3);
  CHECK(b.metro_fog == 1.4);
  CHECK(b.access_fog == 1.5);
  CHECK(b.network == 1.5);
  const Pue o = pue_2014();
  CHECK(o.cloud == 1.7);
  CHECK(o.metro_fog == 1.9);
  CHECK(o.access_fog == 2.5);
}

TEST_CASE("segment examples") {
  PowerParams p;
  const int n = 25;
  EquipmentLedger e = empty_ledger(n, 2, 4);

  SUBCASE("one cloud server") {
    e.cloud_servers(3) = 1;
    CHECK(cloud_power(e, p) == doctest::Approx(432.9));
  }
  SUBCASE("cloud networking for 52 Gbps") {
    e.cloud_ports(0) = 2;
    e.cloud_switches(0) = 1;
    // 1.3 * (2 * 30 + 1 * 2 * 470)
    CHECK(cloud_power(e, p) == doctest::Approx(1300.0));
  }
  SUBCASE("idle fogs cost nothing") {
    CHECK(metro_fog_power(e, p) == 0.0);
    CHECK(access_fog_power(e, p) == 0.0);
  }
  SUBCASE("access fog") {
    e.access_fog_servers(1, 4) = 1;
    e.access_fog_ports(1, 4) = 1;
    e.access_fog_switches(1, 4) = 1;
    // 1.5 * (333 + 13 + 2 * 210)
    CHECK(access_fog_power(e, p) == doctest::Approx(1149.0));
  }
  SUBCASE("metro fog") {
    e.metro_fog_servers(0) = 2;
    e.metro_fog_ports(0) = 1;
    e.metro_fog_switches(0) = 1;
    // 1.4 * (666 + 13 + 940)
    CHECK(metro_fog_power(e, p) == doctest::Approx(2266.6));
  }
  SUBCASE("PON") {
    AttachmentPlan a;
    a.pons_per_node = 1;
    CHECK(pon_power(a, 1, p) == doctest::Approx(6603.0));
    a.pons_per_node = 2;
    CHECK(pon_power(a, 25, p) == doctest::Approx(330150.0));
  }
  SUBCASE("metro gateway for 52 Gbps") {
    e.metro_ports(2) = 2;
    e.metro_switches(2) = 1;
    CHECK(metro_power(e, p) == doctest::Approx(885.0));
    e.metro_ports(2) = 0;
    e.metro_switches(2) = 0;
    CHECK(metro_power(e, p) == 0.0);
    e.metro_ports(2) = 3;
    e.metro_switches(2) = 3;
    CHECK(metro_power(e, p) == doctest::Approx(2385.0));
  }
}

TEST_CASE("idle core charges only optical switches") {
  const CoreTopology t(load_topology(data_dir() / "att25_topology.json"));
  const CoreState s = route_all(Matrix::Zero(25, 25), t, {});
  SiteLoads loads;
  loads.reset(25, 2);
  PowerParams p;
  const EquipmentLedger e = size_equipment(loads, s, t, p, Sizing::Integral, true);
  CHECK(core_power(e, t, p) == doctest::Approx(3187.5));
  const EquipmentLedger off = size_equipment(loads, s, t, p, Sizing::Integral, false);
  CHECK(core_power(off, t, p) == 0.0);
}

TEST_CASE("one full wavelength over a 160 km link") {
  const CoreTopology t(line(2, 160.0));
  Matrix l = Matrix::Zero(2, 2);
  l(0, 1) = 40000;
  const CoreState s = route_all(l, t, {});
  SiteLoads loads;
  loads.reset(2, 1);
  loads.cloud_demand = l;
  PowerParams p;
  const EquipmentLedger e = size_equipment(loads, s, t, p, Sizing::Integral, true);
  // 1.5 * (638 * (1 + 2 + 1) + 129 + 11 + 2 * 85)
  CHECK(core_power(e, t, p) == doctest::Approx(4293.0));
  CHECK(e.metro_ports(1) == 1.0);
  CHECK(e.metro_ports(0) == 0.0);
}

TEST_CASE("metro gateways also carry metro fog traffic") {
  const CoreTopology t(line(3));
  SiteLoads loads;
  loads.reset(3, 1);
  loads.cloud_demand(0, 2) = 30000;
  loads.metro_fog_traffic(2) = 30000;
  const CoreState s = route_all(loads.cloud_demand, t, {});
  const EquipmentLedger e =
      size_equipment(loads, s, t, PowerParams{}, Sizing::Integral, true);
  CHECK(e.metro_ports(2) == 2.0);
  CHECK(e.metro_switches(2) == 1.0);
  CHECK(e.metro_ports(0) == 0.0);
  CHECK(e.metro_fog_ports(2) == 1.0);
  CHECK(e.metro_fog_switches(2) == 1.0);
}

TEST_CASE("audit trail adds up") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> cnt(0, 6);
  const CoreTopology t(random_connected(rng, 7, 5));
  AttachmentPlan a;
  a.pons_per_node = 3;
  PowerParams p;
  p.pue = pue_2014();
  for (int trial = 0; trial < 50; ++trial) {
    EquipmentLedger e = empty_ledger(t.num_nodes(), 3, t.num_arcs());
    auto fill = [&](auto& m) {
      for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cnt(rng);
    };
    fill(e.cloud_servers);
    fill(e.cloud_ports);
    fill(e.cloud_switches);
    fill(e.metro_fog_servers);
    fill(e.access_fog_servers);
    fill(e.access_fog_switches);
    fill(e.metro_ports);
    fill(e.metro_switches);
    fill(e.agg_cloud_ports);
    fill(e.agg_edge_ports);
    fill(e.arc_wavelengths);
    fill(e.arc_fibers);
    fill(e.optical_switches);
    const PowerBreakdown b = power_breakdown(e, t, a, p);
    double sum = 0.0;
    for (const auto& term : b.terms) {
      CHECK(term.watts == term.count * term.unit_watts * term.pue);
      sum += term.watts;
    }
    CHECK(close(sum, b.total_w));
    CHECK(b.total_w == total_watts(e, t, a, p));
    CHECK(close(b.cloud_w, cloud_power(e, p)));
    CHECK(close(b.metro_fog_w, metro_fog_power(e, p)));
    CHECK(close(b.access_fog_w, access_fog_power(e, p)));
    CHECK(close(b.metro_w, metro_power(e, p)));
    CHECK(close(b.pon_w, pon_power(a, t.num_nodes(), p)));
    CHECK(close(b.core_w, core_power(e, t, p)));
    CHECK(b.segment_w(Segment::Core) == b.core_w);
  }
}

TEST_CASE("power parameter JSON") {
  PowerParams p;
  p.core.edfa_w = 8;
  const nlohmann::json j = p;
  const PowerParams back = j.get<PowerParams>();
  CHECK(back.core.edfa_w == 8.0);
  CHECK(nlohmann::json(back) == j);

  const auto partial = nlohmann::json::parse(R"({"pon": {"olt_w": 1000}})").get<PowerParams>();
  CHECK(partial.pon.olt_w == 1000.0);
  CHECK(partial.pon.onu_w == 5.0);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"pon": {"olt_watts": 1}})").get<PowerParams>(),
                  InvalidScenario);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"cpu": {}})").get<PowerParams>(),
                  InvalidScenario);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"cloud": 1.3})").get<Pue>(), InvalidScenario);

  PowerParams bad;
  bad.pue.cloud = 0.9;
  CHECK_THROWS_AS(bad.validate(), InvalidScenario);
}

}  // TEST_SUITE
