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

#include "fogvm/catalog.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace fogvm;
using namespace fogvm::test;

TEST_SUITE("catalog") {

TEST_CASE("users per PON from popularity") {
  auto with_share = [](double share) {
    VmSpec v = linear_vm(1, 50, 1, 25);
    v.popularity_share = share;
    return v;
  };
  const std::vector<VmSpec> vms{with_share(0.16), with_share(0.0005), with_share(0.0)};
  UserRoundingReport report;
  const Matrix u = derive_users(vms, 13000, 3, 2, &report);
  CHECK(u.rows() == 3);
  CHECK(u.cols() == 6);
  CHECK((u.row(0).array() == 2080.0).all());
  CHECK((u.row(1).array() == 7.0).all());  // 6.5 rounds half up
  CHECK((u.row(2).array() == 0.0).all());
  CHECK(report.residual()(1) == doctest::Approx(0.5 * 6));
}

TEST_CASE("round half up") {
  CHECK(round_half_up(6.5) == 7.0);
  CHECK(round_half_up(6.4999) == 6.0);
  CHECK(round_half_up(0.5) == 1.0);
  CHECK(round_half_up(2.0) == 2.0);
}

TEST_CASE("traffic is users times rate") {
  const std::vector<VmSpec> vms{linear_vm(1, 50, 1, 25), linear_vm(2, 10, 0, 0.1)};
  Matrix u(2, 2);
  u << 2080, 0, 800, 800;
  const Matrix d = derive_traffic(u, vms);
  CHECK(d(0, 0) == 52000.0);
  CHECK(d(0, 1) == 0.0);
  CHECK(d(1, 0) == doctest::Approx(80.0));
}

TEST_CASE("uniform spread of a fixed user total") {
  CHECK(uniform_users_per_pon(800, 50) == 16.0);
  CHECK(uniform_users_per_pon(800, 3) == 267.0);
}

TEST_CASE("replica workload examples") {
  const VmSpec v = linear_vm(1, 50, 1, 25);
  CHECK(v.replica_traffic_mbps() == 20000.0);
  CHECK(replica_workload(v, 20000, 1, LinearMode::Default) == 50.0);
  CHECK(replica_workload(v, 20000, 1, LinearMode::Literal) == 50.0);
  CHECK(replica_workload(v, 10000, 1, LinearMode::Default) == doctest::Approx(25.5));
  CHECK(replica_workload(v, 0, 0, LinearMode::Default) == 0.0);
  CHECK(replica_workload(v, 0, 1, LinearMode::Default) == 1.0);  // idle replica keeps M
  CHECK(replica_workload(v, 0, 1, LinearMode::Literal) == 0.0);
  CHECK_THROWS_AS(replica_workload(v, 5, 0, LinearMode::Default), Inconsistency);
  CHECK_THROWS_AS(replica_workload(v, -1, 1, LinearMode::Default), InvalidParameter);

  const VmSpec c = constant_vm(2, 50, 25);
  CHECK(replica_workload(c, 1, 1, LinearMode::Default) == 50.0);
  CHECK(replica_workload(c, 123456, 3, LinearMode::Default) == 150.0);
  CHECK(replica_workload(c, 7, true, LinearMode::Default) == 50.0);
}

TEST_CASE("replica instances") {
  const VmSpec v = linear_vm(1, 50, 1, 25);
  CHECK(v.instances_for(0) == 0);
  CHECK(v.instances_for(1) == 1);
  CHECK(v.instances_for(20000) == 1);
  CHECK(v.instances_for(20000.5) == 2);
  CHECK(v.instances_for(60000) == 3);
}

TEST_CASE("workload properties over random specs and splits") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double peak = 1.0 + 99.0 * unit(rng);
    const double base = peak * unit(rng);
    const double rate = 0.1 + 50.0 * unit(rng);
    const VmSpec v = linear_vm(1, peak, base, rate, 100.0 + 900.0 * unit(rng));
    const double t = v.replica_traffic_mbps();
    // Full load gives the peak workload, exactly.
    CHECK(replica_workload(v, t, 1, LinearMode::Default) == peak);
    CHECK(replica_workload(v, t, 1, LinearMode::Literal) == peak);

    const int k = std::uniform_int_distribution<int>(2, 6)(rng);
    std::vector<double> parts(static_cast<std::size_t>(k));
    double total = 0.0;
    for (auto& p : parts) {
      p = t * unit(rng) / k;
      total += p;
    }
    double literal = 0.0;
    double dflt = 0.0;
    for (double p : parts) {
      literal += replica_workload(v, p, 1, LinearMode::Literal);
      dflt += replica_workload(v, p, 1, LinearMode::Default);
    }
    CHECK(close(literal, replica_workload(v, total, 1, LinearMode::Literal)));
    CHECK(close(dflt - replica_workload(v, total, 1, LinearMode::Default), (k - 1) * base));
  }
}

TEST_CASE("catalog expansion from popularity groups") {
  PopularityModel pop;
  pop.groups = {{16, 1}, {5, 3}, {0.05, 2}};
  VmTemplate tmpl;
  tmpl.rate_mbps = 10;
  const auto vms = expand_catalog(pop, tmpl);
  REQUIRE(vms.size() == 6);
  for (std::size_t i = 0; i < vms.size(); ++i) CHECK(vms[i].id == static_cast<int>(i) + 1);
  CHECK(vms[0].popularity_share == doctest::Approx(0.16));
  CHECK(vms[3].popularity_share == doctest::Approx(0.05));
  CHECK(vms[5].popularity_share == doctest::Approx(0.0005));
  CHECK(vms[5].rate_mbps == 10.0);
}

TEST_CASE("VM validation and JSON") {
  VmSpec v = linear_vm(4, 50, 1, 25);
  v.popularity_share = 0.15;
  CHECK_NOTHROW(v.validate());
  const nlohmann::json j = v;
  CHECK(j.at("share_pct").get<double>() == 15.0);
  const VmSpec back = j.get<VmSpec>();
  CHECK(back.id == 4);
  CHECK(back.popularity_share == doctest::Approx(0.15));
  nlohmann::json bad = j;
  bad["colour"] = "red";
  CHECK_THROWS(bad.get<VmSpec>());

  VmSpec w = v;
  w.baseline_pct = 60;
  CHECK_THROWS_AS(w.validate(), InvalidScenario);
  w = v;
  w.rate_mbps = 0;
  CHECK_THROWS_AS(w.validate(), InvalidScenario);
  w = v;
  w.peak_workload_pct = 120;
  CHECK_THROWS_AS(w.validate(), InvalidScenario);
}

}  // TEST_SUITE
