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

#include "fogvm/experiments.hpp"
#include "fogvm/report.hpp"

#include <doctest.h>

#include <map>
#include <sstream>

using namespace fogvm;
using namespace fogvm::test;

TEST_SUITE("experiments") {

TEST_CASE("saving percentage") {
  CHECK(saving_pct(60, 100) == doctest::Approx(40));
  CHECK(saving_pct(100, 100) == 0.0);
  CHECK(saving_pct(120, 100) == doctest::Approx(-20));
}

TEST_CASE("rate and baseline overrides") {
  Scenario s = random_desk_scenario(21);
  const Scenario t = with_rate_and_baseline(s, 10.0, 5.0);
  for (std::size_t i = 0; i < t.vms.size(); ++i) {
    CHECK(t.vms[i].rate_mbps == 10.0);
    if (t.vms[i].profile == WorkloadProfile::LinearWithBaseline) {
      CHECK(t.vms[i].baseline_pct == std::min(5.0, t.vms[i].peak_workload_pct));
    } else {
      CHECK(t.vms[i].baseline_pct == 0.0);
    }
  }
  const Scenario u = with_rate_and_baseline(s, std::nullopt, std::nullopt);
  for (std::size_t i = 0; i < u.vms.size(); ++i) CHECK(u.vms[i].rate_mbps == s.vms[i].rate_mbps);

  const Scenario r = load_scenario(data_dir() / "att25_realistic.json");
  const Scenario r10 = with_rate_and_baseline(r, 10.0, 40.0);
  CHECK(r10.vms.size() == 300);
  CHECK(r10.vms.back().rate_mbps == 10.0);
  CHECK(r10.vms.front().baseline_pct == 40.0);
}

TEST_CASE("comparison on a desk scenario") {
  Scenario s = random_desk_scenario(13);
  s.run.solver = Solver::Heuristic;
  CompareOptions o;
  o.rates_mbps = {1.0, 10.0};
  const auto rows = compare(s, o);
  REQUIRE(rows.size() == 8);
  std::map<std::pair<double, std::string>, double> total;
  for (const auto& r : rows) {
    total[{r.rate_mbps, approach_label(r.restriction)}] = r.breakdown.total_w;
    CHECK(r.breakdown.total_w > 0.0);
  }
  for (double rate : {1.0, 10.0}) {
    // Wider restrictions never lose to the narrower ones they contain,
    // because the restricted table is the full table minus recipes.
    CHECK(total[{rate, "OC&F"}] <= total[{rate, "OC"}] * (1 + 1e-9));
  }

  std::ostringstream tot, sav;
  write_compare_totals_csv(tot, rows);
  write_compare_savings_csv(sav, rows);
  std::istringstream is(sav.str());
  std::string line;
  std::getline(is, line);
  const auto header = split_csv_line(line);
  CHECK(header.back() == "saving_pct");
  int n = 0;
  while (std::getline(is, line)) {
    const auto f = split_csv_line(line);
    const double a = std::stod(f[4]);
    const double b = std::stod(f[5]);
    CHECK(std::stod(f[6]) == doctest::Approx(100.0 * (1.0 - a / b)));
    CHECK(a == total[{std::stod(f[2]), f[0]}]);
    ++n;
  }
  CHECK(n == 2 * 4 * 3);
}

TEST_CASE("single-VM sweep on a desk topology") {
  Scenario s = random_desk_scenario(30);
  s.vms.resize(1);
  std::erase_if(s.demand.entries, [&](const ExplicitDemand& d) { return d.vm_id != s.vms[0].id; });
  s.run.solver = Solver::Heuristic;
  SweepOptions o;
  o.workloads_pct = {10, 100};
  o.rates_mbps = {0.1, 100};
  o.workers = 2;
  const auto cells = sweep_single_vm(s, o);
  REQUIRE(cells.size() == 2 * 2 * 2 * 2);
  for (const auto& c : cells) {
    const double served = c.traffic_mbps[0] + c.traffic_mbps[1] + c.traffic_mbps[2];
    double demand = 0.0;
    for (const auto& d : s.demand.entries) demand += d.users * c.rate_mbps;
    CHECK(close(served, demand));
    CHECK(c.traffic_mbps[static_cast<std::size_t>(c.winner)] ==
          *std::max_element(c.traffic_mbps.begin(), c.traffic_mbps.end()));
  }
  std::ostringstream os;
  write_sweep_csv(os, cells);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 17);

  Scenario two = random_desk_scenario(30);
  two.vms.push_back(two.vms.front());
  CHECK_THROWS_AS(sweep_single_vm(two, o), InvalidScenario);
}

}  // TEST_SUITE
