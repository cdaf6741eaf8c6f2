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

#include "fogvm/oracle.hpp"

#include <doctest.h>

using namespace fogvm;
using namespace fogvm::test;

namespace {

// Plain odometer over every whole-unit assignment, priced by the full
// evaluator. Returns the minimum total.
double brute_force(const Instance& inst, Restriction r) {
  const auto units = demand_units(inst);
  std::vector<std::vector<Location>> c;
  for (const auto& u : units) c.push_back(candidate_locations(inst, r, u));
  std::vector<std::size_t> digit(units.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<Location> where;
    for (std::size_t i = 0; i < units.size(); ++i) where.push_back(c[i][digit[i]]);
    best = std::min(best,
                    total_power(inst, make_placement(servings_for(units, where), inst.vms))
                        .total_w);
    std::size_t i = units.size();
    while (i > 0) {
      --i;
      if (++digit[i] < c[i].size()) break;
      digit[i] = 0;
      if (i == 0) return best;
    }
    if (units.empty()) return best;
  }
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("improvement test with ties and infinities") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(improves(5.0, inf));
  CHECK_FALSE(improves(inf, inf));
  CHECK(improves(99.0, 100.0));
  CHECK_FALSE(improves(100.0 - 1e-10, 100.0));
  CHECK_FALSE(improves(101.0, 100.0));
}

TEST_CASE("three-node toy matches brute force") {
  Matrix u = Matrix::Zero(2, 3);
  u(0, 0) = 300;
  u(0, 2) = 50;
  u(1, 1) = 800;
  const Instance inst = instance(topo(line(3, 400.0)), 1,
                                 {linear_vm(1, 50, 1, 25), constant_vm(2, 20, 5)}, u);
  for (Restriction r : {Restriction::None, Restriction::CloudsOnly, Restriction::CloudsAndMetro}) {
    OracleOptions o;
    o.restriction = r;
    const OracleResult res = solve_exact(inst, o);
    CHECK(res.search_space == search_space_size(inst, r));
    CHECK(res.evaluated == static_cast<std::uint64_t>(res.search_space));
    CHECK(close(res.evaluation.breakdown.total_w, brute_force(inst, r)));
    CHECK(validate(res.placement, inst.demand, inst.vms, inst.topo()).empty());
  }
  // 3 units; 5 candidates each (3 clouds, metro fog, access fog)
  CHECK(search_space_size(inst, Restriction::None) == 125.0);
  CHECK(search_space_size(inst, Restriction::CloudsOnly) == 27.0);
}

TEST_CASE("random desk instances match brute force") {
  int checked = 0;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const Instance inst = build_instance(random_desk_scenario(seed));
    if (search_space_size(inst, Restriction::None) > 2e4) continue;
    const OracleResult res = solve_exact(inst);
    CHECK(close(res.evaluation.breakdown.total_w, brute_force(inst, Restriction::None)));
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("zero demand") {
  const Instance inst = uniform_instance(topo(line(3)), 1, {linear_vm(1, 50, 1, 25)}, 0.0);
  const OracleResult res = solve_exact(inst);
  CHECK(res.search_space == 1.0);
  CHECK(res.placement.servings.empty());
  CHECK(res.evaluation.breakdown.total_w == doctest::Approx(3 * 6603 + 3 * 127.5));
}

TEST_CASE("oracle never loses to a random placement") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = build_instance(random_desk_scenario(seed));
    const double best = solve_exact(inst).evaluation.breakdown.total_w;
    const auto units = demand_units(inst);
    AssignmentEvaluator eval(inst);
    for (int k = 0; k < 100; ++k) {
      const auto where = random_assignment(inst, units, Restriction::None, rng);
      CHECK(best <= eval.total_watts(units, where) * (1 + 1e-9));
    }
  }
}

TEST_CASE("bound and worker determinism") {
  const Instance inst = build_instance(random_desk_scenario(3));
  OracleOptions tight;
  tight.bound = search_space_size(inst, Restriction::None) - 1;
  CHECK_THROWS_AS(solve_exact(inst, tight), BoundExceeded);

  OracleOptions one;
  OracleOptions many;
  many.workers = 4;
  const OracleResult a = solve_exact(inst, one);
  const OracleResult b = solve_exact(inst, many);
  CHECK(a.evaluation.breakdown.total_w == b.evaluation.breakdown.total_w);
  REQUIRE(a.placement.servings.size() == b.placement.servings.size());
  for (std::size_t i = 0; i < a.placement.servings.size(); ++i) {
    CHECK(a.placement.servings[i].location == b.placement.servings[i].location);
  }
}

TEST_CASE("k-subsets of cloud sites") {
  EvalOptions frac;
  frac.sizing = Sizing::Fractional;
  const Instance inst = uniform_instance(topo(star(5)), 1, {linear_vm(1, 50, 1, 25)}, 100.0, frac);

  const SubsetResult one = enumerate_k_cloud_subsets(inst, 0, 1);
  REQUIRE(one.sites.size() == 1);
  CHECK(one.sites[0] == 0);  // the hub
  CHECK(one.evaluated == 5);

  const SubsetResult all = enumerate_k_cloud_subsets(inst, 0, 5);
  CHECK(all.sites.size() == 5);
  CHECK(all.evaluated == 1);

  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(25, 12) == 5200300.0);
  CHECK_THROWS_AS(enumerate_k_cloud_subsets(inst, 0, 2, Restriction::None, 5.0), BoundExceeded);

  // Each k-subset price is the evaluator's price of nearest-site serving.
  const auto pricer = exact_subset_pricer(inst, 0);
  const std::vector<int> cands{0, 1, 2, 3, 4};
  const SubsetResult two = enumerate_k_cloud_subsets(pricer, cands, 2);
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      const std::vector<int> s{a, b};
      best = std::min(best, pricer(s));
    }
  }
  CHECK(two.total_w == doctest::Approx(best));

  const std::vector<int> base{0};
  const SubsetResult grown = extend_subset(pricer, cands, base, inst.topo());
  CHECK(grown.sites.size() == 2);
  CHECK(grown.sites[0] == 0);
}

TEST_CASE("nearest site by hops then id") {
  const CoreTopology t(line(5));
  const std::vector<int> sites{0, 4};
  CHECK(nearest_site(t, sites, 1) == 0);
  CHECK(nearest_site(t, sites, 2) == 0);  // tie, lower id
  CHECK(nearest_site(t, sites, 3) == 4);
}

}  // TEST_SUITE
