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

// Small builders and independent reference computations shared by tests.

#ifndef FOGVM_TESTS_SUPPORT_HPP
#define FOGVM_TESTS_SUPPORT_HPP

#include "fogvm/evaluate.hpp"
#include "fogvm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fogvm::test {

inline std::filesystem::path data_dir() { return FOGVM_DATA_DIR; }

inline CoreTopologyConfig graph(int n, const std::vector<std::pair<int, int>>& edges,
                                double km = 100.0) {
  CoreTopologyConfig c;
  for (int i = 1; i <= n; ++i) c.nodes.push_back({i, "n" + std::to_string(i), 0.0, 0.0});
  for (auto [a, b] : edges) c.links.push_back({a, b, km});
  return c;
}

// 1 - 2 - ... - n
inline CoreTopologyConfig line(int n, double km = 100.0) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return graph(n, e, km);
}

// Hub 1 with leaves 2..n.
inline CoreTopologyConfig star(int n, double km = 100.0) {
  std::vector<std::pair<int, int>> e;
  for (int i = 2; i <= n; ++i) e.emplace_back(1, i);
  return graph(n, e, km);
}

inline std::shared_ptr<const CoreTopology> topo(CoreTopologyConfig c) {
  return std::make_shared<const CoreTopology>(std::move(c));
}

inline VmSpec linear_vm(int id, double peak, double baseline, double rate,
                        double x = 800.0) {
  VmSpec v;
  v.id = id;
  v.profile = WorkloadProfile::LinearWithBaseline;
  v.peak_workload_pct = peak;
  v.baseline_pct = baseline;
  v.rate_mbps = rate;
  v.max_users_per_replica = x;
  v.popularity_share = 0.01;
  return v;
}

inline VmSpec constant_vm(int id, double peak, double rate, double x = 800.0) {
  VmSpec v = linear_vm(id, peak, 0.0, rate, x);
  v.profile = WorkloadProfile::Constant;
  return v;
}

// Instance with users given per VM row and (node * pons + pon) column.
inline Instance instance(std::shared_ptr<const CoreTopology> t, int pons,
                         std::vector<VmSpec> vms, const Matrix& users,
                         EvalOptions options = {}) {
  Instance inst;
  inst.topology = std::move(t);
  inst.attachment.pons_per_node = pons;
  inst.vms = std::move(vms);
  inst.demand = make_demand(users, inst.vms, pons);
  inst.options = options;
  inst.check();
  return inst;
}

// Same users for every VM in every PON.
inline Instance uniform_instance(std::shared_ptr<const CoreTopology> t, int pons,
                                 std::vector<VmSpec> vms, double users,
                                 EvalOptions options = {}) {
  const int n = t->num_nodes();
  Matrix u = Matrix::Constant(static_cast<Eigen::Index>(vms.size()), n * pons, users);
  return instance(std::move(t), pons, std::move(vms), u, options);
}

// Hop distances by plain breadth-first search over the link list.
inline int bfs_distance(const CoreTopologyConfig& c, int src_id, int dst_id) {
  std::vector<std::vector<int>> adj(c.nodes.size() + 1);
  auto slot = [&](int id) {
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      if (c.nodes[i].id == id) return static_cast<int>(i);
    }
    return -1;
  };
  for (const auto& l : c.links) {
    adj[static_cast<std::size_t>(slot(l.a))].push_back(slot(l.b));
    adj[static_cast<std::size_t>(slot(l.b))].push_back(slot(l.a));
  }
  std::vector<int> dist(c.nodes.size(), -1);
  std::deque<int> q{slot(src_id)};
  dist[static_cast<std::size_t>(q.front())] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        q.push_back(w);
      }
    }
  }
  return dist[static_cast<std::size_t>(slot(dst_id))];
}

// Random connected graph: a random spanning tree plus extra chords. Node ids
// are shuffled so they do not follow insertion order.
inline CoreTopologyConfig random_connected(std::mt19937_64& rng, int n, int extra) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = 3 * i + 7;
  std::shuffle(ids.begin(), ids.end(), rng);
  CoreTopologyConfig c;
  for (int id : ids) c.nodes.push_back({id, "v" + std::to_string(id), 0.0, 0.0});
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
    const int a = ids[static_cast<std::size_t>(i)];
    const int b = ids[static_cast<std::size_t>(j)];
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  for (int e = 0; e < extra; ++e) {
    const int a = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    const int b = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  std::uniform_real_distribution<double> km(50.0, 3000.0);
  for (auto [a, b] : edges) c.links.push_back({a, b, std::round(km(rng))});
  return c;
}

// Whole-unit assignment drawn uniformly from each unit's candidates.
inline std::vector<Location> random_assignment(const Instance& inst,
                                               const std::vector<DemandUnit>& units,
                                               Restriction r, std::mt19937_64& rng) {
  std::vector<Location> where;
  where.reserve(units.size());
  for (const auto& u : units) {
    const auto c = candidate_locations(inst, r, u);
    where.push_back(c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)]);
  }
  return where;
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace fogvm::test

#endif  // FOGVM_TESTS_SUPPORT_HPP
