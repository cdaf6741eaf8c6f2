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

#ifndef FOGVM_PLACEMENT_HPP
#define FOGVM_PLACEMENT_HPP

#include "fogvm/catalog.hpp"
#include "fogvm/power.hpp"
#include "fogvm/topology.hpp"
#include "fogvm/types.hpp"

#include <compare>
#include <string>
#include <vector>

namespace fogvm {

/// A serving site. `node` is an internal node index; `pon` is used only by
/// access fogs (0-based PON index at that node).
struct Location {
  LocationKind kind = LocationKind::Cloud;
  int node = 0;
  int pon = 0;

  static Location cloud(int node) { return {LocationKind::Cloud, node, 0}; }
  static Location metro_fog(int node) { return {LocationKind::MetroFog, node, 0}; }
  static Location access_fog(int node, int pon) {
    return {LocationKind::AccessFog, node, pon};
  }

  auto operator<=>(const Location&) const = default;
};

/// Traffic of VM `vm` (catalog index) for the users of PON `pon` at node
/// `node`, carried by one serving location.
struct ServingEntry {
  int vm = 0;
  int pon = 0;
  int node = 0;
  Location location;
  double traffic_mbps = 0.0;
};

struct ReplicaEntry {
  int vm = 0;
  Location location;
  int instances = 0;  // replica instances, each carrying at most T_v
};

struct Placement {
  std::vector<ServingEntry> servings;
  std::vector<ReplicaEntry> replicas;
};

/// Replicas implied by the servings: one entry per (vm, location) with
/// positive traffic, instances = max(1, ceil(served / T_v)). Sorted.
std::vector<ReplicaEntry> derive_replicas(const std::vector<ServingEntry>& servings,
                                          const std::vector<VmSpec>& vms);

/// Builds a placement from servings and attaches the canonical replicas.
Placement make_placement(std::vector<ServingEntry> servings,
                         const std::vector<VmSpec>& vms);

/// Sorts servings by (vm, node, pon, location) and replicas by
/// (vm, location); the canonical order used by reports and tie-breaks.
void canonicalize(Placement& placement);

struct Violation {
  std::string constraint;  // conservation, locality, linking, capacity, ...
  std::string detail;
};

/// Checks conservation, locality, replica/serving linking and the per-replica
/// capacity. An empty result means the placement is feasible.
std::vector<Violation> validate(const Placement& placement,
                                const DemandMatrix& demand,
                                const std::vector<VmSpec>& vms,
                                const CoreTopology& topo);

struct WorkloadLedger {
  Vector replica_workload;  // aligned with Placement::replicas
  Vector cloud;             // per node
  Vector metro_fog;         // per node
  Matrix access_fog;        // pon x node
};

WorkloadLedger workloads(const Placement& placement,
                         const std::vector<VmSpec>& vms, int num_nodes,
                         int pons_per_node, LinearMode mode);

/// L(s, d): cloud-served traffic from cloud s to users at node d.
Matrix cloud_demand_matrix(const Placement& placement, int num_nodes);

/// Aggregated per-site workloads, traffic and the cloud demand matrix.
SiteLoads site_loads(const Placement& placement, const std::vector<VmSpec>& vms,
                     int num_nodes, int pons_per_node, LinearMode mode);

}  // namespace fogvm

#endif  // FOGVM_PLACEMENT_HPP
