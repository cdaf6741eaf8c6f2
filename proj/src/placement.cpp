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

#include "fogvm/placement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace fogvm {

namespace {

constexpr double kTol = 1e-9;

bool close(double a, double b) {
  return std::abs(a - b) <= kTol * std::max({1.0, std::abs(a), std::abs(b)});
}

using ReplicaKey = std::pair<int, Location>;

std::map<ReplicaKey, double> served_by_replica(
    const std::vector<ServingEntry>& servings) {
  std::map<ReplicaKey, double> served;
  for (const auto& s : servings) {
    served[{s.vm, s.location}] += s.traffic_mbps;
  }
  return served;
}

std::string describe(const Location& l, const CoreTopology& topo) {
  std::ostringstream os;
  os << to_string(l.kind) << "(";
  if (l.node >= 0 && l.node < topo.num_nodes()) {
    os << topo.node_id(l.node);
  } else {
    os << "#" << l.node;
  }
  if (l.kind == LocationKind::AccessFog) os << ", pon " << l.pon + 1;
  os << ")";
  return os.str();
}

std::string describe_unit(int vm, int pon, int node,
                          const std::vector<VmSpec>& vms,
                          const CoreTopology& topo) {
  std::ostringstream os;
  os << "vm " << vms[vm].id << ", pon " << pon + 1 << ", node "
     << topo.node_id(node);
  return os.str();
}

}  // namespace

std::vector<ReplicaEntry> derive_replicas(const std::vector<ServingEntry>& servings,
                                          const std::vector<VmSpec>& vms) {
  std::vector<ReplicaEntry> out;
  for (const auto& [key, traffic] : served_by_replica(servings)) {
    if (traffic <= 0.0) continue;
    out.push_back({key.first, key.second, vms.at(key.first).instances_for(traffic)});
  }
  return out;
}

Placement make_placement(std::vector<ServingEntry> servings,
                         const std::vector<VmSpec>& vms) {
  Placement p;
  p.servings = std::move(servings);
  p.replicas = derive_replicas(p.servings, vms);
  canonicalize(p);
  return p;
}

void canonicalize(Placement& placement) {
  std::sort(placement.servings.begin(), placement.servings.end(),
            [](const ServingEntry& a, const ServingEntry& b) {
              return std::tie(a.vm, a.node, a.pon, a.location, a.traffic_mbps) <
                     std::tie(b.vm, b.node, b.pon, b.location, b.traffic_mbps);
            });
  std::sort(placement.replicas.begin(), placement.replicas.end(),
            [](const ReplicaEntry& a, const ReplicaEntry& b) {
              return std::tie(a.vm, a.location) < std::tie(b.vm, b.location);
            });
}

std::vector<Violation> validate(const Placement& placement,
                                const DemandMatrix& demand,
                                const std::vector<VmSpec>& vms,
                                const CoreTopology& topo) {
  std::vector<Violation> out;
  const int n = topo.num_nodes();
  const int pons = demand.pons_per_node;
  const int num_vms = static_cast<int>(vms.size());

  auto location_ok = [&](const Location& l) {
    return l.node >= 0 && l.node < n &&
           (l.kind != LocationKind::AccessFog || (l.pon >= 0 && l.pon < pons));
  };

  if (demand.num_vms() != num_vms || demand.num_units() != n * pons) {
    out.push_back({"shape", "demand matrix does not match catalog and topology"});
    return out;
  }

  Matrix served = Matrix::Zero(num_vms, n * pons);
  std::vector<ServingEntry> usable;
  for (const auto& s : placement.servings) {
    if (s.vm < 0 || s.vm >= num_vms || s.node < 0 || s.node >= n || s.pon < 0 ||
        s.pon >= pons || !location_ok(s.location)) {
      out.push_back({"index", "serving entry refers to an unknown vm, node, "
                              "pon or location"});
      continue;
    }
    const std::string unit = describe_unit(s.vm, s.pon, s.node, vms, topo);
    if (!(s.traffic_mbps >= 0.0) || !std::isfinite(s.traffic_mbps)) {
      out.push_back({"nonnegativity", unit + ": traffic must be finite and >= 0"});
      continue;
    }
    if (s.location.kind == LocationKind::MetroFog && s.location.node != s.node) {
      out.push_back({"locality", unit + " served by " +
                                     describe(s.location, topo) +
                                     " outside its own metro network"});
    }
    if (s.location.kind == LocationKind::AccessFog &&
        (s.location.node != s.node || s.location.pon != s.pon)) {
      out.push_back({"locality", unit + " served by " +
                                     describe(s.location, topo) +
                                     " outside its own access network"});
    }
    served(s.vm, demand.column(s.node, s.pon)) += s.traffic_mbps;
    usable.push_back(s);
  }

  for (int v = 0; v < num_vms; ++v) {
    for (int c = 0; c < n * pons; ++c) {
      const double want = demand.traffic_mbps(v, c);
      if (!close(served(v, c), want)) {
        std::ostringstream os;
        os << describe_unit(v, demand.pon_of(c), demand.node_of(c), vms, topo)
           << ": served " << served(v, c) << " Mbps of " << want << " Mbps";
        out.push_back({"conservation", os.str()});
      }
    }
  }

  const auto by_replica = served_by_replica(usable);
  std::map<ReplicaKey, int> replicas;
  for (const auto& r : placement.replicas) {
    if (r.vm < 0 || r.vm >= num_vms || !location_ok(r.location)) {
      out.push_back({"index", "replica refers to an unknown vm or location"});
      continue;
    }
    if (!replicas.emplace(ReplicaKey{r.vm, r.location}, r.instances).second) {
      out.push_back({"linking", "vm " + std::to_string(vms[r.vm].id) +
                                    ": duplicate replica at " +
                                    describe(r.location, topo)});
    }
  }
  for (const auto& [key, traffic] : by_replica) {
    if (traffic > 0.0 && !replicas.contains(key)) {
      out.push_back({"linking", "vm " + std::to_string(vms[key.first].id) +
                                    ": traffic served at " +
                                    describe(key.second, topo) +
                                    " without a replica"});
    }
  }
  for (const auto& [key, instances] : replicas) {
    const VmSpec& spec = vms[key.first];
    auto it = by_replica.find(key);
    const double traffic = it == by_replica.end() ? 0.0 : it->second;
    const std::string who =
        "vm " + std::to_string(spec.id) + " at " + describe(key.second, topo);
    if (traffic <= 0.0) {
      out.push_back({"linking", who + ": replica serves no traffic"});
      continue;
    }
    if (traffic > instances * spec.replica_traffic_mbps() * (1.0 + kTol)) {
      std::ostringstream os;
      os << who << ": " << traffic << " Mbps exceeds " << instances
         << " instance(s) of " << spec.replica_traffic_mbps() << " Mbps";
      out.push_back({"capacity", os.str()});
    } else if (instances != spec.instances_for(traffic)) {
      out.push_back({"capacity", who + ": " + std::to_string(instances) +
                                     " instance(s), expected " +
                                     std::to_string(spec.instances_for(traffic))});
    }
  }
  return out;
}

WorkloadLedger workloads(const Placement& placement,
                         const std::vector<VmSpec>& vms, int num_nodes,
                         int pons_per_node, LinearMode mode) {
  WorkloadLedger w;
  w.replica_workload = Vector::Zero(static_cast<Eigen::Index>(placement.replicas.size()));
  w.cloud = Vector::Zero(num_nodes);
  w.metro_fog = Vector::Zero(num_nodes);
  w.access_fog = Matrix::Zero(pons_per_node, num_nodes);
  const auto served = served_by_replica(placement.servings);
  for (std::size_t i = 0; i < placement.replicas.size(); ++i) {
    const auto& r = placement.replicas[i];
    auto it = served.find({r.vm, r.location});
    const double traffic = it == served.end() ? 0.0 : it->second;
    const double load = replica_workload(vms.at(r.vm), traffic, r.instances, mode);
    w.replica_workload(static_cast<Eigen::Index>(i)) = load;
    switch (r.location.kind) {
      case LocationKind::Cloud:
        w.cloud(r.location.node) += load;
        break;
      case LocationKind::MetroFog:
        w.metro_fog(r.location.node) += load;
        break;
      case LocationKind::AccessFog:
        w.access_fog(r.location.pon, r.location.node) += load;
        break;
    }
  }
  return w;
}

Matrix cloud_demand_matrix(const Placement& placement, int num_nodes) {
  Matrix l = Matrix::Zero(num_nodes, num_nodes);
  for (const auto& s : placement.servings) {
    if (s.location.kind == LocationKind::Cloud) {
      l(s.location.node, s.node) += s.traffic_mbps;
    }
  }
  return l;
}

SiteLoads site_loads(const Placement& placement, const std::vector<VmSpec>& vms,
                     int num_nodes, int pons_per_node, LinearMode mode) {
  SiteLoads loads;
  loads.reset(num_nodes, pons_per_node);
  const WorkloadLedger w =
      workloads(placement, vms, num_nodes, pons_per_node, mode);
  loads.cloud_workload = w.cloud;
  loads.metro_fog_workload = w.metro_fog;
  loads.access_fog_workload = w.access_fog;
  for (const auto& s : placement.servings) {
    const Location& l = s.location;
    switch (l.kind) {
      case LocationKind::Cloud:
        loads.cloud_traffic(l.node) += s.traffic_mbps;
        break;
      case LocationKind::MetroFog:
        loads.metro_fog_traffic(l.node) += s.traffic_mbps;
        break;
      case LocationKind::AccessFog:
        loads.access_fog_traffic(l.pon, l.node) += s.traffic_mbps;
        break;
    }
  }
  loads.cloud_demand = cloud_demand_matrix(placement, num_nodes);
  return loads;
}

}  // namespace fogvm
