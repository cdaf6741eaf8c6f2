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

#include "fogvm/evaluate.hpp"

#include <algorithm>

namespace fogvm {

void Instance::check() const {
  if (!topology) throw InvalidScenario("instance has no topology");
  if (demand.num_vms() != static_cast<int>(vms.size())) {
    throw InvalidScenario("demand rows do not match the VM catalog");
  }
  if (demand.pons_per_node != attachment.pons_per_node ||
      demand.num_units() != num_nodes() * pons()) {
    throw InvalidScenario("demand columns do not match the attachment plan");
  }
}

Instance sub_instance(const Instance& inst, std::span<const int> vm_indices) {
  Instance out;
  out.topology = inst.topology;
  out.attachment = inst.attachment;
  out.params = inst.params;
  out.options = inst.options;
  out.demand.pons_per_node = inst.demand.pons_per_node;
  const auto k = static_cast<Eigen::Index>(vm_indices.size());
  out.demand.users.resize(k, inst.demand.num_units());
  out.demand.traffic_mbps.resize(k, inst.demand.num_units());
  for (Eigen::Index i = 0; i < k; ++i) {
    const int v = vm_indices[static_cast<std::size_t>(i)];
    out.vms.push_back(inst.vms.at(v));
    out.demand.users.row(i) = inst.demand.users.row(v);
    out.demand.traffic_mbps.row(i) = inst.demand.traffic_mbps.row(v);
  }
  return out;
}

namespace {

std::string summarize(const std::vector<Violation>& v) {
  std::string s = "infeasible placement (" + std::to_string(v.size()) +
                  " violation(s))";
  for (std::size_t i = 0; i < v.size() && i < 5; ++i) {
    s += "; " + v[i].constraint + ": " + v[i].detail;
  }
  return s;
}

}  // namespace

InfeasiblePlacement::InfeasiblePlacement(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

RoutingOptions routing_options(const Instance& inst) {
  RoutingOptions r;
  r.sizing = inst.options.sizing;
  r.grooming = inst.options.grooming;
  r.metro_redundancy = inst.params.metro.redundancy;
  return r;
}

Evaluation evaluate_loads(const Instance& inst, const SiteLoads& loads) {
  Evaluation e;
  e.loads = loads;
  e.core = route_all(loads.cloud_demand, inst.topo(), routing_options(inst));
  e.ledger = size_equipment(loads, e.core, inst.topo(), inst.params,
                            inst.options.sizing,
                            inst.options.idle_optical_switches);
  e.breakdown = power_breakdown(e.ledger, inst.topo(), inst.attachment, inst.params);
  return e;
}

double total_watts(const Instance& inst, const SiteLoads& loads) {
  RoutingOptions r = routing_options(inst);
  r.record_flows = false;
  const CoreState core = route_all(loads.cloud_demand, inst.topo(), r);
  const EquipmentLedger ledger =
      size_equipment(loads, core, inst.topo(), inst.params, inst.options.sizing,
                     inst.options.idle_optical_switches);
  return total_watts(ledger, inst.topo(), inst.attachment, inst.params);
}

Evaluation evaluate(const Instance& inst, const Placement& placement) {
  auto violations = validate(placement, inst.demand, inst.vms, inst.topo());
  if (!violations.empty()) throw InfeasiblePlacement(std::move(violations));
  return evaluate_loads(inst, site_loads(placement, inst.vms, inst.num_nodes(),
                                         inst.pons(), inst.options.linear_mode));
}

PowerBreakdown total_power(const Instance& inst, const Placement& placement) {
  return evaluate(inst, placement).breakdown;
}

std::vector<DemandUnit> demand_units(const Instance& inst) {
  std::vector<DemandUnit> out;
  const auto& d = inst.demand;
  for (int v = 0; v < d.num_vms(); ++v) {
    for (int c = 0; c < d.num_units(); ++c) {
      const double t = d.traffic_mbps(v, c);
      if (t > 0.0) out.push_back({v, d.node_of(c), d.pon_of(c), t});
    }
  }
  return out;
}

std::vector<int> allowed_clouds(const Instance& inst, Restriction r) {
  if (r == Restriction::AttSites) {
    auto sites = inst.topo().datacenter_indices();
    std::sort(sites.begin(), sites.end());
    if (sites.empty()) {
      throw InvalidScenario("restriction att-sites needs datacenter_sites");
    }
    return sites;
  }
  std::vector<int> all(static_cast<std::size_t>(inst.num_nodes()));
  for (int i = 0; i < inst.num_nodes(); ++i) all[static_cast<std::size_t>(i)] = i;
  return all;
}

std::vector<Location> candidate_locations(const Instance& inst, Restriction r,
                                          const DemandUnit& unit) {
  std::vector<Location> out;
  for (int s : allowed_clouds(inst, r)) out.push_back(Location::cloud(s));
  if (r == Restriction::None || r == Restriction::CloudsAndMetro) {
    out.push_back(Location::metro_fog(unit.node));
  }
  if (r == Restriction::None) {
    out.push_back(Location::access_fog(unit.node, unit.pon));
  }
  return out;
}

std::vector<ServingEntry> servings_for(std::span<const DemandUnit> units,
                                       std::span<const Location> where) {
  std::vector<ServingEntry> out;
  out.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto& u = units[i];
    out.push_back({u.vm, u.pon, u.node, where[i], u.traffic_mbps});
  }
  return out;
}

AssignmentEvaluator::AssignmentEvaluator(const Instance& inst)
    : inst_(inst), n_(inst.num_nodes()), pons_(inst.pons()) {
  served_ = Matrix::Zero(static_cast<Eigen::Index>(inst.vms.size()),
                         2 * n_ + n_ * pons_);
  loads_.reset(n_, pons_);
}

int AssignmentEvaluator::site_of(const Location& l) const {
  switch (l.kind) {
    case LocationKind::Cloud:
      return l.node;
    case LocationKind::MetroFog:
      return n_ + l.node;
    case LocationKind::AccessFog:
      return 2 * n_ + l.node * pons_ + l.pon;
  }
  return 0;
}

double AssignmentEvaluator::total_watts(std::span<const DemandUnit> units,
                                        std::span<const Location> where) {
  for (auto [v, s] : touched_) served_(v, s) = 0.0;
  touched_.clear();
  loads_.cloud_workload.setZero();
  loads_.cloud_traffic.setZero();
  loads_.metro_fog_workload.setZero();
  loads_.metro_fog_traffic.setZero();
  loads_.access_fog_workload.setZero();
  loads_.access_fog_traffic.setZero();
  loads_.cloud_demand.setZero();

  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto& u = units[i];
    const Location& l = where[i];
    const int site = site_of(l);
    if (served_(u.vm, site) == 0.0) touched_.emplace_back(u.vm, site);
    served_(u.vm, site) += u.traffic_mbps;
    switch (l.kind) {
      case LocationKind::Cloud:
        loads_.cloud_traffic(l.node) += u.traffic_mbps;
        loads_.cloud_demand(l.node, u.node) += u.traffic_mbps;
        break;
      case LocationKind::MetroFog:
        loads_.metro_fog_traffic(l.node) += u.traffic_mbps;
        break;
      case LocationKind::AccessFog:
        loads_.access_fog_traffic(l.pon, l.node) += u.traffic_mbps;
        break;
    }
  }
  for (auto [v, site] : touched_) {
    const VmSpec& spec = inst_.vms[static_cast<std::size_t>(v)];
    const double t = served_(v, site);
    const double w = replica_workload(spec, t, spec.instances_for(t),
                                      inst_.options.linear_mode);
    if (site < n_) {
      loads_.cloud_workload(site) += w;
    } else if (site < 2 * n_) {
      loads_.metro_fog_workload(site - n_) += w;
    } else {
      const int k = site - 2 * n_;
      loads_.access_fog_workload(k % pons_, k / pons_) += w;
    }
  }
  return fogvm::total_watts(inst_, loads_);
}

}  // namespace fogvm
