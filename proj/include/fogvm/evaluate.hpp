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

#ifndef FOGVM_EVALUATE_HPP
#define FOGVM_EVALUATE_HPP

#include "fogvm/catalog.hpp"
#include "fogvm/placement.hpp"
#include "fogvm/power.hpp"
#include "fogvm/routing.hpp"
#include "fogvm/topology.hpp"

#include <memory>
#include <span>
#include <vector>

namespace fogvm {

struct EvalOptions {
  Sizing sizing = Sizing::Integral;
  LinearMode linear_mode = LinearMode::Default;
  Grooming grooming = Grooming::Aggregate;
  bool idle_optical_switches = true;  // charge optical switches at idle nodes
};

/// Everything needed to price a placement.
struct Instance {
  std::shared_ptr<const CoreTopology> topology;
  AttachmentPlan attachment;
  PowerParams params;
  std::vector<VmSpec> vms;
  DemandMatrix demand;
  EvalOptions options;

  const CoreTopology& topo() const { return *topology; }
  int num_nodes() const { return topology->num_nodes(); }
  int pons() const { return attachment.pons_per_node; }

  /// Throws InvalidScenario when the parts disagree in shape.
  void check() const;
};

/// Same instance restricted to a subset of its VMs (catalog indices).
Instance sub_instance(const Instance& inst, std::span<const int> vm_indices);

struct Evaluation {
  SiteLoads loads;
  CoreState core;
  EquipmentLedger ledger;
  PowerBreakdown breakdown;
};

class InfeasiblePlacement : public Error {
 public:
  explicit InfeasiblePlacement(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

RoutingOptions routing_options(const Instance& inst);

/// Routes, sizes and prices precomputed site loads.
Evaluation evaluate_loads(const Instance& inst, const SiteLoads& loads);
double total_watts(const Instance& inst, const SiteLoads& loads);

/// Validates, then evaluates. Infeasible placements throw InfeasiblePlacement.
Evaluation evaluate(const Instance& inst, const Placement& placement);
PowerBreakdown total_power(const Instance& inst, const Placement& placement);

/// A (vm, pon, node) triple with positive traffic.
struct DemandUnit {
  int vm = 0;
  int node = 0;
  int pon = 0;
  double traffic_mbps = 0.0;
};

/// Units in (vm, node, pon) order.
std::vector<DemandUnit> demand_units(const Instance& inst);

/// Cloud nodes a restriction allows, ascending.
std::vector<int> allowed_clouds(const Instance& inst, Restriction r);

/// Serving candidates of one unit: allowed clouds ascending, then the metro
/// fog of its node, then its access fog, as the restriction permits.
std::vector<Location> candidate_locations(const Instance& inst, Restriction r,
                                          const DemandUnit& unit);

/// Servings that send each whole unit to one location.
std::vector<ServingEntry> servings_for(std::span<const DemandUnit> units,
                                       std::span<const Location> where);

/// Prices whole-unit assignments without building a Placement. Reuses its
/// buffers, so one evaluator must not be shared between threads.
class AssignmentEvaluator {
 public:
  explicit AssignmentEvaluator(const Instance& inst);

  double total_watts(std::span<const DemandUnit> units,
                     std::span<const Location> where);
  const SiteLoads& loads() const { return loads_; }

 private:
  int site_of(const Location& l) const;

  const Instance& inst_;
  int n_;
  int pons_;
  Matrix served_;  // vm x site
  std::vector<std::pair<int, int>> touched_;
  SiteLoads loads_;
};

}  // namespace fogvm

#endif  // FOGVM_EVALUATE_HPP
