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

#ifndef FOGVM_ROUTING_HPP
#define FOGVM_ROUTING_HPP

#include "fogvm/topology.hpp"
#include "fogvm/types.hpp"

#include <string>
#include <vector>

namespace fogvm {

struct RoutingOptions {
  Sizing sizing = Sizing::Integral;
  Grooming grooming = Grooming::Aggregate;
  double metro_redundancy = 2.0;  // multiplies the edge aggregation ports
  bool record_flows = true;
};

/// Traffic of commodity (src, dst) on one arc. Non-bypass: every virtual link
/// is a physical arc, so a flow record is also a lightpath segment.
struct Flow {
  int src = 0;
  int dst = 0;
  int arc = 0;
  double traffic_mbps = 0.0;
};

/// Core network state after routing the cloud demand matrix.
struct CoreState {
  Matrix demand;            // L(s, d), Mbps
  Vector arc_traffic;       // Mbps per directed arc
  Vector arc_wavelengths;   // per directed arc
  Vector arc_fibers;
  Vector agg_cloud_ports;   // R^(AC) per node
  Vector agg_edge_ports;    // R^(AE) per node, redundancy included
  std::vector<Flow> flows;  // in (src, dst, hop) order
};

/// Routes every positive L(s, d) over its min-hop path and dimensions
/// wavelengths, fibers and aggregation ports.
CoreState route_all(const Matrix& demand, const CoreTopology& topo,
                    const RoutingOptions& options);

/// Hop count of the min-hop path between two internal node indices.
int core_hop_count(const CoreTopology& topo, int src, int dst);

/// Re-checks IP-layer flow conservation per commodity, virtual/physical
/// link capacity and fiber capacity. Returns human-readable violations.
std::vector<std::string> check_core_state(const CoreState& state,
                                          const CoreTopology& topo);

/// Arc wavelength count from traffic under `options` (aggregate grooming).
double wavelengths_for(double traffic_mbps, const CoreTopology& topo,
                       Sizing sizing);

}  // namespace fogvm

#endif  // FOGVM_ROUTING_HPP
