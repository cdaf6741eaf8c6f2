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

#ifndef FOGVM_POWER_HPP
#define FOGVM_POWER_HPP

#include "fogvm/topology.hpp"
#include "fogvm/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <utility>
#include <vector>

namespace fogvm {

struct CorePowerParams {
  double router_port_w = 638.0;
  double transponder_w = 129.0;
  double edfa_w = 11.0;
  double optical_switch_w = 85.0;
  double regen_w = 114.0;
};

struct MetroPowerParams {
  double port_rate_gbps = 40.0;
  double port_w = 30.0;
  double redundancy = 2.0;
  double switch_rate_gbps = 600.0;
  double switch_w = 470.0;
};

struct PonPowerParams {
  double olt_w = 1842.0;
  double onu_w = 5.0;
};

struct ComputePowerParams {
  double server_w = 333.0;
  double server_max_workload_pct = 100.0;
  double switch_redundancy = 2.0;
  double cloud_switch_rate_gbps = 600.0;
  double cloud_switch_w = 470.0;
  double metro_fog_switch_rate_gbps = 600.0;
  double metro_fog_switch_w = 470.0;
  double access_fog_switch_rate_gbps = 240.0;
  double access_fog_switch_w = 210.0;
  double cloud_port_rate_gbps = 40.0;
  double cloud_port_w = 30.0;
  double metro_fog_port_rate_gbps = 40.0;
  double metro_fog_port_w = 13.0;
  double access_fog_port_rate_gbps = 40.0;
  double access_fog_port_w = 13.0;
};

struct Pue {
  double cloud = 1.3;
  double metro_fog = 1.4;
  double access_fog = 1.5;
  double network = 1.5;
};

Pue best_practice_pue();
Pue pue_2014();

struct PowerParams {
  CorePowerParams core;
  MetroPowerParams metro;
  PonPowerParams pon;
  ComputePowerParams compute;
  Pue pue;

  void validate() const;
};

/// Workloads (CPU %) and served traffic (Mbps) aggregated per site, plus the
/// cloud-to-node demand matrix L(s, d).
struct SiteLoads {
  Vector cloud_workload;
  Vector cloud_traffic;
  Vector metro_fog_workload;
  Vector metro_fog_traffic;
  Matrix access_fog_workload;  // pon x node
  Matrix access_fog_traffic;
  Matrix cloud_demand;         // L(s, d)

  void reset(int num_nodes, int pons_per_node);
};

/// Integral (or fractional) device counts implied by a placement.
struct EquipmentLedger {
  Vector cloud_servers, cloud_ports, cloud_switches;
  Vector metro_fog_servers, metro_fog_ports, metro_fog_switches;
  Matrix access_fog_servers, access_fog_ports, access_fog_switches;
  Vector metro_ports, metro_switches;
  Vector agg_cloud_ports, agg_edge_ports;
  Vector arc_wavelengths, arc_fibers;
  Vector optical_switches;  // 0/1 per node
};

enum class Segment { Core, Metro, Pon, Cloud, MetroFog, AccessFog };

std::string to_string(Segment s);

/// One line of the audit trail: watts == count * unit_watts * pue.
struct PowerTerm {
  Segment segment;
  std::string device_class;
  double count;
  double unit_watts;
  double pue;
  double watts;
};

struct PowerBreakdown {
  std::vector<PowerTerm> terms;
  double core_w = 0.0;
  double metro_w = 0.0;
  double pon_w = 0.0;
  double cloud_w = 0.0;
  double metro_fog_w = 0.0;
  double access_fog_w = 0.0;
  double total_w = 0.0;

  double segment_w(Segment s) const;
};

/// ceil(workload / max) servers (or the plain ratio when fractional).
double size_servers(double total_workload_pct, double server_max_workload_pct,
                    Sizing mode = Sizing::Integral);

/// (ceil(traffic / port_rate), ceil(traffic / switch_rate)).
std::pair<double, double> size_ports_switches(double traffic_mbps,
                                              double port_rate_mbps,
                                              double switch_rate_mbps,
                                              Sizing mode = Sizing::Integral);

struct CoreState;

/// Sizes every device class from site loads and the routed core state.
EquipmentLedger size_equipment(const SiteLoads& loads, const CoreState& core,
                               const CoreTopology& topo,
                               const PowerParams& params, Sizing mode,
                               bool idle_optical_switches);

// Segment power, each already multiplied by its PUE.
double cloud_power(const EquipmentLedger& ledger, const PowerParams& params);
double metro_fog_power(const EquipmentLedger& ledger, const PowerParams& params);
double access_fog_power(const EquipmentLedger& ledger, const PowerParams& params);
double pon_power(const AttachmentPlan& attachment, int num_nodes,
                 const PowerParams& params);
double metro_power(const EquipmentLedger& ledger, const PowerParams& params);
double core_power(const EquipmentLedger& ledger, const CoreTopology& topo,
                  const PowerParams& params);

/// Full breakdown with the per-device-class audit trail.
PowerBreakdown power_breakdown(const EquipmentLedger& ledger,
                               const CoreTopology& topo,
                               const AttachmentPlan& attachment,
                               const PowerParams& params);

/// Same total as power_breakdown(...).total_w without building the terms.
double total_watts(const EquipmentLedger& ledger, const CoreTopology& topo,
                   const AttachmentPlan& attachment, const PowerParams& params);

void to_json(nlohmann::json& j, const PowerParams& p);
void from_json(const nlohmann::json& j, PowerParams& p);
void to_json(nlohmann::json& j, const Pue& p);
void from_json(const nlohmann::json& j, Pue& p);

}  // namespace fogvm

#endif  // FOGVM_POWER_HPP
