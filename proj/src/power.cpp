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

#include "fogvm/power.hpp"

#include "fogvm/routing.hpp"
#include "json_util.hpp"

#include <array>
#include <initializer_list>

namespace fogvm {

Pue best_practice_pue() { return Pue{1.3, 1.4, 1.5, 1.5}; }
Pue pue_2014() { return Pue{1.7, 1.9, 2.5, 1.5}; }

void PowerParams::validate() const {
  const std::initializer_list<double> positive = {
      core.router_port_w, core.transponder_w, core.edfa_w,
      core.optical_switch_w, core.regen_w, metro.port_rate_gbps, metro.port_w,
      metro.redundancy, metro.switch_rate_gbps, metro.switch_w, pon.olt_w,
      pon.onu_w, compute.server_w, compute.server_max_workload_pct,
      compute.switch_redundancy, compute.cloud_switch_rate_gbps,
      compute.cloud_switch_w, compute.metro_fog_switch_rate_gbps,
      compute.metro_fog_switch_w, compute.access_fog_switch_rate_gbps,
      compute.access_fog_switch_w, compute.cloud_port_rate_gbps,
      compute.cloud_port_w, compute.metro_fog_port_rate_gbps,
      compute.metro_fog_port_w, compute.access_fog_port_rate_gbps,
      compute.access_fog_port_w, pue.cloud, pue.metro_fog, pue.access_fog,
      pue.network};
  for (double v : positive) {
    if (!(v > 0.0)) throw InvalidScenario("power parameters must be positive");
  }
  if (pue.cloud < 1.0 || pue.metro_fog < 1.0 || pue.access_fog < 1.0 ||
      pue.network < 1.0) {
    throw InvalidScenario("PUE values must be >= 1");
  }
}

void SiteLoads::reset(int num_nodes, int pons_per_node) {
  cloud_workload.setZero(num_nodes);
  cloud_traffic.setZero(num_nodes);
  metro_fog_workload.setZero(num_nodes);
  metro_fog_traffic.setZero(num_nodes);
  access_fog_workload.setZero(pons_per_node, num_nodes);
  access_fog_traffic.setZero(pons_per_node, num_nodes);
  cloud_demand.setZero(num_nodes, num_nodes);
}

std::string to_string(Segment s) {
  switch (s) {
    case Segment::Core:
      return "core";
    case Segment::Metro:
      return "metro";
    case Segment::Pon:
      return "pon";
    case Segment::Cloud:
      return "cloud";
    case Segment::MetroFog:
      return "metro_fog";
    case Segment::AccessFog:
      return "access_fog";
  }
  return "?";
}

double PowerBreakdown::segment_w(Segment s) const {
  switch (s) {
    case Segment::Core:
      return core_w;
    case Segment::Metro:
      return metro_w;
    case Segment::Pon:
      return pon_w;
    case Segment::Cloud:
      return cloud_w;
    case Segment::MetroFog:
      return metro_fog_w;
    case Segment::AccessFog:
      return access_fog_w;
  }
  return 0.0;
}

double size_servers(double total_workload_pct, double server_max_workload_pct,
                    Sizing mode) {
  return size_units(total_workload_pct, server_max_workload_pct, mode);
}

std::pair<double, double> size_ports_switches(double traffic_mbps,
                                              double port_rate_mbps,
                                              double switch_rate_mbps,
                                              Sizing mode) {
  return {size_units(traffic_mbps, port_rate_mbps, mode),
          size_units(traffic_mbps, switch_rate_mbps, mode)};
}

EquipmentLedger size_equipment(const SiteLoads& loads, const CoreState& core,
                               const CoreTopology& topo,
                               const PowerParams& params, Sizing mode,
                               bool idle_optical_switches) {
  const auto& c = params.compute;
  const double max_w = c.server_max_workload_pct;
  EquipmentLedger e;
  e.cloud_servers = size_units(loads.cloud_workload.array(), max_w, mode);
  e.cloud_ports = size_units(loads.cloud_traffic.array(),
                             c.cloud_port_rate_gbps * 1000.0, mode);
  e.cloud_switches = size_units(loads.cloud_traffic.array(),
                                c.cloud_switch_rate_gbps * 1000.0, mode);
  e.metro_fog_servers = size_units(loads.metro_fog_workload.array(), max_w, mode);
  e.metro_fog_ports = size_units(loads.metro_fog_traffic.array(),
                                 c.metro_fog_port_rate_gbps * 1000.0, mode);
  e.metro_fog_switches = size_units(loads.metro_fog_traffic.array(),
                                    c.metro_fog_switch_rate_gbps * 1000.0, mode);
  e.access_fog_servers =
      size_units(loads.access_fog_workload.array(), max_w, mode);
  e.access_fog_ports = size_units(loads.access_fog_traffic.array(),
                                  c.access_fog_port_rate_gbps * 1000.0, mode);
  e.access_fog_switches = size_units(loads.access_fog_traffic.array(),
                                     c.access_fog_switch_rate_gbps * 1000.0, mode);

  // Metro gateways carry cloud-bound traffic destined to the node plus
  // everything served by the node's metro fog.
  const Vector metro_traffic =
      loads.cloud_demand.colwise().sum().transpose() + loads.metro_fog_traffic;
  e.metro_ports =
      size_units(metro_traffic.array(), params.metro.port_rate_gbps * 1000.0, mode);
  e.metro_switches = size_units(metro_traffic.array(),
                                params.metro.switch_rate_gbps * 1000.0, mode);

  e.agg_cloud_ports = core.agg_cloud_ports;
  e.agg_edge_ports = core.agg_edge_ports;
  e.arc_wavelengths = core.arc_wavelengths;
  e.arc_fibers = core.arc_fibers;

  const int n = topo.num_nodes();
  e.optical_switches = Vector::Ones(n);
  if (!idle_optical_switches) {
    for (int i = 0; i < n; ++i) {
      bool busy = e.agg_cloud_ports(i) > 0.0 || e.agg_edge_ports(i) > 0.0;
      for (int w : topo.neighbors(i)) {
        busy = busy || e.arc_wavelengths(topo.arc_between(i, w)) > 0.0 ||
               e.arc_wavelengths(topo.arc_between(w, i)) > 0.0;
      }
      e.optical_switches(i) = busy ? 1.0 : 0.0;
    }
  }
  return e;
}

namespace {

// Visits every (segment, device class) term in a fixed order. Both the
// breakdown and the plain total go through this, so their sums agree
// bit for bit.
template <typename Sink>
void visit_terms(const EquipmentLedger& e, const CoreTopology& topo,
                 const AttachmentPlan& attachment, const PowerParams& p,
                 Sink&& sink) {
  const auto& c = p.compute;
  const double n = p.pue.network;

  double link_wavelengths = e.arc_wavelengths.sum();
  double fiber_amps = 0.0;
  double regen_wavelengths = 0.0;
  for (int a = 0; a < topo.num_arcs(); ++a) {
    fiber_amps += e.arc_fibers(a) * topo.arc_edfas(a);
    regen_wavelengths += topo.arc_regens(a) * e.arc_wavelengths(a);
  }
  sink(Segment::Core, "router_ports_cloud_aggregation", e.agg_cloud_ports.sum(),
       p.core.router_port_w, n);
  sink(Segment::Core, "router_ports_edge_aggregation", e.agg_edge_ports.sum(),
       p.core.router_port_w, n);
  sink(Segment::Core, "router_ports_links", link_wavelengths,
       p.core.router_port_w, n);
  sink(Segment::Core, "transponders", link_wavelengths, p.core.transponder_w, n);
  sink(Segment::Core, "edfas", fiber_amps, p.core.edfa_w, n);
  sink(Segment::Core, "optical_switches", e.optical_switches.sum(),
       p.core.optical_switch_w, n);
  sink(Segment::Core, "regenerators", regen_wavelengths, p.core.regen_w, n);

  sink(Segment::Metro, "edge_router_ports",
       e.metro_ports.sum() * p.metro.redundancy, p.metro.port_w, n);
  sink(Segment::Metro, "ethernet_switches", e.metro_switches.sum(),
       p.metro.switch_w, n);

  const double pons =
      static_cast<double>(attachment.pons_per_node) * topo.num_nodes();
  sink(Segment::Pon, "olts", pons * attachment.olts_per_pon, p.pon.olt_w, n);
  sink(Segment::Pon, "onus", pons * attachment.onus_per_pon, p.pon.onu_w, n);

  sink(Segment::Cloud, "servers", e.cloud_servers.sum(), c.server_w, p.pue.cloud);
  sink(Segment::Cloud, "switches", e.cloud_switches.sum() * c.switch_redundancy,
       c.cloud_switch_w, p.pue.cloud);
  sink(Segment::Cloud, "router_ports", e.cloud_ports.sum(), c.cloud_port_w,
       p.pue.cloud);

  sink(Segment::MetroFog, "servers", e.metro_fog_servers.sum(), c.server_w,
       p.pue.metro_fog);
  sink(Segment::MetroFog, "switches",
       e.metro_fog_switches.sum() * c.switch_redundancy, c.metro_fog_switch_w,
       p.pue.metro_fog);
  sink(Segment::MetroFog, "router_ports", e.metro_fog_ports.sum(),
       c.metro_fog_port_w, p.pue.metro_fog);

  sink(Segment::AccessFog, "servers", e.access_fog_servers.sum(), c.server_w,
       p.pue.access_fog);
  sink(Segment::AccessFog, "switches",
       e.access_fog_switches.sum() * c.switch_redundancy, c.access_fog_switch_w,
       p.pue.access_fog);
  sink(Segment::AccessFog, "router_ports", e.access_fog_ports.sum(),
       c.access_fog_port_w, p.pue.access_fog);
}

struct SegmentTotals {
  std::array<double, 6> w{};

  void operator()(Segment s, const char*, double count, double unit,
                  double pue) {
    w[static_cast<int>(s)] += count * unit * pue;
  }
  double total() const {
    return w[0] + w[1] + w[2] + w[3] + w[4] + w[5];
  }
};

SegmentTotals totals_of(const EquipmentLedger& e, const CoreTopology& topo,
                        const AttachmentPlan& attachment,
                        const PowerParams& p) {
  SegmentTotals t;
  visit_terms(e, topo, attachment, p, t);
  return t;
}

}  // namespace

double cloud_power(const EquipmentLedger& ledger, const PowerParams& params) {
  const auto& c = params.compute;
  return params.pue.cloud *
         (ledger.cloud_servers.sum() * c.server_w +
          ledger.cloud_switches.sum() * c.switch_redundancy * c.cloud_switch_w +
          ledger.cloud_ports.sum() * c.cloud_port_w);
}

double metro_fog_power(const EquipmentLedger& ledger, const PowerParams& params) {
  const auto& c = params.compute;
  return params.pue.metro_fog *
         (ledger.metro_fog_servers.sum() * c.server_w +
          ledger.metro_fog_switches.sum() * c.switch_redundancy *
              c.metro_fog_switch_w +
          ledger.metro_fog_ports.sum() * c.metro_fog_port_w);
}

double access_fog_power(const EquipmentLedger& ledger,
                        const PowerParams& params) {
  const auto& c = params.compute;
  return params.pue.access_fog *
         (ledger.access_fog_servers.sum() * c.server_w +
          ledger.access_fog_switches.sum() * c.switch_redundancy *
              c.access_fog_switch_w +
          ledger.access_fog_ports.sum() * c.access_fog_port_w);
}

double pon_power(const AttachmentPlan& attachment, int num_nodes,
                 const PowerParams& params) {
  const double pons = static_cast<double>(attachment.pons_per_node) * num_nodes;
  return params.pue.network *
         pons * (params.pon.olt_w * attachment.olts_per_pon +
                 params.pon.onu_w * attachment.onus_per_pon);
}

double metro_power(const EquipmentLedger& ledger, const PowerParams& params) {
  return params.pue.network *
         (ledger.metro_ports.sum() * params.metro.redundancy *
              params.metro.port_w +
          ledger.metro_switches.sum() * params.metro.switch_w);
}

double core_power(const EquipmentLedger& ledger, const CoreTopology& topo,
                  const PowerParams& params) {
  const auto& c = params.core;
  double link_w = 0.0;
  double fiber_amps = 0.0;
  double regen_w = 0.0;
  for (int a = 0; a < topo.num_arcs(); ++a) {
    link_w += ledger.arc_wavelengths(a);
    fiber_amps += ledger.arc_fibers(a) * topo.arc_edfas(a);
    regen_w += topo.arc_regens(a) * ledger.arc_wavelengths(a);
  }
  return params.pue.network *
         (c.router_port_w * (ledger.agg_cloud_ports.sum() +
                             ledger.agg_edge_ports.sum() + link_w) +
          c.transponder_w * link_w + c.edfa_w * fiber_amps +
          c.optical_switch_w * ledger.optical_switches.sum() +
          c.regen_w * regen_w);
}

PowerBreakdown power_breakdown(const EquipmentLedger& ledger,
                               const CoreTopology& topo,
                               const AttachmentPlan& attachment,
                               const PowerParams& params) {
  PowerBreakdown b;
  SegmentTotals t;
  visit_terms(ledger, topo, attachment, params,
              [&](Segment s, const char* cls, double count, double unit,
                  double pue) {
                t(s, cls, count, unit, pue);
                b.terms.push_back({s, cls, count, unit, pue, count * unit * pue});
              });
  b.core_w = t.w[static_cast<int>(Segment::Core)];
  b.metro_w = t.w[static_cast<int>(Segment::Metro)];
  b.pon_w = t.w[static_cast<int>(Segment::Pon)];
  b.cloud_w = t.w[static_cast<int>(Segment::Cloud)];
  b.metro_fog_w = t.w[static_cast<int>(Segment::MetroFog)];
  b.access_fog_w = t.w[static_cast<int>(Segment::AccessFog)];
  b.total_w = t.total();
  return b;
}

double total_watts(const EquipmentLedger& ledger, const CoreTopology& topo,
                   const AttachmentPlan& attachment, const PowerParams& params) {
  return totals_of(ledger, topo, attachment, params).total();
}

void to_json(nlohmann::json& j, const Pue& p) {
  j = {{"cloud", p.cloud},
       {"metro_fog", p.metro_fog},
       {"access_fog", p.access_fog},
       {"network", p.network}};
}

void from_json(const nlohmann::json& j, Pue& p) {
  using detail::required;
  detail::check_keys(j, {"cloud", "metro_fog", "access_fog", "network"}, "pue");
  p.cloud = required<double>(j, "cloud", "pue");
  p.metro_fog = required<double>(j, "metro_fog", "pue");
  p.access_fog = required<double>(j, "access_fog", "pue");
  p.network = detail::optional<double>(j, "network", 1.5, "pue");
}

void to_json(nlohmann::json& j, const PowerParams& p) {
  const auto& c = p.compute;
  j = {{"core",
        {{"router_port_w", p.core.router_port_w},
         {"transponder_w", p.core.transponder_w},
         {"edfa_w", p.core.edfa_w},
         {"optical_switch_w", p.core.optical_switch_w},
         {"regen_w", p.core.regen_w}}},
       {"metro",
        {{"port_rate_gbps", p.metro.port_rate_gbps},
         {"port_w", p.metro.port_w},
         {"redundancy", p.metro.redundancy},
         {"switch_rate_gbps", p.metro.switch_rate_gbps},
         {"switch_w", p.metro.switch_w}}},
       {"pon", {{"olt_w", p.pon.olt_w}, {"onu_w", p.pon.onu_w}}},
       {"compute",
        {{"server_w", c.server_w},
         {"server_max_workload_pct", c.server_max_workload_pct},
         {"switch_redundancy", c.switch_redundancy},
         {"cloud_switch_rate_gbps", c.cloud_switch_rate_gbps},
         {"cloud_switch_w", c.cloud_switch_w},
         {"metro_fog_switch_rate_gbps", c.metro_fog_switch_rate_gbps},
         {"metro_fog_switch_w", c.metro_fog_switch_w},
         {"access_fog_switch_rate_gbps", c.access_fog_switch_rate_gbps},
         {"access_fog_switch_w", c.access_fog_switch_w},
         {"cloud_port_rate_gbps", c.cloud_port_rate_gbps},
         {"cloud_port_w", c.cloud_port_w},
         {"metro_fog_port_rate_gbps", c.metro_fog_port_rate_gbps},
         {"metro_fog_port_w", c.metro_fog_port_w},
         {"access_fog_port_rate_gbps", c.access_fog_port_rate_gbps},
         {"access_fog_port_w", c.access_fog_port_w}}}};
}

namespace {

void read_into(const nlohmann::json& j, const char* key, double& field,
               const std::string& where) {
  field = detail::optional<double>(j, key, field, where);
}

}  // namespace

void from_json(const nlohmann::json& j, PowerParams& p) {
  using detail::check_keys;
  p = PowerParams{};
  check_keys(j, {"core", "metro", "pon", "compute"}, "power");
  if (j.contains("core")) {
    const auto& c = j.at("core");
    const std::string w = "power.core";
    check_keys(c, {"router_port_w", "transponder_w", "edfa_w",
                   "optical_switch_w", "regen_w"},
               w);
    read_into(c, "router_port_w", p.core.router_port_w, w);
    read_into(c, "transponder_w", p.core.transponder_w, w);
    read_into(c, "edfa_w", p.core.edfa_w, w);
    read_into(c, "optical_switch_w", p.core.optical_switch_w, w);
    read_into(c, "regen_w", p.core.regen_w, w);
  }
  if (j.contains("metro")) {
    const auto& m = j.at("metro");
    const std::string w = "power.metro";
    check_keys(m, {"port_rate_gbps", "port_w", "redundancy", "switch_rate_gbps",
                   "switch_w"},
               w);
    read_into(m, "port_rate_gbps", p.metro.port_rate_gbps, w);
    read_into(m, "port_w", p.metro.port_w, w);
    read_into(m, "redundancy", p.metro.redundancy, w);
    read_into(m, "switch_rate_gbps", p.metro.switch_rate_gbps, w);
    read_into(m, "switch_w", p.metro.switch_w, w);
  }
  if (j.contains("pon")) {
    const auto& o = j.at("pon");
    check_keys(o, {"olt_w", "onu_w"}, "power.pon");
    read_into(o, "olt_w", p.pon.olt_w, "power.pon");
    read_into(o, "onu_w", p.pon.onu_w, "power.pon");
  }
  if (j.contains("compute")) {
    const auto& c = j.at("compute");
    const std::string w = "power.compute";
    check_keys(c,
               {"server_w", "server_max_workload_pct", "switch_redundancy",
                "cloud_switch_rate_gbps", "cloud_switch_w",
                "metro_fog_switch_rate_gbps", "metro_fog_switch_w",
                "access_fog_switch_rate_gbps", "access_fog_switch_w",
                "cloud_port_rate_gbps", "cloud_port_w",
                "metro_fog_port_rate_gbps", "metro_fog_port_w",
                "access_fog_port_rate_gbps", "access_fog_port_w"},
               w);
    auto& k = p.compute;
    read_into(c, "server_w", k.server_w, w);
    read_into(c, "server_max_workload_pct", k.server_max_workload_pct, w);
    read_into(c, "switch_redundancy", k.switch_redundancy, w);
    read_into(c, "cloud_switch_rate_gbps", k.cloud_switch_rate_gbps, w);
    read_into(c, "cloud_switch_w", k.cloud_switch_w, w);
    read_into(c, "metro_fog_switch_rate_gbps", k.metro_fog_switch_rate_gbps, w);
    read_into(c, "metro_fog_switch_w", k.metro_fog_switch_w, w);
    read_into(c, "access_fog_switch_rate_gbps", k.access_fog_switch_rate_gbps, w);
    read_into(c, "access_fog_switch_w", k.access_fog_switch_w, w);
    read_into(c, "cloud_port_rate_gbps", k.cloud_port_rate_gbps, w);
    read_into(c, "cloud_port_w", k.cloud_port_w, w);
    read_into(c, "metro_fog_port_rate_gbps", k.metro_fog_port_rate_gbps, w);
    read_into(c, "metro_fog_port_w", k.metro_fog_port_w, w);
    read_into(c, "access_fog_port_rate_gbps", k.access_fog_port_rate_gbps, w);
    read_into(c, "access_fog_port_w", k.access_fog_port_w, w);
  }
}

}  // namespace fogvm
