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

#include "fogvm/routing.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace fogvm {

double wavelengths_for(double traffic_mbps, const CoreTopology& topo,
                       Sizing sizing) {
  return size_units(traffic_mbps, topo.wavelength_rate_mbps(), sizing);
}

CoreState route_all(const Matrix& demand, const CoreTopology& topo,
                    const RoutingOptions& options) {
  const int n = topo.num_nodes();
  if (demand.rows() != n || demand.cols() != n) {
    throw InvalidParameter("demand matrix does not match topology size");
  }
  if ((demand.array() < 0.0).any()) {
    throw InvalidParameter("negative entry in demand matrix");
  }
  CoreState state;
  state.demand = demand;
  state.arc_traffic = Vector::Zero(topo.num_arcs());
  state.arc_wavelengths = Vector::Zero(topo.num_arcs());

  for (int s = 0; s < n; ++s) {
    for (int d = 0; d < n; ++d) {
      const double l = demand(s, d);
      if (s == d || l <= 0.0) continue;
      for (int a : topo.path(s, d)) {
        if (options.record_flows) state.flows.push_back({s, d, a, l});
        state.arc_traffic(a) += l;
        if (options.grooming == Grooming::PerDemand) {
          state.arc_wavelengths(a) += wavelengths_for(l, topo, options.sizing);
        }
      }
    }
  }
  if (options.grooming == Grooming::Aggregate) {
    for (int a = 0; a < topo.num_arcs(); ++a) {
      state.arc_wavelengths(a) =
          wavelengths_for(state.arc_traffic(a), topo, options.sizing);
    }
  }
  state.arc_fibers =
      size_units(state.arc_wavelengths.array(),
                 static_cast<double>(topo.wavelengths_per_fiber()),
                 options.sizing)
          .matrix();

  const double rate = topo.wavelength_rate_mbps();
  state.agg_cloud_ports =
      size_units(demand.rowwise().sum().array(), rate, options.sizing).matrix();
  state.agg_edge_ports =
      options.metro_redundancy *
      size_units(demand.colwise().sum().transpose().array(), rate,
                 options.sizing)
          .matrix();
  return state;
}

int core_hop_count(const CoreTopology& topo, int src, int dst) {
  return topo.hops(src, dst);
}

std::vector<std::string> check_core_state(const CoreState& state,
                                          const CoreTopology& topo) {
  std::vector<std::string> out;
  const int n = topo.num_nodes();
  constexpr double kTol = 1e-6;

  // Net outflow per (commodity, node).
  std::map<std::pair<int, int>, Vector> balance;
  for (const auto& f : state.flows) {
    auto [it, inserted] = balance.try_emplace({f.src, f.dst}, Vector::Zero(n));
    const Arc& arc = topo.arc(f.arc);
    it->second(arc.from) += f.traffic_mbps;
    it->second(arc.to) -= f.traffic_mbps;
  }
  for (int s = 0; s < n; ++s) {
    for (int d = 0; d < n; ++d) {
      if (s == d) continue;
      const double l = state.demand(s, d);
      auto it = balance.find({s, d});
      Vector expected = Vector::Zero(n);
      if (l > 0.0) {
        expected(s) = l;
        expected(d) = -l;
      }
      const Vector actual = it == balance.end() ? Vector::Zero(n) : it->second;
      for (int i = 0; i < n; ++i) {
        if (std::abs(actual(i) - expected(i)) > kTol * std::max(1.0, l)) {
          out.push_back("flow conservation violated for commodity " +
                        std::to_string(topo.node_id(s)) + "->" +
                        std::to_string(topo.node_id(d)) + " at node " +
                        std::to_string(topo.node_id(i)));
        }
      }
    }
  }

  Vector arc_sum = Vector::Zero(topo.num_arcs());
  for (const auto& f : state.flows) arc_sum(f.arc) += f.traffic_mbps;
  const double rate = topo.wavelength_rate_mbps();
  for (int a = 0; a < topo.num_arcs(); ++a) {
    const Arc& arc = topo.arc(a);
    const std::string name = std::to_string(topo.node_id(arc.from)) + "->" +
                             std::to_string(topo.node_id(arc.to));
    if (std::abs(arc_sum(a) - state.arc_traffic(a)) >
        kTol * std::max(1.0, arc_sum(a))) {
      out.push_back("arc " + name + " traffic does not match its flows");
    }
    if (arc_sum(a) > state.arc_wavelengths(a) * rate * (1.0 + kTol) + kTol) {
      out.push_back("arc " + name + " exceeds wavelength capacity");
    }
    if (state.arc_wavelengths(a) >
        topo.wavelengths_per_fiber() * state.arc_fibers(a) * (1.0 + kTol) +
            kTol) {
      out.push_back("arc " + name + " exceeds fiber capacity");
    }
  }
  return out;
}

}  // namespace fogvm
