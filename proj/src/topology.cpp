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

#include "fogvm/topology.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <utility>

namespace fogvm {

namespace {

int clamped_floor_count(double distance_km, double reach_km, bool literal,
                        const char* what) {
  if (!(distance_km > 0.0) || !(reach_km > 0.0)) {
    throw InvalidParameter(std::string(what) +
                           ": distance and reach must be positive");
  }
  const int n = static_cast<int>(std::floor(distance_km / reach_km - 1.0));
  return literal ? n : std::max(0, n);
}

}  // namespace

int edfa_count(double distance_km, double span_km, bool literal) {
  return clamped_floor_count(distance_km, span_km, literal, "edfa_count");
}

int regen_count(double distance_km, double regen_reach_km, bool literal) {
  return clamped_floor_count(distance_km, regen_reach_km, literal,
                             "regen_count");
}

CoreTopology::CoreTopology(CoreTopologyConfig config)
    : config_(std::move(config)) {
  build();
}

void CoreTopology::build() {
  if (config_.nodes.empty()) throw InvalidScenario("topology has no nodes");
  if (!(config_.span_km > 0.0) || !(config_.regen_reach_km > 0.0)) {
    throw InvalidScenario("span_km and regen_reach_km must be positive");
  }
  if (config_.wavelengths_per_fiber <= 0 ||
      !(config_.wavelength_rate_gbps > 0.0)) {
    throw InvalidScenario("wavelength count and rate must be positive");
  }
  const int n = num_nodes();
  for (int i = 0; i < n; ++i) {
    if (!index_.emplace(config_.nodes[i].id, i).second) {
      throw InvalidScenario("duplicate node id " +
                            std::to_string(config_.nodes[i].id));
    }
  }

  adjacency_.assign(n, {});
  arc_lookup_ = IndexMatrix::Constant(n, n, -1);
  std::set<std::pair<int, int>> seen;
  for (int k = 0; k < num_links(); ++k) {
    const auto& l = config_.links[k];
    if (!has_node(l.a) || !has_node(l.b)) {
      throw InvalidScenario("link " + std::to_string(l.a) + "-" +
                            std::to_string(l.b) + " references unknown node");
    }
    if (l.a == l.b) throw InvalidScenario("self loop at node " + std::to_string(l.a));
    if (!(l.distance_km > 0.0)) {
      throw InvalidScenario("link " + std::to_string(l.a) + "-" +
                            std::to_string(l.b) + " has nonpositive distance");
    }
    if (!seen.emplace(std::min(l.a, l.b), std::max(l.a, l.b)).second) {
      throw InvalidScenario("duplicate link " + std::to_string(l.a) + "-" +
                            std::to_string(l.b));
    }
    const int a = index_of(l.a);
    const int b = index_of(l.b);
    arcs_.push_back({a, b, k});
    arcs_.push_back({b, a, k});
    arc_lookup_(a, b) = 2 * k;
    arc_lookup_(b, a) = 2 * k + 1;
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    const int amps =
        edfa_count(l.distance_km, config_.span_km, config_.literal_amplifier_counts);
    const int regens = regen_count(l.distance_km, config_.regen_reach_km,
                                   config_.literal_amplifier_counts);
    arc_edfas_.insert(arc_edfas_.end(), {amps, amps});
    arc_regens_.insert(arc_regens_.end(), {regens, regens});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(), [this](int x, int y) {
      return node_id(x) < node_id(y);
    });
  }
  for (int site : config_.datacenter_sites) {
    if (!has_node(site)) {
      throw InvalidScenario("datacenter site " + std::to_string(site) +
                            " is not a topology node");
    }
  }

  // All-pairs hop counts, one BFS per destination.
  hop_matrix_ = IndexMatrix::Constant(n, n, -1);
  for (int dst = 0; dst < n; ++dst) {
    std::deque<int> queue{dst};
    hop_matrix_(dst, dst) = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int w : adjacency_[u]) {
        if (hop_matrix_(w, dst) < 0) {
          hop_matrix_(w, dst) = hop_matrix_(u, dst) + 1;
          queue.push_back(w);
        }
      }
    }
  }

  // Walk from src, always stepping to the smallest-id neighbor that is one hop
  // closer to dst. This yields the lexicographically smallest id sequence.
  paths_.assign(static_cast<std::size_t>(n) * n, {});
  for (int src = 0; src < n; ++src) {
    for (int dst = 0; dst < n; ++dst) {
      if (src == dst || hop_matrix_(src, dst) < 0) continue;
      auto& p = paths_[static_cast<std::size_t>(src) * n + dst];
      int cur = src;
      while (cur != dst) {
        const int want = hop_matrix_(cur, dst) - 1;
        for (int w : adjacency_[cur]) {
          if (hop_matrix_(w, dst) == want) {
            p.push_back(arc_lookup_(cur, w));
            cur = w;
            break;
          }
        }
      }
    }
  }
}

int CoreTopology::index_of(int node_id) const {
  auto it = index_.find(node_id);
  if (it == index_.end()) {
    throw InvalidScenario("unknown node id " + std::to_string(node_id));
  }
  return it->second;
}

bool CoreTopology::has_node(int node_id) const {
  return index_.count(node_id) > 0;
}

int CoreTopology::arc_between(int from, int to) const {
  return arc_lookup_(from, to);
}

std::span<const int> CoreTopology::path(int src, int dst) const {
  if (hop_matrix_(src, dst) < 0) {
    throw NoPath("no path between nodes " + std::to_string(node_id(src)) +
                 " and " + std::to_string(node_id(dst)));
  }
  return paths_[static_cast<std::size_t>(src) * num_nodes() + dst];
}

int CoreTopology::hops(int src, int dst) const {
  const int h = hop_matrix_(src, dst);
  if (h < 0) {
    throw NoPath("no path between nodes " + std::to_string(node_id(src)) +
                 " and " + std::to_string(node_id(dst)));
  }
  return h;
}

bool CoreTopology::is_connected() const {
  return (hop_matrix_.array() >= 0).all();
}

std::vector<int> CoreTopology::datacenter_indices() const {
  std::vector<int> out;
  for (int site : config_.datacenter_sites) out.push_back(index_of(site));
  std::sort(out.begin(), out.end());
  return out;
}

void AttachmentPlan::validate() const {
  if (pons_per_node < 1) throw InvalidScenario("pons_per_node must be >= 1");
  if (onus_per_pon < 1 || olts_per_pon < 1) {
    throw InvalidScenario("ONU and OLT counts must be positive");
  }
  if (!(olt_capacity_gbps > 0.0)) {
    throw InvalidScenario("olt_capacity_gbps must be positive");
  }
}

void to_json(nlohmann::json& j, const CoreTopologyConfig& c) {
  j = nlohmann::json::object();
  auto nodes = nlohmann::json::array();
  for (const auto& n : c.nodes) {
    nodes.push_back({{"id", n.id},
                     {"name", n.name},
                     {"latitude", n.latitude},
                     {"longitude", n.longitude}});
  }
  auto links = nlohmann::json::array();
  for (const auto& l : c.links) {
    links.push_back({{"a", l.a}, {"b", l.b}, {"distance_km", l.distance_km}});
  }
  j["nodes"] = std::move(nodes);
  j["links"] = std::move(links);
  j["span_km"] = c.span_km;
  j["regen_reach_km"] = c.regen_reach_km;
  j["wavelengths_per_fiber"] = c.wavelengths_per_fiber;
  j["wavelength_rate_gbps"] = c.wavelength_rate_gbps;
  j["literal_amplifier_counts"] = c.literal_amplifier_counts;
  j["datacenter_sites"] = c.datacenter_sites;
}

void from_json(const nlohmann::json& j, CoreTopologyConfig& c) {
  using detail::check_keys;
  using detail::optional;
  using detail::required;
  const std::string where = "topology";
  check_keys(j,
             {"nodes", "links", "span_km", "regen_reach_km",
              "wavelengths_per_fiber", "wavelength_rate_gbps",
              "literal_amplifier_counts", "datacenter_sites"},
             where);
  c = CoreTopologyConfig{};
  for (const auto& n : required<nlohmann::json>(j, "nodes", where)) {
    check_keys(n, {"id", "name", "latitude", "longitude"}, where + ".nodes[]");
    c.nodes.push_back({required<int>(n, "id", where + ".nodes[]"),
                       optional<std::string>(n, "name", "", where),
                       optional<double>(n, "latitude", 0.0, where),
                       optional<double>(n, "longitude", 0.0, where)});
  }
  for (const auto& l : required<nlohmann::json>(j, "links", where)) {
    check_keys(l, {"a", "b", "distance_km"}, where + ".links[]");
    c.links.push_back({required<int>(l, "a", where + ".links[]"),
                       required<int>(l, "b", where + ".links[]"),
                       required<double>(l, "distance_km", where + ".links[]")});
  }
  c.span_km = optional<double>(j, "span_km", c.span_km, where);
  c.regen_reach_km = optional<double>(j, "regen_reach_km", c.regen_reach_km, where);
  c.wavelengths_per_fiber =
      optional<int>(j, "wavelengths_per_fiber", c.wavelengths_per_fiber, where);
  c.wavelength_rate_gbps =
      optional<double>(j, "wavelength_rate_gbps", c.wavelength_rate_gbps, where);
  c.literal_amplifier_counts = optional<bool>(j, "literal_amplifier_counts",
                                              c.literal_amplifier_counts, where);
  c.datacenter_sites =
      optional<std::vector<int>>(j, "datacenter_sites", {}, where);
}

void to_json(nlohmann::json& j, const AttachmentPlan& a) {
  j = {{"pons_per_node", a.pons_per_node},
       {"onus_per_pon", a.onus_per_pon},
       {"olts_per_pon", a.olts_per_pon},
       {"olt_capacity_gbps", a.olt_capacity_gbps}};
}

void from_json(const nlohmann::json& j, AttachmentPlan& a) {
  using detail::optional;
  const std::string where = "attachment";
  detail::check_keys(
      j, {"pons_per_node", "onus_per_pon", "olts_per_pon", "olt_capacity_gbps"},
      where);
  a = AttachmentPlan{};
  a.pons_per_node = optional<int>(j, "pons_per_node", a.pons_per_node, where);
  a.onus_per_pon = optional<int>(j, "onus_per_pon", a.onus_per_pon, where);
  a.olts_per_pon = optional<int>(j, "olts_per_pon", a.olts_per_pon, where);
  a.olt_capacity_gbps =
      optional<double>(j, "olt_capacity_gbps", a.olt_capacity_gbps, where);
  a.validate();
}

}  // namespace fogvm
