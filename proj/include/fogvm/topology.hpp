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

#ifndef FOGVM_TOPOLOGY_HPP
#define FOGVM_TOPOLOGY_HPP

#include "fogvm/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace fogvm {

/// In-line amplifiers on a link of `distance_km` with amplifier reach
/// `span_km`: floor(D/S - 1), clamped at zero unless `literal` is set.
int edfa_count(double distance_km, double span_km, bool literal = false);

/// Regenerators on a link: floor(D/R - 1), clamped at zero unless `literal`.
int regen_count(double distance_km, double regen_reach_km, bool literal = false);

struct Node {
  int id = 0;
  std::string name;
  double latitude = 0.0;
  double longitude = 0.0;
};

struct LinkSpec {
  int a = 0;  // node ids
  int b = 0;
  double distance_km = 0.0;
};

/// One direction of a physical link. Arc 2*k is a->b of link k, 2*k+1 is b->a.
struct Arc {
  int from = 0;  // internal node indices
  int to = 0;
  int link = 0;
};

struct CoreTopologyConfig {
  std::vector<Node> nodes;
  std::vector<LinkSpec> links;
  double span_km = 80.0;
  double regen_reach_km = 2000.0;
  int wavelengths_per_fiber = 32;
  double wavelength_rate_gbps = 40.0;
  bool literal_amplifier_counts = false;
  // Published data-center sites of the operator (node ids).
  std::vector<int> datacenter_sites;
};

/// Core IP-over-WDM graph. Immutable after construction; all-pairs min-hop
/// paths are computed eagerly so concurrent readers never mutate state.
class CoreTopology {
 public:
  explicit CoreTopology(CoreTopologyConfig config);

  const CoreTopologyConfig& config() const { return config_; }

  int num_nodes() const { return static_cast<int>(config_.nodes.size()); }
  int num_links() const { return static_cast<int>(config_.links.size()); }
  int num_arcs() const { return 2 * num_links(); }

  int node_id(int index) const { return config_.nodes[index].id; }
  int index_of(int node_id) const;
  bool has_node(int node_id) const;

  const Arc& arc(int a) const { return arcs_[a]; }
  double arc_distance_km(int a) const {
    return config_.links[arcs_[a].link].distance_km;
  }
  int arc_edfas(int a) const { return arc_edfas_[a]; }
  int arc_regens(int a) const { return arc_regens_[a]; }

  // Neighbor indices of `index`, ascending by node id.
  std::span<const int> neighbors(int index) const { return adjacency_[index]; }
  // Arc index from -> to, or -1 if not adjacent.
  int arc_between(int from, int to) const;

  /// Min-hop path from src to dst (internal indices) as arc indices. Among
  /// equal-hop paths the lexicographically smallest node-id sequence wins.
  /// Throws NoPath when disconnected.
  std::span<const int> path(int src, int dst) const;

  /// Hop count between two indices; throws NoPath when disconnected.
  int hops(int src, int dst) const;
  bool connected(int src, int dst) const { return hop_matrix_(src, dst) >= 0; }
  bool is_connected() const;

  const IndexMatrix& hop_matrix() const { return hop_matrix_; }

  // Internal indices of datacenter_sites.
  std::vector<int> datacenter_indices() const;

  double span_km() const { return config_.span_km; }
  double regen_reach_km() const { return config_.regen_reach_km; }
  int wavelengths_per_fiber() const { return config_.wavelengths_per_fiber; }
  double wavelength_rate_mbps() const {
    return config_.wavelength_rate_gbps * 1000.0;
  }

 private:
  void build();

  CoreTopologyConfig config_;
  std::unordered_map<int, int> index_;
  std::vector<Arc> arcs_;
  std::vector<int> arc_edfas_;
  std::vector<int> arc_regens_;
  std::vector<std::vector<int>> adjacency_;
  IndexMatrix arc_lookup_;
  IndexMatrix hop_matrix_;
  std::vector<std::vector<int>> paths_;  // row-major src * N + dst
};

/// Per-core-node access attachment. The same plan applies to every node.
struct AttachmentPlan {
  int pons_per_node = 2;
  int onus_per_pon = 512;
  int olts_per_pon = 1;
  double olt_capacity_gbps = 1280.0;

  void validate() const;
};

void to_json(nlohmann::json& j, const CoreTopologyConfig& c);
void from_json(const nlohmann::json& j, CoreTopologyConfig& c);
void to_json(nlohmann::json& j, const AttachmentPlan& a);
void from_json(const nlohmann::json& j, AttachmentPlan& a);

}  // namespace fogvm

#endif  // FOGVM_TOPOLOGY_HPP
