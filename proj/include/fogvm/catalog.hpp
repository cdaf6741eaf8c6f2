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

#ifndef FOGVM_CATALOG_HPP
#define FOGVM_CATALOG_HPP

#include "fogvm/types.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace fogvm {

enum class WorkloadProfile { Constant, LinearWithBaseline };

std::string to_string(WorkloadProfile p);
WorkloadProfile parse_profile(const std::string& s);

/// A VM service. Workloads are percentages of one server's CPU capacity.
struct VmSpec {
  int id = 0;
  WorkloadProfile profile = WorkloadProfile::LinearWithBaseline;
  double peak_workload_pct = 50.0;      // W_v, reached at x users
  double baseline_pct = 0.0;            // M, linear profile only
  double rate_mbps = 1.0;               // r_v
  double max_users_per_replica = 800.0; // x
  double popularity_share = 0.0;        // fraction of PON users, (0, 1]

  /// Traffic of one fully loaded replica, T_v = x * r_v.
  double replica_traffic_mbps() const { return max_users_per_replica * rate_mbps; }
  /// Workload per Mbps above the baseline, (W_v - M) / T_v.
  double slope_pct_per_mbps() const;
  /// Replica instances needed to carry `served_mbps` at one site.
  int instances_for(double served_mbps) const;

  void validate() const;
};

struct PopularityGroup {
  double share_pct = 0.0;
  int vm_count = 0;
};

struct PopularityModel {
  std::vector<PopularityGroup> groups;
  double users_per_pon = 13000.0;
};

/// Template applied to every VM generated from popularity groups.
struct VmTemplate {
  WorkloadProfile profile = WorkloadProfile::LinearWithBaseline;
  double peak_workload_pct = 50.0;
  double baseline_pct = 1.0;
  double rate_mbps = 25.0;
  double max_users_per_replica = 800.0;
};

/// Expands popularity groups into VMs, ids 1..V in group order.
std::vector<VmSpec> expand_catalog(const PopularityModel& popularity,
                                   const VmTemplate& tmpl);

/// Users and traffic per (VM, PON, node). Rows are VMs, columns are
/// node * pons_per_node + pon (internal node index, 0-based PON index).
struct DemandMatrix {
  Matrix users;
  Matrix traffic_mbps;
  int pons_per_node = 1;

  int num_vms() const { return static_cast<int>(users.rows()); }
  int num_units() const { return static_cast<int>(users.cols()); }
  int num_nodes() const { return num_units() / pons_per_node; }
  int column(int node, int pon) const { return node * pons_per_node + pon; }
  int node_of(int column) const { return column / pons_per_node; }
  int pon_of(int column) const { return column % pons_per_node; }
};

/// Rounding report of derive_users: nominal users (unrounded) minus assigned.
struct UserRoundingReport {
  Vector nominal_total;   // per VM
  Vector assigned_total;  // per VM
  Vector residual() const { return assigned_total - nominal_total; }
};

/// round-half-up(users_per_pon * share) users of every VM in every PON.
Matrix derive_users(const std::vector<VmSpec>& vms, double users_per_pon,
                    int num_nodes, int pons_per_node,
                    UserRoundingReport* report = nullptr);

/// Spreads `total_users` of one VM uniformly over all PONs, rounding half up.
double uniform_users_per_pon(double total_users, int num_pons);

/// D = U * r, elementwise per VM row.
Matrix derive_traffic(const Matrix& users, const std::vector<VmSpec>& vms);

DemandMatrix make_demand(Matrix users, const std::vector<VmSpec>& vms,
                         int pons_per_node);

/// Workload (CPU %) of the instances of one VM at one site serving
/// `served_mbps`. `instances` == 0 means the replica is absent.
double replica_workload(const VmSpec& spec, double served_mbps, int instances,
                        LinearMode mode);

/// As above with the minimal instance count for `served_mbps`.
double replica_workload(const VmSpec& spec, double served_mbps, bool present,
                        LinearMode mode);

double round_half_up(double x);

void to_json(nlohmann::json& j, const VmSpec& v);
void from_json(const nlohmann::json& j, VmSpec& v);

}  // namespace fogvm

#endif  // FOGVM_CATALOG_HPP
