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

#include "fogvm/catalog.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cmath>

namespace fogvm {

std::string to_string(WorkloadProfile p) {
  return p == WorkloadProfile::Constant ? "constant" : "linear";
}

WorkloadProfile parse_profile(const std::string& s) {
  if (s == "constant") return WorkloadProfile::Constant;
  if (s == "linear") return WorkloadProfile::LinearWithBaseline;
  throw InvalidScenario("unknown workload profile '" + s + "'");
}

double VmSpec::slope_pct_per_mbps() const {
  const double base = profile == WorkloadProfile::Constant ? peak_workload_pct
                                                            : baseline_pct;
  return (peak_workload_pct - base) / replica_traffic_mbps();
}

int VmSpec::instances_for(double served_mbps) const {
  if (served_mbps <= 0.0) return 0;
  return std::max(1, static_cast<int>(size_units(
                         served_mbps, replica_traffic_mbps(), Sizing::Integral)));
}

void VmSpec::validate() const {
  const std::string who = "vm " + std::to_string(id);
  if (!(peak_workload_pct > 0.0) || peak_workload_pct > 100.0) {
    throw InvalidScenario(who + ": peak workload must be in (0, 100]");
  }
  if (profile == WorkloadProfile::LinearWithBaseline &&
      (baseline_pct < 0.0 || baseline_pct > peak_workload_pct)) {
    throw InvalidScenario(who + ": baseline must be in [0, peak]");
  }
  if (!(max_users_per_replica > 0.0) || !(rate_mbps > 0.0)) {
    throw InvalidScenario(who + ": user cap and rate must be positive");
  }
  if (!(popularity_share > 0.0) || popularity_share > 1.0) {
    throw InvalidScenario(who + ": popularity share must be in (0, 1]");
  }
}

std::vector<VmSpec> expand_catalog(const PopularityModel& popularity,
                                   const VmTemplate& tmpl) {
  std::vector<VmSpec> vms;
  int id = 1;
  for (const auto& g : popularity.groups) {
    for (int k = 0; k < g.vm_count; ++k) {
      VmSpec v;
      v.id = id++;
      v.profile = tmpl.profile;
      v.peak_workload_pct = tmpl.peak_workload_pct;
      v.baseline_pct =
          tmpl.profile == WorkloadProfile::Constant ? 0.0 : tmpl.baseline_pct;
      v.rate_mbps = tmpl.rate_mbps;
      v.max_users_per_replica = tmpl.max_users_per_replica;
      v.popularity_share = g.share_pct / 100.0;
      vms.push_back(v);
    }
  }
  return vms;
}

double round_half_up(double x) { return std::floor(x + 0.5 + 1e-9); }

Matrix derive_users(const std::vector<VmSpec>& vms, double users_per_pon,
                    int num_nodes, int pons_per_node,
                    UserRoundingReport* report) {
  double total_share = 0.0;
  for (const auto& v : vms) total_share += v.popularity_share;
  if (total_share > 1.0 + 1e-9) {
    throw InvalidScenario("popularity shares sum to more than 100%");
  }
  const int units = num_nodes * pons_per_node;
  Matrix users(static_cast<Eigen::Index>(vms.size()), units);
  for (std::size_t v = 0; v < vms.size(); ++v) {
    users.row(static_cast<Eigen::Index>(v))
        .setConstant(round_half_up(users_per_pon * vms[v].popularity_share));
  }
  if (report != nullptr) {
    report->assigned_total = users.rowwise().sum();
    report->nominal_total.resize(users.rows());
    for (std::size_t v = 0; v < vms.size(); ++v) {
      report->nominal_total(static_cast<Eigen::Index>(v)) =
          users_per_pon * vms[v].popularity_share * units;
    }
  }
  return users;
}

double uniform_users_per_pon(double total_users, int num_pons) {
  return round_half_up(total_users / num_pons);
}

Matrix derive_traffic(const Matrix& users, const std::vector<VmSpec>& vms) {
  Vector rates(static_cast<Eigen::Index>(vms.size()));
  for (std::size_t v = 0; v < vms.size(); ++v) {
    rates(static_cast<Eigen::Index>(v)) = vms[v].rate_mbps;
  }
  return rates.asDiagonal() * users;
}

DemandMatrix make_demand(Matrix users, const std::vector<VmSpec>& vms,
                         int pons_per_node) {
  if (users.rows() != static_cast<Eigen::Index>(vms.size())) {
    throw InvalidScenario("demand rows do not match the VM catalog");
  }
  if ((users.array() < 0.0).any()) {
    throw InvalidScenario("negative user count in demand");
  }
  DemandMatrix d;
  d.traffic_mbps = derive_traffic(users, vms);
  d.users = std::move(users);
  d.pons_per_node = pons_per_node;
  return d;
}

double replica_workload(const VmSpec& spec, double served_mbps, int instances,
                        LinearMode mode) {
  if (served_mbps < 0.0) {
    throw InvalidParameter("served traffic must be nonnegative");
  }
  if (instances == 0) {
    if (served_mbps > 0.0) {
      throw Inconsistency("vm " + std::to_string(spec.id) +
                          ": traffic served by an absent replica");
    }
    return 0.0;
  }
  if (spec.profile == WorkloadProfile::Constant) {
    return spec.peak_workload_pct * instances;
  }
  // f = D / T_v. Written as an interpolation so f == 1 gives W_v exactly.
  const double f = served_mbps / spec.replica_traffic_mbps();
  if (mode == LinearMode::Literal) return spec.peak_workload_pct * f;
  return spec.peak_workload_pct * f + spec.baseline_pct * (instances - f);
}

double replica_workload(const VmSpec& spec, double served_mbps, bool present,
                        LinearMode mode) {
  const int instances =
      present ? std::max(1, spec.instances_for(served_mbps)) : 0;
  return replica_workload(spec, served_mbps, instances, mode);
}

void to_json(nlohmann::json& j, const VmSpec& v) {
  j = {{"id", v.id},
       {"profile", to_string(v.profile)},
       {"peak_workload_pct", v.peak_workload_pct},
       {"baseline_pct", v.baseline_pct},
       {"rate_mbps", v.rate_mbps},
       {"max_users_per_replica", v.max_users_per_replica},
       {"share_pct", std::round(v.popularity_share * 100.0 * 1e9) / 1e9}};
}

void from_json(const nlohmann::json& j, VmSpec& v) {
  using detail::optional;
  using detail::required;
  const std::string where = "catalog.vms[]";
  detail::check_keys(j,
                     {"id", "profile", "peak_workload_pct", "baseline_pct",
                      "rate_mbps", "max_users_per_replica", "share_pct"},
                     where);
  v = VmSpec{};
  v.id = required<int>(j, "id", where);
  v.profile = parse_profile(optional<std::string>(j, "profile", "linear", where));
  v.peak_workload_pct = required<double>(j, "peak_workload_pct", where);
  v.baseline_pct = optional<double>(j, "baseline_pct", 0.0, where);
  v.rate_mbps = required<double>(j, "rate_mbps", where);
  v.max_users_per_replica =
      optional<double>(j, "max_users_per_replica", 800.0, where);
  v.popularity_share = required<double>(j, "share_pct", where) / 100.0;
}

}  // namespace fogvm
