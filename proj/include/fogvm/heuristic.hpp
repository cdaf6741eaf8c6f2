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

#ifndef FOGVM_HEURISTIC_HPP
#define FOGVM_HEURISTIC_HPP

#include "fogvm/evaluate.hpp"
#include "fogvm/oracle.hpp"

#include <nlohmann/json_fwd.hpp>

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace fogvm {

/// VM type: VMs sharing every field price identically per user.
struct VmTypeKey {
  WorkloadProfile profile = WorkloadProfile::LinearWithBaseline;
  double rate_mbps = 0.0;
  double peak_workload_pct = 0.0;
  double baseline_pct = 0.0;
  double share_pct = 0.0;
  double max_users_per_replica = 0.0;

  auto operator<=>(const VmTypeKey&) const = default;
};

VmTypeKey type_key(const VmSpec& vm);
std::string to_string(const VmTypeKey& key);

enum class RecipeKind { Clouds, AllMetroFogs, AllAccessFogs };

std::string to_string(RecipeKind k);
RecipeKind parse_recipe_kind(const std::string& s);

struct Recipe {
  RecipeKind kind = RecipeKind::Clouds;
  std::vector<int> sites;  // internal node indices, ascending; clouds only
  bool exhaustive = true;  // how the site set was found
  double power_w = 0.0;    // recorded offline price of the type
};

struct OfflineEntry {
  VmTypeKey key;
  std::vector<int> vm_ids;
  std::vector<Recipe> candidates;  // clouds k = 1..N, then fog recipes
  int chosen = 0;                  // index into candidates

  const Recipe& recipe() const { return candidates.at(static_cast<std::size_t>(chosen)); }
};

/// How recipes are priced offline.
///   Amortized: fractional equipment, i.e. the type's share of equipment that
///     is shared with many other VMs. Linear, so k-subset search is fast.
///   Standalone: the type alone on the network with the scenario's sizing.
///   Group: amortized search for the best site set of each k, then every
///     finalist re-priced exactly as the rise in network power when all VMs
///     of the type join the types placed before it in online order.
///   Auto: standalone up to kAutoStandaloneNodes core nodes, else group.
enum class OfflineCosting { Auto, Amortized, Standalone, Group };
enum class SubsetMode { Auto, Exhaustive, Greedy };
enum class OnlineOrder { Popularity, Catalog };

inline constexpr int kAutoStandaloneNodes = 8;

std::string to_string(OfflineCosting c);
std::string to_string(SubsetMode m);
std::string to_string(OnlineOrder o);
OfflineCosting parse_offline_costing(const std::string& s);
SubsetMode parse_subset_mode(const std::string& s);
OnlineOrder parse_online_order(const std::string& s);

struct HeuristicOptions {
  Restriction restriction = Restriction::None;
  OfflineCosting costing = OfflineCosting::Auto;
  SubsetMode subset_mode = SubsetMode::Auto;
  double exhaustive_subset_limit = kDefaultSubsetBound;
  OnlineOrder order = OnlineOrder::Popularity;
  bool nearest_key = true;
  int workers = 1;
};

struct OfflineTable {
  static constexpr int kVersion = 1;
  Restriction restriction = Restriction::None;
  OfflineCosting costing = OfflineCosting::Amortized;  // resolved, never Auto
  SubsetMode subset_mode = SubsetMode::Auto;
  std::vector<OfflineEntry> entries;  // sorted by key

  const OfflineEntry* find(const VmTypeKey& key) const;
};

/// Distinct VM types of a catalog, sorted.
std::vector<VmTypeKey> vm_types(const std::vector<VmSpec>& vms);

/// One VM carrying the mean demand of every catalog VM of type `key`.
Instance canonical_instance(const Instance& inst, const VmTypeKey& key);

OfflineTable offline_phase(const Instance& inst, const HeuristicOptions& options);

/// Table entry for `vm`: exact key match, else (when allowed) the nearest
/// key of the same profile by normalized L1 distance over log rate,
/// baseline and log share; the smallest key wins ties.
const OfflineEntry& classify(const OfflineTable& table, const VmSpec& vm,
                             bool nearest_key = true);

struct HeuristicResult {
  Placement placement;
  Evaluation evaluation;
  double unpruned_total_w = 0.0;  // with zero-traffic recipe replicas kept
  std::vector<int> order;         // catalog indices in placement order
};

HeuristicResult online_phase(const Instance& inst, const OfflineTable& table,
                             const HeuristicOptions& options);

/// Servings of catalog VM `vm` under `recipe`.
std::vector<ServingEntry> apply_recipe(const Instance& inst, int vm,
                                       const Recipe& recipe);

/// Catalog indices in online placement order.
std::vector<int> placement_order(const std::vector<VmSpec>& vms, OnlineOrder order);

/// Derives a table for `options.restriction` by dropping recipes it does not
/// allow and re-choosing; group-costed tables are re-priced on `inst`. Cloud
/// site sets must already be admissible.
OfflineTable restrict_table(const OfflineTable& table, const Instance& inst,
                            const HeuristicOptions& options);

/// Needs the topology to map node ids back to indices.
OfflineTable offline_table_from_json(const nlohmann::json& j,
                                     const CoreTopology& topo);
nlohmann::json offline_table_to_json(const OfflineTable& t,
                                     const CoreTopology& topo);

}  // namespace fogvm

#endif  // FOGVM_HEURISTIC_HPP
