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

#include "fogvm/heuristic.hpp"

#include "fogvm/parallel.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

namespace fogvm {

VmTypeKey type_key(const VmSpec& vm) {
  VmTypeKey k;
  k.profile = vm.profile;
  k.rate_mbps = vm.rate_mbps;
  k.peak_workload_pct = vm.peak_workload_pct;
  k.baseline_pct =
      vm.profile == WorkloadProfile::Constant ? 0.0 : vm.baseline_pct;
  k.share_pct = vm.popularity_share * 100.0;
  k.max_users_per_replica = vm.max_users_per_replica;
  return k;
}

std::string to_string(const VmTypeKey& key) {
  std::ostringstream os;
  os << to_string(key.profile) << "/W" << key.peak_workload_pct << "/M"
     << key.baseline_pct << "/" << key.rate_mbps << "Mbps/" << key.share_pct
     << "%/x" << key.max_users_per_replica;
  return os.str();
}

std::string to_string(RecipeKind k) {
  switch (k) {
    case RecipeKind::Clouds:
      return "clouds";
    case RecipeKind::AllMetroFogs:
      return "all_metro_fogs";
    case RecipeKind::AllAccessFogs:
      return "all_access_fogs";
  }
  return "?";
}

RecipeKind parse_recipe_kind(const std::string& s) {
  if (s == "clouds") return RecipeKind::Clouds;
  if (s == "all_metro_fogs") return RecipeKind::AllMetroFogs;
  if (s == "all_access_fogs") return RecipeKind::AllAccessFogs;
  throw InvalidScenario("unknown recipe '" + s + "'");
}

std::string to_string(OfflineCosting c) {
  switch (c) {
    case OfflineCosting::Auto:
      return "auto";
    case OfflineCosting::Amortized:
      return "amortized";
    case OfflineCosting::Standalone:
      return "standalone";
    case OfflineCosting::Group:
      return "group";
  }
  return "?";
}

std::string to_string(SubsetMode m) {
  switch (m) {
    case SubsetMode::Auto:
      return "auto";
    case SubsetMode::Exhaustive:
      return "exhaustive";
    case SubsetMode::Greedy:
      return "greedy";
  }
  return "?";
}

std::string to_string(OnlineOrder o) {
  return o == OnlineOrder::Popularity ? "popularity" : "catalog";
}

OfflineCosting parse_offline_costing(const std::string& s) {
  if (s == "auto") return OfflineCosting::Auto;
  if (s == "amortized") return OfflineCosting::Amortized;
  if (s == "standalone") return OfflineCosting::Standalone;
  if (s == "group") return OfflineCosting::Group;
  throw InvalidScenario("unknown offline costing '" + s + "'");
}

SubsetMode parse_subset_mode(const std::string& s) {
  if (s == "auto") return SubsetMode::Auto;
  if (s == "exhaustive") return SubsetMode::Exhaustive;
  if (s == "greedy") return SubsetMode::Greedy;
  throw InvalidScenario("unknown subset mode '" + s + "'");
}

OnlineOrder parse_online_order(const std::string& s) {
  if (s == "popularity") return OnlineOrder::Popularity;
  if (s == "catalog") return OnlineOrder::Catalog;
  throw InvalidScenario("unknown online order '" + s + "'");
}

const OfflineEntry* OfflineTable::find(const VmTypeKey& key) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), key,
      [](const OfflineEntry& e, const VmTypeKey& k) { return e.key < k; });
  if (it == entries.end() || it->key != key) return nullptr;
  return &*it;
}

std::vector<VmTypeKey> vm_types(const std::vector<VmSpec>& vms) {
  std::vector<VmTypeKey> keys;
  for (const auto& v : vms) keys.push_back(type_key(v));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

Instance canonical_instance(const Instance& inst, const VmTypeKey& key) {
  std::vector<int> members;
  for (std::size_t v = 0; v < inst.vms.size(); ++v) {
    if (type_key(inst.vms[v]) == key) members.push_back(static_cast<int>(v));
  }
  if (members.empty()) throw InvalidParameter("no VM of type " + to_string(key));
  const int first[] = {members.front()};
  Instance out = sub_instance(inst, first);
  Vector mean = Vector::Zero(inst.demand.num_units());
  for (int v : members) mean += inst.demand.users.row(v).transpose();
  mean /= static_cast<double>(members.size());
  out.demand.users.row(0) = mean.transpose();
  out.demand.traffic_mbps = derive_traffic(out.demand.users, out.vms);
  out.vms[0].id = 0;
  return out;
}

namespace {

bool allows(Restriction r, RecipeKind k) {
  switch (k) {
    case RecipeKind::Clouds:
      return true;
    case RecipeKind::AllMetroFogs:
      return r == Restriction::None || r == Restriction::CloudsAndMetro;
    case RecipeKind::AllAccessFogs:
      return r == Restriction::None;
  }
  return false;
}

// Fractional sizing is linear in every load, so the single-VM price of a
// cloud site set is a constant plus per-(s, d) core/metro costs and per-site
// compute costs. Coefficients are read off the general evaluator by probing.
class AmortizedPricer {
 public:
  explicit AmortizedPricer(const Instance& single) : inst_(single) {
    inst_.options.sizing = Sizing::Fractional;
    const int n = inst_.num_nodes();
    const auto& topo = inst_.topo();
    SiteLoads loads;
    loads.reset(n, inst_.pons());
    base_ = total_watts(inst_, loads);
    constexpr double kProbe = 1e6;
    per_demand_.resize(n, n);
    per_traffic_.resize(n);
    per_workload_.resize(n);
    for (int s = 0; s < n; ++s) {
      for (int d = 0; d < n; ++d) {
        loads.cloud_demand(s, d) = kProbe;
        per_demand_(s, d) = (total_watts(inst_, loads) - base_) / kProbe;
        loads.cloud_demand(s, d) = 0.0;
      }
      loads.cloud_traffic(s) = kProbe;
      per_traffic_(s) = (total_watts(inst_, loads) - base_) / kProbe;
      loads.cloud_traffic(s) = 0.0;
      loads.cloud_workload(s) = kProbe;
      per_workload_(s) = (total_watts(inst_, loads) - base_) / kProbe;
      loads.cloud_workload(s) = 0.0;
    }
    node_traffic_ = Vector::Zero(n);
    for (const auto& u : demand_units(inst_)) node_traffic_(u.node) += u.traffic_mbps;
    order_.resize(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      auto& o = order_[static_cast<std::size_t>(d)];
      o.resize(static_cast<std::size_t>(n));
      std::iota(o.begin(), o.end(), 0);
      std::sort(o.begin(), o.end(), [&](int a, int b) {
        const int ha = topo.hops(a, d);
        const int hb = topo.hops(b, d);
        return ha != hb ? ha < hb : topo.node_id(a) < topo.node_id(b);
      });
    }
    chosen_.assign(static_cast<std::size_t>(n), 0);
    served_ = Vector::Zero(n);
  }

  double operator()(std::span<const int> sites) {
    for (int s : sites) chosen_[static_cast<std::size_t>(s)] = 1;
    double w = base_;
    const int n = inst_.num_nodes();
    for (int d = 0; d < n; ++d) {
      const double t = node_traffic_(d);
      if (t <= 0.0) continue;
      int s = -1;
      for (int c : order_[static_cast<std::size_t>(d)]) {
        if (chosen_[static_cast<std::size_t>(c)]) {
          s = c;
          break;
        }
      }
      w += per_demand_(s, d) * t;
      served_(s) += t;
    }
    const VmSpec& spec = inst_.vms[0];
    for (int s : sites) {
      const double t = served_(s);
      if (t > 0.0) {
        w += per_traffic_(s) * t +
             per_workload_(s) * replica_workload(spec, t, spec.instances_for(t),
                                                 inst_.options.linear_mode);
      }
      served_(s) = 0.0;
      chosen_[static_cast<std::size_t>(s)] = 0;
    }
    return w;
  }

  const Instance& instance() const { return inst_; }

 private:
  Instance inst_;
  double base_ = 0.0;
  Matrix per_demand_;
  Vector per_traffic_;
  Vector per_workload_;
  Vector node_traffic_;
  std::vector<std::vector<int>> order_;
  std::vector<char> chosen_;
  Vector served_;
};

void choose_cheapest(OfflineEntry& e) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.candidates.size(); ++i) {
    if (improves(e.candidates[i].power_w, best)) {
      best = e.candidates[i].power_w;
      e.chosen = static_cast<int>(i);
    }
  }
}

double price_fog(const Instance& single, RecipeKind kind) {
  Recipe r;
  r.kind = kind;
  const auto servings = apply_recipe(single, 0, r);
  const auto units = demand_units(single);
  std::vector<Location> where;
  for (const auto& s : servings) where.push_back(s.location);
  AssignmentEvaluator eval(single);
  return eval.total_watts(units, where);
}

OfflineCosting resolve(OfflineCosting c, const Instance& inst) {
  if (c != OfflineCosting::Auto) return c;
  return inst.num_nodes() <= kAutoStandaloneNodes ? OfflineCosting::Standalone
                                                  : OfflineCosting::Group;
}

OfflineEntry offline_entry(const Instance& inst, const VmTypeKey& key,
                           const HeuristicOptions& options,
                           OfflineCosting costing) {
  OfflineEntry e;
  e.key = key;
  for (const auto& v : inst.vms) {
    if (type_key(v) == key) e.vm_ids.push_back(v.id);
  }
  const Instance single = canonical_instance(inst, key);

  SubsetPricer price;
  Instance fog_instance = single;
  if (costing == OfflineCosting::Amortized || costing == OfflineCosting::Group) {
    fog_instance.options.sizing = Sizing::Fractional;
    if (single.options.idle_optical_switches) {
      auto model = std::make_shared<AmortizedPricer>(single);
      price = [model](std::span<const int> sites) { return (*model)(sites); };
    } else {
      price = exact_subset_pricer(fog_instance, 0);
    }
  } else if (single.options.sizing == Sizing::Fractional &&
             single.options.idle_optical_switches) {
    auto model = std::make_shared<AmortizedPricer>(single);
    price = [model](std::span<const int> sites) { return (*model)(sites); };
  } else {
    price = exact_subset_pricer(single, 0);
  }

  const auto candidates = allowed_clouds(single, options.restriction);
  const int nc = static_cast<int>(candidates.size());
  std::vector<int> previous;
  for (int k = 1; k <= nc; ++k) {
    const double count = binomial(nc, k);
    bool exhaustive = false;
    switch (options.subset_mode) {
      case SubsetMode::Auto:
        exhaustive = count <= options.exhaustive_subset_limit;
        break;
      case SubsetMode::Exhaustive:
        exhaustive = true;
        break;
      case SubsetMode::Greedy:
        exhaustive = k == 1;
        break;
    }
    SubsetResult r =
        exhaustive ? enumerate_k_cloud_subsets(price, candidates, k,
                                               options.exhaustive_subset_limit)
                   : extend_subset(price, candidates, previous, single.topo());
    previous = r.sites;
    e.candidates.push_back({RecipeKind::Clouds, r.sites, exhaustive, r.total_w});
  }
  for (RecipeKind kind : {RecipeKind::AllMetroFogs, RecipeKind::AllAccessFogs}) {
    if (allows(options.restriction, kind)) {
      e.candidates.push_back({kind, {}, true, price_fog(fog_instance, kind)});
    }
  }
  choose_cheapest(e);
  return e;
}

// Exact network power of a whole table choice, one recipe per type.
class TableCost {
 public:
  TableCost(const Instance& inst, const OfflineTable& table) : inst_(inst) {
    members_.resize(table.entries.size());
    for (std::size_t v = 0; v < inst.vms.size(); ++v) {
      const OfflineEntry* e = table.find(type_key(inst.vms[v]));
      if (!e) throw InvalidParameter("table has no entry for vm " + std::to_string(v));
      members_[static_cast<std::size_t>(e - table.entries.data())].push_back(
          static_cast<int>(v));
    }
    servings_.resize(table.entries.size());
    for (std::size_t t = 0; t < table.entries.size(); ++t) {
      for (const auto& c : table.entries[t].candidates) {
        std::vector<ServingEntry> all;
        for (int m : members_[t]) {
          auto part = apply_recipe(inst, m, c);
          all.insert(all.end(), part.begin(), part.end());
        }
        servings_[t].push_back(std::move(all));
      }
    }
  }

  double operator()(const std::vector<int>& choice) const {
    return total(choice, std::vector<char>(choice.size(), 1));
  }

  // Only types with include[t] set are placed.
  double total(const std::vector<int>& choice, const std::vector<char>& include) const {
    std::vector<ServingEntry> all;
    for (std::size_t t = 0; t < choice.size(); ++t) {
      if (!include[t]) continue;
      const auto& part = servings_[t][static_cast<std::size_t>(choice[t])];
      all.insert(all.end(), part.begin(), part.end());
    }
    const Placement pl = make_placement(std::move(all), inst_.vms);
    return total_watts(inst_, site_loads(pl, inst_.vms, inst_.num_nodes(),
                                         inst_.pons(), inst_.options.linear_mode));
  }

 private:
  const Instance& inst_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<std::vector<ServingEntry>>> servings_;
};

constexpr int kMaxDescentPasses = 50;

// Improves one type at a time until no single change lowers the total.
double descend(const TableCost& cost, const OfflineTable& table,
               std::vector<int>& choice) {
  double total = cost(choice);
  for (int pass = 0; pass < kMaxDescentPasses; ++pass) {
    bool changed = false;
    for (std::size_t t = 0; t < choice.size(); ++t) {
      const int keep = choice[t];
      int best_c = keep;
      double best_w = total;
      for (int c = 0; c < static_cast<int>(table.entries[t].candidates.size()); ++c) {
        if (c == keep) continue;
        choice[t] = c;
        const double w = cost(choice);
        if (improves(w, best_w)) {
          best_w = w;
          best_c = c;
        }
      }
      choice[t] = best_c;
      if (best_c != keep) {
        total = best_w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return total;
}

// Chooses recipes jointly against the exact network total, then records
// each candidate's marginal power given every other type's choice.
void price_in_context(const Instance& inst, OfflineTable& table,
                      OnlineOrder order, int workers) {
  const std::size_t nt = table.entries.size();
  if (nt == 0) return;
  const TableCost cost(inst, table);
  std::vector<std::vector<int>> starts;

  std::vector<int> amortized(nt);
  for (std::size_t t = 0; t < nt; ++t) amortized[t] = table.entries[t].chosen;
  starts.push_back(amortized);

  // Types in online order, each taking the cheapest addition to the ones
  // before it.
  {
    std::vector<int> choice = amortized;
    std::vector<char> placed(nt, 0);
    for (int v : placement_order(inst.vms, order)) {
      const auto t = static_cast<std::size_t>(
          table.find(type_key(inst.vms[static_cast<std::size_t>(v)])) -
          table.entries.data());
      if (placed[t]) continue;
      std::vector<int> trial = choice;
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < static_cast<int>(table.entries[t].candidates.size()); ++c) {
        trial[t] = c;
        placed[t] = 1;
        const double w = cost.total(trial, placed);
        placed[t] = 0;
        if (improves(w, best)) {
          best = w;
          choice[t] = c;
        }
      }
      placed[t] = 1;
    }
    starts.push_back(choice);
  }

  for (RecipeKind kind : {RecipeKind::Clouds, RecipeKind::AllMetroFogs,
                          RecipeKind::AllAccessFogs}) {
    std::vector<int> choice(nt, -1);
    bool ok = true;
    for (std::size_t t = 0; t < nt && ok; ++t) {
      double best = std::numeric_limits<double>::infinity();
      const auto& cands = table.entries[t].candidates;
      for (int c = 0; c < static_cast<int>(cands.size()); ++c) {
        const auto& r = cands[static_cast<std::size_t>(c)];
        if (r.kind == kind && improves(r.power_w, best)) {
          best = r.power_w;
          choice[t] = c;
        }
      }
      ok = choice[t] >= 0;
    }
    if (ok) starts.push_back(choice);
  }

  std::vector<double> finals(starts.size());
  parallel_for(static_cast<int>(starts.size()), workers, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    finals[k] = descend(cost, table, starts[k]);
  });
  std::vector<int> best_choice;
  double best_total = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (improves(finals[i], best_total)) {
      best_total = finals[i];
      best_choice = starts[i];
    }
  }

  for (std::size_t t = 0; t < nt; ++t) {
    std::vector<char> others(nt, 1);
    others[t] = 0;
    const double without = cost.total(best_choice, others);
    std::vector<int> trial = best_choice;
    auto& e = table.entries[t];
    for (int c = 0; c < static_cast<int>(e.candidates.size()); ++c) {
      trial[t] = c;
      e.candidates[static_cast<std::size_t>(c)].power_w = cost(trial) - without;
    }
    e.chosen = best_choice[t];
  }
}

}  // namespace

std::vector<int> placement_order(const std::vector<VmSpec>& vms, OnlineOrder order) {
  std::vector<int> out(vms.size());
  std::iota(out.begin(), out.end(), 0);
  if (order == OnlineOrder::Popularity) {
    std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
      return vms[static_cast<std::size_t>(a)].popularity_share >
             vms[static_cast<std::size_t>(b)].popularity_share;
    });
  }
  return out;
}

OfflineTable offline_phase(const Instance& inst, const HeuristicOptions& options) {
  inst.check();
  OfflineTable table;
  table.restriction = options.restriction;
  table.costing = resolve(options.costing, inst);
  table.subset_mode = options.subset_mode;
  const auto keys = vm_types(inst.vms);
  table.entries.resize(keys.size());
  parallel_for(static_cast<int>(keys.size()), options.workers, [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    table.entries[idx] = offline_entry(inst, keys[idx], options, table.costing);
  });
  if (table.costing == OfflineCosting::Group) {
    price_in_context(inst, table, options.order, options.workers);
  }
  return table;
}

const OfflineEntry& classify(const OfflineTable& table, const VmSpec& vm,
                             bool nearest_key) {
  const VmTypeKey key = type_key(vm);
  if (const OfflineEntry* e = table.find(key)) return *e;
  if (!nearest_key) {
    throw UnclassifiedVm("vm " + std::to_string(vm.id) + " has unknown type " +
                         to_string(key));
  }
  std::vector<const OfflineEntry*> family;
  for (const auto& e : table.entries) {
    if (e.key.profile == key.profile) family.push_back(&e);
  }
  if (family.empty()) {
    throw UnclassifiedVm("no table entry with the " + to_string(key.profile) +
                         " profile for vm " + std::to_string(vm.id));
  }
  auto span_of = [&](auto field) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto* e : family) {
      lo = std::min(lo, field(e->key));
      hi = std::max(hi, field(e->key));
    }
    return hi > lo ? hi - lo : 1.0;
  };
  auto log_rate = [](const VmTypeKey& k) { return std::log(k.rate_mbps); };
  auto baseline = [](const VmTypeKey& k) { return k.baseline_pct; };
  auto log_share = [](const VmTypeKey& k) { return std::log(k.share_pct); };
  const double sr = span_of(log_rate);
  const double sb = span_of(baseline);
  const double ss = span_of(log_share);
  const OfflineEntry* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto* e : family) {  // ascending keys, so the first tie wins
    const double d = std::abs(log_rate(e->key) - log_rate(key)) / sr +
                     std::abs(baseline(e->key) - baseline(key)) / sb +
                     std::abs(log_share(e->key) - log_share(key)) / ss;
    if (d < best_d - 1e-12) {
      best_d = d;
      best = e;
    }
  }
  return *best;
}

std::vector<ServingEntry> apply_recipe(const Instance& inst, int vm,
                                       const Recipe& recipe) {
  std::vector<ServingEntry> out;
  const auto& d = inst.demand;
  for (int c = 0; c < d.num_units(); ++c) {
    const double t = d.traffic_mbps(vm, c);
    if (t <= 0.0) continue;
    const int node = d.node_of(c);
    const int pon = d.pon_of(c);
    Location l;
    switch (recipe.kind) {
      case RecipeKind::Clouds:
        l = Location::cloud(nearest_site(inst.topo(), recipe.sites, node));
        break;
      case RecipeKind::AllMetroFogs:
        l = Location::metro_fog(node);
        break;
      case RecipeKind::AllAccessFogs:
        l = Location::access_fog(node, pon);
        break;
    }
    out.push_back({vm, pon, node, l, t});
  }
  return out;
}

HeuristicResult online_phase(const Instance& inst, const OfflineTable& table,
                             const HeuristicOptions& options) {
  inst.check();
  HeuristicResult out;
  out.order = placement_order(inst.vms, options.order);

  std::vector<ServingEntry> servings;
  std::vector<std::pair<int, Location>> idle;  // recipe sites left without traffic
  const int n = inst.num_nodes();
  for (int v : out.order) {
    const VmSpec& spec = inst.vms[static_cast<std::size_t>(v)];
    const Recipe& recipe = classify(table, spec, options.nearest_key).recipe();
    auto mine = apply_recipe(inst, v, recipe);
    std::vector<Location> sites;
    switch (recipe.kind) {
      case RecipeKind::Clouds:
        for (int s : recipe.sites) sites.push_back(Location::cloud(s));
        break;
      case RecipeKind::AllMetroFogs:
        for (int s = 0; s < n; ++s) sites.push_back(Location::metro_fog(s));
        break;
      case RecipeKind::AllAccessFogs:
        for (int s = 0; s < n; ++s) {
          for (int p = 0; p < inst.pons(); ++p) {
            sites.push_back(Location::access_fog(s, p));
          }
        }
        break;
    }
    for (const auto& l : sites) {
      const bool used = std::any_of(mine.begin(), mine.end(), [&](const auto& e) {
        return e.location == l;
      });
      if (!used) idle.emplace_back(v, l);
    }
    servings.insert(servings.end(), mine.begin(), mine.end());
  }
  out.placement = make_placement(std::move(servings), inst.vms);
  out.evaluation = evaluate(inst, out.placement);

  SiteLoads loads = out.evaluation.loads;
  for (const auto& [v, l] : idle) {
    const double w = replica_workload(inst.vms[static_cast<std::size_t>(v)], 0.0,
                                      1, inst.options.linear_mode);
    switch (l.kind) {
      case LocationKind::Cloud:
        loads.cloud_workload(l.node) += w;
        break;
      case LocationKind::MetroFog:
        loads.metro_fog_workload(l.node) += w;
        break;
      case LocationKind::AccessFog:
        loads.access_fog_workload(l.pon, l.node) += w;
        break;
    }
  }
  out.unpruned_total_w = idle.empty() ? out.evaluation.breakdown.total_w
                                      : total_watts(inst, loads);
  return out;
}

OfflineTable restrict_table(const OfflineTable& table, const Instance& inst,
                            const HeuristicOptions& options) {
  const Restriction r = options.restriction;
  if (r == Restriction::AttSites && table.restriction != Restriction::AttSites) {
    throw InvalidParameter("att-sites tables must be computed, not derived");
  }
  OfflineTable out = table;
  out.restriction = r;
  for (auto& e : out.entries) {
    std::vector<Recipe> kept;
    for (const auto& c : e.candidates) {
      if (allows(r, c.kind)) kept.push_back(c);
    }
    e.candidates = std::move(kept);
    choose_cheapest(e);
  }
  if (out.costing == OfflineCosting::Group) {
    price_in_context(inst, out, options.order, options.workers);
  }
  return out;
}

nlohmann::json offline_table_to_json(const OfflineTable& t,
                                     const CoreTopology& topo) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : t.entries) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : e.candidates) {
      std::vector<int> ids;
      for (int s : c.sites) ids.push_back(topo.node_id(s));
      cands.push_back({{"recipe", to_string(c.kind)},
                       {"sites", ids},
                       {"search", c.exhaustive ? "exhaustive" : "greedy"},
                       {"power_w", c.power_w}});
    }
    entries.push_back(
        {{"key",
          {{"profile", to_string(e.key.profile)},
           {"rate_mbps", e.key.rate_mbps},
           {"peak_workload_pct", e.key.peak_workload_pct},
           {"baseline_pct", e.key.baseline_pct},
           {"share_pct", e.key.share_pct},
           {"max_users_per_replica", e.key.max_users_per_replica}}},
         {"vm_ids", e.vm_ids},
         {"chosen", e.chosen},
         {"candidates", cands}});
  }
  return {{"format", "fogvm-offline-table"},
          {"version", OfflineTable::kVersion},
          {"restriction", to_string(t.restriction)},
          {"costing", to_string(t.costing)},
          {"subset_mode", to_string(t.subset_mode)},
          {"entries", entries}};
}

OfflineTable offline_table_from_json(const nlohmann::json& j,
                                     const CoreTopology& topo) {
  using detail::required;
  const std::string where = "offline table";
  detail::check_keys(j, {"format", "version", "restriction", "costing",
                         "subset_mode", "entries"},
                     where);
  if (required<std::string>(j, "format", where) != "fogvm-offline-table") {
    throw InvalidScenario(where + ": unexpected format");
  }
  if (required<int>(j, "version", where) != OfflineTable::kVersion) {
    throw InvalidScenario(where + ": unsupported version");
  }
  OfflineTable t;
  t.restriction = parse_restriction(required<std::string>(j, "restriction", where));
  t.costing = parse_offline_costing(required<std::string>(j, "costing", where));
  t.subset_mode = parse_subset_mode(required<std::string>(j, "subset_mode", where));
  for (const auto& je : j.at("entries")) {
    detail::check_keys(je, {"key", "vm_ids", "chosen", "candidates"}, where);
    OfflineEntry e;
    const auto& k = je.at("key");
    detail::check_keys(k, {"profile", "rate_mbps", "peak_workload_pct",
                           "baseline_pct", "share_pct", "max_users_per_replica"},
                       where);
    e.key.profile = parse_profile(required<std::string>(k, "profile", where));
    e.key.rate_mbps = required<double>(k, "rate_mbps", where);
    e.key.peak_workload_pct = required<double>(k, "peak_workload_pct", where);
    e.key.baseline_pct = required<double>(k, "baseline_pct", where);
    e.key.share_pct = required<double>(k, "share_pct", where);
    e.key.max_users_per_replica = required<double>(k, "max_users_per_replica", where);
    e.vm_ids = required<std::vector<int>>(je, "vm_ids", where);
    e.chosen = required<int>(je, "chosen", where);
    for (const auto& jc : je.at("candidates")) {
      detail::check_keys(jc, {"recipe", "sites", "search", "power_w"}, where);
      Recipe r;
      r.kind = parse_recipe_kind(required<std::string>(jc, "recipe", where));
      for (int id : required<std::vector<int>>(jc, "sites", where)) {
        r.sites.push_back(topo.index_of(id));
      }
      std::sort(r.sites.begin(), r.sites.end());
      r.exhaustive = required<std::string>(jc, "search", where) == "exhaustive";
      r.power_w = required<double>(jc, "power_w", where);
      e.candidates.push_back(std::move(r));
    }
    if (e.chosen < 0 || e.chosen >= static_cast<int>(e.candidates.size())) {
      throw InvalidScenario(where + ": chosen recipe out of range");
    }
    t.entries.push_back(std::move(e));
  }
  std::sort(t.entries.begin(), t.entries.end(),
            [](const OfflineEntry& a, const OfflineEntry& b) { return a.key < b.key; });
  return t;
}

}  // namespace fogvm
