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

#include "fogvm/oracle.hpp"

#include "fogvm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace fogvm {

namespace {

std::string bound_message(const char* what, double size, double bound) {
  std::ostringstream os;
  os << what << " has " << size << " candidates, above the bound of " << bound;
  return os.str();
}

struct ChunkBest {
  double watts = std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
  std::uint64_t evaluated = 0;
};

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double search_space_size(const Instance& inst, Restriction r) {
  double size = 1.0;
  for (const auto& u : demand_units(inst)) {
    size *= static_cast<double>(candidate_locations(inst, r, u).size());
  }
  return size;
}

OracleResult solve_exact(const Instance& inst, const OracleOptions& options) {
  inst.check();
  const auto units = demand_units(inst);
  std::vector<std::vector<Location>> cands;
  cands.reserve(units.size());
  for (const auto& u : units) {
    cands.push_back(candidate_locations(inst, options.restriction, u));
  }
  const double space = search_space_size(inst, options.restriction);
  if (space > options.bound) {
    throw BoundExceeded(bound_message("exhaustive search", space, options.bound),
                        options.bound);
  }
  const auto total = static_cast<std::uint64_t>(space);
  const std::size_t m = units.size();

  auto decode = [&](std::uint64_t index, std::vector<int>& digits) {
    for (std::size_t i = m; i-- > 0;) {
      const auto radix = static_cast<std::uint64_t>(cands[i].size());
      digits[i] = static_cast<int>(index % radix);
      index /= radix;
    }
  };

  const int workers = std::max(1, options.workers);
  const int chunks =
      static_cast<int>(std::min<std::uint64_t>(total, 4ULL * workers));
  std::vector<ChunkBest> best(static_cast<std::size_t>(chunks));
  parallel_for(chunks, workers, [&](int c) {
    const std::uint64_t begin = total * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t end = total * static_cast<std::uint64_t>(c + 1) / chunks;
    AssignmentEvaluator eval(inst);
    std::vector<int> digits(m);
    std::vector<Location> where(m);
    decode(begin, digits);
    for (std::size_t i = 0; i < m; ++i) where[i] = cands[i][digits[i]];
    ChunkBest& b = best[static_cast<std::size_t>(c)];
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const double w = eval.total_watts(units, where);
      ++b.evaluated;
      if (improves(w, b.watts)) {
        b.watts = w;
        b.index = idx;
      }
      // Mixed-radix increment, last unit fastest.
      for (std::size_t i = m; i-- > 0;) {
        if (++digits[i] < static_cast<int>(cands[i].size())) {
          where[i] = cands[i][digits[i]];
          break;
        }
        digits[i] = 0;
        where[i] = cands[i][0];
      }
    }
  });

  ChunkBest winner;
  std::uint64_t evaluated = 0;
  for (const auto& b : best) {
    evaluated += b.evaluated;
    if (improves(b.watts, winner.watts)) winner = b;
  }

  std::vector<int> digits(m);
  decode(winner.index, digits);
  std::vector<Location> where(m);
  for (std::size_t i = 0; i < m; ++i) where[i] = cands[i][digits[i]];

  OracleResult out;
  out.placement = make_placement(servings_for(units, where), inst.vms);
  out.evaluation = evaluate(inst, out.placement);
  out.evaluated = evaluated;
  out.search_space = space;
  return out;
}

int nearest_site(const CoreTopology& topo, std::span<const int> sites, int node) {
  int best = -1;
  for (int s : sites) {
    if (best < 0) {
      best = s;
      continue;
    }
    const int h = topo.hops(s, node);
    const int hb = topo.hops(best, node);
    if (h < hb || (h == hb && topo.node_id(s) < topo.node_id(best))) best = s;
  }
  if (best < 0) throw InvalidParameter("nearest_site needs at least one site");
  return best;
}

SubsetResult enumerate_k_cloud_subsets(const SubsetPricer& price,
                                       std::span<const int> candidates, int k,
                                       double bound) {
  const int n = static_cast<int>(candidates.size());
  if (k < 1 || k > n) throw InvalidParameter("k must be in [1, candidates]");
  const double count = binomial(n, k);
  if (count > bound) {
    throw BoundExceeded(bound_message("k-subset search", count, bound), bound);
  }
  SubsetResult out;
  out.total_w = std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::vector<int> sites(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) {
      sites[static_cast<std::size_t>(i)] =
          candidates[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    }
    const double w = price(sites);
    ++out.evaluated;
    if (improves(w, out.total_w)) {
      out.total_w = w;
      out.sites = sites;
    }
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

SubsetResult extend_subset(const SubsetPricer& price,
                           std::span<const int> candidates,
                           std::span<const int> base, const CoreTopology& topo) {
  std::vector<int> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return topo.node_id(a) < topo.node_id(b);
  });
  SubsetResult out;
  out.exhaustive = false;
  out.total_w = std::numeric_limits<double>::infinity();
  for (int c : order) {
    if (std::find(base.begin(), base.end(), c) != base.end()) continue;
    std::vector<int> sites(base.begin(), base.end());
    sites.push_back(c);
    std::sort(sites.begin(), sites.end());
    const double w = price(sites);
    ++out.evaluated;
    if (improves(w, out.total_w)) {
      out.total_w = w;
      out.sites = std::move(sites);
    }
  }
  if (out.sites.empty()) throw InvalidParameter("no candidate left to add");
  return out;
}

SubsetPricer exact_subset_pricer(const Instance& inst, int vm) {
  struct State {
    Instance single;
    std::vector<DemandUnit> units;
    std::unique_ptr<AssignmentEvaluator> eval;
    std::vector<Location> where;
  };
  auto st = std::make_shared<State>();
  const int idx[] = {vm};
  st->single = sub_instance(inst, idx);
  st->units = demand_units(st->single);
  st->eval = std::make_unique<AssignmentEvaluator>(st->single);
  st->where.resize(st->units.size());
  return [st](std::span<const int> sites) {
    const CoreTopology& topo = st->single.topo();
    for (std::size_t i = 0; i < st->units.size(); ++i) {
      st->where[i] = Location::cloud(nearest_site(topo, sites, st->units[i].node));
    }
    return st->eval->total_watts(st->units, st->where);
  };
}

SubsetResult enumerate_k_cloud_subsets(const Instance& inst, int vm, int k,
                                       Restriction r, double bound) {
  const auto candidates = allowed_clouds(inst, r);
  return enumerate_k_cloud_subsets(exact_subset_pricer(inst, vm), candidates, k,
                                   bound);
}

}  // namespace fogvm
