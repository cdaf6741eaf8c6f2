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

#ifndef FOGVM_ORACLE_HPP
#define FOGVM_ORACLE_HPP

#include "fogvm/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fogvm {

inline constexpr double kDefaultOracleBound = 1e7;
inline constexpr double kDefaultSubsetBound = 1e6;

/// Improvements smaller than this relative margin count as ties.
inline constexpr double kTieTolerance = 1e-9;

/// True when `candidate` beats `best` by more than the tie tolerance.
inline bool improves(double candidate, double best) {
  if (!std::isfinite(best)) return candidate < best;
  return candidate < best - kTieTolerance * std::max(1.0, std::abs(best));
}

struct OracleOptions {
  Restriction restriction = Restriction::None;
  double bound = kDefaultOracleBound;
  int workers = 1;
};

struct OracleResult {
  Placement placement;
  Evaluation evaluation;
  std::uint64_t evaluated = 0;
  double search_space = 0.0;
};

/// Number of whole-unit assignments under a restriction.
double search_space_size(const Instance& inst, Restriction r);

/// Exhaustive minimum over every whole-unit assignment. Among equal totals
/// the lexicographically smallest assignment wins (candidate order of
/// candidate_locations). Throws BoundExceeded above `options.bound`.
OracleResult solve_exact(const Instance& inst, const OracleOptions& options = {});

/// Node of `sites` nearest to `node` by (hops, node id).
int nearest_site(const CoreTopology& topo, std::span<const int> sites, int node);

/// Prices a set of cloud sites for one VM type.
using SubsetPricer = std::function<double(std::span<const int> sites)>;

struct SubsetResult {
  std::vector<int> sites;  // ascending internal indices
  double total_w = 0.0;
  std::uint64_t evaluated = 0;
  bool exhaustive = true;
};

/// Exact best k-subset of `candidates` (ascending) under `price`. The first
/// subset in lexicographic order wins ties. Throws BoundExceeded when
/// C(|candidates|, k) exceeds `bound`.
SubsetResult enumerate_k_cloud_subsets(const SubsetPricer& price,
                                       std::span<const int> candidates, int k,
                                       double bound = kDefaultSubsetBound);

/// Adds the single candidate that lowers the price most to `base`; lowest
/// node id on ties.
SubsetResult extend_subset(const SubsetPricer& price,
                           std::span<const int> candidates,
                           std::span<const int> base, const CoreTopology& topo);

/// Pricer that serves every demand unit of catalog VM `vm` from its nearest
/// site and evaluates the single-VM instance exactly.
SubsetPricer exact_subset_pricer(const Instance& inst, int vm);

/// Convenience form of the above: best k cloud sites for one VM.
SubsetResult enumerate_k_cloud_subsets(const Instance& inst, int vm, int k,
                                       Restriction r = Restriction::None,
                                       double bound = kDefaultSubsetBound);

double binomial(int n, int k);

}  // namespace fogvm

#endif  // FOGVM_ORACLE_HPP
