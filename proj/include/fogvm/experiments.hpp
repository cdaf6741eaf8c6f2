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

#ifndef FOGVM_EXPERIMENTS_HPP
#define FOGVM_EXPERIMENTS_HPP

#include "fogvm/heuristic.hpp"
#include "fogvm/oracle.hpp"
#include "fogvm/scenario.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fogvm {

struct SolveResult {
  Solver solver = Solver::Heuristic;
  Restriction restriction = Restriction::None;
  Placement placement;
  Evaluation evaluation;
  double unpruned_total_w = 0.0;
  std::uint64_t evaluated = 0;  // oracle only
  std::optional<OfflineTable> table;
  double offline_seconds = 0.0;
  double online_seconds = 0.0;
};

/// Runs the configured solver under restriction `r`. A heuristic run reuses
/// `table` when given instead of recomputing the offline phase.
SolveResult solve(const Instance& inst, const RunConfig& run, Restriction r,
                  int workers, const OfflineTable* table = nullptr);

/// Percentage saving of `a` relative to `b`: 100 * (1 - a / b).
double saving_pct(double a, double b);

struct CompareOptions {
  std::vector<double> rates_mbps;     // empty: keep the scenario's
  std::vector<double> baselines_pct;  // empty: keep the scenario's
  std::vector<Restriction> restrictions = {Restriction::AttSites,
                                           Restriction::CloudsOnly,
                                           Restriction::CloudsAndMetro,
                                           Restriction::None};
  int workers = 1;
};

struct CompareRow {
  double rate_mbps = 0.0;
  double baseline_pct = 0.0;
  Restriction restriction = Restriction::None;
  PowerBreakdown breakdown;
  double unpruned_total_w = 0.0;
  double offline_seconds = 0.0;
  double online_seconds = 0.0;
};

/// Scenario copy with every VM's rate and (linear) baseline replaced.
Scenario with_rate_and_baseline(const Scenario& s, std::optional<double> rate,
                                std::optional<double> baseline);

std::vector<CompareRow> compare(const Scenario& base, const CompareOptions& options);

void write_compare_totals_csv(std::ostream& os, const std::vector<CompareRow>& rows);
/// Every ordered pair of approaches sharing (rate, baseline).
void write_compare_savings_csv(std::ostream& os, const std::vector<CompareRow>& rows);

struct SweepOptions {
  std::vector<WorkloadProfile> profiles = {WorkloadProfile::Constant,
                                           WorkloadProfile::LinearWithBaseline};
  std::vector<double> workloads_pct = {10.0, 50.0, 100.0};
  std::vector<double> rates_mbps = {0.1, 1.0, 10.0, 20.0, 50.0, 100.0, 200.0};
  std::vector<std::string> pue_profiles = {"best-practice", "2014"};
  int workers = 1;
};

struct SweepCell {
  WorkloadProfile profile = WorkloadProfile::Constant;
  double workload_pct = 0.0;
  double rate_mbps = 0.0;
  std::string pue_profile;
  std::array<int, 3> replicas{};          // by LocationKind
  std::array<double, 3> traffic_mbps{};   // by LocationKind
  LocationKind winner = LocationKind::Cloud;  // tier serving most traffic
  double total_w = 0.0;
};

/// One-VM study: every (profile, workload, rate, PUE) cell solved on the
/// scenario's topology. The scenario must hold exactly one VM.
std::vector<SweepCell> sweep_single_vm(const Scenario& base, const SweepOptions& options);

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);

}  // namespace fogvm

#endif  // FOGVM_EXPERIMENTS_HPP
