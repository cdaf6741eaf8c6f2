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

#include "fogvm/experiments.hpp"

#include "fogvm/parallel.hpp"
#include "fogvm/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>

namespace fogvm {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SolveResult solve(const Instance& inst, const RunConfig& run, Restriction r,
                  int workers, const OfflineTable* table) {
  SolveResult out;
  out.solver = run.solver;
  out.restriction = r;
  if (run.solver == Solver::Oracle) {
    OracleOptions o;
    o.restriction = r;
    o.bound = run.oracle_bound;
    o.workers = workers;
    const auto t0 = std::chrono::steady_clock::now();
    OracleResult res = solve_exact(inst, o);
    out.online_seconds = seconds_since(t0);
    out.placement = std::move(res.placement);
    out.evaluation = std::move(res.evaluation);
    out.unpruned_total_w = out.evaluation.breakdown.total_w;
    out.evaluated = res.evaluated;
    return out;
  }
  HeuristicOptions h = run.heuristic;
  h.restriction = r;
  h.workers = workers;
  auto t0 = std::chrono::steady_clock::now();
  if (table != nullptr) {
    out.table = *table;
  } else {
    out.table = offline_phase(inst, h);
    out.offline_seconds = seconds_since(t0);
  }
  t0 = std::chrono::steady_clock::now();
  HeuristicResult res = online_phase(inst, *out.table, h);
  out.online_seconds = seconds_since(t0);
  out.placement = std::move(res.placement);
  out.evaluation = std::move(res.evaluation);
  out.unpruned_total_w = res.unpruned_total_w;
  return out;
}

double saving_pct(double a, double b) { return 100.0 * (1.0 - a / b); }

Scenario with_rate_and_baseline(const Scenario& s, std::optional<double> rate,
                                std::optional<double> baseline) {
  Scenario out = s;
  if (out.vm_template) {
    if (rate) out.vm_template->rate_mbps = *rate;
    if (baseline) out.vm_template->baseline_pct = *baseline;
    out.expand();
  } else {
    for (auto& v : out.vms) {
      if (rate) v.rate_mbps = *rate;
      if (baseline && v.profile == WorkloadProfile::LinearWithBaseline) {
        v.baseline_pct = *baseline;
      }
    }
  }
  return out;
}

std::vector<CompareRow> compare(const Scenario& base, const CompareOptions& options) {
  std::vector<std::optional<double>> rates(options.rates_mbps.begin(),
                                           options.rates_mbps.end());
  std::vector<std::optional<double>> baselines(options.baselines_pct.begin(),
                                               options.baselines_pct.end());
  if (rates.empty()) rates.push_back(std::nullopt);
  if (baselines.empty()) baselines.push_back(std::nullopt);

  std::vector<CompareRow> rows;
  for (const auto& rate : rates) {
    for (const auto& baseline : baselines) {
      const Scenario s = with_rate_and_baseline(base, rate, baseline);
      const Instance inst = build_instance(s);
      const VmSpec& first = s.vms.front();
      const bool heuristic = s.run.solver == Solver::Heuristic;
      // Tables for clouds-only and clouds+metro derive from the
      // unrestricted one; their cloud candidates are identical.
      std::optional<OfflineTable> full;
      for (Restriction r : options.restrictions) {
        SolveResult res;
        if (heuristic && (r == Restriction::CloudsOnly ||
                          r == Restriction::CloudsAndMetro || r == Restriction::None)) {
          double offline = 0.0;
          if (!full) {
            const auto t0 = std::chrono::steady_clock::now();
            HeuristicOptions h = s.run.heuristic;
            h.restriction = Restriction::None;
            h.workers = options.workers;
            full = offline_phase(inst, h);
            offline = seconds_since(t0);
          }
          HeuristicOptions h = s.run.heuristic;
          h.restriction = r;
          const OfflineTable table = restrict_table(*full, inst, h);
          res = solve(inst, s.run, r, options.workers, &table);
          res.offline_seconds = offline;
        } else {
          res = solve(inst, s.run, r, options.workers);
        }
        CompareRow row;
        row.rate_mbps = first.rate_mbps;
        row.baseline_pct = first.baseline_pct;
        row.restriction = r;
        row.breakdown = res.evaluation.breakdown;
        row.unpruned_total_w = res.unpruned_total_w;
        row.offline_seconds = res.offline_seconds;
        row.online_seconds = res.online_seconds;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_compare_totals_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  CsvWriter w(os, {"approach", "restriction", "rate_mbps", "baseline_pct",
                   "core_w", "metro_w", "pon_w", "cloud_w", "metro_fog_w",
                   "access_fog_w", "total_w", "unpruned_total_w"});
  for (const auto& r : rows) {
    const auto& b = r.breakdown;
    w.field(approach_label(r.restriction)).field(to_string(r.restriction));
    w.field(r.rate_mbps).field(r.baseline_pct);
    w.field(b.core_w).field(b.metro_w).field(b.pon_w).field(b.cloud_w);
    w.field(b.metro_fog_w).field(b.access_fog_w).field(b.total_w);
    w.field(r.unpruned_total_w);
    w.end_row();
  }
}

void write_compare_savings_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  CsvWriter w(os, {"approach", "reference", "rate_mbps", "baseline_pct",
                   "total_w", "reference_total_w", "saving_pct"});
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      if (&a == &b || a.rate_mbps != b.rate_mbps ||
          a.baseline_pct != b.baseline_pct) {
        continue;
      }
      w.field(approach_label(a.restriction)).field(approach_label(b.restriction));
      w.field(a.rate_mbps).field(a.baseline_pct);
      w.field(a.breakdown.total_w).field(b.breakdown.total_w);
      w.field(saving_pct(a.breakdown.total_w, b.breakdown.total_w));
      w.end_row();
    }
  }
}

std::vector<SweepCell> sweep_single_vm(const Scenario& base, const SweepOptions& options) {
  if (base.vms.size() != 1) {
    throw InvalidScenario("single-VM sweep needs a scenario with exactly one VM");
  }
  std::vector<SweepCell> cells;
  for (auto profile : options.profiles) {
    for (double wl : options.workloads_pct) {
      for (double rate : options.rates_mbps) {
        for (const auto& pue : options.pue_profiles) {
          SweepCell c;
          c.profile = profile;
          c.workload_pct = wl;
          c.rate_mbps = rate;
          c.pue_profile = pue;
          cells.push_back(c);
        }
      }
    }
  }
  parallel_for(static_cast<int>(cells.size()), options.workers, [&](int i) {
    SweepCell& c = cells[static_cast<std::size_t>(i)];
    Scenario s = base;
    VmSpec& v = s.vms.front();
    v.profile = c.profile;
    v.peak_workload_pct = c.workload_pct;
    v.rate_mbps = c.rate_mbps;
    if (c.profile == WorkloadProfile::Constant) v.baseline_pct = 0.0;
    v.baseline_pct = std::min(v.baseline_pct, v.peak_workload_pct);
    s.vm_template.reset();
    s.run.pue_profile = c.pue_profile;
    const Instance inst = build_instance(s);
    const SolveResult res = solve(inst, s.run, s.restriction(), 1);
    for (const auto& r : res.placement.replicas) {
      ++c.replicas[static_cast<std::size_t>(r.location.kind)];
    }
    for (const auto& e : res.placement.servings) {
      c.traffic_mbps[static_cast<std::size_t>(e.location.kind)] += e.traffic_mbps;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (c.traffic_mbps[k] > c.traffic_mbps[best]) best = k;
    }
    c.winner = static_cast<LocationKind>(best);
    c.total_w = res.evaluation.breakdown.total_w;
  });
  return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  CsvWriter w(os, {"profile", "workload_pct", "rate_mbps", "pue_profile",
                   "winning_tier", "cloud_replicas", "metro_fog_replicas",
                   "access_fog_replicas", "cloud_traffic_mbps",
                   "metro_fog_traffic_mbps", "access_fog_traffic_mbps", "total_w"});
  for (const auto& c : cells) {
    w.field(to_string(c.profile)).field(c.workload_pct).field(c.rate_mbps);
    w.field(c.pue_profile).field(to_string(c.winner));
    for (int r : c.replicas) w.field(r);
    for (double t : c.traffic_mbps) w.field(t);
    w.field(c.total_w);
    w.end_row();
  }
}

}  // namespace fogvm
