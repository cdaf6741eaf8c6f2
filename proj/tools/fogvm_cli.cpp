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

// fogvm: energy-minimal VM placement over a cloud/fog network.

#include "fogvm/experiments.hpp"
#include "fogvm/parallel.hpp"
#include "fogvm/report.hpp"
#include "fogvm/scenario.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace fogvm;

namespace {

enum Exit { kOk = 0, kViolations = 1, kBadScenario = 2, kTooLarge = 3, kFailure = 4 };

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  return os;
}

void write_summary(std::ostream& os, const Scenario& s, const SolveResult& r) {
  const auto& b = r.evaluation.breakdown;
  CsvWriter w(os, {"scenario", "solver", "approach", "restriction", "pue_profile",
                   "core_w", "metro_w", "pon_w", "cloud_w", "metro_fog_w",
                   "access_fog_w", "total_w", "unpruned_total_w", "evaluated"});
  w.field(s.name).field(to_string(r.solver)).field(approach_label(r.restriction));
  w.field(to_string(r.restriction)).field(s.run.pue_profile);
  w.field(b.core_w).field(b.metro_w).field(b.pon_w).field(b.cloud_w);
  w.field(b.metro_fog_w).field(b.access_fog_w).field(b.total_w);
  w.field(r.unpruned_total_w).field(static_cast<double>(r.evaluated));
  w.end_row();
}

struct Common {
  std::string scenario;
  std::optional<std::string> solver;
  std::optional<std::string> restriction;
  std::optional<std::string> pue;
  std::optional<std::uint64_t> seed;
};

Scenario load_with_overrides(const Common& c) {
  Scenario s = load_scenario(c.scenario);
  if (c.solver) s.run.solver = parse_solver(*c.solver);
  if (c.restriction) s.run.heuristic.restriction = parse_restriction(*c.restriction);
  if (c.pue) {
    s.run.pue_profile = *c.pue;
    pue_profile(s, *c.pue);
  }
  if (c.seed) s.run.seed = *c.seed;
  return s;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("scenario", c.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
  app->add_option("--solver", c.solver, "oracle or heuristic");
  app->add_option("--restriction", c.restriction, "none, clouds-only, att-sites, clouds+metro");
  app->add_option("--pue", c.pue, "PUE profile name");
}

int cmd_run(const Common& c, const fs::path& out, const std::optional<std::string>& table_in) {
  const Scenario s = load_with_overrides(c);
  const Instance inst = build_instance(s);
  std::optional<OfflineTable> table;
  if (table_in) {
    std::ifstream is(*table_in);
    if (!is) throw InvalidScenario("cannot open " + *table_in);
    table = offline_table_from_json(nlohmann::json::parse(is), inst.topo());
  }
  const SolveResult r = solve(inst, s.run, s.restriction(), worker_count(),
                              table ? &*table : nullptr);
  {
    auto os = open_out(out / "breakdown.csv");
    write_breakdown_csv(os, r.evaluation.breakdown);
  }
  {
    auto os = open_out(out / "servings.csv");
    write_servings_csv(os, r.placement, inst);
  }
  {
    auto os = open_out(out / "replicas.csv");
    write_replicas_csv(os, r.placement, inst);
  }
  {
    auto os = open_out(out / "core.csv");
    write_core_csv(os, r.evaluation.core, inst.topo());
  }
  {
    auto os = open_out(out / "demand.csv");
    write_demand_csv(os, inst);
  }
  {
    auto os = open_out(out / "summary.csv");
    write_summary(os, s, r);
  }
  if (r.table && !table_in) {
    auto os = open_out(out / "offline_table.json");
    os << offline_table_to_json(*r.table, inst.topo()).dump(2) << '\n';
  }
  std::cout << approach_label(r.restriction) << " total " << format_number(r.evaluation.breakdown.total_w)
            << " W (" << to_string(r.solver) << ")\n";
  std::cerr << "offline " << r.offline_seconds << " s, online " << r.online_seconds << " s\n";
  return kOk;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(',', pos);
    const std::string item = s.substr(pos, next - pos);
    if (!item.empty()) out.push_back(std::stod(item));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

int cmd_compare(const Common& c, const fs::path& out, const std::string& rates,
                const std::string& baselines, const std::string& approaches) {
  const Scenario s = load_with_overrides(c);
  CompareOptions o;
  o.rates_mbps = parse_list(rates);
  o.baselines_pct = parse_list(baselines);
  o.workers = worker_count();
  if (!approaches.empty()) {
    o.restrictions.clear();
    std::size_t pos = 0;
    while (pos <= approaches.size()) {
      const auto next = approaches.find(',', pos);
      o.restrictions.push_back(parse_restriction(approaches.substr(pos, next - pos)));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  const auto rows = compare(s, o);
  {
    auto os = open_out(out / "compare_totals.csv");
    write_compare_totals_csv(os, rows);
  }
  {
    auto os = open_out(out / "compare_savings.csv");
    write_compare_savings_csv(os, rows);
  }
  for (const auto& r : rows) {
    std::cerr << approach_label(r.restriction) << " rate " << r.rate_mbps << " baseline "
              << r.baseline_pct << ": " << r.breakdown.total_w << " W (offline "
              << r.offline_seconds << " s, online " << r.online_seconds << " s)\n";
  }
  std::cout << "wrote " << rows.size() << " rows to " << out.string() << "\n";
  return kOk;
}

int cmd_sweep(const Common& c, const fs::path& out) {
  const Scenario s = load_with_overrides(c);
  SweepOptions o;
  o.workers = worker_count();
  const auto cells = sweep_single_vm(s, o);
  auto os = open_out(out);
  write_sweep_csv(os, cells);
  std::cout << "wrote " << cells.size() << " cells to " << out.string() << "\n";
  return kOk;
}

int cmd_validate(const Common& c, const std::string& servings, const std::string& replicas) {
  const Scenario s = load_with_overrides(c);
  const Instance inst = build_instance(s);
  std::ifstream si(servings);
  std::ifstream ri(replicas);
  if (!si || !ri) throw InvalidScenario("cannot open placement CSVs");
  const Placement p = read_placement_csv(si, ri, inst);
  const auto violations = validate(p, inst.demand, inst.vms, inst.topo());
  for (const auto& v : violations) std::cout << v.constraint << ": " << v.detail << "\n";
  if (!violations.empty()) {
    std::cout << violations.size() << " violation(s)\n";
    return kViolations;
  }
  const auto b = total_power(inst, p);
  std::cout << "ok, total " << format_number(b.total_w) << " W\n";
  return kOk;
}

int cmd_generate(std::uint64_t seed, const std::string& out) {
  const Scenario s = random_desk_scenario(seed);
  const std::string text = scenario_to_json(s).dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    auto os = open_out(out);
    os << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-minimal VM placement over cloud and fog tiers"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Seed for randomized scenario generation");

  Common run_c, cmp_c, sweep_c, val_c;
  std::string run_out = "out";
  std::optional<std::string> table_in;
  auto* run = app.add_subcommand("run", "Solve one scenario and write reports");
  add_common(run, run_c);
  run->add_option("-o,--out", run_out, "Output directory");
  run->add_option("--table", table_in, "Reuse a saved offline table");

  std::string cmp_out = "out", rates, baselines, approaches;
  auto* cmp = app.add_subcommand("compare", "Compare restrictions over a rate/baseline grid");
  add_common(cmp, cmp_c);
  cmp->add_option("-o,--out", cmp_out, "Output directory");
  cmp->add_option("--rates", rates, "Comma-separated data rates, Mbps");
  cmp->add_option("--baselines", baselines, "Comma-separated baselines, %");
  cmp->add_option("--restrictions", approaches, "Comma-separated restrictions");

  std::string sweep_out = "sweep.csv";
  auto* sweep = app.add_subcommand("sweep-single-vm", "Single-VM tier selection grid");
  add_common(sweep, sweep_c);
  sweep->add_option("-o,--out", sweep_out, "Output CSV");

  std::string servings, replicas;
  auto* val = app.add_subcommand("validate", "Check a placement against a scenario");
  add_common(val, val_c);
  val->add_option("--servings", servings, "Servings CSV")->required();
  val->add_option("--replicas", replicas, "Replicas CSV")->required();

  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write a random desk-scale scenario");
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    for (Common* c : {&run_c, &cmp_c, &sweep_c, &val_c}) c->seed = seed;
    if (*run) return cmd_run(run_c, run_out, table_in);
    if (*cmp) return cmd_compare(cmp_c, cmp_out, rates, baselines, approaches);
    if (*sweep) return cmd_sweep(sweep_c, sweep_out);
    if (*val) return cmd_validate(val_c, servings, replicas);
    if (*gen) return cmd_generate(seed.value_or(1), gen_out);
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTooLarge;
  } catch (const InvalidScenario& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadScenario;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadScenario;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
