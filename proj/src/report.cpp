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

#include "fogvm/report.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace fogvm {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf.data(), end);
}

CsvWriter::CsvWriter(std::ostream& os,
                     std::initializer_list<std::string_view> header)
    : os_(os) {
  for (auto h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(std::string_view s) {
  if (!first_) os_ << ',';
  first_ = false;
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    os_ << s;
  } else {
    os_ << '"';
    for (char c : s) {
      if (c == '"') os_ << '"';
      os_ << c;
    }
    os_ << '"';
  }
  return *this;
}

CsvWriter& CsvWriter::field(double x) { return field(format_number(x)); }

CsvWriter& CsvWriter::field(int x) { return field(std::to_string(x)); }

void CsvWriter::end_row() {
  os_ << '\n';
  first_ = true;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

void write_breakdown_csv(std::ostream& os, const PowerBreakdown& b) {
  CsvWriter w(os, {"segment", "device_class", "count", "unit_watts", "pue", "watts"});
  for (const auto& t : b.terms) {
    w.field(to_string(t.segment)).field(t.device_class).field(t.count);
    w.field(t.unit_watts).field(t.pue).field(t.watts);
    w.end_row();
  }
}

void write_servings_csv(std::ostream& os, const Placement& p, const Instance& inst) {
  const auto& topo = inst.topo();
  CsvWriter w(os, {"vm", "pon", "node", "location_kind", "location_node",
                   "location_pon", "traffic_mbps"});
  for (const auto& s : p.servings) {
    w.field(inst.vms.at(static_cast<std::size_t>(s.vm)).id).field(s.pon + 1);
    w.field(topo.node_id(s.node)).field(to_string(s.location.kind));
    w.field(topo.node_id(s.location.node));
    w.field(s.location.kind == LocationKind::AccessFog ? s.location.pon + 1 : 0);
    w.field(s.traffic_mbps);
    w.end_row();
  }
}

void write_replicas_csv(std::ostream& os, const Placement& p, const Instance& inst) {
  const auto& topo = inst.topo();
  const WorkloadLedger ledger = workloads(p, inst.vms, inst.num_nodes(),
                                          inst.pons(), inst.options.linear_mode);
  CsvWriter w(os, {"vm", "location_kind", "location_node", "location_pon",
                   "instances", "workload_pct"});
  for (std::size_t i = 0; i < p.replicas.size(); ++i) {
    const auto& r = p.replicas[i];
    w.field(inst.vms.at(static_cast<std::size_t>(r.vm)).id);
    w.field(to_string(r.location.kind)).field(topo.node_id(r.location.node));
    w.field(r.location.kind == LocationKind::AccessFog ? r.location.pon + 1 : 0);
    w.field(r.instances);
    w.field(ledger.replica_workload(static_cast<Eigen::Index>(i)));
    w.end_row();
  }
}

void write_core_csv(std::ostream& os, const CoreState& core, const CoreTopology& topo) {
  CsvWriter w(os, {"link", "traffic_mbps", "wavelengths", "fibers", "edfas", "regens"});
  for (int a = 0; a < topo.num_arcs(); ++a) {
    const Arc& arc = topo.arc(a);
    w.field(std::to_string(topo.node_id(arc.from)) + "-" +
            std::to_string(topo.node_id(arc.to)));
    w.field(core.arc_traffic(a)).field(core.arc_wavelengths(a)).field(core.arc_fibers(a));
    w.field(topo.arc_edfas(a)).field(topo.arc_regens(a));
    w.end_row();
  }
}

void write_demand_csv(std::ostream& os, const Instance& inst) {
  const auto& d = inst.demand;
  CsvWriter w(os, {"vm", "pon", "node", "users", "traffic_mbps"});
  for (int v = 0; v < d.num_vms(); ++v) {
    for (int c = 0; c < d.num_units(); ++c) {
      w.field(inst.vms[static_cast<std::size_t>(v)].id).field(d.pon_of(c) + 1);
      w.field(inst.topo().node_id(d.node_of(c)));
      w.field(d.users(v, c)).field(d.traffic_mbps(v, c));
      w.end_row();
    }
  }
}

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name, const std::string& file) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    throw InvalidScenario(file + ": missing column '" + name + "'");
  }
};

CsvTable read_table(std::istream& is, const std::string& file) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw InvalidScenario(file + ": empty file");
  t.header = split_csv_line(line);
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    t.rows.push_back(split_csv_line(line));
    if (t.rows.back().size() != t.header.size()) {
      throw InvalidScenario(file + ": row " + std::to_string(t.rows.size()) +
                            " has the wrong number of fields");
    }
  }
  return t;
}

double to_double(const std::string& s, const std::string& file) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidScenario(file + ": bad number '" + s + "'");
  }
  return x;
}

int to_int(const std::string& s, const std::string& file) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidScenario(file + ": bad integer '" + s + "'");
  }
  return x;
}

int vm_index(const Instance& inst, int id, const std::string& file) {
  for (std::size_t v = 0; v < inst.vms.size(); ++v) {
    if (inst.vms[v].id == id) return static_cast<int>(v);
  }
  throw InvalidScenario(file + ": unknown vm " + std::to_string(id));
}

int node_index(const Instance& inst, int id, const std::string& file) {
  if (!inst.topo().has_node(id)) {
    throw InvalidScenario(file + ": unknown node " + std::to_string(id));
  }
  return inst.topo().index_of(id);
}

Location read_location(const std::vector<std::string>& row, int kind, int node,
                       int pon, const Instance& inst, const std::string& file) {
  Location l;
  try {
    l.kind = parse_location_kind(row[static_cast<std::size_t>(kind)]);
  } catch (const Error&) {
    throw InvalidScenario(file + ": bad location kind '" +
                          row[static_cast<std::size_t>(kind)] + "'");
  }
  l.node = node_index(inst, to_int(row[static_cast<std::size_t>(node)], file), file);
  l.pon = l.kind == LocationKind::AccessFog
              ? to_int(row[static_cast<std::size_t>(pon)], file) - 1
              : 0;
  return l;
}

}  // namespace

Placement read_placement_csv(std::istream& servings, std::istream& replicas,
                             const Instance& inst) {
  Placement p;
  const std::string sf = "servings";
  const CsvTable st = read_table(servings, sf);
  const int c_vm = st.col("vm", sf), c_pon = st.col("pon", sf),
            c_node = st.col("node", sf), c_kind = st.col("location_kind", sf),
            c_lnode = st.col("location_node", sf),
            c_lpon = st.col("location_pon", sf),
            c_traffic = st.col("traffic_mbps", sf);
  for (const auto& row : st.rows) {
    auto at = [&](int c) { return row[static_cast<std::size_t>(c)]; };
    ServingEntry e;
    e.vm = vm_index(inst, to_int(at(c_vm), sf), sf);
    e.pon = to_int(at(c_pon), sf) - 1;
    e.node = node_index(inst, to_int(at(c_node), sf), sf);
    e.location = read_location(row, c_kind, c_lnode, c_lpon, inst, sf);
    e.traffic_mbps = to_double(at(c_traffic), sf);
    p.servings.push_back(e);
  }
  const std::string rf = "replicas";
  const CsvTable rt = read_table(replicas, rf);
  const int r_vm = rt.col("vm", rf), r_kind = rt.col("location_kind", rf),
            r_node = rt.col("location_node", rf),
            r_pon = rt.col("location_pon", rf),
            r_inst = rt.col("instances", rf);
  for (const auto& row : rt.rows) {
    ReplicaEntry r;
    r.vm = vm_index(inst, to_int(row[static_cast<std::size_t>(r_vm)], rf), rf);
    r.location = read_location(row, r_kind, r_node, r_pon, inst, rf);
    r.instances = to_int(row[static_cast<std::size_t>(r_inst)], rf);
    p.replicas.push_back(r);
  }
  return p;
}

}  // namespace fogvm
