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

#ifndef FOGVM_REPORT_HPP
#define FOGVM_REPORT_HPP

#include "fogvm/evaluate.hpp"

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fogvm {

/// Shortest round-trip decimal form, '.' separator, locale independent.
std::string format_number(double x);

/// Minimal CSV writer: '\n' line endings, quoting only when needed.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header);

  CsvWriter& field(std::string_view s);
  CsvWriter& field(double x);
  CsvWriter& field(int x);
  void end_row();

 private:
  std::ostream& os_;
  bool first_ = true;
};

/// Splits one CSV line (no embedded newlines).
std::vector<std::string> split_csv_line(const std::string& line);

void write_breakdown_csv(std::ostream& os, const PowerBreakdown& b);
void write_servings_csv(std::ostream& os, const Placement& p, const Instance& inst);
void write_replicas_csv(std::ostream& os, const Placement& p, const Instance& inst);
void write_core_csv(std::ostream& os, const CoreState& core, const CoreTopology& topo);
void write_demand_csv(std::ostream& os, const Instance& inst);

/// Reads the servings and replicas CSVs written above.
Placement read_placement_csv(std::istream& servings, std::istream& replicas,
                             const Instance& inst);

}  // namespace fogvm

#endif  // FOGVM_REPORT_HPP
