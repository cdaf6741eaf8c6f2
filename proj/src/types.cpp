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

#include "fogvm/types.hpp"

namespace fogvm {

std::string to_string(Sizing s) {
  return s == Sizing::Integral ? "integral" : "fractional";
}

std::string to_string(LinearMode m) {
  return m == LinearMode::Default ? "default" : "literal";
}

std::string to_string(Grooming g) {
  return g == Grooming::Aggregate ? "aggregate" : "per-demand";
}

std::string to_string(LocationKind k) {
  switch (k) {
    case LocationKind::Cloud:
      return "cloud";
    case LocationKind::MetroFog:
      return "metro_fog";
    case LocationKind::AccessFog:
      return "access_fog";
  }
  return "?";
}

std::string to_string(Restriction r) {
  switch (r) {
    case Restriction::None:
      return "none";
    case Restriction::CloudsOnly:
      return "clouds-only";
    case Restriction::AttSites:
      return "att-sites";
    case Restriction::CloudsAndMetro:
      return "clouds+metro";
  }
  return "?";
}

Sizing parse_sizing(const std::string& s) {
  if (s == "integral") return Sizing::Integral;
  if (s == "fractional") return Sizing::Fractional;
  throw InvalidScenario("unknown sizing mode '" + s + "'");
}

LinearMode parse_linear_mode(const std::string& s) {
  if (s == "default") return LinearMode::Default;
  if (s == "literal") return LinearMode::Literal;
  throw InvalidScenario("unknown linear_mode '" + s + "'");
}

Grooming parse_grooming(const std::string& s) {
  if (s == "aggregate") return Grooming::Aggregate;
  if (s == "per-demand") return Grooming::PerDemand;
  throw InvalidScenario("unknown grooming mode '" + s + "'");
}

LocationKind parse_location_kind(const std::string& s) {
  if (s == "cloud") return LocationKind::Cloud;
  if (s == "metro_fog") return LocationKind::MetroFog;
  if (s == "access_fog") return LocationKind::AccessFog;
  throw InvalidScenario("unknown location kind '" + s + "'");
}

Restriction parse_restriction(const std::string& s) {
  if (s == "none") return Restriction::None;
  if (s == "clouds-only") return Restriction::CloudsOnly;
  if (s == "att-sites") return Restriction::AttSites;
  if (s == "clouds+metro") return Restriction::CloudsAndMetro;
  throw InvalidScenario("unknown restriction '" + s + "'");
}

std::string approach_label(Restriction r) {
  switch (r) {
    case Restriction::None:
      return "OC&F";
    case Restriction::CloudsOnly:
      return "OC";
    case Restriction::AttSites:
      return "ATT";
    case Restriction::CloudsAndMetro:
      return "OC&F1";
  }
  return "?";
}

}  // namespace fogvm
