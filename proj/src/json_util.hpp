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

#ifndef FOGVM_SRC_JSON_UTIL_HPP
#define FOGVM_SRC_JSON_UTIL_HPP

#include "fogvm/types.hpp"

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <string>
#include <string_view>

namespace fogvm::detail {

// Rejects any key of `j` not listed in `allowed`.
inline void check_keys(const nlohmann::json& j,
                       std::initializer_list<std::string_view> allowed,
                       const std::string& where) {
  if (!j.is_object()) {
    throw InvalidScenario(where + ": expected an object");
  }
  for (const auto& item : j.items()) {
    bool ok = false;
    for (auto a : allowed) {
      if (item.key() == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw InvalidScenario(where + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
T required(const nlohmann::json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw InvalidScenario(where + ": missing required key '" + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidScenario(where + "." + key + ": " + e.what());
  }
}

template <typename T>
T optional(const nlohmann::json& j, const char* key, T fallback,
           const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidScenario(where + "." + key + ": " + e.what());
  }
}

}  // namespace fogvm::detail

#endif  // FOGVM_SRC_JSON_UTIL_HPP
