// Copyright 2026 The m2fol Authors
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

#pragma once

#include <map>
#include <string>

#include "m2fol/structure.hpp"

namespace m2fol::testing {

inline Value rename_value(const Value& v, const std::map<std::string, std::string>& renames) {
  Value out = v;
  if (v.kind == ValueKind::Element) {
    auto it = renames.find(v.sym);
    if (it != renames.end()) out.sym = it->second;
    return out;
  }
  std::vector<Value> items;
  items.reserve(v.items.size());
  for (const auto& item : v.items) items.push_back(rename_value(item, renames));
  switch (v.kind) {
    case ValueKind::Tuple: return Value::tuple(std::move(items));
    case ValueKind::Set: return Value::set(std::move(items));
    case ValueKind::List: return Value::list(std::move(items));
    default: return out;
  }
}

// Bijective renaming of element identifiers; interpretations follow.
inline Structure rename_elements(const Structure& m, const std::map<std::string, std::string>& renames) {
  Structure out;
  out.name = m.name;
  out.language = m.language;
  for (const auto& [id, type] : m.elements) {
    auto it = renames.find(id);
    out.elements.emplace(it == renames.end() ? id : it->second, type);
  }
  for (const auto& [symbol, interp] : m.functions) {
    for (const auto& [args, value] : interp) {
      std::vector<Value> newArgs;
      for (const auto& a : args) newArgs.push_back(rename_value(a, renames));
      out.functions[symbol][newArgs] = rename_value(value, renames);
    }
  }
  for (const auto& [symbol, tuples] : m.relations) {
    for (const auto& tuple : tuples) {
      std::vector<Value> newTuple;
      for (const auto& v : tuple) newTuple.push_back(rename_value(v, renames));
      out.relations[symbol].insert(std::move(newTuple));
    }
  }
  return out;
}

}  // namespace m2fol::testing
