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

#include <cstdint>
#include <string>
#include <vector>

namespace m2fol {

enum class ValueKind {
  Element,    // an element identifier (object or relation instance)
  Nat,
  EnumConst,
  Tuple,
  Set,        // items kept sorted and unique
  List,
};

// A runtime value: an element of some universe or a data value.
// Values are ordered totally so that sets, witnesses and enumerations are
// deterministic.
class Value {
 public:
  ValueKind kind = ValueKind::Nat;
  std::string sym;           // Element id or EnumConst name
  std::uint64_t num = 0;     // Nat
  std::vector<Value> items;  // Tuple/List ordered, Set sorted unique

  static Value element(std::string id);
  static Value nat(std::uint64_t n);
  static Value enum_const(std::string name);
  static Value tuple(std::vector<Value> items);
  static Value set(std::vector<Value> items);
  static Value list(std::vector<Value> items);

  std::string to_string() const;
};

int compare(const Value& a, const Value& b);

inline bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
inline bool operator!=(const Value& a, const Value& b) { return compare(a, b) != 0; }
inline bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

}  // namespace m2fol
