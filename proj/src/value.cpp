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

#include "m2fol/value.hpp"

#include <algorithm>
#include <utility>

namespace m2fol {

Value Value::element(std::string id) {
  Value v;
  v.kind = ValueKind::Element;
  v.sym = std::move(id);
  return v;
}

Value Value::nat(std::uint64_t n) {
  Value v;
  v.kind = ValueKind::Nat;
  v.num = n;
  return v;
}

Value Value::enum_const(std::string name) {
  Value v;
  v.kind = ValueKind::EnumConst;
  v.sym = std::move(name);
  return v;
}

Value Value::tuple(std::vector<Value> items) {
  Value v;
  v.kind = ValueKind::Tuple;
  v.items = std::move(items);
  return v;
}

Value Value::set(std::vector<Value> items) {
  Value v;
  v.kind = ValueKind::Set;
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  v.items = std::move(items);
  return v;
}

Value Value::list(std::vector<Value> items) {
  Value v;
  v.kind = ValueKind::List;
  v.items = std::move(items);
  return v;
}

int compare(const Value& a, const Value& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  switch (a.kind) {
    case ValueKind::Element:
    case ValueKind::EnumConst:
      return a.sym.compare(b.sym);
    case ValueKind::Nat:
      if (a.num != b.num) return a.num < b.num ? -1 : 1;
      return 0;
    default: {
      const std::size_t n = std::min(a.items.size(), b.items.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a.items[i], b.items[i]);
        if (c != 0) return c;
      }
      if (a.items.size() != b.items.size()) return a.items.size() < b.items.size() ? -1 : 1;
      return 0;
    }
  }
}

std::string Value::to_string() const {
  switch (kind) {
    case ValueKind::Element:
    case ValueKind::EnumConst:
      return sym;
    case ValueKind::Nat:
      return std::to_string(num);
    case ValueKind::Tuple:
    case ValueKind::Set:
    case ValueKind::List: {
      const char open = kind == ValueKind::Tuple ? '(' : kind == ValueKind::Set ? '{' : '[';
      const char close = kind == ValueKind::Tuple ? ')' : kind == ValueKind::Set ? '}' : ']';
      std::string s(1, open);
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) s += ", ";
        s += items[i].to_string();
      }
      s += close;
      return s;
    }
  }
  return "?";
}

}  // namespace m2fol
