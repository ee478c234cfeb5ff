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

#include "m2fol/domain.hpp"

#include <algorithm>
#include <utility>

namespace m2fol {

ValueDomain ValueDomain::enumeration(std::vector<std::string> constants) {
  ValueDomain d;
  d.kind = DomainKind::Enum;
  d.constants = std::move(constants);
  return d;
}

ValueDomain ValueDomain::natural() {
  ValueDomain d;
  d.kind = DomainKind::Nat;
  return d;
}

ValueDomain ValueDomain::ref(std::string typeName) {
  ValueDomain d;
  d.kind = DomainKind::Ref;
  d.target = std::move(typeName);
  return d;
}

ValueDomain ValueDomain::product(std::vector<ValueDomain> parts) {
  ValueDomain d;
  d.kind = DomainKind::Product;
  d.parts = std::move(parts);
  return d;
}

ValueDomain ValueDomain::union_of(std::vector<ValueDomain> parts) {
  ValueDomain d;
  d.kind = DomainKind::Union;
  d.parts = std::move(parts);
  return d;
}

ValueDomain ValueDomain::set_of(ValueDomain inner) {
  ValueDomain d;
  d.kind = DomainKind::SetOf;
  d.parts.push_back(std::move(inner));
  return d;
}

ValueDomain ValueDomain::list_of(ValueDomain inner) {
  ValueDomain d;
  d.kind = DomainKind::ListOf;
  d.parts.push_back(std::move(inner));
  return d;
}

ValueDomain ValueDomain::never() {
  ValueDomain d;
  d.kind = DomainKind::Union;
  return d;
}

bool ValueDomain::operator==(const ValueDomain& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case DomainKind::Enum: return constants == other.constants;
    case DomainKind::Nat: return true;
    case DomainKind::Ref: return target == other.target;
    default: break;
  }
  if (parts.size() != other.parts.size()) return false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!(parts[i] == other.parts[i])) return false;
  }
  return true;
}

bool domain_is_finite(const ValueDomain& domain) {
  switch (domain.kind) {
    case DomainKind::Nat:
    case DomainKind::ListOf:
      return false;
    case DomainKind::Enum:
    case DomainKind::Ref:
      return true;
    default:
      return std::all_of(domain.parts.begin(), domain.parts.end(),
                         [](const ValueDomain& p) { return domain_is_finite(p); });
  }
}

void collect_domain_refs(const ValueDomain& domain, std::vector<std::string>& out) {
  if (domain.kind == DomainKind::Ref) {
    out.push_back(domain.target);
    return;
  }
  for (const auto& part : domain.parts) collect_domain_refs(part, out);
}

void collect_domain_enums(const ValueDomain& domain, std::vector<ValueDomain>& out) {
  if (domain.kind == DomainKind::Enum) {
    out.push_back(domain);
    return;
  }
  for (const auto& part : domain.parts) collect_domain_enums(part, out);
}

}  // namespace m2fol
