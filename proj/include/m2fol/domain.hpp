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

#include <string>
#include <vector>

namespace m2fol {

enum class DomainKind {
  Enum,     // finite list of named constants
  Nat,      // built-in naturals with interpreted plus/minus/lt
  Ref,      // elements of a named object or relation type
  Product,  // n-ary tuples, n >= 2
  Union,    // alternatives, >= 2 (zero parts = internal "never" marker, see never())
  SetOf,
  ListOf,
};

// A data-type expression. Always a tree: references to named data types are
// inlined when a declaration is parsed or built, so no cycles can exist.
class ValueDomain {
 public:
  DomainKind kind = DomainKind::Nat;
  std::vector<std::string> constants;  // Enum
  std::string target;                  // Ref: a declared type name
  std::vector<ValueDomain> parts;      // Product/Union; SetOf/ListOf hold one part

  static ValueDomain enumeration(std::vector<std::string> constants);
  static ValueDomain natural();
  static ValueDomain ref(std::string typeName);
  static ValueDomain product(std::vector<ValueDomain> parts);
  static ValueDomain union_of(std::vector<ValueDomain> parts);
  static ValueDomain set_of(ValueDomain inner);
  static ValueDomain list_of(ValueDomain inner);

  // Typechecker-internal bottom element: the domain of `{}`/`[]` literals.
  // Never appears in a declared signature.
  static ValueDomain never();
  bool is_never() const { return kind == DomainKind::Union && parts.empty(); }

  bool operator==(const ValueDomain& other) const;
  bool operator!=(const ValueDomain& other) const { return !(*this == other); }
};

// A domain is finite iff it contains neither Nat nor ListOf. Ref targets are
// finite by construction (models are finite structures).
bool domain_is_finite(const ValueDomain& domain);

// Every type name mentioned by Ref nodes, in order of first occurrence.
void collect_domain_refs(const ValueDomain& domain, std::vector<std::string>& out);

// Every Enum occurrence, depth-first.
void collect_domain_enums(const ValueDomain& domain, std::vector<ValueDomain>& out);

}  // namespace m2fol
