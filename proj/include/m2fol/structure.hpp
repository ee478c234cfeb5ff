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
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "m2fol/signature.hpp"
#include "m2fol/value.hpp"

namespace m2fol {

// A model: a finite structure over its language's signature. Elements carry
// one most-specific declared type; supertype universes are derived. Function
// interpretations are keyed by argument tuple. Immutable once built; the
// events module produces new structures instead of mutating.
struct Structure {
  std::string name;
  std::shared_ptr<const SignatureDecl> language;
  std::map<std::string, std::string> elements;  // id -> declared type
  std::map<std::string, std::map<std::vector<Value>, Value>> functions;
  std::map<std::string, std::set<std::vector<Value>>> relations;

  const std::string& declared_type(const std::string& id) const;  // throws UnknownElement
  bool has_element(const std::string& id) const { return elements.count(id) != 0; }
};

// Structural invariants only; constraints are not consulted.
// Codes: MISSING_INTERPRETATION, BAD_CODOMAIN, UNDECLARED_TYPE, UNKNOWN_SYMBOL,
// BAD_ARGS, BAD_TUPLE.
std::vector<Finding> validate_structure(const Structure& m);

struct ConstraintResult {
  std::string name;
  bool holds = false;
  // Outermost universal witnesses of a failed constraint, first-failure order
  // over sorted element ids. Empty unless the constraint starts with foralls.
  std::vector<std::pair<std::string, Value>> witness;
  std::string note;  // evaluation error, when one occurred

  bool operator==(const ConstraintResult&) const = default;
};

struct ConformanceReport {
  std::vector<Finding> structural;
  std::vector<ConstraintResult> constraints;

  bool conforms() const;
  std::size_t held() const;
};

ConformanceReport check_conformance(const Structure& m);

// Elements whose declared type is `type` or one of its subtypes, sorted.
// `type` must be a declared Object or Relation type.
std::set<std::string> universe_of(const Structure& m, const std::string& type);

bool structures_equal(const Structure& a, const Structure& b);

// True when `value` lies in `domain` within this structure (element refs must
// exist and respect the type hierarchy).
bool value_in_domain(const Structure& m, const Value& value, const ValueDomain& domain);

}  // namespace m2fol
