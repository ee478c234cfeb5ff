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
#include <variant>
#include <vector>

#include "m2fol/signature.hpp"

namespace m2fol {

// Where a term lives: a named Object/Relation type's universe, or a data
// domain. A bare Ref domain is always normalized to an Element sort.
struct Sort {
  enum class Kind { Element, Data };
  Kind kind = Kind::Data;
  std::string type;    // Element
  ValueDomain domain;  // Data

  static Sort element(std::string typeName);
  static Sort data(ValueDomain domain);

  std::string to_string() const;
};

struct TypeError {
  SourceSpan span;
  std::string code;  // UNKNOWN_SYMBOL, ARITY_MISMATCH, TYPE_MISMATCH, ...
  std::string path;  // breadcrumb to the ill-typed node
  std::string message;

  std::string to_string() const;
};

// A formula that passed the checker, annotated with the inferred sort of
// every term node.
struct TypedFormula {
  FormulaPtr formula;
  std::map<const Term*, Sort> termSorts;
};

using TypecheckResult = std::variant<TypedFormula, std::vector<TypeError>>;

// Checks a closed formula against a validated signature.
TypecheckResult typecheck_formula(const SignatureDecl& sig, const FormulaPtr& formula);

// Checks a formula whose free variables are bound by env.
TypecheckResult typecheck_formula(const SignatureDecl& sig, const FormulaPtr& formula,
                                  const std::map<std::string, Sort>& env);

// True when a value of sort `sort` always lies in `domain` (subtype-aware for
// element refs, union alternatives unwrapped).
bool sort_in_domain(const SignatureDecl& sig, const Sort& sort, const ValueDomain& domain);

// Equality compatibility per Eq typing: a common supertype for element sorts,
// an identical (or union-overlapping) domain for data sorts.
bool sorts_comparable(const SignatureDecl& sig, const Sort& a, const Sort& b);

ValueDomain sort_to_domain(const Sort& sort);
Sort domain_to_sort(const ValueDomain& domain);

}  // namespace m2fol
