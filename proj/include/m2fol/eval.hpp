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
#include <vector>

#include "m2fol/structure.hpp"
#include "m2fol/typecheck.hpp"

namespace m2fol {

using Env = std::map<std::string, Value>;

// Tarskian satisfaction over finite universes. Quantifiers iterate universes
// in sorted order (including all subtype universes) with short-circuiting.
// Throws KernelError: UnboundVariable, PartialFunction, ValueDomainMismatch
// (nat underflow), DomainTooLarge.
bool evaluate(const Structure& m, const TypedFormula& formula, const Env& env = {});

// Plain formula overload for callers that already hold a checked formula.
bool evaluate(const Structure& m, const FormulaPtr& formula, const Env& env = {});

Value evaluate_term(const Structure& m, const TermPtr& term, const Env& env);

// All values of a finite domain, sorted. Throws QuantifierOverInfiniteDomain
// for Nat/ListOf, DomainTooLarge when a power set would explode.
std::vector<Value> enumerate_domain(const Structure& m, const ValueDomain& domain);

// Values a quantified variable of the given declared type ranges over.
std::vector<Value> enumerate_type(const Structure& m, const std::string& typeName);

}  // namespace m2fol
