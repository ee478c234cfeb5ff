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
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "m2fol/diagnostics.hpp"

namespace m2fol {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct VarTerm {
  std::string name;
};
struct ConstTerm {
  std::string name;  // an enum constant
};
struct NatTerm {
  std::uint64_t value = 0;
};
struct ApplyTerm {
  std::string symbol;  // declared function symbol or builtin plus/minus
  std::vector<TermPtr> args;
};
struct ProjTerm {
  TermPtr tuple;
  std::size_t index = 1;  // 1-based
};
struct TupleTerm {
  std::vector<TermPtr> parts;  // arity >= 2
};
struct SetTerm {
  std::vector<TermPtr> elements;
};
struct ListTerm {
  std::vector<TermPtr> elements;
};

struct Term {
  std::variant<VarTerm, ConstTerm, NatTerm, ApplyTerm, ProjTerm, TupleTerm, SetTerm, ListTerm> node;
  SourceSpan span{};
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct TrueFormula {};
struct EqFormula {
  TermPtr lhs, rhs;
};
struct RelAppFormula {
  std::string symbol;  // declared relation symbol or builtin lt
  std::vector<TermPtr> args;
};
struct MemberFormula {
  TermPtr element, set;
};
struct NotFormula {
  FormulaPtr body;
};
struct AndFormula {
  FormulaPtr lhs, rhs;
};
struct OrFormula {
  FormulaPtr lhs, rhs;
};
struct ImpliesFormula {
  FormulaPtr lhs, rhs;
};
struct ForallFormula {
  std::string var;
  std::string typeName;
  FormulaPtr body;
};
struct ExistsFormula {
  std::string var;
  std::string typeName;
  FormulaPtr body;
};

struct Formula {
  std::variant<TrueFormula, EqFormula, RelAppFormula, MemberFormula, NotFormula, AndFormula, OrFormula,
               ImpliesFormula, ForallFormula, ExistsFormula>
      node;
  SourceSpan span{};
};

// Structural equality; spans are ignored.
bool terms_equal(const TermPtr& a, const TermPtr& b);
bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_variables(const FormulaPtr& formula);

// Builders. Children are shared, never copied.
namespace fml {

TermPtr var(std::string name);
TermPtr cst(std::string name);
TermPtr nat(std::uint64_t value);
TermPtr apply(std::string symbol, std::vector<TermPtr> args);
TermPtr proj(TermPtr tuple, std::size_t index);
TermPtr tuple(std::vector<TermPtr> parts);
TermPtr set(std::vector<TermPtr> elements);
TermPtr list(std::vector<TermPtr> elements);

FormulaPtr truth();
FormulaPtr eq(TermPtr lhs, TermPtr rhs);
FormulaPtr neq(TermPtr lhs, TermPtr rhs);
FormulaPtr rel(std::string symbol, std::vector<TermPtr> args);
FormulaPtr member(TermPtr element, TermPtr set);
FormulaPtr neg(FormulaPtr body);
FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr forall(std::string var, std::string typeName, FormulaPtr body);
FormulaPtr exists(std::string var, std::string typeName, FormulaPtr body);
// nexists v1:T1 . ... vn:Tn . body  ==  !(exists v1 ... exists vn . body)
FormulaPtr nexists(std::vector<std::pair<std::string, std::string>> vars, FormulaPtr body);

}  // namespace fml

// Names of the interpreted BuiltinNat symbols usable in any signature.
inline constexpr const char* kBuiltinPlus = "plus";
inline constexpr const char* kBuiltinMinus = "minus";
inline constexpr const char* kBuiltinLt = "lt";

}  // namespace m2fol
