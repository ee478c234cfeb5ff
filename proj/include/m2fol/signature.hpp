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
#include <utility>
#include <vector>

#include "m2fol/diagnostics.hpp"
#include "m2fol/domain.hpp"
#include "m2fol/formula.hpp"

namespace m2fol {

struct DomainEvent;

enum class TypeKind { Object, Relation, Data };

const char* type_kind_name(TypeKind kind);

enum class SymbolRole { RelSource, RelTarget, Attribute, Auxiliary };

// Fixed interpretation of a declared symbol. Plus/Minus/Lt are the BuiltinNat
// operations, Contains is set membership, Proj is tuple projection.
enum class Backing { None, Plus, Minus, Lt, Contains, Proj };

struct FunctionSymbol {
  std::string name;
  SymbolRole role = SymbolRole::Auxiliary;
  std::vector<std::string> domain;  // declared type names, arity >= 1
  ValueDomain codomain;             // Ref(T) when the symbol yields elements of T
  Backing backing = Backing::None;
  std::size_t projIndex = 0;  // Backing::Proj, 1-based

  bool operator==(const FunctionSymbol& other) const;
};

struct RelationSymbol {
  std::string name;
  std::vector<ValueDomain> argTypes;  // arity >= 2; Ref(T) for element positions
  Backing backing = Backing::None;

  bool operator==(const RelationSymbol& other) const;
};

struct NamedConstraint {
  std::string name;
  FormulaPtr formula;
};

// A language: Def.-1 signature plus its constraint sentences. Values are
// immutable after construction; all operations below are pure.
struct SignatureDecl {
  std::string name;
  std::map<std::string, TypeKind> types;
  std::map<std::string, ValueDomain> domains;  // one entry per Data type
  std::set<std::pair<std::string, std::string>> inh;  // direct (sub, super) edges
  std::map<std::string, FunctionSymbol> functions;
  std::map<std::string, RelationSymbol> relations;
  std::vector<NamedConstraint> constraints;  // kept sorted by name
  std::vector<std::shared_ptr<const DomainEvent>> events;  // kept sorted by name

  TypeKind kind_of(const std::string& typeName) const;  // throws UnknownType
  bool has_type(const std::string& typeName, TypeKind kind) const;
  void add_constraint(std::string name, FormulaPtr formula);  // keeps order

  // Source/target symbol of a relation type; throws UnknownSymbol if absent.
  const FunctionSymbol& source_symbol(const std::string& relType) const;
  const FunctionSymbol& target_symbol(const std::string& relType) const;
};

ValidationReport validate_signature(const SignatureDecl& sig);

// Transitive closure of sig.inh. Throws CyclicInheritance on cyclic input.
std::set<std::pair<std::string, std::string>> subtype_order(const SignatureDecl& sig);

// Reflexive-transitive query. Throws UnknownType unless both are Object types.
bool is_subtype(const SignatureDecl& sig, const std::string& sub, const std::string& super);

// Every enum constant with the full Enum domain it belongs to. Scans declared
// data types, function codomains and relation argument types.
std::map<std::string, ValueDomain> constant_table(const SignatureDecl& sig);

// Renames every occurrence of the mapped identifiers: the signature name,
// type names, symbol names, constraint names and all references inside
// domains, formulas and events. Bound variables are untouched.
SignatureDecl rename_signature(const SignatureDecl& sig, const std::map<std::string, std::string>& renames);

// Deep structural equality (constraints and events compared by content).
bool signatures_equal(const SignatureDecl& a, const SignatureDecl& b);

// Equality of everything except constraints and events, with inheritance
// compared by transitive closure.
bool signature_cores_equal(const SignatureDecl& a, const SignatureDecl& b);

}  // namespace m2fol
