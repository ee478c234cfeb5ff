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
#include <utility>
#include <variant>
#include <vector>

#include "m2fol/structure.hpp"

namespace m2fol {

struct TypeError;

// --- structural events: smallest changes, applied to arbitrary constructs ---

struct CreateEvent {
  std::string type;
  std::string id;  // caller-supplied, must be fresh
  std::vector<std::pair<std::string, Value>> assigns;  // symbol -> value; relation
                                                       // types must assign src and tgt
};
struct SetAttrEvent {
  std::string element;
  std::string symbol;  // Attribute-role function
  Value value;
};
struct DeleteEvent {
  std::string element;
  // cascade=false fails on any incident relation instance or referencing
  // attribute value; cascade=true removes incident relation elements and
  // relation-symbol tuples, still failing on dangling reference attributes.
  bool cascade = false;
};

struct StructuralEvent {
  std::variant<CreateEvent, SetAttrEvent, DeleteEvent> op;
};

// Never consults constraints. Throws UnknownElement, UnknownSymbol,
// UnknownType, DuplicateElement, ValueDomainMismatch, MissingAssignment,
// DanglingReference.
Structure apply_structural(const Structure& m, const StructuralEvent& event);

// --- domain events: conformance-preserving compositions -----------------

struct EventStep;

struct SetStep {
  TermPtr element;
  std::string symbol;
  TermPtr value;
};
struct DeleteStep {
  TermPtr element;
  bool cascade = false;
};
// Runs body once per element of typeName (snapshot taken when the step
// starts, sorted order); `where` is re-evaluated against the current
// intermediate structure each iteration.
struct ForEachStep {
  std::string var;
  std::string typeName;
  FormulaPtr where;  // may be null (no filter)
  std::vector<EventStep> body;
};

struct EventStep {
  std::variant<SetStep, DeleteStep, ForEachStep> step;
};

struct DomainEvent {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // name -> declared type
  FormulaPtr pre;
  std::vector<EventStep> body;
  FormulaPtr post;
};

bool events_equal(const DomainEvent& a, const DomainEvent& b);

// Requires a conforming input and a true precondition, folds the body
// left-to-right, then checks the postcondition and full conformance of the
// result. Intermediate states may be arbitrary constructs. Throws
// PreconditionFailed, PostconditionFailed, ResultNonconformant, plus
// propagated structural errors.
Structure apply_domain(const Structure& m, const DomainEvent& event, const std::vector<Value>& args);

// All argument tuples over the finite parameter sorts whose precondition
// holds, in sorted order.
std::vector<std::vector<Value>> enabled(const Structure& m, const DomainEvent& event);

// The parameterized Petri firing event fire(t: Transition): every input place
// loses a token, every output place gains one. Requires the Place/Transition/
// Arc/Tokens shape; throws ShapeMismatch otherwise.
DomainEvent make_fire_event(const SignatureDecl& petriLike);

// Validates a domain event against a signature: parameter types declared,
// pre/post and step guards well-typed with the parameters in scope.
std::vector<TypeError> check_event(const SignatureDecl& sig, const DomainEvent& event);

}  // namespace m2fol
