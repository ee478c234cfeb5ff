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

#include "m2fol/events.hpp"
#include "m2fol/metalang.hpp"
#include "m2fol/structure.hpp"

namespace m2fol::testing {

// The Petri net language: Node with Place/Transition below it, Arc between
// Nodes, Tokens over the naturals, and the four usual constraints (Node is
// abstract, arcs alternate, no parallel arcs).
inline std::shared_ptr<const SignatureDecl> petri_language() {
  using namespace fml;
  auto sig = std::make_shared<SignatureDecl>();
  sig->name = "PN";
  sig->types = {{"Node", TypeKind::Object},
                {"Place", TypeKind::Object},
                {"Transition", TypeKind::Object},
                {"Arc", TypeKind::Relation},
                {"Nat", TypeKind::Data}};
  sig->domains.emplace("Nat", ValueDomain::natural());
  sig->inh = {{"Place", "Node"}, {"Transition", "Node"}};

  FunctionSymbol src;
  src.name = "src_Arc";
  src.role = SymbolRole::RelSource;
  src.domain = {"Arc"};
  src.codomain = ValueDomain::ref("Node");
  FunctionSymbol tgt;
  tgt.name = "tgt_Arc";
  tgt.role = SymbolRole::RelTarget;
  tgt.domain = {"Arc"};
  tgt.codomain = ValueDomain::ref("Node");
  FunctionSymbol tokens;
  tokens.name = "Tokens";
  tokens.role = SymbolRole::Attribute;
  tokens.domain = {"Place"};
  tokens.codomain = ValueDomain::natural();
  sig->functions = {{src.name, src}, {tgt.name, tgt}, {tokens.name, tokens}};

  auto arcFrom = [](const char* u, const char* x) { return eq(apply("src_Arc", {var(u)}), var(x)); };
  auto arcTo = [](const char* u, const char* y) { return eq(apply("tgt_Arc", {var(u)}), var(y)); };

  sig->add_constraint("node_abstract",
                      forall("x", "Node",
                             exists("y", "Place",
                                    exists("z", "Transition",
                                           disj(eq(var("x"), var("y")), eq(var("x"), var("z")))))));
  sig->add_constraint("no_place_place",
                      nexists({{"x", "Place"}, {"y", "Place"}, {"u", "Arc"}},
                              conj(arcFrom("u", "x"), arcTo("u", "y"))));
  sig->add_constraint("no_transition_transition",
                      nexists({{"x", "Transition"}, {"y", "Transition"}, {"u", "Arc"}},
                              conj(arcFrom("u", "x"), arcTo("u", "y"))));
  sig->add_constraint(
      "no_parallel_arcs",
      forall("u", "Arc",
             forall("v", "Arc",
                    implies(conj(eq(apply("src_Arc", {var("u")}), apply("src_Arc", {var("v")})),
                                 eq(apply("tgt_Arc", {var("u")}), apply("tgt_Arc", {var("v")}))),
                            eq(var("u"), var("v"))))));
  return sig;
}

// The barber shop model: wait/busy/idle places, enter/serve/done transitions,
// six arcs and the marking (2, 0, 1).
inline Structure barber_model(std::shared_ptr<const SignatureDecl> sig = petri_language()) {
  Structure m;
  m.name = "barber";
  m.language = std::move(sig);
  for (const char* id : {"wait", "busy", "idle"}) m.elements.emplace(id, "Place");
  for (const char* id : {"enter", "serve", "done"}) m.elements.emplace(id, "Transition");
  auto arc = [&](const char* id, const char* from, const char* to) {
    m.elements.emplace(id, "Arc");
    m.functions["src_Arc"][{Value::element(id)}] = Value::element(from);
    m.functions["tgt_Arc"][{Value::element(id)}] = Value::element(to);
  };
  arc("a1", "enter", "wait");
  arc("a2", "wait", "serve");
  arc("a3", "serve", "busy");
  arc("a4", "busy", "done");
  arc("a5", "done", "idle");
  arc("a6", "idle", "serve");
  m.functions["Tokens"][{Value::element("wait")}] = Value::nat(2);
  m.functions["Tokens"][{Value::element("busy")}] = Value::nat(0);
  m.functions["Tokens"][{Value::element("idle")}] = Value::nat(1);
  return m;
}

// The Petri net metamodel as an M2FOL model: node/place/transition object
// types, one relation type, the Tokens attribute over the naturals.
inline Structure petri_metamodel() {
  Structure mm;
  mm.name = "petri_meta";
  mm.language = m2fol_signature_ptr();
  for (const char* id : {"n", "p", "tr"}) mm.elements.emplace(id, "OT");
  mm.elements.emplace("a", "RT");
  mm.elements.emplace("tok", "AT");
  mm.elements.emplace("Nat", "DT");
  auto edge = [&](const std::string& relType, const std::string& id, const std::string& src,
                  const std::string& tgt) {
    mm.elements.emplace(id, relType);
    mm.functions["src_" + relType][{Value::element(id)}] = Value::element(src);
    mm.functions["tgt_" + relType][{Value::element(id)}] = Value::element(tgt);
  };
  edge("Inh", "p_n", "p", "n");
  edge("Inh", "tr_n", "tr", "n");
  edge("Fr", "a_from", "a", "n");
  edge("To", "a_to", "a", "n");
  mm.functions[kMetaOwner][{Value::element("tok")}] = Value::element("p");
  mm.functions[kMetaValdom][{Value::element("tok")}] = Value::list({Value::element("Nat")});
  return complete_closure(mm);
}

// The rename map under which the derived petri language matches the
// hand-written one.
inline std::map<std::string, std::string> petri_derivation_renames() {
  return {{"n", "Node"},         {"p", "Place"},       {"tr", "Transition"}, {"a", "Arc"},
          {"tok", "Tokens"},     {"src_a", "src_Arc"}, {"tgt_a", "tgt_Arc"}, {"petri_meta", "PN"}};
}

}  // namespace m2fol::testing
