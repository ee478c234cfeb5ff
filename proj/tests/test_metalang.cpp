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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "m2fol/eval.hpp"
#include "m2fol/metalang.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace m2fol;
using namespace m2fol::testing;

TEST_CASE("the builtin metalanguage validates and is stable") {
  const SignatureDecl& sig = m2fol_signature();
  ValidationReport report = validate_signature(sig);
  CAPTURE(report.findings.empty() ? "" : report.findings[0].to_string());
  CHECK(report.ok());
  CHECK(&m2fol_signature() == &sig);  // built once, shared

  std::set<std::string> objects, relations;
  for (const auto& [name, kind] : sig.types) {
    if (kind == TypeKind::Object) objects.insert(name);
    if (kind == TypeKind::Relation) relations.insert(name);
  }
  CHECK(objects == std::set<std::string>{"OT", "RT", "AT", "DT", "D", "ORT", "DORT"});
  CHECK(relations == std::set<std::string>{"Inh", "Fr", "To"});
  CHECK(sig.constraints.size() == 11);
}

TEST_CASE("the metalanguage subtype order closes the four declared edges") {
  std::set<std::pair<std::string, std::string>> expected = {
      {"OT", "ORT"}, {"RT", "ORT"}, {"ORT", "DORT"}, {"DT", "DORT"}, {"OT", "DORT"}, {"RT", "DORT"}};
  CHECK(subtype_order(m2fol_signature()) == expected);
  CHECK(expected == floyd_warshall_closure({"OT", "RT", "AT", "DT", "D", "ORT", "DORT"},
                                           m2fol_signature().inh));
}

TEST_CASE("bootstrap: the metamodel of the metalanguage conforms to it") {
  ConformanceReport report = bootstrap_check();
  for (const auto& f : report.structural) CAPTURE(f.to_string());
  CHECK(report.structural.empty());
  for (const auto& r : report.constraints) {
    CAPTURE(r.name);
    CHECK(r.holds);
  }
  CHECK(report.conforms());
  CHECK(report.constraints.size() == 11);
}

TEST_CASE("a second inheritance edge out of the same type breaks single inheritance") {
  Structure mm = m2fol_metamodel();
  mm.elements.emplace("ot_dort", "Inh");
  mm.functions["src_Inh"][{Value::element("ot_dort")}] = Value::element("ot");
  mm.functions["tgt_Inh"][{Value::element("ot_dort")}] = Value::element("dort");
  mm = complete_closure(mm);
  ConformanceReport report = check_conformance(mm);
  CHECK_FALSE(report.conforms());
  for (const auto& r : report.constraints) {
    CAPTURE(r.name);
    CHECK(r.holds == (r.name != "single_inheritance"));
  }
}

TEST_CASE("the empty metamodel conforms vacuously") {
  Structure mm;
  mm.name = "empty";
  mm.language = m2fol_signature_ptr();
  CHECK(check_conformance(mm).conforms());
}

TEST_CASE("complete_closure computes the transitive closure of Inh") {
  Structure petri = petri_metamodel();
  std::set<std::vector<Value>> expected = {{Value::element("p"), Value::element("n")},
                                           {Value::element("tr"), Value::element("n")}};
  CHECK(petri.relations.at(kMetaSubOT) == expected);

  // chains close
  Structure chain;
  chain.name = "chain";
  chain.language = m2fol_signature_ptr();
  for (const char* id : {"a", "b", "c"}) chain.elements.emplace(id, "OT");
  auto edge = [&](const std::string& id, const std::string& src, const std::string& tgt) {
    chain.elements.emplace(id, "Inh");
    chain.functions["src_Inh"][{Value::element(id)}] = Value::element(src);
    chain.functions["tgt_Inh"][{Value::element(id)}] = Value::element(tgt);
  };
  edge("ab", "a", "b");
  edge("bc", "b", "c");
  Structure closed = complete_closure(chain);
  std::set<std::vector<Value>> closure = {{Value::element("a"), Value::element("b")},
                                          {Value::element("b"), Value::element("c")},
                                          {Value::element("a"), Value::element("c")}};
  CHECK(closed.relations.at(kMetaSubOT) == closure);
  CHECK(structures_equal(complete_closure(closed), closed));  // idempotent

  // empty Inh yields an empty order
  Structure empty;
  empty.name = "empty";
  empty.language = m2fol_signature_ptr();
  CHECK(complete_closure(empty).relations.at(kMetaSubOT).empty());

  // cycles are rejected
  edge("ca", "c", "a");
  CHECK_THROWS_AS(complete_closure(chain), KernelError);
}

TEST_CASE("deriving the petri language from its metamodel") {
  SignatureDecl derived = derive_signature(petri_metamodel(), {});
  CHECK(validate_signature(derived).ok());
  SignatureDecl renamed = rename_signature(derived, petri_derivation_renames());
  SignatureDecl expected = *petri_language();
  expected.constraints.clear();
  CHECK(renamed.name == "PN");
  CHECK(signature_cores_equal(renamed, expected));
  CHECK(renamed.inh == expected.inh);
}

TEST_CASE("derivation attaches supplied constraints after type checking") {
  using namespace fml;
  // the abstractness sentence in raw metamodel names
  std::vector<NamedConstraint> extras = {
      {"node_abstract",
       forall("x", "n",
              exists("y", "p", exists("z", "tr", disj(eq(var("x"), var("y")), eq(var("x"), var("z"))))))}};
  SignatureDecl derived = derive_signature(petri_metamodel(), extras);
  CHECK(derived.constraints.size() == 1);
  CHECK(validate_signature(derived).ok());

  std::vector<NamedConstraint> bad = {{"broken", forall("x", "ghost", eq(var("x"), var("x")))}};
  try {
    derive_signature(petri_metamodel(), bad);
    FAIL("expected ILL_TYPED_EXTRA_CONSTRAINT");
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrCode::IllTypedExtraConstraint);
  }
}

TEST_CASE("deriving from the empty metamodel yields the empty signature") {
  Structure mm;
  mm.name = "empty";
  mm.language = m2fol_signature_ptr();
  SignatureDecl derived = derive_signature(mm, {});
  CHECK(derived.types.empty());
  CHECK(derived.functions.empty());
  CHECK(derived.relations.empty());
  CHECK(derived.constraints.empty());
}

TEST_CASE("deriving from a nonconforming metamodel is refused") {
  Structure mm = petri_metamodel();
  mm.functions[kMetaOwner].erase({Value::element("tok")});  // breaks attribute totality
  try {
    derive_signature(mm, {});
    FAIL("expected NONCONFORMANT_METAMODEL");
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrCode::NonconformantMetamodel);
  }
}

TEST_CASE("the self-description loop closes") {
  SignatureDecl derived = derive_signature(m2fol_metamodel(), {});
  CHECK(validate_signature(derived).ok());
  SignatureDecl renamed = rename_signature(derived, m2fol_bootstrap_renames());
  SignatureDecl expected = m2fol_signature_without_postulates();
  CHECK(renamed.name == "M2FOL");
  CHECK(signature_cores_equal(renamed, expected));
  // the closure of the derived inheritance equals the builtin's
  SignatureDecl builtin = m2fol_signature();
  CHECK(subtype_order(renamed) == subtype_order(builtin));
}

TEST_CASE("derived names never merge silently") {
  // an element whose id collides with a generated endpoint symbol name
  Structure mm;
  mm.name = "clash";
  mm.language = m2fol_signature_ptr();
  mm.elements.emplace("x", "OT");
  mm.elements.emplace("src_a", "OT");
  mm.elements.emplace("a", "RT");
  mm.elements.emplace("a_from", "Fr");
  mm.functions["src_Fr"][{Value::element("a_from")}] = Value::element("a");
  mm.functions["tgt_Fr"][{Value::element("a_from")}] = Value::element("x");
  mm.elements.emplace("a_to", "To");
  mm.functions["src_To"][{Value::element("a_to")}] = Value::element("a");
  mm.functions["tgt_To"][{Value::element("a_to")}] = Value::element("x");
  mm = complete_closure(mm);
  REQUIRE(check_conformance(mm).conforms());
  // deriving would need both the object type src_a and the endpoint symbol src_a
  CHECK_THROWS_AS(derive_signature(mm, {}), KernelError);
}

TEST_CASE("reserved list_ names derive to list domains") {
  Structure mm = m2fol_metamodel();
  SignatureDecl derived = derive_signature(mm, {});
  REQUIRE(derived.domains.count("list_dort"));
  CHECK(derived.domains.at("list_dort") == ValueDomain::list_of(ValueDomain::ref("dort")));
  REQUIRE(derived.functions.count("val_dom"));
  CHECK(derived.functions.at("val_dom").codomain == ValueDomain::list_of(ValueDomain::ref("dort")));
}
