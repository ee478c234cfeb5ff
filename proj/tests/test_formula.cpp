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
#include "m2fol/typecheck.hpp"
#include "support/fixtures.hpp"

using namespace m2fol;
using namespace m2fol::testing;
using namespace m2fol::fml;

namespace {

bool well_typed(const SignatureDecl& sig, const FormulaPtr& f) {
  return std::holds_alternative<TypedFormula>(typecheck_formula(sig, f));
}

std::string first_error(const SignatureDecl& sig, const FormulaPtr& f) {
  auto result = typecheck_formula(sig, f);
  const auto* errors = std::get_if<std::vector<TypeError>>(&result);
  REQUIRE(errors);
  REQUIRE_FALSE(errors->empty());
  return (*errors)[0].code;
}

Structure empty_model() {
  Structure m;
  m.name = "empty";
  m.language = petri_language();
  return m;
}

}  // namespace

TEST_CASE("the abstractness sentence typechecks against the petri signature") {
  auto sig = petri_language();
  for (const auto& c : sig->constraints) {
    CAPTURE(c.name);
    CHECK(well_typed(*sig, c.formula));
  }
}

TEST_CASE("reflexive equality over a declared type typechecks") {
  auto sig = petri_language();
  CHECK(well_typed(*sig, forall("x", "Place", eq(var("x"), var("x")))));
}

TEST_CASE("endpoint symbols reject arguments outside their domain type") {
  auto sig = petri_language();
  auto bad = forall("x", "Place", eq(apply("src_Arc", {var("x")}), var("x")));
  CHECK(first_error(*sig, bad) == "TYPE_MISMATCH");
}

TEST_CASE("unknown symbols and arity mismatches are reported") {
  auto sig = petri_language();
  CHECK(first_error(*sig, forall("x", "Place", eq(apply("Weight", {var("x")}), nat(1)))) == "UNKNOWN_SYMBOL");
  CHECK(first_error(*sig, forall("u", "Arc", eq(apply("src_Arc", {var("u"), var("u")}), var("u")))) ==
        "ARITY_MISMATCH");
  CHECK(first_error(*sig, eq(var("x"), var("x"))) == "UNBOUND_VARIABLE");
}

TEST_CASE("quantifying over the naturals is rejected") {
  auto sig = petri_language();
  auto bad = forall("n", "Nat", eq(var("n"), var("n")));
  CHECK(first_error(*sig, bad) == "QUANTIFIER_OVER_INFINITE_DOMAIN");
}

TEST_CASE("equality needs a common supertype") {
  auto sig = petri_language();
  // Place and Transition meet in Node
  CHECK(well_typed(*sig, forall("x", "Place", forall("y", "Transition", neq(var("x"), var("y"))))));
  // Place and Arc do not
  CHECK(first_error(*sig, forall("x", "Place", forall("u", "Arc", eq(var("x"), var("u"))))) == "TYPE_MISMATCH");
}

TEST_CASE("all four petri constraints hold on the barber model") {
  Structure barber = barber_model();
  for (const auto& c : barber.language->constraints) {
    CAPTURE(c.name);
    CHECK(evaluate(barber, c.formula));
  }
}

TEST_CASE("empty-domain quantification") {
  Structure m = empty_model();
  CHECK_FALSE(evaluate(m, exists("x", "Place", eq(var("x"), var("x")))));
  CHECK(evaluate(m, forall("x", "Place", eq(var("x"), var("x")))));
}

TEST_CASE("a place-to-place arc falsifies the alternation constraint") {
  Structure barber = barber_model();
  barber.elements.emplace("a7", "Arc");
  barber.functions["src_Arc"][{Value::element("a7")}] = Value::element("wait");
  barber.functions["tgt_Arc"][{Value::element("a7")}] = Value::element("idle");
  FormulaPtr alternation;
  for (const auto& c : barber.language->constraints) {
    if (c.name == "no_place_place") alternation = c.formula;
  }
  REQUIRE(alternation);
  CHECK_FALSE(evaluate(barber, alternation));
}

TEST_CASE("quantifying over a supertype visits all subtype universes") {
  Structure barber = barber_model();
  CHECK(universe_of(barber, "Node").size() == 6);
  // every Node equals some Place or some Transition: visits all six
  CHECK(evaluate(barber, forall("x", "Node",
                                disj(exists("y", "Place", eq(var("x"), var("y"))),
                                     exists("z", "Transition", eq(var("x"), var("z")))))));
  // an exists over Node can find a transition
  CHECK(evaluate(barber, exists("x", "Node", exists("z", "Transition", eq(var("x"), var("z"))))));
}

TEST_CASE("double negation and alpha renaming") {
  Structure barber = barber_model();
  for (const auto& c : barber.language->constraints) {
    CHECK(evaluate(barber, neg(neg(c.formula))) == evaluate(barber, c.formula));
  }
  auto original = exists("x", "Place", rel(kBuiltinLt, {nat(1), apply("Tokens", {var("x")})}));
  auto renamed = exists("fresh_17", "Place", rel(kBuiltinLt, {nat(1), apply("Tokens", {var("fresh_17")})}));
  CHECK(evaluate(barber, original) == evaluate(barber, renamed));
}

TEST_CASE("builtin arithmetic over the naturals") {
  Structure barber = barber_model();
  CHECK(evaluate(barber, eq(apply(kBuiltinPlus, {nat(2), nat(3)}), nat(5))));
  CHECK(evaluate(barber, eq(apply(kBuiltinMinus, {nat(3), nat(1)}), nat(2))));
  CHECK(evaluate(barber, rel(kBuiltinLt, {nat(2), nat(3)})));
  CHECK_FALSE(evaluate(barber, rel(kBuiltinLt, {nat(3), nat(3)})));
  // tokens of wait are 2
  CHECK(evaluate(barber, exists("p", "Place", eq(apply("Tokens", {var("p")}), nat(2)))));
  // natural subtraction below zero is an error
  CHECK_THROWS_AS(evaluate(barber, eq(apply(kBuiltinMinus, {nat(0), nat(1)}), nat(0))), KernelError);
}

TEST_CASE("evaluation errors carry their contract codes") {
  Structure barber = barber_model();
  barber.functions["Tokens"].erase({Value::element("busy")});
  try {
    evaluate(barber, forall("p", "Place", rel(kBuiltinLt, {apply("Tokens", {var("p")}), nat(10)})));
    FAIL("expected PARTIAL_FUNCTION");
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrCode::PartialFunction);
  }
  try {
    evaluate(barber_model(), eq(var("ghost"), var("ghost")));
    FAIL("expected UNBOUND_VARIABLE");
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrCode::UnboundVariable);
  }
}

TEST_CASE("typed formulas annotate every term with its sort") {
  auto sig = petri_language();
  auto f = forall("p", "Place", rel(kBuiltinLt, {nat(0), apply("Tokens", {var("p")})}));
  auto result = typecheck_formula(*sig, f);
  const auto* typed = std::get_if<TypedFormula>(&result);
  REQUIRE(typed);
  CHECK(typed->termSorts.size() == 3);  // 0, Tokens(p), p
  bool sawElementSort = false;
  for (const auto& [term, sort] : typed->termSorts) {
    if (sort.kind == Sort::Kind::Element) {
      sawElementSort = true;
      CHECK(sort.type == "Place");
    }
  }
  CHECK(sawElementSort);
}

TEST_CASE("set membership evaluates over set values") {
  SignatureDecl sig;
  sig.name = "S";
  sig.types = {{"Thing", TypeKind::Object}, {"Color", TypeKind::Data}};
  sig.domains.emplace("Color", ValueDomain::enumeration({"red", "green", "blue"}));
  FunctionSymbol palette;
  palette.name = "palette";
  palette.role = SymbolRole::Attribute;
  palette.domain = {"Thing"};
  palette.codomain = ValueDomain::set_of(ValueDomain::enumeration({"red", "green", "blue"}));
  sig.functions.emplace(palette.name, palette);
  REQUIRE(validate_signature(sig).ok());

  Structure m;
  m.name = "m";
  m.language = std::make_shared<SignatureDecl>(sig);
  m.elements.emplace("t", "Thing");
  m.functions["palette"][{Value::element("t")}] =
      Value::set({Value::enum_const("red"), Value::enum_const("green")});

  CHECK(evaluate(m, forall("x", "Thing", member(cst("red"), apply("palette", {var("x")})))));
  CHECK_FALSE(evaluate(m, exists("x", "Thing", member(cst("blue"), apply("palette", {var("x")})))));
  // quantifying over the finite enum domain works
  CHECK(evaluate(m, exists("c", "Color", exists("x", "Thing", member(var("c"), apply("palette", {var("x")}))))));
}
