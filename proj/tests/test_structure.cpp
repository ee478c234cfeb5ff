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

#include <random>

#include "m2fol/eval.hpp"
#include "support/fixtures.hpp"
#include "support/rename.hpp"

using namespace m2fol;
using namespace m2fol::testing;

namespace {

Structure empty_model() {
  Structure m;
  m.name = "empty";
  m.language = petri_language();
  return m;
}

bool has_finding(const std::vector<Finding>& findings, const std::string& code) {
  for (const auto& f : findings) {
    if (f.code == code) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("the barber model is structurally valid") {
  CHECK(validate_structure(barber_model()).empty());
}

TEST_CASE("the empty model is structurally valid") {
  CHECK(validate_structure(empty_model()).empty());
}

TEST_CASE("a missing attribute value is MISSING_INTERPRETATION") {
  Structure barber = barber_model();
  barber.functions["Tokens"].erase({Value::element("busy")});
  auto findings = validate_structure(barber);
  CHECK(has_finding(findings, "MISSING_INTERPRETATION"));
}

TEST_CASE("values outside the codomain are BAD_CODOMAIN") {
  Structure barber = barber_model();
  barber.functions["Tokens"][{Value::element("busy")}] = Value::enum_const("zero");
  CHECK(has_finding(validate_structure(barber), "BAD_CODOMAIN"));
}

TEST_CASE("interpretations for undeclared symbols are UNKNOWN_SYMBOL") {
  Structure barber = barber_model();
  barber.functions["Weight"][{Value::element("a1")}] = Value::nat(1);
  CHECK(has_finding(validate_structure(barber), "UNKNOWN_SYMBOL"));
}

TEST_CASE("the barber model conforms") {
  ConformanceReport report = check_conformance(barber_model());
  CHECK(report.structural.empty());
  CHECK(report.constraints.size() == 4);
  CHECK(report.held() == 4);
  CHECK(report.conforms());
}

TEST_CASE("the empty model conforms vacuously") {
  CHECK(check_conformance(empty_model()).conforms());
}

TEST_CASE("a duplicate arc is reported with its witness pair") {
  Structure barber = barber_model();
  barber.elements.emplace("a7", "Arc");
  barber.functions["src_Arc"][{Value::element("a7")}] = Value::element("enter");
  barber.functions["tgt_Arc"][{Value::element("a7")}] = Value::element("wait");
  ConformanceReport report = check_conformance(barber);
  CHECK_FALSE(report.conforms());
  const ConstraintResult* parallel = nullptr;
  for (const auto& r : report.constraints) {
    if (r.name == "no_parallel_arcs") parallel = &r;
    if (r.name != "no_parallel_arcs") CHECK(r.holds);
  }
  REQUIRE(parallel);
  CHECK_FALSE(parallel->holds);
  REQUIRE(parallel->witness.size() == 2);
  CHECK(parallel->witness[0].first == "u");
  CHECK(parallel->witness[0].second == Value::element("a1"));
  CHECK(parallel->witness[1].first == "v");
  CHECK(parallel->witness[1].second == Value::element("a7"));
}

TEST_CASE("universes include subtypes") {
  Structure barber = barber_model();
  CHECK(universe_of(barber, "Node") ==
        std::set<std::string>{"busy", "done", "enter", "idle", "serve", "wait"});
  CHECK(universe_of(barber, "Arc") == std::set<std::string>{"a1", "a2", "a3", "a4", "a5", "a6"});
  CHECK(universe_of(barber, "Place") == std::set<std::string>{"busy", "idle", "wait"});
  CHECK(universe_of(empty_model(), "Place").empty());
  CHECK_THROWS_AS(universe_of(barber, "Ghost"), KernelError);
}

TEST_CASE("subtype universes are contained in supertype universes") {
  Structure barber = barber_model();
  auto super = universe_of(barber, "Node");
  for (const auto& sub : {"Place", "Transition"}) {
    for (const auto& id : universe_of(barber, sub)) CHECK(super.count(id) == 1);
  }
}

TEST_CASE("conformance is invariant under element renaming") {
  Structure barber = barber_model();
  std::vector<std::string> ids;
  for (const auto& [id, type] : barber.elements) ids.push_back(id);
  std::mt19937 rng(7);
  for (int round = 0; round < 25; ++round) {
    std::vector<std::string> shuffled = ids;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::map<std::string, std::string> renames;
    for (std::size_t i = 0; i < ids.size(); ++i) renames[ids[i]] = "e" + std::to_string(i) + shuffled[i];
    Structure renamed = rename_elements(barber, renames);
    ConformanceReport report = check_conformance(renamed);
    CAPTURE(round);
    CHECK(report.conforms());
  }
}

TEST_CASE("reports do not depend on element insertion order") {
  Structure a = barber_model();
  // rebuild in a different insertion order
  Structure b;
  b.name = a.name;
  b.language = a.language;
  std::vector<std::pair<std::string, std::string>> elems(a.elements.begin(), a.elements.end());
  std::reverse(elems.begin(), elems.end());
  for (const auto& [id, type] : elems) b.elements.emplace(id, type);
  for (const auto& [symbol, interp] : a.functions) {
    std::vector<std::pair<std::vector<Value>, Value>> entries(interp.begin(), interp.end());
    std::reverse(entries.begin(), entries.end());
    for (const auto& [args, value] : entries) b.functions[symbol][args] = value;
  }
  CHECK(structures_equal(a, b));
  auto ra = check_conformance(a);
  auto rb = check_conformance(b);
  REQUIRE(ra.constraints.size() == rb.constraints.size());
  for (std::size_t i = 0; i < ra.constraints.size(); ++i) CHECK(ra.constraints[i] == rb.constraints[i]);
}

TEST_CASE("value_in_domain respects the hierarchy") {
  Structure barber = barber_model();
  CHECK(value_in_domain(barber, Value::element("wait"), ValueDomain::ref("Node")));
  CHECK(value_in_domain(barber, Value::element("wait"), ValueDomain::ref("Place")));
  CHECK_FALSE(value_in_domain(barber, Value::element("wait"), ValueDomain::ref("Transition")));
  CHECK_FALSE(value_in_domain(barber, Value::element("ghost"), ValueDomain::ref("Node")));
  CHECK(value_in_domain(barber, Value::nat(3), ValueDomain::natural()));
  CHECK(value_in_domain(
      barber, Value::tuple({Value::nat(1), Value::element("wait")}),
      ValueDomain::product({ValueDomain::natural(), ValueDomain::ref("Place")})));
  CHECK(value_in_domain(barber, Value::element("wait"),
                        ValueDomain::union_of({ValueDomain::natural(), ValueDomain::ref("Place")})));
  CHECK(value_in_domain(barber, Value::list({Value::nat(1), Value::nat(2)}),
                        ValueDomain::list_of(ValueDomain::natural())));
  CHECK_FALSE(value_in_domain(barber, Value::list({Value::nat(1)}), ValueDomain::set_of(ValueDomain::natural())));
}

TEST_CASE("a structurally valid model never hits PARTIAL_FUNCTION in constraints") {
  Structure barber = barber_model();
  REQUIRE(validate_structure(barber).empty());
  for (const auto& c : barber.language->constraints) {
    CHECK_NOTHROW(evaluate(barber, c.formula));
  }
}
