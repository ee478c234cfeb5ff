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

#include "m2fol/signature.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace m2fol;
using namespace m2fol::testing;

namespace {

SignatureDecl objects_only(const std::vector<std::string>& names,
                           const std::set<std::pair<std::string, std::string>>& inh) {
  SignatureDecl sig;
  sig.name = "S";
  for (const auto& n : names) sig.types.emplace(n, TypeKind::Object);
  sig.inh = inh;
  return sig;
}

bool has_finding(const ValidationReport& report, const std::string& code) {
  for (const auto& f : report.findings) {
    if (f.code == code) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("petri signature validates cleanly") {
  auto sig = petri_language();
  ValidationReport report = validate_signature(*sig);
  CAPTURE(report.findings.empty() ? "" : report.findings[0].to_string());
  CHECK(report.ok());
}

TEST_CASE("empty signature validates cleanly") {
  SignatureDecl sig;
  sig.name = "Empty";
  CHECK(validate_signature(sig).ok());
}

TEST_CASE("two-cycle is reported as CYCLIC_INHERITANCE") {
  auto sig = objects_only({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  // oracle: the DFS detector agrees there is a cycle
  CHECK(dfs_has_cycle({"A", "B"}, sig.inh));
  CHECK(has_finding(validate_signature(sig), "CYCLIC_INHERITANCE"));
}

TEST_CASE("subtype_order on the petri signature") {
  auto sig = petri_language();
  std::set<std::pair<std::string, std::string>> expected = {{"Place", "Node"}, {"Transition", "Node"}};
  CHECK(subtype_order(*sig) == expected);
}

TEST_CASE("subtype_order closes chains") {
  auto sig = objects_only({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  std::set<std::pair<std::string, std::string>> expected = {{"A", "B"}, {"B", "C"}, {"A", "C"}};
  CHECK(subtype_order(sig) == expected);
  CHECK(subtype_order(sig) == floyd_warshall_closure({"A", "B", "C"}, sig.inh));
}

TEST_CASE("subtype_order is empty for empty inh") {
  auto sig = objects_only({"A", "B"}, {});
  CHECK(subtype_order(sig).empty());
}

TEST_CASE("subtype_order rejects cyclic input") {
  auto sig = objects_only({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  CHECK_THROWS_AS(subtype_order(sig), KernelError);
}

TEST_CASE("is_subtype is reflexive and follows the closure") {
  auto sig = petri_language();
  CHECK(is_subtype(*sig, "Place", "Node"));
  CHECK(is_subtype(*sig, "Node", "Node"));
  CHECK_FALSE(is_subtype(*sig, "Node", "Place"));
  CHECK_THROWS_AS(is_subtype(*sig, "Place", "Ghost"), KernelError);
  CHECK_THROWS_AS(is_subtype(*sig, "Arc", "Node"), KernelError);
}

TEST_CASE("closure equals the Floyd-Warshall oracle on random DAGs") {
  std::mt19937 rng(20260810);
  for (int round = 0; round < 200; ++round) {
    const int n = 2 + static_cast<int>(rng() % 19);  // up to 20 types
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("T" + std::to_string(i));
    // edges only from lower to higher index: acyclic by construction
    std::set<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() % 4 == 0) edges.emplace(names[i], names[j]);
      }
    }
    auto sig = objects_only(names, edges);
    auto closure = subtype_order(sig);
    CHECK(closure == floyd_warshall_closure(names, edges));
    for (const auto& [a, b] : closure) CHECK(a != b);
  }
}

TEST_CASE("validation is deterministic") {
  auto sig = objects_only({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  auto r1 = validate_signature(sig);
  auto r2 = validate_signature(sig);
  REQUIRE(r1.findings.size() == r2.findings.size());
  for (std::size_t i = 0; i < r1.findings.size(); ++i) CHECK(r1.findings[i] == r2.findings[i]);
}

TEST_CASE("relation types need exactly one source and target symbol") {
  SignatureDecl sig;
  sig.name = "R";
  sig.types = {{"A", TypeKind::Object}, {"E", TypeKind::Relation}};
  CHECK(has_finding(validate_signature(sig), "MISSING_REL_ENDPOINT"));

  FunctionSymbol src;
  src.name = "src_E";
  src.role = SymbolRole::RelSource;
  src.domain = {"E"};
  src.codomain = ValueDomain::ref("A");
  FunctionSymbol tgt = src;
  tgt.name = "tgt_E";
  tgt.role = SymbolRole::RelTarget;
  sig.functions = {{src.name, src}, {tgt.name, tgt}};
  CHECK(validate_signature(sig).ok());

  FunctionSymbol extra = src;
  extra.name = "src2_E";
  sig.functions.emplace(extra.name, extra);
  CHECK(has_finding(validate_signature(sig), "DUPLICATE_REL_ENDPOINT"));
}

TEST_CASE("duplicate constants across distinct enums are rejected") {
  SignatureDecl sig;
  sig.name = "D";
  sig.types = {{"A", TypeKind::Data}, {"B", TypeKind::Data}};
  sig.domains.emplace("A", ValueDomain::enumeration({"red", "green"}));
  sig.domains.emplace("B", ValueDomain::enumeration({"red", "blue"}));
  CHECK(has_finding(validate_signature(sig), "DUPLICATE_CONSTANT"));

  // the same enum inlined twice is fine
  SignatureDecl ok;
  ok.name = "D2";
  ok.types = {{"A", TypeKind::Data}, {"B", TypeKind::Data}};
  ok.domains.emplace("A", ValueDomain::enumeration({"red", "green"}));
  ok.domains.emplace("B", ValueDomain::set_of(ValueDomain::enumeration({"red", "green"})));
  CHECK(validate_signature(ok).ok());
}

TEST_CASE("open constraints are findings, not crashes") {
  auto sig = *petri_language();
  sig.add_constraint("open", fml::eq(fml::var("x"), fml::var("x")));
  CHECK(has_finding(validate_signature(sig), "OPEN_CONSTRAINT"));
}

TEST_CASE("rename_signature rewrites every occurrence") {
  auto sig = petri_language();
  std::map<std::string, std::string> renames = {{"Place", "Stelle"}, {"Tokens", "Marken"}};
  SignatureDecl renamed = rename_signature(*sig, renames);
  CHECK(renamed.types.count("Stelle"));
  CHECK_FALSE(renamed.types.count("Place"));
  CHECK(renamed.functions.count("Marken"));
  CHECK(renamed.functions.at("Marken").domain[0] == "Stelle");
  CHECK(renamed.inh.count({"Stelle", "Node"}));
  CHECK(validate_signature(renamed).ok());
  // renaming back yields the original
  SignatureDecl back = rename_signature(renamed, {{"Stelle", "Place"}, {"Marken", "Tokens"}});
  CHECK(signatures_equal(back, *sig));
}
