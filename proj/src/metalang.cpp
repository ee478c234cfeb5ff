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

#include "m2fol/metalang.hpp"

#include <algorithm>

#include "m2fol/eval.hpp"
#include "m2fol/typecheck.hpp"

namespace m2fol {

namespace {

using namespace fml;

// x r y: x is the source and y the target of relation element r.
FormulaPtr linked(const std::string& relType, const char* r, const char* x, const char* y) {
  return conj(eq(apply("src_" + relType, {var(r)}), var(x)), eq(apply("tgt_" + relType, {var(r)}), var(y)));
}

std::shared_ptr<const SignatureDecl> build_m2fol() {
  auto sig = std::make_shared<SignatureDecl>();
  sig->name = "M2FOL";
  for (const char* t : {"OT", "RT", "AT", "DT", "D", "ORT", "DORT"}) {
    sig->types.emplace(t, TypeKind::Object);
  }
  for (const char* t : {"Inh", "Fr", "To"}) sig->types.emplace(t, TypeKind::Relation);
  sig->types.emplace("List_DORT", TypeKind::Data);
  sig->domains.emplace("List_DORT", ValueDomain::list_of(ValueDomain::ref("DORT")));
  sig->inh = {{"OT", "ORT"}, {"RT", "ORT"}, {"ORT", "DORT"}, {"DT", "DORT"}};

  auto endpoint = [&](const std::string& relType, bool src, const std::string& objType) {
    FunctionSymbol fn;
    fn.name = (src ? "src_" : "tgt_") + relType;
    fn.role = src ? SymbolRole::RelSource : SymbolRole::RelTarget;
    fn.domain = {relType};
    fn.codomain = ValueDomain::ref(objType);
    sig->functions.emplace(fn.name, std::move(fn));
  };
  endpoint("Inh", true, "OT");
  endpoint("Inh", false, "OT");
  endpoint("Fr", true, "RT");
  endpoint("Fr", false, "OT");
  endpoint("To", true, "RT");
  endpoint("To", false, "OT");

  auto attribute = [&](const std::string& name, const std::string& owner, ValueDomain codomain) {
    FunctionSymbol fn;
    fn.name = name;
    fn.role = SymbolRole::Attribute;
    fn.domain = {owner};
    fn.codomain = std::move(codomain);
    sig->functions.emplace(fn.name, std::move(fn));
  };
  attribute(kMetaValdom, "AT", ValueDomain::list_of(ValueDomain::ref("DORT")));
  attribute(kMetaOwner, "AT", ValueDomain::ref("ORT"));
  attribute(kMetaDtype, "D", ValueDomain::ref("DT"));

  RelationSymbol subOT;
  subOT.name = kMetaSubOT;
  subOT.argTypes = {ValueDomain::ref("OT"), ValueDomain::ref("OT")};
  sig->relations.emplace(subOT.name, std::move(subOT));

  auto sub = [](const char* x, const char* y) { return rel(kMetaSubOT, {var(x), var(y)}); };

  sig->add_constraint(
      "single_inheritance",
      forall("x", "OT",
             forall("y", "OT",
                    forall("z", "OT",
                           forall("v", "Inh",
                                  forall("w", "Inh",
                                         implies(conj(linked("Inh", "v", "x", "y"), linked("Inh", "w", "x", "z")),
                                                 conj(eq(var("y"), var("z")), eq(var("v"), var("w"))))))))));
  sig->add_constraint(
      "inh_implies_subOT",
      forall("x", "OT",
             forall("y", "OT",
                    forall("u", "Inh", implies(linked("Inh", "u", "x", "y"), sub("x", "y"))))));
  sig->add_constraint(
      "subOT_from_inh",
      forall("x", "OT",
             forall("y", "OT",
                    exists("z", "OT",
                           exists("u", "Inh",
                                  implies(sub("x", "y"),
                                          disj(linked("Inh", "u", "x", "y"),
                                               conj(linked("Inh", "u", "x", "z"), sub("z", "y")))))))));
  sig->add_constraint(
      "rel_endpoints_exist",
      forall("x", "RT",
             exists("y", "OT",
                    exists("z", "OT",
                           exists("u", "Fr",
                                  exists("v", "To",
                                         conj(linked("Fr", "u", "x", "y"), linked("To", "v", "x", "z"))))))));
  sig->add_constraint("from_unique",
                      nexists({{"u", "Fr"}, {"v", "Fr"}},
                              conj(eq(apply("src_Fr", {var("u")}), apply("src_Fr", {var("v")})),
                                   neq(var("u"), var("v")))));
  sig->add_constraint("to_unique",
                      nexists({{"u", "To"}, {"v", "To"}},
                              conj(eq(apply("src_To", {var("u")}), apply("src_To", {var("v")})),
                                   neq(var("u"), var("v")))));
  sig->add_constraint(
      "ORT_abstract",
      forall("x", "ORT",
             exists("y", "OT", exists("z", "RT", disj(eq(var("x"), var("y")), eq(var("x"), var("z")))))));
  sig->add_constraint(
      "DORT_abstract",
      forall("x", "DORT",
             exists("y", "ORT", exists("z", "DT", disj(eq(var("x"), var("y")), eq(var("x"), var("z")))))));
  sig->add_constraint(
      "subOT_transitive",
      forall("x", "OT",
             forall("y", "OT",
                    forall("z", "OT", implies(conj(sub("x", "y"), sub("y", "z")), sub("x", "z"))))));
  sig->add_constraint("subOT_irreflexive", forall("x", "OT", neg(sub("x", "x"))));
  sig->add_constraint("subOT_antisymmetric",
                      forall("x", "OT", forall("y", "OT", neg(conj(sub("x", "y"), sub("y", "x"))))));
  return sig;
}

}  // namespace

std::shared_ptr<const SignatureDecl> m2fol_signature_ptr() {
  static const std::shared_ptr<const SignatureDecl> sig = build_m2fol();
  return sig;
}

const SignatureDecl& m2fol_signature() { return *m2fol_signature_ptr(); }

SignatureDecl m2fol_signature_without_postulates() {
  SignatureDecl sig = m2fol_signature();
  sig.constraints.clear();
  sig.relations.erase(kMetaSubOT);
  return sig;
}

Structure m2fol_metamodel() {
  Structure mm;
  mm.name = "m2fol_meta";
  mm.language = m2fol_signature_ptr();
  for (const char* id : {"ot", "rt", "at", "dt", "d", "ort", "dort"}) mm.elements.emplace(id, "OT");
  for (const char* id : {"inh", "fr", "to"}) mm.elements.emplace(id, "RT");
  for (const char* id : {"val_dom", "ass_to", "ass_dt"}) mm.elements.emplace(id, "AT");
  mm.elements.emplace("list_dort", "DT");

  auto edge = [&](const std::string& relType, const std::string& id, const std::string& src,
                  const std::string& tgt) {
    mm.elements.emplace(id, relType);
    mm.functions["src_" + relType][{Value::element(id)}] = Value::element(src);
    mm.functions["tgt_" + relType][{Value::element(id)}] = Value::element(tgt);
  };
  edge("Inh", "ot_ort", "ot", "ort");
  edge("Inh", "rt_ort", "rt", "ort");
  edge("Inh", "ort_dort", "ort", "dort");
  edge("Inh", "dt_dort", "dt", "dort");
  edge("Fr", "source_inh", "inh", "ot");
  edge("Fr", "source_fr", "fr", "rt");
  edge("Fr", "source_to", "to", "rt");
  edge("To", "target_inh", "inh", "ot");
  edge("To", "target_fr", "fr", "ot");
  edge("To", "target_to", "to", "ot");

  auto attr = [&](const std::string& symbol, const std::string& owner, Value value) {
    mm.functions[symbol][{Value::element(owner)}] = std::move(value);
  };
  attr(kMetaOwner, "val_dom", Value::element("at"));
  attr(kMetaValdom, "val_dom", Value::list({Value::element("list_dort")}));
  attr(kMetaOwner, "ass_to", Value::element("at"));
  attr(kMetaValdom, "ass_to", Value::list({Value::element("ort")}));
  attr(kMetaOwner, "ass_dt", Value::element("d"));
  attr(kMetaValdom, "ass_dt", Value::list({Value::element("dt")}));

  return complete_closure(mm);
}

Structure complete_closure(const Structure& metamodel) {
  const SignatureDecl& sig = *metamodel.language;
  if (!sig.has_type("Inh", TypeKind::Relation) || !sig.relations.count(kMetaSubOT)) {
    throw KernelError(ErrCode::ShapeMismatch, "structure is not a metamodel over M2FOL");
  }
  const std::string srcSym = sig.source_symbol("Inh").name;
  const std::string tgtSym = sig.target_symbol("Inh").name;

  std::map<std::string, std::set<std::string>> succ;
  for (const auto& [id, type] : metamodel.elements) {
    if (type != "Inh") continue;
    auto srcInterp = metamodel.functions.find(srcSym);
    auto tgtInterp = metamodel.functions.find(tgtSym);
    if (srcInterp == metamodel.functions.end() || tgtInterp == metamodel.functions.end()) {
      throw KernelError(ErrCode::PartialFunction, "Inh element '" + id + "' lacks endpoints");
    }
    auto s = srcInterp->second.find({Value::element(id)});
    auto t = tgtInterp->second.find({Value::element(id)});
    if (s == srcInterp->second.end() || t == tgtInterp->second.end()) {
      throw KernelError(ErrCode::PartialFunction, "Inh element '" + id + "' lacks endpoints");
    }
    succ[s->second.sym].insert(t->second.sym);
  }

  std::set<std::pair<std::string, std::string>> closure;
  for (const auto& [start, direct] : succ) {
    std::vector<std::string> work(direct.begin(), direct.end());
    std::set<std::string> seen(direct.begin(), direct.end());
    while (!work.empty()) {
      std::string cur = work.back();
      work.pop_back();
      if (cur == start) {
        throw KernelError(ErrCode::CyclicInheritance, "inheritance cycle through '" + start + "'");
      }
      closure.emplace(start, cur);
      auto it = succ.find(cur);
      if (it == succ.end()) continue;
      for (const auto& next : it->second) {
        if (seen.insert(next).second) work.push_back(next);
      }
    }
  }

  Structure out = metamodel;
  auto& tuples = out.relations[kMetaSubOT];
  tuples.clear();
  for (const auto& [sub, super] : closure) {
    tuples.insert({Value::element(sub), Value::element(super)});
  }
  return out;
}

namespace {

Value attr_value(const Structure& mm, const std::string& symbol, const std::string& element) {
  auto interp = mm.functions.find(symbol);
  if (interp != mm.functions.end()) {
    auto entry = interp->second.find({Value::element(element)});
    if (entry != interp->second.end()) return entry->second;
  }
  throw KernelError(ErrCode::PartialFunction, "no " + symbol + " value for '" + element + "'");
}

}  // namespace

SignatureDecl derive_signature(const Structure& metamodel, const std::vector<NamedConstraint>& extraConstraints) {
  ConformanceReport report = check_conformance(metamodel);
  if (!report.conforms()) {
    std::string why = "metamodel does not conform to M2FOL";
    for (const auto& r : report.constraints) {
      if (!r.holds) {
        why += " (constraint '" + r.name + "' fails)";
        break;
      }
    }
    if (!report.structural.empty()) why += " (" + report.structural.front().to_string() + ")";
    throw KernelError(ErrCode::NonconformantMetamodel, why);
  }

  SignatureDecl out;
  out.name = metamodel.name;

  // step 1: object types and their inheritance order
  for (const auto& id : universe_of(metamodel, "OT")) {
    if (metamodel.declared_type(id) == "OT") out.types.emplace(id, TypeKind::Object);
  }
  std::set<std::pair<std::string, std::string>> order;
  auto subIt = metamodel.relations.find(kMetaSubOT);
  if (subIt != metamodel.relations.end()) {
    for (const auto& tuple : subIt->second) {
      if (tuple.size() == 2) order.emplace(tuple[0].sym, tuple[1].sym);
    }
  }
  // transitive reduction: keep (a,b) unless a path through some c explains it
  for (const auto& [a, b] : order) {
    bool redundant = false;
    for (const auto& [c, d] : order) {
      if (c == a && d != b && order.count({d, b})) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.inh.emplace(a, b);
  }

  // step 2 + 3: relation types with their endpoint symbols
  std::map<std::string, std::pair<std::string, std::string>> endpoints;  // rt elem -> (srcType, tgtType)
  for (const auto& id : universe_of(metamodel, "Fr")) {
    std::string relElem = attr_value(metamodel, "src_Fr", id).sym;
    endpoints[relElem].first = attr_value(metamodel, "tgt_Fr", id).sym;
  }
  for (const auto& id : universe_of(metamodel, "To")) {
    std::string relElem = attr_value(metamodel, "src_To", id).sym;
    endpoints[relElem].second = attr_value(metamodel, "tgt_To", id).sym;
  }
  for (const auto& id : universe_of(metamodel, "RT")) {
    auto ep = endpoints.find(id);
    if (ep == endpoints.end() || ep->second.first.empty() || ep->second.second.empty()) {
      throw KernelError(ErrCode::NonconformantMetamodel, "relation type '" + id + "' lacks from/to");
    }
    if (!out.types.emplace(id, TypeKind::Relation).second) {
      throw KernelError(ErrCode::NonconformantMetamodel, "derived name '" + id + "' clashes");
    }
    FunctionSymbol src;
    src.name = "src_" + id;
    src.role = SymbolRole::RelSource;
    src.domain = {id};
    src.codomain = ValueDomain::ref(ep->second.first);
    FunctionSymbol tgt;
    tgt.name = "tgt_" + id;
    tgt.role = SymbolRole::RelTarget;
    tgt.domain = {id};
    tgt.codomain = ValueDomain::ref(ep->second.second);
    out.functions.emplace(src.name, std::move(src));
    out.functions.emplace(tgt.name, std::move(tgt));
  }

  // step 4: data types; "Nat" is the built-in naturals, "list_<x>" a list
  // domain over a sibling, anything else an enumeration of its D elements
  std::map<std::string, std::vector<std::string>> enumConstants;
  for (const auto& id : universe_of(metamodel, "D")) {
    enumConstants[attr_value(metamodel, kMetaDtype, id).sym].push_back(id);
  }
  std::set<std::string> dataElems = universe_of(metamodel, "DT");
  std::map<std::string, ValueDomain> derivedDomains;
  for (const auto& id : dataElems) {
    if (id == kReservedNat) derivedDomains.emplace(id, ValueDomain::natural());
  }
  for (const auto& id : dataElems) {
    if (derivedDomains.count(id)) continue;
    if (id.rfind(kReservedListPrefix, 0) == 0) {
      const std::string inner = id.substr(std::string(kReservedListPrefix).size());
      if (out.types.count(inner)) {
        derivedDomains.emplace(id, ValueDomain::list_of(ValueDomain::ref(inner)));
        continue;
      }
      auto innerDomain = derivedDomains.find(inner);
      if (innerDomain != derivedDomains.end()) {
        derivedDomains.emplace(id, ValueDomain::list_of(innerDomain->second));
        continue;
      }
      throw KernelError(ErrCode::UnknownType,
                        "reserved data type '" + id + "' references no metamodel element");
    }
    auto consts = enumConstants.find(id);
    std::vector<std::string> names = consts == enumConstants.end() ? std::vector<std::string>{} : consts->second;
    std::sort(names.begin(), names.end());
    derivedDomains.emplace(id, ValueDomain::enumeration(std::move(names)));
  }
  for (const auto& [id, domain] : derivedDomains) {
    if (!out.types.emplace(id, TypeKind::Data).second) {
      throw KernelError(ErrCode::NonconformantMetamodel, "derived name '" + id + "' clashes");
    }
    out.domains.emplace(id, domain);
  }

  // step 5: attribute symbols
  for (const auto& id : universe_of(metamodel, "AT")) {
    const std::string ownerElem = attr_value(metamodel, kMetaOwner, id).sym;
    Value valueSpec = attr_value(metamodel, kMetaValdom, id);
    if (valueSpec.kind != ValueKind::List || valueSpec.items.empty()) {
      throw KernelError(ErrCode::ValueDomainMismatch, "attribute '" + id + "' has an empty value domain");
    }
    auto component = [&](const Value& item) -> ValueDomain {
      const std::string& ref = item.sym;
      auto dataIt = derivedDomains.find(ref);
      if (dataIt != derivedDomains.end()) return dataIt->second;
      if (out.types.count(ref)) return ValueDomain::ref(ref);
      throw KernelError(ErrCode::UnknownType, "attribute '" + id + "' references '" + ref + "'");
    };
    FunctionSymbol fn;
    fn.name = id;
    fn.role = SymbolRole::Attribute;
    fn.domain = {ownerElem};
    if (valueSpec.items.size() == 1) {
      fn.codomain = component(valueSpec.items[0]);
    } else {
      std::vector<ValueDomain> parts;
      parts.reserve(valueSpec.items.size());
      for (const auto& item : valueSpec.items) parts.push_back(component(item));
      fn.codomain = ValueDomain::product(std::move(parts));
    }
    if (!out.functions.emplace(fn.name, fn).second) {
      throw KernelError(ErrCode::NonconformantMetamodel, "derived symbol '" + id + "' clashes");
    }
  }

  // step 6: constraints are supplied, never deduced
  for (const auto& c : extraConstraints) {
    auto checked = typecheck_formula(out, c.formula);
    if (const auto* errors = std::get_if<std::vector<TypeError>>(&checked)) {
      std::string why = "constraint '" + c.name + "'";
      if (!errors->empty()) why += ": " + (*errors)[0].to_string();
      throw KernelError(ErrCode::IllTypedExtraConstraint, why);
    }
    out.add_constraint(c.name, c.formula);
  }
  return out;
}

ConformanceReport bootstrap_check() { return check_conformance(m2fol_metamodel()); }

const std::map<std::string, std::string>& m2fol_bootstrap_renames() {
  static const std::map<std::string, std::string> renames = {
      {"ot", "OT"},           {"rt", "RT"},
      {"at", "AT"},           {"dt", "DT"},
      {"d", "D"},             {"ort", "ORT"},
      {"dort", "DORT"},       {"inh", "Inh"},
      {"fr", "Fr"},           {"to", "To"},
      {"list_dort", "List_DORT"},
      {"val_dom", kMetaValdom}, {"ass_to", kMetaOwner},
      {"ass_dt", kMetaDtype},  {"src_inh", "src_Inh"},
      {"tgt_inh", "tgt_Inh"},  {"src_fr", "src_Fr"},
      {"tgt_fr", "tgt_Fr"},    {"src_to", "src_To"},
      {"tgt_to", "tgt_To"},    {"m2fol_meta", "M2FOL"},
  };
  return renames;
}

}  // namespace m2fol
