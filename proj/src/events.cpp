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

#include "m2fol/events.hpp"

#include <algorithm>

#include "m2fol/eval.hpp"
#include "m2fol/typecheck.hpp"

namespace m2fol {

namespace {

bool value_mentions_element(const Value& v, const std::set<std::string>& ids) {
  if (v.kind == ValueKind::Element) return ids.count(v.sym) != 0;
  for (const auto& item : v.items) {
    if (value_mentions_element(item, ids)) return true;
  }
  return false;
}

const FunctionSymbol& resolve_attr(const SignatureDecl& sig, const std::string& symbol) {
  auto it = sig.functions.find(symbol);
  if (it == sig.functions.end()) {
    throw KernelError(ErrCode::UnknownSymbol, "no function symbol '" + symbol + "'");
  }
  return it->second;
}

void check_owner(const Structure& m, const FunctionSymbol& fn, const std::string& element) {
  const std::string& declared = m.declared_type(element);
  if (fn.domain.size() != 1) {
    throw KernelError(ErrCode::TypeMismatch, "'" + fn.name + "' is not a single-owner symbol");
  }
  const std::string& owner = fn.domain[0];
  if (declared == owner) return;
  if (m.language->has_type(declared, TypeKind::Object) && m.language->has_type(owner, TypeKind::Object) &&
      subtype_order(*m.language).count({declared, owner})) {
    return;
  }
  throw KernelError(ErrCode::TypeMismatch,
                    "'" + element + "' of type '" + declared + "' does not own '" + fn.name + "'");
}

Structure do_create(const Structure& m, const CreateEvent& e) {
  const SignatureDecl& sig = *m.language;
  auto kindIt = sig.types.find(e.type);
  if (kindIt == sig.types.end() || kindIt->second == TypeKind::Data) {
    throw KernelError(ErrCode::UnknownType, "cannot create elements of '" + e.type + "'");
  }
  if (m.has_element(e.id)) {
    throw KernelError(ErrCode::DuplicateElement, "element id '" + e.id + "' already in use");
  }
  Structure out = m;
  out.elements.emplace(e.id, e.type);
  std::set<std::string> assigned;
  for (const auto& [symbol, value] : e.assigns) {
    const FunctionSymbol& fn = resolve_attr(sig, symbol);
    check_owner(out, fn, e.id);
    if (!value_in_domain(out, value, fn.codomain)) {
      throw KernelError(ErrCode::ValueDomainMismatch,
                        "value " + value.to_string() + " outside the codomain of '" + symbol + "'");
    }
    out.functions[symbol][{Value::element(e.id)}] = value;
    assigned.insert(symbol);
  }
  if (kindIt->second == TypeKind::Relation) {
    for (const FunctionSymbol* endpoint : {&sig.source_symbol(e.type), &sig.target_symbol(e.type)}) {
      if (!assigned.count(endpoint->name)) {
        throw KernelError(ErrCode::MissingAssignment,
                          "relation create needs '" + endpoint->name + "' assigned");
      }
    }
  }
  return out;
}

Structure do_set(const Structure& m, const SetAttrEvent& e) {
  const FunctionSymbol& fn = resolve_attr(*m.language, e.symbol);
  if (fn.role != SymbolRole::Attribute) {
    throw KernelError(ErrCode::TypeMismatch, "'" + e.symbol + "' is not an attribute");
  }
  if (!m.has_element(e.element)) {
    throw KernelError(ErrCode::UnknownElement, "no element '" + e.element + "'");
  }
  check_owner(m, fn, e.element);
  if (!value_in_domain(m, e.value, fn.codomain)) {
    throw KernelError(ErrCode::ValueDomainMismatch,
                      "value " + e.value.to_string() + " outside the codomain of '" + e.symbol + "'");
  }
  Structure out = m;
  out.functions[e.symbol][{Value::element(e.element)}] = e.value;
  return out;
}

Structure do_delete(const Structure& m, const DeleteEvent& e) {
  const SignatureDecl& sig = *m.language;
  if (!m.has_element(e.element)) {
    throw KernelError(ErrCode::UnknownElement, "no element '" + e.element + "'");
  }

  // Deletion set: the element plus, when cascading, every relation element
  // whose source or target lands in the set.
  std::set<std::string> doomed{e.element};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [id, declared] : m.elements) {
      if (doomed.count(id) || !sig.has_type(declared, TypeKind::Relation)) continue;
      for (const FunctionSymbol* endpoint : {&sig.source_symbol(declared), &sig.target_symbol(declared)}) {
        auto interp = m.functions.find(endpoint->name);
        if (interp == m.functions.end()) continue;
        auto entry = interp->second.find({Value::element(id)});
        if (entry == interp->second.end()) continue;
        if (value_mentions_element(entry->second, doomed)) {
          if (!e.cascade) {
            throw KernelError(ErrCode::DanglingReference,
                              "relation instance '" + id + "' still points at '" + e.element + "'");
          }
          doomed.insert(id);
          grew = true;
        }
      }
    }
  }

  // Reference attributes never cascade: any surviving value that mentions a
  // doomed element blocks the deletion.
  for (const auto& [symbol, interp] : m.functions) {
    auto fnIt = sig.functions.find(symbol);
    const bool isEndpoint = fnIt != sig.functions.end() && (fnIt->second.role == SymbolRole::RelSource ||
                                                            fnIt->second.role == SymbolRole::RelTarget);
    for (const auto& [args, value] : interp) {
      const bool ownerDoomed =
          !args.empty() && args[0].kind == ValueKind::Element && doomed.count(args[0].sym) != 0;
      if (ownerDoomed) continue;
      bool argsMention = false;
      for (const auto& a : args) argsMention = argsMention || value_mentions_element(a, doomed);
      if ((argsMention || value_mentions_element(value, doomed)) && !isEndpoint) {
        throw KernelError(ErrCode::DanglingReference,
                          "'" + symbol + "' value still references a deleted element");
      }
      if (argsMention || (isEndpoint && value_mentions_element(value, doomed))) {
        // endpoint entries of doomed relation elements vanish with them
        if (!e.cascade) {
          throw KernelError(ErrCode::DanglingReference,
                            "'" + symbol + "' still references '" + e.element + "'");
        }
      }
    }
  }

  // Relation-symbol tuples mentioning the set: strict mode refuses, cascade
  // drops them.
  for (const auto& [symbol, tuples] : m.relations) {
    for (const auto& tuple : tuples) {
      for (const auto& v : tuple) {
        if (value_mentions_element(v, doomed)) {
          if (!e.cascade) {
            throw KernelError(ErrCode::DanglingReference,
                              "tuple of '" + symbol + "' still references '" + e.element + "'");
          }
        }
      }
    }
  }

  Structure out = m;
  for (const auto& id : doomed) out.elements.erase(id);
  for (auto& [symbol, interp] : out.functions) {
    for (auto it = interp.begin(); it != interp.end();) {
      bool drop = false;
      for (const auto& a : it->first) drop = drop || value_mentions_element(a, doomed);
      drop = drop || value_mentions_element(it->second, doomed);
      it = drop ? interp.erase(it) : ++it;
    }
  }
  for (auto& [symbol, tuples] : out.relations) {
    for (auto it = tuples.begin(); it != tuples.end();) {
      bool drop = false;
      for (const auto& v : *it) drop = drop || value_mentions_element(v, doomed);
      it = drop ? tuples.erase(it) : ++it;
    }
  }
  return out;
}

}  // namespace

Structure apply_structural(const Structure& m, const StructuralEvent& event) {
  if (const auto* c = std::get_if<CreateEvent>(&event.op)) return do_create(m, *c);
  if (const auto* s = std::get_if<SetAttrEvent>(&event.op)) return do_set(m, *s);
  return do_delete(m, std::get<DeleteEvent>(event.op));
}

// ---- domain events ---------------------------------------------------------

namespace {

Structure run_steps(Structure m, const std::vector<EventStep>& steps, Env& env);

Structure run_step(Structure m, const EventStep& s, Env& env) {
  if (const auto* set = std::get_if<SetStep>(&s.step)) {
    Value elem = evaluate_term(m, set->element, env);
    if (elem.kind != ValueKind::Element) {
      throw KernelError(ErrCode::TypeMismatch, "set step target is not an element");
    }
    Value value = evaluate_term(m, set->value, env);
    return apply_structural(m, {SetAttrEvent{elem.sym, set->symbol, value}});
  }
  if (const auto* del = std::get_if<DeleteStep>(&s.step)) {
    Value elem = evaluate_term(m, del->element, env);
    if (elem.kind != ValueKind::Element) {
      throw KernelError(ErrCode::TypeMismatch, "delete step target is not an element");
    }
    return apply_structural(m, {DeleteEvent{elem.sym, del->cascade}});
  }
  const auto& fe = std::get<ForEachStep>(s.step);
  // Snapshot the range up front; the filter sees each intermediate state.
  std::vector<Value> range = enumerate_type(m, fe.typeName);
  for (const auto& value : range) {
    env[fe.var] = value;
    if (fe.where && !evaluate(m, fe.where, env)) continue;
    m = run_steps(std::move(m), fe.body, env);
  }
  env.erase(fe.var);
  return m;
}

Structure run_steps(Structure m, const std::vector<EventStep>& steps, Env& env) {
  for (const auto& s : steps) m = run_step(std::move(m), s, env);
  return m;
}

Env bind_args(const DomainEvent& event, const std::vector<Value>& args) {
  if (args.size() != event.params.size()) {
    throw KernelError(ErrCode::ArityMismatch,
                      "event '" + event.name + "' takes " + std::to_string(event.params.size()) + " arguments");
  }
  Env env;
  for (std::size_t i = 0; i < args.size(); ++i) env[event.params[i].first] = args[i];
  return env;
}

}  // namespace

Structure apply_domain(const Structure& m, const DomainEvent& event, const std::vector<Value>& args) {
  Env env = bind_args(event, args);
  ConformanceReport before = check_conformance(m);
  if (!before.conforms()) {
    throw KernelError(ErrCode::ResultNonconformant, "input model does not conform to its language");
  }
  if (event.pre && !evaluate(m, event.pre, env)) {
    throw KernelError(ErrCode::PreconditionFailed, "precondition of '" + event.name + "' is false");
  }
  Structure out = run_steps(m, event.body, env);
  if (event.post && !evaluate(out, event.post, env)) {
    throw KernelError(ErrCode::PostconditionFailed, "postcondition of '" + event.name + "' is false");
  }
  ConformanceReport after = check_conformance(out);
  if (!after.conforms()) {
    std::string why = "result violates the language";
    for (const auto& r : after.constraints) {
      if (!r.holds) {
        why = "result violates constraint '" + r.name + "'";
        break;
      }
    }
    throw KernelError(ErrCode::ResultNonconformant, why);
  }
  return out;
}

std::vector<std::vector<Value>> enabled(const Structure& m, const DomainEvent& event) {
  std::vector<std::vector<Value>> ranges;
  for (const auto& [name, type] : event.params) ranges.push_back(enumerate_type(m, type));
  std::vector<std::vector<Value>> out;
  std::vector<std::size_t> idx(ranges.size(), 0);
  for (const auto& range : ranges) {
    if (range.empty()) return out;
  }
  while (true) {
    std::vector<Value> args;
    args.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) args.push_back(ranges[i][idx[i]]);
    Env env = bind_args(event, args);
    if (!event.pre || evaluate(m, event.pre, env)) out.push_back(args);
    if (ranges.empty()) break;
    std::size_t pos = ranges.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < ranges[pos].size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }
  return out;
}

DomainEvent make_fire_event(const SignatureDecl& petriLike) {
  const bool shaped = petriLike.has_type("Place", TypeKind::Object) &&
                      petriLike.has_type("Transition", TypeKind::Object) &&
                      petriLike.has_type("Arc", TypeKind::Relation) && petriLike.functions.count("Tokens");
  if (!shaped) {
    throw KernelError(ErrCode::ShapeMismatch, "language lacks the Place/Transition/Arc/Tokens shape");
  }
  const std::string src = petriLike.source_symbol("Arc").name;
  const std::string tgt = petriLike.target_symbol("Arc").name;

  using namespace fml;
  auto input_arc = [&](const char* place) {
    // exists a : Arc . src(a) = place & tgt(a) = t
    return exists("a", "Arc",
                  conj(eq(apply(src, {var("a")}), var(place)), eq(apply(tgt, {var("a")}), var("t"))));
  };
  auto output_arc = [&](const char* place) {
    return exists("a", "Arc",
                  conj(eq(apply(src, {var("a")}), var("t")), eq(apply(tgt, {var("a")}), var(place))));
  };

  DomainEvent fire;
  fire.name = "fire";
  fire.params = {{"t", "Transition"}};
  fire.pre = forall("p", "Place", implies(input_arc("p"), rel(kBuiltinLt, {nat(0), apply("Tokens", {var("p")})})));
  fire.post = truth();

  ForEachStep consume;
  consume.var = "p";
  consume.typeName = "Place";
  consume.where = input_arc("p");
  consume.body.push_back(
      {SetStep{var("p"), "Tokens", apply(kBuiltinMinus, {apply("Tokens", {var("p")}), nat(1)})}});

  ForEachStep produce;
  produce.var = "p";
  produce.typeName = "Place";
  produce.where = output_arc("p");
  produce.body.push_back(
      {SetStep{var("p"), "Tokens", apply(kBuiltinPlus, {apply("Tokens", {var("p")}), nat(1)})}});

  fire.body.push_back({std::move(consume)});
  fire.body.push_back({std::move(produce)});
  return fire;
}

// ---- validation & equality --------------------------------------------------

namespace {

void check_steps(const SignatureDecl& sig, const std::vector<EventStep>& steps,
                 std::map<std::string, Sort>& env, const std::string& path, std::vector<TypeError>& out);

void check_one_step(const SignatureDecl& sig, const EventStep& s, std::map<std::string, Sort>& env,
                    const std::string& path, std::vector<TypeError>& out) {
  auto check_sub = [&](const FormulaPtr& f, const std::string& where) {
    if (!f) return;
    auto result = typecheck_formula(sig, f, env);
    if (const auto* errors = std::get_if<std::vector<TypeError>>(&result)) {
      for (auto e : *errors) {
        e.path = where + ":" + e.path;
        out.push_back(e);
      }
    }
  };
  if (const auto* set = std::get_if<SetStep>(&s.step)) {
    auto it = sig.functions.find(set->symbol);
    if (it == sig.functions.end() || it->second.role != SymbolRole::Attribute) {
      out.push_back({{}, "UNKNOWN_SYMBOL", path, "set step needs an attribute, got '" + set->symbol + "'"});
      return;
    }
    // element and value terms are checked via synthetic equations
    check_sub(fml::eq(set->element, set->element), path + ".element");
    check_sub(fml::eq(set->value, set->value), path + ".value");
  } else if (const auto* del = std::get_if<DeleteStep>(&s.step)) {
    check_sub(fml::eq(del->element, del->element), path + ".element");
  } else {
    const auto& fe = std::get<ForEachStep>(s.step);
    if (!sig.types.count(fe.typeName)) {
      out.push_back({{}, "UNKNOWN_SYMBOL", path, "foreach over undeclared type '" + fe.typeName + "'"});
      return;
    }
    const bool hadBinding = env.count(fe.var) != 0;
    Sort saved = hadBinding ? env[fe.var] : Sort{};
    env[fe.var] = sig.has_type(fe.typeName, TypeKind::Data) ? domain_to_sort(sig.domains.at(fe.typeName))
                                                            : Sort::element(fe.typeName);
    check_sub(fe.where, path + ".where");
    check_steps(sig, fe.body, env, path + ".body", out);
    if (hadBinding) {
      env[fe.var] = saved;
    } else {
      env.erase(fe.var);
    }
  }
}

void check_steps(const SignatureDecl& sig, const std::vector<EventStep>& steps,
                 std::map<std::string, Sort>& env, const std::string& path, std::vector<TypeError>& out) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    check_one_step(sig, steps[i], env, path + "[" + std::to_string(i) + "]", out);
  }
}

bool steps_equal(const std::vector<EventStep>& a, const std::vector<EventStep>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].step.index() != b[i].step.index()) return false;
    if (const auto* sa = std::get_if<SetStep>(&a[i].step)) {
      const auto& sb = std::get<SetStep>(b[i].step);
      if (sa->symbol != sb.symbol || !terms_equal(sa->element, sb.element) || !terms_equal(sa->value, sb.value)) {
        return false;
      }
    } else if (const auto* da = std::get_if<DeleteStep>(&a[i].step)) {
      const auto& db = std::get<DeleteStep>(b[i].step);
      if (da->cascade != db.cascade || !terms_equal(da->element, db.element)) return false;
    } else {
      const auto& fa = std::get<ForEachStep>(a[i].step);
      const auto& fb = std::get<ForEachStep>(b[i].step);
      if (fa.var != fb.var || fa.typeName != fb.typeName || !formulas_equal(fa.where, fb.where) ||
          !steps_equal(fa.body, fb.body)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<TypeError> check_event(const SignatureDecl& sig, const DomainEvent& event) {
  std::vector<TypeError> out;
  std::map<std::string, Sort> env;
  for (const auto& [pname, ptype] : event.params) {
    auto it = sig.types.find(ptype);
    if (it == sig.types.end()) {
      out.push_back({{}, "UNKNOWN_SYMBOL", "params", "parameter '" + pname + "' has undeclared type '" + ptype + "'"});
      continue;
    }
    if (it->second == TypeKind::Data) {
      auto dom = sig.domains.find(ptype);
      if (dom == sig.domains.end() || !domain_is_finite(dom->second)) {
        out.push_back({{}, "QUANTIFIER_OVER_INFINITE_DOMAIN", "params",
                       "parameter '" + pname + "' must range over a finite domain"});
        continue;
      }
      env[pname] = domain_to_sort(dom->second);
    } else {
      env[pname] = Sort::element(ptype);
    }
  }
  auto check_formula = [&](const FormulaPtr& f, const std::string& where) {
    if (!f) return;
    auto result = typecheck_formula(sig, f, env);
    if (const auto* errors = std::get_if<std::vector<TypeError>>(&result)) {
      for (auto e : *errors) {
        e.path = where + ":" + e.path;
        out.push_back(e);
      }
    }
  };
  check_formula(event.pre, "pre");
  check_formula(event.post, "post");
  check_steps(sig, event.body, env, "do", out);
  return out;
}

bool events_equal(const DomainEvent& a, const DomainEvent& b) {
  return a.name == b.name && a.params == b.params && formulas_equal(a.pre, b.pre) &&
         formulas_equal(a.post, b.post) && steps_equal(a.body, b.body);
}

}  // namespace m2fol
