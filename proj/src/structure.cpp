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

#include "m2fol/structure.hpp"

#include <algorithm>

#include "m2fol/eval.hpp"
#include "m2fol/typecheck.hpp"

namespace m2fol {

const std::string& Structure::declared_type(const std::string& id) const {
  auto it = elements.find(id);
  if (it == elements.end()) throw KernelError(ErrCode::UnknownElement, "no element '" + id + "'");
  return it->second;
}

std::set<std::string> universe_of(const Structure& m, const std::string& type) {
  const SignatureDecl& sig = *m.language;
  TypeKind kind = sig.kind_of(type);
  if (kind == TypeKind::Data) {
    throw KernelError(ErrCode::TypeMismatch, "universe_of applies to object and relation types, not '" + type + "'");
  }
  std::set<std::string> members{type};
  if (kind == TypeKind::Object) {
    for (const auto& [sub, super] : subtype_order(sig)) {
      if (super == type) members.insert(sub);
    }
  }
  std::set<std::string> out;
  for (const auto& [id, declared] : m.elements) {
    if (members.count(declared)) out.insert(id);
  }
  return out;
}

bool value_in_domain(const Structure& m, const Value& value, const ValueDomain& domain) {
  switch (domain.kind) {
    case DomainKind::Enum:
      return value.kind == ValueKind::EnumConst &&
             std::find(domain.constants.begin(), domain.constants.end(), value.sym) != domain.constants.end();
    case DomainKind::Nat:
      return value.kind == ValueKind::Nat;
    case DomainKind::Ref: {
      if (value.kind != ValueKind::Element) return false;
      auto it = m.elements.find(value.sym);
      if (it == m.elements.end()) return false;
      const std::string& declared = it->second;
      if (declared == domain.target) return true;
      if (!m.language->has_type(declared, TypeKind::Object) ||
          !m.language->has_type(domain.target, TypeKind::Object)) {
        return false;
      }
      return subtype_order(*m.language).count({declared, domain.target}) != 0;
    }
    case DomainKind::Product: {
      if (value.kind != ValueKind::Tuple || value.items.size() != domain.parts.size()) return false;
      for (std::size_t i = 0; i < value.items.size(); ++i) {
        if (!value_in_domain(m, value.items[i], domain.parts[i])) return false;
      }
      return true;
    }
    case DomainKind::Union: {
      for (const auto& part : domain.parts) {
        if (value_in_domain(m, value, part)) return true;
      }
      return false;
    }
    case DomainKind::SetOf: {
      if (value.kind != ValueKind::Set) return false;
      for (const auto& item : value.items) {
        if (!value_in_domain(m, item, domain.parts[0])) return false;
      }
      return true;
    }
    case DomainKind::ListOf: {
      if (value.kind != ValueKind::List) return false;
      for (const auto& item : value.items) {
        if (!value_in_domain(m, item, domain.parts[0])) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

// Argument positions are declared by type name; element args must lie in that
// type's universe, data args in the named domain.
bool arg_value_ok(const Structure& m, const Value& value, const std::string& typeName) {
  const SignatureDecl& sig = *m.language;
  auto it = sig.types.find(typeName);
  if (it == sig.types.end()) return false;
  if (it->second == TypeKind::Data) {
    auto dom = sig.domains.find(typeName);
    return dom != sig.domains.end() && value_in_domain(m, value, dom->second);
  }
  return value_in_domain(m, value, ValueDomain::ref(typeName));
}

}  // namespace

std::vector<Finding> validate_structure(const Structure& m) {
  std::vector<Finding> out;
  const SignatureDecl& sig = *m.language;

  for (const auto& [id, declared] : m.elements) {
    auto it = sig.types.find(declared);
    if (it == sig.types.end() || it->second == TypeKind::Data) {
      out.push_back({"UNDECLARED_TYPE", id, "element declared as '" + declared + "'"});
    }
  }

  for (const auto& [symbol, interp] : m.functions) {
    auto it = sig.functions.find(symbol);
    if (it == sig.functions.end()) {
      out.push_back({"UNKNOWN_SYMBOL", symbol, "interpretation for an undeclared function"});
      continue;
    }
    const FunctionSymbol& fn = it->second;
    if (fn.backing != Backing::None) {
      out.push_back({"BAD_ARGS", symbol, "builtin-backed symbols carry no stored interpretation"});
      continue;
    }
    for (const auto& [args, value] : interp) {
      if (args.size() != fn.domain.size()) {
        out.push_back({"BAD_ARGS", symbol, "entry with arity " + std::to_string(args.size())});
        continue;
      }
      bool argsOk = true;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (!arg_value_ok(m, args[i], fn.domain[i])) {
          out.push_back({"BAD_ARGS", symbol,
                         "argument " + std::to_string(i + 1) + " = " + args[i].to_string() +
                             " outside type '" + fn.domain[i] + "'"});
          argsOk = false;
        }
      }
      if (argsOk && !value_in_domain(m, value, fn.codomain)) {
        out.push_back({"BAD_CODOMAIN", symbol, "value " + value.to_string() + " outside the codomain"});
      }
    }
  }

  // Totality of endpoint and attribute functions over their owner universes.
  for (const auto& [name, fn] : sig.functions) {
    if (fn.role == SymbolRole::Auxiliary || fn.backing != Backing::None) continue;
    if (fn.domain.size() != 1) continue;
    auto ownerKind = sig.types.find(fn.domain[0]);
    if (ownerKind == sig.types.end() || ownerKind->second == TypeKind::Data) continue;
    const auto interp = m.functions.find(name);
    for (const auto& id : universe_of(m, fn.domain[0])) {
      std::vector<Value> key{Value::element(id)};
      if (interp == m.functions.end() || !interp->second.count(key)) {
        out.push_back({"MISSING_INTERPRETATION", name, "no value for element '" + id + "'"});
      }
    }
  }

  for (const auto& [symbol, tuples] : m.relations) {
    auto it = sig.relations.find(symbol);
    if (it == sig.relations.end()) {
      out.push_back({"UNKNOWN_SYMBOL", symbol, "interpretation for an undeclared relation"});
      continue;
    }
    const RelationSymbol& rel = it->second;
    if (rel.backing != Backing::None && !tuples.empty()) {
      out.push_back({"BAD_TUPLE", symbol, "builtin-backed symbols carry no stored tuples"});
      continue;
    }
    for (const auto& tuple : tuples) {
      if (tuple.size() != rel.argTypes.size()) {
        out.push_back({"BAD_TUPLE", symbol, "tuple with arity " + std::to_string(tuple.size())});
        continue;
      }
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (!value_in_domain(m, tuple[i], rel.argTypes[i])) {
          out.push_back({"BAD_TUPLE", symbol,
                         "position " + std::to_string(i + 1) + " = " + tuple[i].to_string() +
                             " outside the declared sort"});
        }
      }
    }
  }

  return out;
}

bool ConformanceReport::conforms() const {
  if (!structural.empty()) return false;
  return std::all_of(constraints.begin(), constraints.end(), [](const ConstraintResult& r) { return r.holds; });
}

std::size_t ConformanceReport::held() const {
  return static_cast<std::size_t>(
      std::count_if(constraints.begin(), constraints.end(), [](const ConstraintResult& r) { return r.holds; }));
}

namespace {

ConstraintResult eval_constraint(const Structure& m, const NamedConstraint& constraint) {
  ConstraintResult result;
  result.name = constraint.name;
  auto checked = typecheck_formula(*m.language, constraint.formula);
  if (const auto* errors = std::get_if<std::vector<TypeError>>(&checked)) {
    result.holds = false;
    result.note = errors->empty() ? "ill-typed constraint" : (*errors)[0].to_string();
    return result;
  }
  const TypedFormula& typed = std::get<TypedFormula>(checked);

  // Peel the outermost universal prefix so a failure reports its witnesses.
  std::vector<std::pair<std::string, std::string>> prefix;
  FormulaPtr body = constraint.formula;
  while (const auto* fa = std::get_if<ForallFormula>(&body->node)) {
    prefix.emplace_back(fa->var, fa->typeName);
    body = fa->body;
  }
  try {
    if (prefix.empty()) {
      result.holds = evaluate(m, typed);
      return result;
    }
    std::vector<std::vector<Value>> ranges;
    for (const auto& [var, type] : prefix) ranges.push_back(enumerate_type(m, type));
    std::vector<std::size_t> idx(prefix.size(), 0);
    for (const auto& range : ranges) {
      if (range.empty()) {
        result.holds = true;  // vacuous
        return result;
      }
    }
    while (true) {
      Env env;
      for (std::size_t i = 0; i < prefix.size(); ++i) env[prefix[i].first] = ranges[i][idx[i]];
      if (!evaluate(m, body, env)) {
        result.holds = false;
        for (std::size_t i = 0; i < prefix.size(); ++i) {
          result.witness.emplace_back(prefix[i].first, ranges[i][idx[i]]);
        }
        return result;
      }
      std::size_t pos = prefix.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < ranges[pos].size()) break;
        idx[pos] = 0;
        if (pos == 0) {
          result.holds = true;
          return result;
        }
      }
    }
  } catch (const KernelError& e) {
    result.holds = false;
    result.note = e.what();
    return result;
  }
}

}  // namespace

ConformanceReport check_conformance(const Structure& m) {
  ConformanceReport report;
  report.structural = validate_structure(m);
  for (const auto& constraint : m.language->constraints) {
    report.constraints.push_back(eval_constraint(m, constraint));
  }
  return report;
}

bool structures_equal(const Structure& a, const Structure& b) {
  if (a.name != b.name) return false;
  if (a.language != b.language) {
    if (!a.language || !b.language) return false;
    if (!signatures_equal(*a.language, *b.language)) return false;
  }
  return a.elements == b.elements && a.functions == b.functions && a.relations == b.relations;
}

}  // namespace m2fol
