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

#include "m2fol/typecheck.hpp"

#include <optional>

#include "m2fol/printer.hpp"

namespace m2fol {

Sort Sort::element(std::string typeName) {
  Sort s;
  s.kind = Kind::Element;
  s.type = std::move(typeName);
  return s;
}

Sort Sort::data(ValueDomain domain) {
  Sort s;
  s.kind = Kind::Data;
  s.domain = std::move(domain);
  return s;
}

std::string Sort::to_string() const {
  if (kind == Kind::Element) return type;
  return print_domain(domain);
}

std::string TypeError::to_string() const {
  std::string s = "[" + code + "] " + message;
  if (!path.empty()) s += " (at " + path + ")";
  return s;
}

ValueDomain sort_to_domain(const Sort& sort) {
  if (sort.kind == Sort::Kind::Element) return ValueDomain::ref(sort.type);
  return sort.domain;
}

Sort domain_to_sort(const ValueDomain& domain) {
  if (domain.kind == DomainKind::Ref) return Sort::element(domain.target);
  return Sort::data(domain);
}

namespace {

using Closure = std::set<std::pair<std::string, std::string>>;

Closure tolerant_closure(const SignatureDecl& sig) {
  // Like subtype_order but silent on cycles, so the checker stays usable
  // while validate_signature is still collecting findings.
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& [sub, super] : sig.inh) succ[sub].insert(super);
  Closure closure;
  for (const auto& [start, direct] : succ) {
    std::vector<std::string> work(direct.begin(), direct.end());
    std::set<std::string> seen(direct.begin(), direct.end());
    while (!work.empty()) {
      std::string cur = work.back();
      work.pop_back();
      closure.emplace(start, cur);
      auto it = succ.find(cur);
      if (it == succ.end()) continue;
      for (const auto& next : it->second) {
        if (seen.insert(next).second) work.push_back(next);
      }
    }
  }
  return closure;
}

class DomainRelations {
 public:
  explicit DomainRelations(const SignatureDecl& sig) : sig_(sig), closure_(tolerant_closure(sig)) {}

  bool element_le(const std::string& sub, const std::string& super) const {
    if (sub == super) return true;
    auto itSub = sig_.types.find(sub);
    auto itSuper = sig_.types.find(super);
    if (itSub == sig_.types.end() || itSuper == sig_.types.end()) return false;
    if (itSub->second != TypeKind::Object || itSuper->second != TypeKind::Object) return false;
    return closure_.count({sub, super}) != 0;
  }

  bool elements_comparable(const std::string& a, const std::string& b) const {
    if (a == b) return true;
    auto ita = sig_.types.find(a);
    auto itb = sig_.types.find(b);
    if (ita == sig_.types.end() || itb == sig_.types.end()) return false;
    if (ita->second != TypeKind::Object || itb->second != TypeKind::Object) return false;
    std::set<std::string> ups{a};
    for (const auto& [sub, super] : closure_) {
      if (sub == a) ups.insert(super);
    }
    if (ups.count(b)) return true;
    for (const auto& [sub, super] : closure_) {
      if (sub == b && ups.count(super)) return true;
    }
    return false;
  }

  // Every value of domain `a` lies in domain `b`.
  bool fits(const ValueDomain& a, const ValueDomain& b) const {
    if (a.is_never()) return true;
    if (a.kind == DomainKind::Union) {
      for (const auto& part : a.parts) {
        if (!fits(part, b)) return false;
      }
      return true;
    }
    if (b.kind == DomainKind::Union) {
      for (const auto& part : b.parts) {
        if (fits(a, part)) return true;
      }
      return false;
    }
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case DomainKind::Nat:
        return true;
      case DomainKind::Enum: {
        for (const auto& c : a.constants) {
          bool found = false;
          for (const auto& d : b.constants) {
            if (c == d) {
              found = true;
              break;
            }
          }
          if (!found) return false;
        }
        return true;
      }
      case DomainKind::Ref:
        return element_le(a.target, b.target);
      case DomainKind::Product: {
        if (a.parts.size() != b.parts.size()) return false;
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
          if (!fits(a.parts[i], b.parts[i])) return false;
        }
        return true;
      }
      case DomainKind::SetOf:
      case DomainKind::ListOf:
        return fits(a.parts[0], b.parts[0]);
      default:
        return false;
    }
  }

  // A value of domain `a` could equal a value of domain `b`.
  bool comparable(const ValueDomain& a, const ValueDomain& b) const {
    if (a.is_never() || b.is_never()) return true;
    if (a.kind == DomainKind::Union) {
      for (const auto& part : a.parts) {
        if (comparable(part, b)) return true;
      }
      return false;
    }
    if (b.kind == DomainKind::Union) {
      for (const auto& part : b.parts) {
        if (comparable(a, part)) return true;
      }
      return false;
    }
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case DomainKind::Nat:
        return true;
      case DomainKind::Enum:
        return a == b;
      case DomainKind::Ref:
        return elements_comparable(a.target, b.target);
      case DomainKind::Product: {
        if (a.parts.size() != b.parts.size()) return false;
        for (std::size_t i = 0; i < a.parts.size(); ++i) {
          if (!comparable(a.parts[i], b.parts[i])) return false;
        }
        return true;
      }
      case DomainKind::SetOf:
      case DomainKind::ListOf:
        return comparable(a.parts[0], b.parts[0]);
      default:
        return false;
    }
  }

 private:
  const SignatureDecl& sig_;
  Closure closure_;
};

class Checker {
 public:
  Checker(const SignatureDecl& sig, const std::map<std::string, Sort>& env)
      : sig_(sig), rel_(sig), constants_(constant_table(sig)) {
    for (const auto& [name, sort] : env) scope_.emplace_back(name, sort);
  }

  void check(const FormulaPtr& f) { formula(f, "f"); }

  TypecheckResult result(const FormulaPtr& f) {
    if (!errors_.empty()) return errors_;
    return TypedFormula{f, std::move(sorts_)};
  }

 private:
  std::optional<Sort> fail(const SourceSpan& span, const std::string& code, const std::string& path,
                           const std::string& message) {
    errors_.push_back({span, code, path, message});
    return std::nullopt;
  }

  const Sort* lookup(const std::string& var) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == var) return &it->second;
    }
    return nullptr;
  }

  std::optional<Sort> record(const Term* node, Sort sort) {
    sorts_[node] = sort;
    return sort;
  }

  std::optional<Sort> term(const TermPtr& t, const std::string& path) {
    if (!t) return fail({}, "TYPE_MISMATCH", path, "missing term");
    if (const auto* v = std::get_if<VarTerm>(&t->node)) {
      const Sort* sort = lookup(v->name);
      if (!sort) return fail(t->span, "UNBOUND_VARIABLE", path, "unbound variable '" + v->name + "'");
      return record(t.get(), *sort);
    }
    if (const auto* c = std::get_if<ConstTerm>(&t->node)) {
      auto it = constants_.find(c->name);
      if (it == constants_.end()) {
        return fail(t->span, "UNKNOWN_SYMBOL", path, "unknown constant '" + c->name + "'");
      }
      return record(t.get(), Sort::data(it->second));
    }
    if (std::get_if<NatTerm>(&t->node)) {
      return record(t.get(), Sort::data(ValueDomain::natural()));
    }
    if (const auto* f = std::get_if<ApplyTerm>(&t->node)) {
      return apply(t, *f, path);
    }
    if (const auto* p = std::get_if<ProjTerm>(&t->node)) {
      auto inner = term(p->tuple, path + ".proj");
      if (!inner) return std::nullopt;
      if (inner->kind != Sort::Kind::Data || inner->domain.kind != DomainKind::Product) {
        return fail(t->span, "TYPE_MISMATCH", path, "projection needs a tuple-valued term");
      }
      if (p->index < 1 || p->index > inner->domain.parts.size()) {
        return fail(t->span, "TYPE_MISMATCH", path,
                    "projection index " + std::to_string(p->index) + " outside arity " +
                        std::to_string(inner->domain.parts.size()));
      }
      return record(t.get(), domain_to_sort(inner->domain.parts[p->index - 1]));
    }
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
      std::vector<ValueDomain> parts;
      for (std::size_t i = 0; i < tp->parts.size(); ++i) {
        auto s = term(tp->parts[i], path + ".tuple" + std::to_string(i + 1));
        if (!s) return std::nullopt;
        parts.push_back(sort_to_domain(*s));
      }
      if (parts.size() < 2) return fail(t->span, "TYPE_MISMATCH", path, "tuples need at least two components");
      return record(t.get(), Sort::data(ValueDomain::product(std::move(parts))));
    }
    if (const auto* s = std::get_if<SetTerm>(&t->node)) {
      return collection(t, s->elements, /*isSet=*/true, path);
    }
    const auto& l = std::get<ListTerm>(t->node);
    return collection(t, l.elements, /*isSet=*/false, path);
  }

  std::optional<Sort> collection(const TermPtr& t, const std::vector<TermPtr>& elements, bool isSet,
                                 const std::string& path) {
    if (elements.empty()) {
      ValueDomain d = isSet ? ValueDomain::set_of(ValueDomain::never()) : ValueDomain::list_of(ValueDomain::never());
      return record(t.get(), Sort::data(std::move(d)));
    }
    std::optional<Sort> first;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      auto s = term(elements[i], path + ".item" + std::to_string(i + 1));
      if (!s) return std::nullopt;
      if (!first) {
        first = s;
      } else if (!rel_.comparable(sort_to_domain(*first), sort_to_domain(*s))) {
        return fail(t->span, "TYPE_MISMATCH", path, "mixed element domains in collection literal");
      }
    }
    ValueDomain inner = sort_to_domain(*first);
    ValueDomain d = isSet ? ValueDomain::set_of(std::move(inner)) : ValueDomain::list_of(std::move(inner));
    return record(t.get(), Sort::data(std::move(d)));
  }

  std::optional<Sort> apply(const TermPtr& t, const ApplyTerm& f, const std::string& path) {
    auto it = sig_.functions.find(f.symbol);
    if (it == sig_.functions.end()) {
      if (f.symbol == kBuiltinPlus || f.symbol == kBuiltinMinus) {
        if (f.args.size() != 2) {
          return fail(t->span, "ARITY_MISMATCH", path, "'" + f.symbol + "' takes two arguments");
        }
        for (std::size_t i = 0; i < 2; ++i) {
          auto s = term(f.args[i], path + "." + f.symbol + std::to_string(i + 1));
          if (!s) return std::nullopt;
          if (!rel_.fits(sort_to_domain(*s), ValueDomain::natural())) {
            return fail(t->span, "TYPE_MISMATCH", path, "'" + f.symbol + "' needs natural-number arguments");
          }
        }
        return record(t.get(), Sort::data(ValueDomain::natural()));
      }
      if (sig_.relations.count(f.symbol)) {
        return fail(t->span, "TYPE_MISMATCH", path, "relation symbol '" + f.symbol + "' used as a term");
      }
      return fail(t->span, "UNKNOWN_SYMBOL", path, "unknown function symbol '" + f.symbol + "'");
    }
    const FunctionSymbol& fn = it->second;
    if (f.args.size() != fn.domain.size()) {
      return fail(t->span, "ARITY_MISMATCH", path,
                  "'" + fn.name + "' takes " + std::to_string(fn.domain.size()) + " arguments, got " +
                      std::to_string(f.args.size()));
    }
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      auto s = term(f.args[i], path + "." + fn.name + ".arg" + std::to_string(i + 1));
      if (!s) return std::nullopt;
      if (!arg_fits(*s, fn.domain[i])) {
        return fail(f.args[i]->span, "TYPE_MISMATCH", path,
                    "argument " + std::to_string(i + 1) + " of '" + fn.name + "': expected " + fn.domain[i] +
                        ", got " + s->to_string());
      }
    }
    return record(t.get(), domain_to_sort(fn.codomain));
  }

  bool arg_fits(const Sort& sort, const std::string& typeName) {
    auto it = sig_.types.find(typeName);
    if (it == sig_.types.end()) return false;
    if (it->second == TypeKind::Data) {
      auto dom = sig_.domains.find(typeName);
      if (dom == sig_.domains.end()) return false;
      return rel_.fits(sort_to_domain(sort), dom->second);
    }
    return rel_.fits(sort_to_domain(sort), ValueDomain::ref(typeName));
  }

  void quantifier(const std::string& var, const std::string& typeName, const FormulaPtr& body,
                  const SourceSpan& span, const std::string& path) {
    auto it = sig_.types.find(typeName);
    if (it == sig_.types.end()) {
      fail(span, "UNKNOWN_SYMBOL", path, "unknown type '" + typeName + "' in quantifier");
      return;
    }
    Sort sort = Sort::element(typeName);
    if (it->second == TypeKind::Data) {
      auto dom = sig_.domains.find(typeName);
      if (dom == sig_.domains.end()) {
        fail(span, "UNKNOWN_SYMBOL", path, "data type '" + typeName + "' has no domain");
        return;
      }
      if (!domain_is_finite(dom->second)) {
        fail(span, "QUANTIFIER_OVER_INFINITE_DOMAIN", path,
             "cannot quantify over infinite domain '" + typeName + "'");
        return;
      }
      sort = Sort::data(dom->second);
    }
    scope_.emplace_back(var, sort);
    formula(body, path + ".body");
    scope_.pop_back();
  }

  void formula(const FormulaPtr& f, const std::string& path) {
    if (!f) {
      fail({}, "TYPE_MISMATCH", path, "missing formula");
      return;
    }
    if (std::holds_alternative<TrueFormula>(f->node)) return;
    if (const auto* e = std::get_if<EqFormula>(&f->node)) {
      auto l = term(e->lhs, path + ".eq.lhs");
      auto r = term(e->rhs, path + ".eq.rhs");
      if (l && r && !rel_.comparable(sort_to_domain(*l), sort_to_domain(*r))) {
        fail(f->span, "TYPE_MISMATCH", path,
             "cannot compare " + l->to_string() + " with " + r->to_string());
      }
      return;
    }
    if (const auto* r = std::get_if<RelAppFormula>(&f->node)) {
      auto it = sig_.relations.find(r->symbol);
      if (it == sig_.relations.end()) {
        if (r->symbol == kBuiltinLt) {
          if (r->args.size() != 2) {
            fail(f->span, "ARITY_MISMATCH", path, "'lt' takes two arguments");
            return;
          }
          for (std::size_t i = 0; i < 2; ++i) {
            auto s = term(r->args[i], path + ".lt" + std::to_string(i + 1));
            if (s && !rel_.fits(sort_to_domain(*s), ValueDomain::natural())) {
              fail(f->span, "TYPE_MISMATCH", path, "'lt' needs natural-number arguments");
            }
          }
          return;
        }
        if (sig_.functions.count(r->symbol)) {
          fail(f->span, "TYPE_MISMATCH", path, "function symbol '" + r->symbol + "' used as a relation");
        } else {
          fail(f->span, "UNKNOWN_SYMBOL", path, "unknown relation symbol '" + r->symbol + "'");
        }
        return;
      }
      const RelationSymbol& rs = it->second;
      if (r->args.size() != rs.argTypes.size()) {
        fail(f->span, "ARITY_MISMATCH", path,
             "'" + rs.name + "' takes " + std::to_string(rs.argTypes.size()) + " arguments, got " +
                 std::to_string(r->args.size()));
        return;
      }
      for (std::size_t i = 0; i < r->args.size(); ++i) {
        auto s = term(r->args[i], path + "." + rs.name + ".arg" + std::to_string(i + 1));
        if (s && !rel_.fits(sort_to_domain(*s), rs.argTypes[i])) {
          fail(r->args[i]->span, "TYPE_MISMATCH", path,
               "argument " + std::to_string(i + 1) + " of '" + rs.name + "' has the wrong sort");
        }
      }
      return;
    }
    if (const auto* m = std::get_if<MemberFormula>(&f->node)) {
      auto elem = term(m->element, path + ".in.lhs");
      auto set = term(m->set, path + ".in.rhs");
      if (!elem || !set) return;
      if (set->kind != Sort::Kind::Data || set->domain.kind != DomainKind::SetOf) {
        fail(f->span, "TYPE_MISMATCH", path, "membership needs a set-valued right-hand side");
        return;
      }
      if (!rel_.comparable(sort_to_domain(*elem), set->domain.parts[0])) {
        fail(f->span, "TYPE_MISMATCH", path, "member candidate cannot live in this set");
      }
      return;
    }
    if (const auto* n = std::get_if<NotFormula>(&f->node)) {
      formula(n->body, path + ".not");
      return;
    }
    if (const auto* a = std::get_if<AndFormula>(&f->node)) {
      formula(a->lhs, path + ".and.lhs");
      formula(a->rhs, path + ".and.rhs");
      return;
    }
    if (const auto* o = std::get_if<OrFormula>(&f->node)) {
      formula(o->lhs, path + ".or.lhs");
      formula(o->rhs, path + ".or.rhs");
      return;
    }
    if (const auto* i = std::get_if<ImpliesFormula>(&f->node)) {
      formula(i->lhs, path + ".implies.lhs");
      formula(i->rhs, path + ".implies.rhs");
      return;
    }
    if (const auto* fa = std::get_if<ForallFormula>(&f->node)) {
      quantifier(fa->var, fa->typeName, fa->body, f->span, path + ".forall(" + fa->var + ")");
      return;
    }
    const auto& ex = std::get<ExistsFormula>(f->node);
    quantifier(ex.var, ex.typeName, ex.body, f->span, path + ".exists(" + ex.var + ")");
  }

  const SignatureDecl& sig_;
  DomainRelations rel_;
  std::map<std::string, ValueDomain> constants_;
  std::vector<std::pair<std::string, Sort>> scope_;
  std::vector<TypeError> errors_;
  std::map<const Term*, Sort> sorts_;
};

}  // namespace

TypecheckResult typecheck_formula(const SignatureDecl& sig, const FormulaPtr& formula) {
  return typecheck_formula(sig, formula, {});
}

TypecheckResult typecheck_formula(const SignatureDecl& sig, const FormulaPtr& formula,
                                  const std::map<std::string, Sort>& env) {
  Checker checker(sig, env);
  checker.check(formula);
  return checker.result(formula);
}

bool sort_in_domain(const SignatureDecl& sig, const Sort& sort, const ValueDomain& domain) {
  return DomainRelations(sig).fits(sort_to_domain(sort), domain);
}

bool sorts_comparable(const SignatureDecl& sig, const Sort& a, const Sort& b) {
  return DomainRelations(sig).comparable(sort_to_domain(a), sort_to_domain(b));
}

}  // namespace m2fol
