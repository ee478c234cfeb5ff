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

#include "m2fol/signature.hpp"

#include <algorithm>

#include "m2fol/events.hpp"
#include "m2fol/typecheck.hpp"

namespace m2fol {

const char* type_kind_name(TypeKind kind) {
  switch (kind) {
    case TypeKind::Object: return "object";
    case TypeKind::Relation: return "relation";
    case TypeKind::Data: return "data";
  }
  return "?";
}

bool FunctionSymbol::operator==(const FunctionSymbol& other) const {
  return name == other.name && role == other.role && domain == other.domain && codomain == other.codomain &&
         backing == other.backing && projIndex == other.projIndex;
}

bool RelationSymbol::operator==(const RelationSymbol& other) const {
  return name == other.name && argTypes == other.argTypes && backing == other.backing;
}

TypeKind SignatureDecl::kind_of(const std::string& typeName) const {
  auto it = types.find(typeName);
  if (it == types.end()) throw KernelError(ErrCode::UnknownType, "type '" + typeName + "' is not declared");
  return it->second;
}

bool SignatureDecl::has_type(const std::string& typeName, TypeKind kind) const {
  auto it = types.find(typeName);
  return it != types.end() && it->second == kind;
}

void SignatureDecl::add_constraint(std::string name, FormulaPtr formula) {
  NamedConstraint c{std::move(name), std::move(formula)};
  auto pos = std::lower_bound(constraints.begin(), constraints.end(), c,
                              [](const NamedConstraint& a, const NamedConstraint& b) { return a.name < b.name; });
  constraints.insert(pos, std::move(c));
}

namespace {

const FunctionSymbol* find_endpoint(const SignatureDecl& sig, const std::string& relType, SymbolRole role) {
  for (const auto& [name, fn] : sig.functions) {
    if (fn.role == role && fn.domain.size() == 1 && fn.domain[0] == relType) return &fn;
  }
  return nullptr;
}

}  // namespace

const FunctionSymbol& SignatureDecl::source_symbol(const std::string& relType) const {
  const FunctionSymbol* fn = find_endpoint(*this, relType, SymbolRole::RelSource);
  if (!fn) throw KernelError(ErrCode::UnknownSymbol, "relation type '" + relType + "' has no source symbol");
  return *fn;
}

const FunctionSymbol& SignatureDecl::target_symbol(const std::string& relType) const {
  const FunctionSymbol* fn = find_endpoint(*this, relType, SymbolRole::RelTarget);
  if (!fn) throw KernelError(ErrCode::UnknownSymbol, "relation type '" + relType + "' has no target symbol");
  return *fn;
}

// ---- closure ------------------------------------------------------------

namespace {

// Reachability per node over the direct edges. The Floyd-Warshall variant
// lives in the test suite as the independent oracle.
std::set<std::pair<std::string, std::string>> close_edges(
    const std::set<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::set<std::string>> succ;
  for (const auto& [sub, super] : edges) succ[sub].insert(super);
  std::set<std::pair<std::string, std::string>> closure;
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

}  // namespace

std::set<std::pair<std::string, std::string>> subtype_order(const SignatureDecl& sig) {
  auto closure = close_edges(sig.inh);
  for (const auto& [sub, super] : closure) {
    if (sub == super) {
      throw KernelError(ErrCode::CyclicInheritance, "inheritance cycle through '" + sub + "'");
    }
  }
  return closure;
}

bool is_subtype(const SignatureDecl& sig, const std::string& sub, const std::string& super) {
  if (sig.kind_of(sub) != TypeKind::Object || sig.kind_of(super) != TypeKind::Object) {
    throw KernelError(ErrCode::UnknownType, "'" + sub + "' and '" + super + "' must be object types");
  }
  if (sub == super) return true;
  return subtype_order(sig).count({sub, super}) != 0;
}

// ---- constants ----------------------------------------------------------

std::map<std::string, ValueDomain> constant_table(const SignatureDecl& sig) {
  std::vector<ValueDomain> enums;
  for (const auto& [name, domain] : sig.domains) collect_domain_enums(domain, enums);
  for (const auto& [name, fn] : sig.functions) collect_domain_enums(fn.codomain, enums);
  for (const auto& [name, rel] : sig.relations) {
    for (const auto& arg : rel.argTypes) collect_domain_enums(arg, enums);
  }
  std::map<std::string, ValueDomain> table;
  for (const auto& e : enums) {
    for (const auto& c : e.constants) {
      auto [it, inserted] = table.emplace(c, e);
      (void)it;
      (void)inserted;  // clashes are reported by validate_signature
    }
  }
  return table;
}

// ---- validation ----------------------------------------------------------

namespace {

void check_domain_expr(const SignatureDecl& sig, const ValueDomain& domain, const std::string& subject,
                       std::vector<Finding>& out) {
  switch (domain.kind) {
    case DomainKind::Enum: {
      std::set<std::string> seen;
      for (const auto& c : domain.constants) {
        if (!seen.insert(c).second) {
          out.push_back({"ENUM_DUPLICATE", subject, "constant '" + c + "' declared twice in one enum"});
        }
      }
      return;
    }
    case DomainKind::Nat:
      return;
    case DomainKind::Ref: {
      auto it = sig.types.find(domain.target);
      if (it == sig.types.end()) {
        out.push_back({"UNDECLARED_TYPE", subject, "ref target '" + domain.target + "' is not declared"});
      } else if (it->second == TypeKind::Data) {
        out.push_back({"BAD_REF_KIND", subject, "ref target '" + domain.target + "' is a data type"});
      }
      return;
    }
    case DomainKind::Product:
      if (domain.parts.size() < 2) {
        out.push_back({"PRODUCT_ARITY", subject, "product domains need at least two components"});
      }
      break;
    case DomainKind::Union:
      if (domain.parts.size() < 2) {
        out.push_back({"UNION_ARITY", subject, "union domains need at least two alternatives"});
      }
      break;
    default:
      break;
  }
  for (const auto& part : domain.parts) check_domain_expr(sig, part, subject, out);
}

void check_constants(const SignatureDecl& sig, std::vector<Finding>& out) {
  std::vector<ValueDomain> enums;
  for (const auto& [name, domain] : sig.domains) collect_domain_enums(domain, enums);
  for (const auto& [name, fn] : sig.functions) collect_domain_enums(fn.codomain, enums);
  for (const auto& [name, rel] : sig.relations) {
    for (const auto& arg : rel.argTypes) collect_domain_enums(arg, enums);
  }
  std::map<std::string, ValueDomain> homes;
  std::set<std::string> reported;
  for (const auto& e : enums) {
    for (const auto& c : e.constants) {
      auto [it, inserted] = homes.emplace(c, e);
      if (!inserted && !(it->second == e) && reported.insert(c).second) {
        out.push_back({"DUPLICATE_CONSTANT", c, "constant declared in two distinct enum domains"});
      }
    }
  }
}

}  // namespace

ValidationReport validate_signature(const SignatureDecl& sig) {
  ValidationReport report;
  auto& out = report.findings;

  // types and data domains
  for (const auto& [name, kind] : sig.types) {
    if (name.empty()) out.push_back({"EMPTY_NAME", name, "type with empty name"});
    if (kind == TypeKind::Data && !sig.domains.count(name)) {
      out.push_back({"MISSING_DOMAIN", name, "data type has no value domain"});
    }
  }
  for (const auto& [name, domain] : sig.domains) {
    auto it = sig.types.find(name);
    if (it == sig.types.end() || it->second != TypeKind::Data) {
      out.push_back({"UNDECLARED_TYPE", name, "domain declared for a name that is not a data type"});
    }
    check_domain_expr(sig, domain, name, out);
  }
  check_constants(sig, out);

  // inheritance: object endpoints, then strictness of the closure
  bool inhShapeOk = true;
  for (const auto& [sub, super] : sig.inh) {
    for (const auto& end : {sub, super}) {
      auto it = sig.types.find(end);
      if (it == sig.types.end()) {
        out.push_back({"UNDECLARED_TYPE", end, "inheritance edge mentions an undeclared type"});
        inhShapeOk = false;
      } else if (it->second != TypeKind::Object) {
        out.push_back({"BAD_INHERITANCE", end, "only object types can inherit"});
        inhShapeOk = false;
      }
    }
    if (sub == super) {
      out.push_back({"CYCLIC_INHERITANCE", sub, "self-inheritance"});
      inhShapeOk = false;
    }
  }
  if (inhShapeOk) {
    auto closure = close_edges(sig.inh);
    std::set<std::string> cyclic;
    for (const auto& [sub, super] : closure) {
      if (sub == super) cyclic.insert(sub);
    }
    for (const auto& t : cyclic) {
      out.push_back({"CYCLIC_INHERITANCE", t, "inheritance cycle through this type"});
    }
  }

  // symbols
  std::map<std::string, std::pair<int, int>> endpoints;  // relation type -> (#src, #tgt)
  for (const auto& [name, kind] : sig.types) {
    if (kind == TypeKind::Relation) endpoints.emplace(name, std::make_pair(0, 0));
  }
  for (const auto& [name, fn] : sig.functions) {
    if (name != fn.name) out.push_back({"BAD_SYMBOL_KEY", name, "function stored under a different name"});
    if (sig.relations.count(name)) {
      out.push_back({"DUPLICATE_SYMBOL", name, "name used for both a function and a relation symbol"});
    }
    if (fn.domain.empty()) {
      out.push_back({"BAD_ARITY", name, "function symbols need at least one argument"});
    }
    for (const auto& argType : fn.domain) {
      if (!sig.types.count(argType)) {
        out.push_back({"UNDECLARED_TYPE", name, "domain mentions undeclared type '" + argType + "'"});
      }
    }
    check_domain_expr(sig, fn.codomain, name, out);
    if (fn.backing == Backing::Proj && fn.projIndex == 0) {
      out.push_back({"BAD_BACKING", name, "projection backing needs a 1-based index"});
    }
    switch (fn.role) {
      case SymbolRole::RelSource:
      case SymbolRole::RelTarget: {
        const bool src = fn.role == SymbolRole::RelSource;
        if (fn.domain.size() != 1 || !sig.has_type(fn.domain[0], TypeKind::Relation)) {
          out.push_back({"BAD_REL_ENDPOINT", name, "endpoint symbols take a single relation type"});
        } else {
          auto& counts = endpoints[fn.domain[0]];
          (src ? counts.first : counts.second) += 1;
        }
        if (fn.codomain.kind != DomainKind::Ref || !sig.has_type(fn.codomain.target, TypeKind::Object)) {
          out.push_back({"BAD_REL_ENDPOINT", name, "endpoint symbols map to an object type"});
        }
        break;
      }
      case SymbolRole::Attribute: {
        if (fn.domain.size() != 1 ||
            (!sig.has_type(fn.domain[0], TypeKind::Object) && !sig.has_type(fn.domain[0], TypeKind::Relation))) {
          out.push_back({"BAD_ATTRIBUTE_OWNER", name, "attributes belong to a single object or relation type"});
        }
        break;
      }
      case SymbolRole::Auxiliary:
        break;
    }
  }
  for (const auto& [relType, counts] : endpoints) {
    if (counts.first != 1) {
      out.push_back({counts.first == 0 ? "MISSING_REL_ENDPOINT" : "DUPLICATE_REL_ENDPOINT", relType,
                     "relation types need exactly one source symbol"});
    }
    if (counts.second != 1) {
      out.push_back({counts.second == 0 ? "MISSING_REL_ENDPOINT" : "DUPLICATE_REL_ENDPOINT", relType,
                     "relation types need exactly one target symbol"});
    }
  }
  for (const auto& [name, rel] : sig.relations) {
    if (name != rel.name) out.push_back({"BAD_SYMBOL_KEY", name, "relation stored under a different name"});
    if (rel.argTypes.size() < 2) {
      out.push_back({"BAD_ARITY", name, "relation symbols need arity >= 2"});
    }
    for (const auto& arg : rel.argTypes) check_domain_expr(sig, arg, name, out);
  }

  // constraints: closed and well-typed
  std::set<std::string> constraintNames;
  for (const auto& c : sig.constraints) {
    if (!constraintNames.insert(c.name).second) {
      out.push_back({"DUPLICATE_CONSTRAINT", c.name, "constraint name declared twice"});
      continue;
    }
    auto free = free_variables(c.formula);
    if (!free.empty()) {
      out.push_back({"OPEN_CONSTRAINT", c.name, "free variable '" + *free.begin() + "'"});
      continue;
    }
    auto checked = typecheck_formula(sig, c.formula);
    if (const auto* errors = std::get_if<std::vector<TypeError>>(&checked)) {
      for (const auto& e : *errors) {
        out.push_back({e.code, c.name, e.message + " (at " + e.path + ")"});
      }
    }
  }

  // events
  std::set<std::string> eventNames;
  for (const auto& ev : sig.events) {
    if (!ev) continue;
    if (!eventNames.insert(ev->name).second) {
      out.push_back({"DUPLICATE_EVENT", ev->name, "event name declared twice"});
      continue;
    }
    for (const auto& e : check_event(sig, *ev)) {
      out.push_back({e.code, ev->name, e.message + " (at " + e.path + ")"});
    }
  }

  return report;
}

// ---- rename ---------------------------------------------------------------

namespace {

std::string mapped(const std::map<std::string, std::string>& renames, const std::string& name) {
  auto it = renames.find(name);
  return it == renames.end() ? name : it->second;
}

ValueDomain rename_domain(const ValueDomain& d, const std::map<std::string, std::string>& renames) {
  ValueDomain out = d;
  if (out.kind == DomainKind::Ref) out.target = mapped(renames, out.target);
  for (auto& part : out.parts) part = rename_domain(part, renames);
  return out;
}

TermPtr rename_term(const TermPtr& t, const std::map<std::string, std::string>& renames) {
  if (!t) return t;
  if (const auto* c = std::get_if<ConstTerm>(&t->node)) {
    return fml::cst(mapped(renames, c->name));
  }
  if (const auto* f = std::get_if<ApplyTerm>(&t->node)) {
    std::vector<TermPtr> args;
    args.reserve(f->args.size());
    for (const auto& a : f->args) args.push_back(rename_term(a, renames));
    return fml::apply(mapped(renames, f->symbol), std::move(args));
  }
  if (const auto* p = std::get_if<ProjTerm>(&t->node)) {
    return fml::proj(rename_term(p->tuple, renames), p->index);
  }
  if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
    std::vector<TermPtr> parts;
    for (const auto& a : tp->parts) parts.push_back(rename_term(a, renames));
    return fml::tuple(std::move(parts));
  }
  if (const auto* s = std::get_if<SetTerm>(&t->node)) {
    std::vector<TermPtr> elems;
    for (const auto& a : s->elements) elems.push_back(rename_term(a, renames));
    return fml::set(std::move(elems));
  }
  if (const auto* l = std::get_if<ListTerm>(&t->node)) {
    std::vector<TermPtr> elems;
    for (const auto& a : l->elements) elems.push_back(rename_term(a, renames));
    return fml::list(std::move(elems));
  }
  return t;  // Var, NatLit
}

FormulaPtr rename_formula(const FormulaPtr& f, const std::map<std::string, std::string>& renames) {
  if (!f) return f;
  if (std::holds_alternative<TrueFormula>(f->node)) return f;
  if (const auto* e = std::get_if<EqFormula>(&f->node)) {
    return fml::eq(rename_term(e->lhs, renames), rename_term(e->rhs, renames));
  }
  if (const auto* r = std::get_if<RelAppFormula>(&f->node)) {
    std::vector<TermPtr> args;
    for (const auto& a : r->args) args.push_back(rename_term(a, renames));
    return fml::rel(mapped(renames, r->symbol), std::move(args));
  }
  if (const auto* m = std::get_if<MemberFormula>(&f->node)) {
    return fml::member(rename_term(m->element, renames), rename_term(m->set, renames));
  }
  if (const auto* n = std::get_if<NotFormula>(&f->node)) {
    return fml::neg(rename_formula(n->body, renames));
  }
  if (const auto* a = std::get_if<AndFormula>(&f->node)) {
    return fml::conj(rename_formula(a->lhs, renames), rename_formula(a->rhs, renames));
  }
  if (const auto* o = std::get_if<OrFormula>(&f->node)) {
    return fml::disj(rename_formula(o->lhs, renames), rename_formula(o->rhs, renames));
  }
  if (const auto* i = std::get_if<ImpliesFormula>(&f->node)) {
    return fml::implies(rename_formula(i->lhs, renames), rename_formula(i->rhs, renames));
  }
  if (const auto* fa = std::get_if<ForallFormula>(&f->node)) {
    return fml::forall(fa->var, mapped(renames, fa->typeName), rename_formula(fa->body, renames));
  }
  const auto& ex = std::get<ExistsFormula>(f->node);
  return fml::exists(ex.var, mapped(renames, ex.typeName), rename_formula(ex.body, renames));
}

std::vector<EventStep> rename_steps(const std::vector<EventStep>& steps,
                                    const std::map<std::string, std::string>& renames) {
  std::vector<EventStep> out;
  out.reserve(steps.size());
  for (const auto& s : steps) {
    if (const auto* set = std::get_if<SetStep>(&s.step)) {
      out.push_back({SetStep{rename_term(set->element, renames), mapped(renames, set->symbol),
                             rename_term(set->value, renames)}});
    } else if (const auto* del = std::get_if<DeleteStep>(&s.step)) {
      out.push_back({DeleteStep{rename_term(del->element, renames), del->cascade}});
    } else {
      const auto& fe = std::get<ForEachStep>(s.step);
      out.push_back({ForEachStep{fe.var, mapped(renames, fe.typeName), rename_formula(fe.where, renames),
                                 rename_steps(fe.body, renames)}});
    }
  }
  return out;
}

}  // namespace

SignatureDecl rename_signature(const SignatureDecl& sig, const std::map<std::string, std::string>& renames) {
  SignatureDecl out;
  out.name = mapped(renames, sig.name);
  for (const auto& [name, kind] : sig.types) out.types.emplace(mapped(renames, name), kind);
  for (const auto& [name, domain] : sig.domains) {
    out.domains.emplace(mapped(renames, name), rename_domain(domain, renames));
  }
  for (const auto& [sub, super] : sig.inh) out.inh.emplace(mapped(renames, sub), mapped(renames, super));
  for (const auto& [name, fn] : sig.functions) {
    FunctionSymbol f = fn;
    f.name = mapped(renames, fn.name);
    for (auto& d : f.domain) d = mapped(renames, d);
    f.codomain = rename_domain(fn.codomain, renames);
    out.functions.emplace(f.name, std::move(f));
  }
  for (const auto& [name, rel] : sig.relations) {
    RelationSymbol r = rel;
    r.name = mapped(renames, rel.name);
    for (auto& arg : r.argTypes) arg = rename_domain(arg, renames);
    out.relations.emplace(r.name, std::move(r));
  }
  for (const auto& c : sig.constraints) {
    out.add_constraint(mapped(renames, c.name), rename_formula(c.formula, renames));
  }
  for (const auto& ev : sig.events) {
    if (!ev) continue;
    auto renamed = std::make_shared<DomainEvent>();
    renamed->name = mapped(renames, ev->name);
    for (const auto& [pname, ptype] : ev->params) renamed->params.emplace_back(pname, mapped(renames, ptype));
    renamed->pre = rename_formula(ev->pre, renames);
    renamed->post = rename_formula(ev->post, renames);
    renamed->body = rename_steps(ev->body, renames);
    out.events.push_back(std::move(renamed));
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const auto& a, const auto& b) { return a->name < b->name; });
  return out;
}

// ---- equality --------------------------------------------------------------

bool signature_cores_equal(const SignatureDecl& a, const SignatureDecl& b) {
  if (a.types != b.types) return false;
  if (a.domains != b.domains) return false;
  if (close_edges(a.inh) != close_edges(b.inh)) return false;
  if (a.functions != b.functions) return false;
  if (a.relations != b.relations) return false;
  return true;
}

bool signatures_equal(const SignatureDecl& a, const SignatureDecl& b) {
  if (a.name != b.name) return false;
  if (a.types != b.types || a.domains != b.domains || a.inh != b.inh) return false;
  if (a.functions != b.functions || a.relations != b.relations) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    if (a.constraints[i].name != b.constraints[i].name) return false;
    if (!formulas_equal(a.constraints[i].formula, b.constraints[i].formula)) return false;
  }
  if (a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    if (!events_equal(*a.events[i], *b.events[i])) return false;
  }
  return true;
}

}  // namespace m2fol
