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

#include "m2fol/compose.hpp"

#include <algorithm>

#include "m2fol/events.hpp"
#include "m2fol/typecheck.hpp"

namespace m2fol {

namespace {

struct Mentions {
  std::set<std::string> types;
  std::set<std::string> symbols;
  std::set<std::string> constants;
};

void term_mentions(const TermPtr& t, Mentions& out) {
  if (!t) return;
  if (const auto* c = std::get_if<ConstTerm>(&t->node)) {
    out.constants.insert(c->name);
  } else if (const auto* f = std::get_if<ApplyTerm>(&t->node)) {
    out.symbols.insert(f->symbol);
    for (const auto& a : f->args) term_mentions(a, out);
  } else if (const auto* p = std::get_if<ProjTerm>(&t->node)) {
    term_mentions(p->tuple, out);
  } else if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
    for (const auto& a : tp->parts) term_mentions(a, out);
  } else if (const auto* s = std::get_if<SetTerm>(&t->node)) {
    for (const auto& a : s->elements) term_mentions(a, out);
  } else if (const auto* l = std::get_if<ListTerm>(&t->node)) {
    for (const auto& a : l->elements) term_mentions(a, out);
  }
}

void formula_mentions(const FormulaPtr& f, Mentions& out) {
  if (!f) return;
  if (const auto* e = std::get_if<EqFormula>(&f->node)) {
    term_mentions(e->lhs, out);
    term_mentions(e->rhs, out);
  } else if (const auto* r = std::get_if<RelAppFormula>(&f->node)) {
    out.symbols.insert(r->symbol);
    for (const auto& a : r->args) term_mentions(a, out);
  } else if (const auto* m = std::get_if<MemberFormula>(&f->node)) {
    term_mentions(m->element, out);
    term_mentions(m->set, out);
  } else if (const auto* n = std::get_if<NotFormula>(&f->node)) {
    formula_mentions(n->body, out);
  } else if (const auto* a = std::get_if<AndFormula>(&f->node)) {
    formula_mentions(a->lhs, out);
    formula_mentions(a->rhs, out);
  } else if (const auto* o = std::get_if<OrFormula>(&f->node)) {
    formula_mentions(o->lhs, out);
    formula_mentions(o->rhs, out);
  } else if (const auto* i = std::get_if<ImpliesFormula>(&f->node)) {
    formula_mentions(i->lhs, out);
    formula_mentions(i->rhs, out);
  } else if (const auto* fa = std::get_if<ForallFormula>(&f->node)) {
    out.types.insert(fa->typeName);
    formula_mentions(fa->body, out);
  } else if (const auto* ex = std::get_if<ExistsFormula>(&f->node)) {
    out.types.insert(ex->typeName);
    formula_mentions(ex->body, out);
  }
}

void steps_mentions(const std::vector<EventStep>& steps, Mentions& out) {
  for (const auto& s : steps) {
    if (const auto* set = std::get_if<SetStep>(&s.step)) {
      out.symbols.insert(set->symbol);
      term_mentions(set->element, out);
      term_mentions(set->value, out);
    } else if (const auto* del = std::get_if<DeleteStep>(&s.step)) {
      term_mentions(del->element, out);
    } else {
      const auto& fe = std::get<ForEachStep>(s.step);
      out.types.insert(fe.typeName);
      formula_mentions(fe.where, out);
      steps_mentions(fe.body, out);
    }
  }
}

bool domain_mentions_dropped(const ValueDomain& d, const std::set<std::string>& kept) {
  std::vector<std::string> refs;
  collect_domain_refs(d, refs);
  return std::any_of(refs.begin(), refs.end(), [&](const std::string& r) { return !kept.count(r); });
}

}  // namespace

SignatureDecl restrict_signature(const SignatureDecl& sig, const std::set<std::string>& keep,
                                 bool recloseInheritance) {
  for (const auto& t : keep) {
    if (!sig.types.count(t)) {
      throw KernelError(ErrCode::UnknownType, "keep set names unknown type '" + t + "'");
    }
  }

  // Types: drop relation types whose endpoints fall away, then data types
  // whose domain references something dropped.
  std::set<std::string> kept = keep;
  for (const auto& [name, kind] : sig.types) {
    if (kind != TypeKind::Relation || !kept.count(name)) continue;
    const std::string& srcType = sig.source_symbol(name).codomain.target;
    const std::string& tgtType = sig.target_symbol(name).codomain.target;
    if (!kept.count(srcType) || !kept.count(tgtType)) kept.erase(name);
  }
  for (const auto& [name, kind] : sig.types) {
    if (kind != TypeKind::Data || !kept.count(name)) continue;
    auto dom = sig.domains.find(name);
    if (dom != sig.domains.end() && domain_mentions_dropped(dom->second, kept)) kept.erase(name);
  }

  SignatureDecl out;
  out.name = sig.name;
  for (const auto& name : kept) out.types.emplace(name, sig.types.at(name));
  for (const auto& [name, domain] : sig.domains) {
    if (kept.count(name)) out.domains.emplace(name, domain);
  }

  if (recloseInheritance) {
    for (const auto& [sub, super] : subtype_order(sig)) {
      if (kept.count(sub) && kept.count(super)) out.inh.emplace(sub, super);
    }
  } else {
    for (const auto& [sub, super] : sig.inh) {
      if (kept.count(sub) && kept.count(super)) out.inh.emplace(sub, super);
    }
  }

  for (const auto& [name, fn] : sig.functions) {
    bool ok = std::all_of(fn.domain.begin(), fn.domain.end(),
                          [&](const std::string& t) { return kept.count(t) != 0; });
    ok = ok && !domain_mentions_dropped(fn.codomain, kept);
    if (ok) out.functions.emplace(name, fn);
  }
  for (const auto& [name, rel] : sig.relations) {
    bool ok = std::none_of(rel.argTypes.begin(), rel.argTypes.end(),
                           [&](const ValueDomain& d) { return domain_mentions_dropped(d, kept); });
    if (ok) out.relations.emplace(name, rel);
  }

  auto keptConstants = constant_table(out);
  auto survives = [&](const Mentions& m) {
    for (const auto& t : m.types) {
      if (!kept.count(t)) return false;
    }
    for (const auto& s : m.symbols) {
      if (s == kBuiltinPlus || s == kBuiltinMinus || s == kBuiltinLt) continue;
      if (!out.functions.count(s) && !out.relations.count(s)) return false;
    }
    for (const auto& c : m.constants) {
      if (!keptConstants.count(c)) return false;
    }
    return true;
  };

  for (const auto& c : sig.constraints) {
    Mentions m;
    formula_mentions(c.formula, m);
    if (survives(m)) out.add_constraint(c.name, c.formula);
  }
  for (const auto& ev : sig.events) {
    if (!ev) continue;
    Mentions m;
    for (const auto& [pname, ptype] : ev->params) m.types.insert(ptype);
    formula_mentions(ev->pre, m);
    formula_mentions(ev->post, m);
    steps_mentions(ev->body, m);
    if (survives(m)) out.events.push_back(ev);
  }
  return out;
}

Structure restrict_model(const Structure& m, std::shared_ptr<const SignatureDecl> subSig) {
  const SignatureDecl& full = *m.language;
  for (const auto& [name, kind] : subSig->types) {
    auto it = full.types.find(name);
    if (it == full.types.end() || it->second != kind) {
      throw KernelError(ErrCode::SignatureMismatch, "type '" + name + "' is not part of the base language");
    }
  }
  for (const auto& [name, fn] : subSig->functions) {
    auto it = full.functions.find(name);
    if (it == full.functions.end() || !(it->second == fn)) {
      throw KernelError(ErrCode::SignatureMismatch, "symbol '" + name + "' differs from the base language");
    }
  }
  for (const auto& [name, rel] : subSig->relations) {
    auto it = full.relations.find(name);
    if (it == full.relations.end() || !(it->second == rel)) {
      throw KernelError(ErrCode::SignatureMismatch, "symbol '" + name + "' differs from the base language");
    }
  }

  Structure out;
  out.name = m.name;
  out.language = std::move(subSig);
  for (const auto& [id, type] : m.elements) {
    if (out.language->types.count(type)) out.elements.emplace(id, type);
  }
  for (const auto& [symbol, interp] : m.functions) {
    if (!out.language->functions.count(symbol)) continue;
    for (const auto& [args, value] : interp) {
      bool keep = true;
      for (const auto& a : args) {
        if (a.kind == ValueKind::Element && !out.elements.count(a.sym)) keep = false;
      }
      if (keep) out.functions[symbol][args] = value;
    }
  }
  for (const auto& [symbol, tuples] : m.relations) {
    if (!out.language->relations.count(symbol)) continue;
    for (const auto& tuple : tuples) {
      bool keep = true;
      for (const auto& v : tuple) {
        if (v.kind == ValueKind::Element && !out.elements.count(v.sym)) keep = false;
      }
      if (keep) out.relations[symbol].insert(tuple);
    }
  }
  return out;
}

SignatureDecl fuse_signatures(const SignatureDecl& a, const SignatureDecl& b, const FusionBinding& binding) {
  std::map<std::string, std::string> leftRenames, rightRenames;
  for (const auto& r : binding.renames) {
    const SignatureDecl& side = r.side == FusionSide::Left ? a : b;
    const SignatureDecl& other = r.side == FusionSide::Left ? b : a;
    if (!side.types.count(r.from)) {
      throw KernelError(ErrCode::UnknownType, "rename source '" + r.from + "' is not a type of its language");
    }
    if (!other.types.count(r.from)) {
      throw KernelError(ErrCode::UnresolvedNameCollision,
                        "rename of '" + r.from + "' does not address a collision");
    }
    (r.side == FusionSide::Left ? leftRenames : rightRenames).emplace(r.from, r.to);
  }
  SignatureDecl left = leftRenames.empty() ? a : rename_signature(a, leftRenames);
  SignatureDecl right = rightRenames.empty() ? b : rename_signature(b, rightRenames);

  auto collide = [](const auto& xs, const auto& ys, const char* what) {
    for (const auto& [name, value] : xs) {
      if (ys.count(name)) {
        throw KernelError(ErrCode::UnresolvedNameCollision, std::string(what) + " '" + name + "' collides");
      }
    }
  };
  collide(left.types, right.types, "type");
  collide(left.functions, right.functions, "symbol");
  collide(left.functions, right.relations, "symbol");
  collide(left.relations, right.functions, "symbol");
  collide(left.relations, right.relations, "symbol");

  SignatureDecl out;
  out.name = a.name.empty() ? b.name : (b.name.empty() ? a.name : a.name + "_" + b.name);
  for (const SignatureDecl* side : {&left, &right}) {
    out.types.insert(side->types.begin(), side->types.end());
    out.domains.insert(side->domains.begin(), side->domains.end());
    out.inh.insert(side->inh.begin(), side->inh.end());
    out.functions.insert(side->functions.begin(), side->functions.end());
    out.relations.insert(side->relations.begin(), side->relations.end());
  }
  std::set<std::string> constraintNames;
  auto add_named = [&](const std::string& name, const FormulaPtr& f, ErrCode code) {
    if (!constraintNames.insert(name).second) {
      throw KernelError(code, "constraint name '" + name + "' collides");
    }
    out.add_constraint(name, f);
  };
  for (const SignatureDecl* side : {&left, &right}) {
    for (const auto& c : side->constraints) add_named(c.name, c.formula, ErrCode::UnresolvedNameCollision);
    for (const auto& ev : side->events) out.events.push_back(ev);
  }

  for (const auto& bridge : binding.bridges) {
    if (!left.types.count(bridge.from) || !right.types.count(bridge.to)) {
      throw KernelError(ErrCode::UnknownType,
                        "bridge '" + bridge.name + "' must connect one type from each language");
    }
    FunctionSymbol fn;
    fn.name = bridge.name;
    fn.role = SymbolRole::Auxiliary;
    fn.domain = {bridge.from};
    fn.codomain = ValueDomain::ref(bridge.to);
    if (!out.functions.emplace(fn.name, fn).second || out.relations.count(fn.name)) {
      throw KernelError(ErrCode::UnresolvedNameCollision, "bridge symbol '" + bridge.name + "' collides");
    }
    using namespace fml;
    add_named(bridge.name + "_injective",
              forall("x", bridge.from,
                     forall("y", bridge.from,
                            implies(eq(apply(bridge.name, {var("x")}), apply(bridge.name, {var("y")})),
                                    eq(var("x"), var("y"))))),
              ErrCode::UnresolvedNameCollision);
    add_named(bridge.name + "_surjective",
              forall("y", bridge.to,
                     exists("x", bridge.from, eq(apply(bridge.name, {var("x")}), var("y")))),
              ErrCode::UnresolvedNameCollision);
  }

  for (const auto& fn : binding.newFunctions) {
    if (out.relations.count(fn.name) || !out.functions.emplace(fn.name, fn).second) {
      throw KernelError(ErrCode::UnresolvedNameCollision, "new symbol '" + fn.name + "' collides");
    }
  }
  for (const auto& rel : binding.newRelations) {
    if (out.functions.count(rel.name) || !out.relations.emplace(rel.name, rel).second) {
      throw KernelError(ErrCode::UnresolvedNameCollision, "new symbol '" + rel.name + "' collides");
    }
  }
  for (const auto& c : binding.newConstraints) {
    auto checked = typecheck_formula(out, c.formula);
    if (const auto* errors = std::get_if<std::vector<TypeError>>(&checked)) {
      std::string why = "constraint '" + c.name + "'";
      if (!errors->empty()) why += ": " + (*errors)[0].to_string();
      throw KernelError(ErrCode::IllTypedNewConstraint, why);
    }
    add_named(c.name, c.formula, ErrCode::UnresolvedNameCollision);
  }
  std::sort(out.events.begin(), out.events.end(),
            [](const auto& x, const auto& y) { return x->name < y->name; });
  return out;
}

}  // namespace m2fol
