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

#include "m2fol/formula.hpp"

#include <utility>

namespace m2fol {

bool terms_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* va = std::get_if<VarTerm>(&a->node)) {
    return va->name == std::get<VarTerm>(b->node).name;
  }
  if (const auto* ca = std::get_if<ConstTerm>(&a->node)) {
    return ca->name == std::get<ConstTerm>(b->node).name;
  }
  if (const auto* na = std::get_if<NatTerm>(&a->node)) {
    return na->value == std::get<NatTerm>(b->node).value;
  }
  if (const auto* fa = std::get_if<ApplyTerm>(&a->node)) {
    const auto& fb = std::get<ApplyTerm>(b->node);
    if (fa->symbol != fb.symbol || fa->args.size() != fb.args.size()) return false;
    for (std::size_t i = 0; i < fa->args.size(); ++i) {
      if (!terms_equal(fa->args[i], fb.args[i])) return false;
    }
    return true;
  }
  if (const auto* pa = std::get_if<ProjTerm>(&a->node)) {
    const auto& pb = std::get<ProjTerm>(b->node);
    return pa->index == pb.index && terms_equal(pa->tuple, pb.tuple);
  }
  auto list_equal = [](const std::vector<TermPtr>& xs, const std::vector<TermPtr>& ys) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!terms_equal(xs[i], ys[i])) return false;
    }
    return true;
  };
  if (const auto* ta = std::get_if<TupleTerm>(&a->node)) {
    return list_equal(ta->parts, std::get<TupleTerm>(b->node).parts);
  }
  if (const auto* sa = std::get_if<SetTerm>(&a->node)) {
    return list_equal(sa->elements, std::get<SetTerm>(b->node).elements);
  }
  const auto& la = std::get<ListTerm>(a->node);
  return list_equal(la.elements, std::get<ListTerm>(b->node).elements);
}

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  if (std::holds_alternative<TrueFormula>(a->node)) return true;
  if (const auto* ea = std::get_if<EqFormula>(&a->node)) {
    const auto& eb = std::get<EqFormula>(b->node);
    return terms_equal(ea->lhs, eb.lhs) && terms_equal(ea->rhs, eb.rhs);
  }
  if (const auto* ra = std::get_if<RelAppFormula>(&a->node)) {
    const auto& rb = std::get<RelAppFormula>(b->node);
    if (ra->symbol != rb.symbol || ra->args.size() != rb.args.size()) return false;
    for (std::size_t i = 0; i < ra->args.size(); ++i) {
      if (!terms_equal(ra->args[i], rb.args[i])) return false;
    }
    return true;
  }
  if (const auto* ma = std::get_if<MemberFormula>(&a->node)) {
    const auto& mb = std::get<MemberFormula>(b->node);
    return terms_equal(ma->element, mb.element) && terms_equal(ma->set, mb.set);
  }
  if (const auto* na = std::get_if<NotFormula>(&a->node)) {
    return formulas_equal(na->body, std::get<NotFormula>(b->node).body);
  }
  if (const auto* aa = std::get_if<AndFormula>(&a->node)) {
    const auto& ab = std::get<AndFormula>(b->node);
    return formulas_equal(aa->lhs, ab.lhs) && formulas_equal(aa->rhs, ab.rhs);
  }
  if (const auto* oa = std::get_if<OrFormula>(&a->node)) {
    const auto& ob = std::get<OrFormula>(b->node);
    return formulas_equal(oa->lhs, ob.lhs) && formulas_equal(oa->rhs, ob.rhs);
  }
  if (const auto* ia = std::get_if<ImpliesFormula>(&a->node)) {
    const auto& ib = std::get<ImpliesFormula>(b->node);
    return formulas_equal(ia->lhs, ib.lhs) && formulas_equal(ia->rhs, ib.rhs);
  }
  if (const auto* fa = std::get_if<ForallFormula>(&a->node)) {
    const auto& fb = std::get<ForallFormula>(b->node);
    return fa->var == fb.var && fa->typeName == fb.typeName && formulas_equal(fa->body, fb.body);
  }
  const auto& xa = std::get<ExistsFormula>(a->node);
  const auto& xb = std::get<ExistsFormula>(b->node);
  return xa.var == xb.var && xa.typeName == xb.typeName && formulas_equal(xa.body, xb.body);
}

namespace {

void term_vars(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (const auto* v = std::get_if<VarTerm>(&t->node)) {
    out.insert(v->name);
  } else if (const auto* f = std::get_if<ApplyTerm>(&t->node)) {
    for (const auto& a : f->args) term_vars(a, out);
  } else if (const auto* p = std::get_if<ProjTerm>(&t->node)) {
    term_vars(p->tuple, out);
  } else if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
    for (const auto& a : tp->parts) term_vars(a, out);
  } else if (const auto* s = std::get_if<SetTerm>(&t->node)) {
    for (const auto& a : s->elements) term_vars(a, out);
  } else if (const auto* l = std::get_if<ListTerm>(&t->node)) {
    for (const auto& a : l->elements) term_vars(a, out);
  }
}

void formula_free_vars(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (!f) return;
  if (const auto* e = std::get_if<EqFormula>(&f->node)) {
    std::set<std::string> vs;
    term_vars(e->lhs, vs);
    term_vars(e->rhs, vs);
    for (const auto& v : vs) {
      if (!bound.count(v)) out.insert(v);
    }
  } else if (const auto* r = std::get_if<RelAppFormula>(&f->node)) {
    std::set<std::string> vs;
    for (const auto& a : r->args) term_vars(a, vs);
    for (const auto& v : vs) {
      if (!bound.count(v)) out.insert(v);
    }
  } else if (const auto* m = std::get_if<MemberFormula>(&f->node)) {
    std::set<std::string> vs;
    term_vars(m->element, vs);
    term_vars(m->set, vs);
    for (const auto& v : vs) {
      if (!bound.count(v)) out.insert(v);
    }
  } else if (const auto* n = std::get_if<NotFormula>(&f->node)) {
    formula_free_vars(n->body, bound, out);
  } else if (const auto* a = std::get_if<AndFormula>(&f->node)) {
    formula_free_vars(a->lhs, bound, out);
    formula_free_vars(a->rhs, bound, out);
  } else if (const auto* o = std::get_if<OrFormula>(&f->node)) {
    formula_free_vars(o->lhs, bound, out);
    formula_free_vars(o->rhs, bound, out);
  } else if (const auto* i = std::get_if<ImpliesFormula>(&f->node)) {
    formula_free_vars(i->lhs, bound, out);
    formula_free_vars(i->rhs, bound, out);
  } else if (const auto* fa = std::get_if<ForallFormula>(&f->node)) {
    const bool fresh = bound.insert(fa->var).second;
    formula_free_vars(fa->body, bound, out);
    if (fresh) bound.erase(fa->var);
  } else if (const auto* ex = std::get_if<ExistsFormula>(&f->node)) {
    const bool fresh = bound.insert(ex->var).second;
    formula_free_vars(ex->body, bound, out);
    if (fresh) bound.erase(ex->var);
  }
}

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& formula) {
  std::set<std::string> bound, out;
  formula_free_vars(formula, bound, out);
  return out;
}

namespace fml {

namespace {
template <typename Node>
TermPtr mk_term(Node node) {
  auto t = std::make_shared<Term>();
  t->node = std::move(node);
  return t;
}
template <typename Node>
FormulaPtr mk_formula(Node node) {
  auto f = std::make_shared<Formula>();
  f->node = std::move(node);
  return f;
}
}  // namespace

TermPtr var(std::string name) { return mk_term(VarTerm{std::move(name)}); }
TermPtr cst(std::string name) { return mk_term(ConstTerm{std::move(name)}); }
TermPtr nat(std::uint64_t value) { return mk_term(NatTerm{value}); }
TermPtr apply(std::string symbol, std::vector<TermPtr> args) {
  return mk_term(ApplyTerm{std::move(symbol), std::move(args)});
}
TermPtr proj(TermPtr tuple, std::size_t index) { return mk_term(ProjTerm{std::move(tuple), index}); }
TermPtr tuple(std::vector<TermPtr> parts) { return mk_term(TupleTerm{std::move(parts)}); }
TermPtr set(std::vector<TermPtr> elements) { return mk_term(SetTerm{std::move(elements)}); }
TermPtr list(std::vector<TermPtr> elements) { return mk_term(ListTerm{std::move(elements)}); }

FormulaPtr truth() { return mk_formula(TrueFormula{}); }
FormulaPtr eq(TermPtr lhs, TermPtr rhs) { return mk_formula(EqFormula{std::move(lhs), std::move(rhs)}); }
FormulaPtr neq(TermPtr lhs, TermPtr rhs) { return neg(eq(std::move(lhs), std::move(rhs))); }
FormulaPtr rel(std::string symbol, std::vector<TermPtr> args) {
  return mk_formula(RelAppFormula{std::move(symbol), std::move(args)});
}
FormulaPtr member(TermPtr element, TermPtr set) {
  return mk_formula(MemberFormula{std::move(element), std::move(set)});
}
FormulaPtr neg(FormulaPtr body) { return mk_formula(NotFormula{std::move(body)}); }
FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs) { return mk_formula(AndFormula{std::move(lhs), std::move(rhs)}); }
FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs) { return mk_formula(OrFormula{std::move(lhs), std::move(rhs)}); }
FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs) {
  return mk_formula(ImpliesFormula{std::move(lhs), std::move(rhs)});
}
FormulaPtr forall(std::string var, std::string typeName, FormulaPtr body) {
  return mk_formula(ForallFormula{std::move(var), std::move(typeName), std::move(body)});
}
FormulaPtr exists(std::string var, std::string typeName, FormulaPtr body) {
  return mk_formula(ExistsFormula{std::move(var), std::move(typeName), std::move(body)});
}
FormulaPtr nexists(std::vector<std::pair<std::string, std::string>> vars, FormulaPtr body) {
  FormulaPtr f = std::move(body);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    f = exists(it->first, it->second, std::move(f));
  }
  return neg(std::move(f));
}

}  // namespace fml

}  // namespace m2fol
