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

#include "m2fol/printer.hpp"

#include <algorithm>
#include <sstream>

namespace m2fol {

namespace {

// Domain precedence: union < product < set/list prefixes < primaries.
int domain_prec(const ValueDomain& d) {
  switch (d.kind) {
    case DomainKind::Union: return 1;
    case DomainKind::Product: return 2;
    case DomainKind::SetOf:
    case DomainKind::ListOf: return 3;
    default: return 4;
  }
}

std::string domain_text(const ValueDomain& d, int minPrec) {
  std::string out;
  switch (d.kind) {
    case DomainKind::Nat:
      out = "nat";
      break;
    case DomainKind::Ref:
      out = "ref " + d.target;
      break;
    case DomainKind::Enum: {
      out = "enum { ";
      for (std::size_t i = 0; i < d.constants.size(); ++i) {
        if (i > 0) out += ", ";
        out += d.constants[i];
      }
      out += " }";
      break;
    }
    case DomainKind::Union: {
      for (std::size_t i = 0; i < d.parts.size(); ++i) {
        if (i > 0) out += " | ";
        out += domain_text(d.parts[i], 2);
      }
      break;
    }
    case DomainKind::Product: {
      for (std::size_t i = 0; i < d.parts.size(); ++i) {
        if (i > 0) out += " * ";
        out += domain_text(d.parts[i], 3);
      }
      break;
    }
    case DomainKind::SetOf:
      out = "set of " + domain_text(d.parts[0], 4);
      break;
    case DomainKind::ListOf:
      out = "list of " + domain_text(d.parts[0], 4);
      break;
  }
  if (domain_prec(d) < minPrec) return "(" + out + ")";
  return out;
}

std::string term_text(const TermPtr& t) {
  if (const auto* v = std::get_if<VarTerm>(&t->node)) return v->name;
  if (const auto* c = std::get_if<ConstTerm>(&t->node)) return c->name;
  if (const auto* n = std::get_if<NatTerm>(&t->node)) return std::to_string(n->value);
  if (const auto* f = std::get_if<ApplyTerm>(&t->node)) {
    std::string out = f->symbol + "(";
    for (std::size_t i = 0; i < f->args.size(); ++i) {
      if (i > 0) out += ", ";
      out += term_text(f->args[i]);
    }
    return out + ")";
  }
  if (const auto* p = std::get_if<ProjTerm>(&t->node)) {
    return term_text(p->tuple) + "." + std::to_string(p->index);
  }
  auto join = [](const std::vector<TermPtr>& items, char open, char close) {
    std::string out(1, open);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) out += ", ";
      out += term_text(items[i]);
    }
    out += close;
    return out;
  };
  if (const auto* tp = std::get_if<TupleTerm>(&t->node)) return join(tp->parts, '(', ')');
  if (const auto* s = std::get_if<SetTerm>(&t->node)) return join(s->elements, '{', '}');
  return join(std::get<ListTerm>(t->node).elements, '[', ']');
}

// Formula precedence: quantifier body 0 < => 1 < | 2 < & 3 < ! 4 < atoms 5.
int formula_prec(const Formula& f) {
  if (std::holds_alternative<ImpliesFormula>(f.node)) return 1;
  if (std::holds_alternative<OrFormula>(f.node)) return 2;
  if (std::holds_alternative<AndFormula>(f.node)) return 3;
  if (std::holds_alternative<ForallFormula>(f.node) || std::holds_alternative<ExistsFormula>(f.node)) return 0;
  if (const auto* n = std::get_if<NotFormula>(&f.node)) {
    // != and nexists render as atoms / quantifiers of their own
    if (std::holds_alternative<EqFormula>(n->body->node)) return 5;
    if (std::holds_alternative<ExistsFormula>(n->body->node)) return 0;
    return 4;
  }
  return 5;
}

std::string formula_text(const FormulaPtr& f, int minPrec) {
  std::string out;
  if (std::holds_alternative<TrueFormula>(f->node)) {
    out = "true";
  } else if (const auto* e = std::get_if<EqFormula>(&f->node)) {
    out = term_text(e->lhs) + " = " + term_text(e->rhs);
  } else if (const auto* r = std::get_if<RelAppFormula>(&f->node)) {
    out = r->symbol + "(";
    for (std::size_t i = 0; i < r->args.size(); ++i) {
      if (i > 0) out += ", ";
      out += term_text(r->args[i]);
    }
    out += ")";
  } else if (const auto* m = std::get_if<MemberFormula>(&f->node)) {
    out = term_text(m->element) + " in " + term_text(m->set);
  } else if (const auto* n = std::get_if<NotFormula>(&f->node)) {
    if (const auto* e = std::get_if<EqFormula>(&n->body->node)) {
      out = term_text(e->lhs) + " != " + term_text(e->rhs);
    } else if (const auto* ex = std::get_if<ExistsFormula>(&n->body->node)) {
      out = "nexists " + ex->var + " : " + ex->typeName + " . " + formula_text(ex->body, 0);
    } else {
      int bodyPrec = formula_prec(*n->body);
      if (bodyPrec >= 4) {
        out = "!" + formula_text(n->body, 4);
      } else {
        out = "!(" + formula_text(n->body, 0) + ")";
      }
    }
  } else if (const auto* a = std::get_if<AndFormula>(&f->node)) {
    out = formula_text(a->lhs, 3) + " & " + formula_text(a->rhs, 4);
  } else if (const auto* o = std::get_if<OrFormula>(&f->node)) {
    out = formula_text(o->lhs, 2) + " | " + formula_text(o->rhs, 3);
  } else if (const auto* i = std::get_if<ImpliesFormula>(&f->node)) {
    out = formula_text(i->lhs, 2) + " => " + formula_text(i->rhs, 1);
  } else if (const auto* fa = std::get_if<ForallFormula>(&f->node)) {
    out = "forall " + fa->var + " : " + fa->typeName + " . " + formula_text(fa->body, 0);
  } else {
    const auto& ex = std::get<ExistsFormula>(f->node);
    out = "exists " + ex.var + " : " + ex.typeName + " . " + formula_text(ex.body, 0);
  }
  if (formula_prec(*f) < minPrec) return "(" + out + ")";
  return out;
}

std::string backing_text(Backing backing, std::size_t projIndex) {
  switch (backing) {
    case Backing::Plus: return " = plus";
    case Backing::Minus: return " = minus";
    case Backing::Lt: return " = lt";
    case Backing::Contains: return " = in";
    case Backing::Proj: return " = proj " + std::to_string(projIndex);
    case Backing::None: return "";
  }
  return "";
}

void steps_text(const std::vector<EventStep>& steps, int depth, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& s : steps) {
    if (const auto* set = std::get_if<SetStep>(&s.step)) {
      out << pad << "set " << set->symbol << "(" << term_text(set->element) << ") = " << term_text(set->value)
          << ";\n";
    } else if (const auto* del = std::get_if<DeleteStep>(&s.step)) {
      out << pad << "delete " << term_text(del->element) << (del->cascade ? " cascade" : "") << ";\n";
    } else {
      const auto& fe = std::get<ForEachStep>(s.step);
      out << pad << "foreach " << fe.var << " : " << fe.typeName;
      if (fe.where) out << " where " << formula_text(fe.where, 0);
      out << " {\n";
      steps_text(fe.body, depth + 1, out);
      out << pad << "}\n";
    }
  }
}

}  // namespace

std::string print_domain(const ValueDomain& domain) { return domain_text(domain, 0); }
std::string print_term(const TermPtr& term) { return term_text(term); }
std::string print_formula(const FormulaPtr& formula) { return formula_text(formula, 0); }

std::string serialize_language(const SignatureDecl& sig) {
  std::ostringstream out;
  out << "language " << sig.name << " {\n";

  std::vector<std::string> names;
  for (const auto& [name, kind] : sig.types) {
    if (kind == TypeKind::Object) names.push_back(name);
  }
  for (const auto& name : names) {
    out << "  object type " << name;
    std::vector<std::string> parents;
    for (const auto& [sub, super] : sig.inh) {
      if (sub == name) parents.push_back(super);
    }
    std::sort(parents.begin(), parents.end());
    for (std::size_t i = 0; i < parents.size(); ++i) {
      out << (i == 0 ? " < " : ", ") << parents[i];
    }
    out << ";\n";
  }

  for (const auto& [name, kind] : sig.types) {
    if (kind != TypeKind::Relation) continue;
    const FunctionSymbol& src = sig.source_symbol(name);
    const FunctionSymbol& tgt = sig.target_symbol(name);
    if (src.name != "src_" + name || tgt.name != "tgt_" + name) {
      throw KernelError(ErrCode::Internal,
                        "relation type '" + name + "' does not follow the src_/tgt_ naming convention");
    }
    out << "  relation type " << name << " from " << src.codomain.target << " to " << tgt.codomain.target
        << ";\n";
  }

  for (const auto& [name, domain] : sig.domains) {
    out << "  data type " << name << " = " << domain_text(domain, 0) << ";\n";
  }

  for (const auto& [name, fn] : sig.functions) {
    if (fn.role != SymbolRole::Attribute) continue;
    out << "  attr " << name << " : " << fn.domain[0] << " -> " << domain_text(fn.codomain, 0)
        << backing_text(fn.backing, fn.projIndex) << ";\n";
  }

  for (const auto& [name, fn] : sig.functions) {
    if (fn.role != SymbolRole::Auxiliary) continue;
    out << "  func " << name << " : ";
    for (std::size_t i = 0; i < fn.domain.size(); ++i) {
      if (i > 0) out << ", ";
      out << fn.domain[i];
    }
    out << " -> " << domain_text(fn.codomain, 0) << backing_text(fn.backing, fn.projIndex) << ";\n";
  }

  for (const auto& [name, rel] : sig.relations) {
    out << "  relsym " << name << " : ";
    for (std::size_t i = 0; i < rel.argTypes.size(); ++i) {
      if (i > 0) out << ", ";
      out << domain_text(rel.argTypes[i], 0);
    }
    out << backing_text(rel.backing, 0) << ";\n";
  }

  for (const auto& c : sig.constraints) {
    out << "  constraint " << c.name << ": " << formula_text(c.formula, 0) << ";\n";
  }

  for (const auto& ev : sig.events) {
    if (!ev) continue;
    out << "  event " << ev->name << "(";
    for (std::size_t i = 0; i < ev->params.size(); ++i) {
      if (i > 0) out << ", ";
      out << ev->params[i].first << " : " << ev->params[i].second;
    }
    out << ")\n";
    out << "    pre " << formula_text(ev->pre ? ev->pre : fml::truth(), 0) << "\n";
    out << "    do {\n";
    std::ostringstream steps;
    steps_text(ev->body, 3, steps);
    out << steps.str();
    out << "    }\n";
    out << "    post " << formula_text(ev->post ? ev->post : fml::truth(), 0) << ";\n";
  }

  out << "}\n";
  return out.str();
}

std::string serialize_model(const Structure& m) {
  const SignatureDecl& sig = *m.language;
  std::ostringstream out;
  out << "model " << m.name << " : " << sig.name << " {\n";

  auto endpoint_value = [&](const std::string& symbol, const std::string& id) -> const Value* {
    auto interp = m.functions.find(symbol);
    if (interp == m.functions.end()) return nullptr;
    auto entry = interp->second.find({Value::element(id)});
    if (entry == interp->second.end()) return nullptr;
    return entry->second.kind == ValueKind::Element ? &entry->second : nullptr;
  };

  struct ElemLine {
    int kindRank;
    std::string type, id, text;
  };
  std::vector<ElemLine> lines;
  std::set<std::pair<std::string, std::vector<Value>>> inlined;  // consumed endpoint entries
  for (const auto& [id, type] : m.elements) {
    auto kindIt = sig.types.find(type);
    const bool isRelation = kindIt != sig.types.end() && kindIt->second == TypeKind::Relation;
    std::string text = type + " " + id;
    if (isRelation) {
      const std::string srcSym = sig.source_symbol(type).name;
      const std::string tgtSym = sig.target_symbol(type).name;
      const Value* src = endpoint_value(srcSym, id);
      const Value* tgt = endpoint_value(tgtSym, id);
      if (src && tgt) {
        text += " (" + src->sym + " -> " + tgt->sym + ")";
        inlined.insert({srcSym, {Value::element(id)}});
        inlined.insert({tgtSym, {Value::element(id)}});
      }
    }
    lines.push_back({isRelation ? 1 : 0, type, id, std::move(text)});
  }
  std::sort(lines.begin(), lines.end(), [](const ElemLine& a, const ElemLine& b) {
    return std::tie(a.kindRank, a.type, a.id) < std::tie(b.kindRank, b.type, b.id);
  });
  for (const auto& line : lines) out << "  " << line.text << ";\n";

  // elem.Attr = value entries, then the general function entries
  std::vector<std::pair<std::pair<std::string, std::string>, std::string>> attrLines;
  std::vector<std::string> generalLines;
  for (const auto& [symbol, interp] : m.functions) {
    auto fnIt = sig.functions.find(symbol);
    for (const auto& [args, value] : interp) {
      if (inlined.count({symbol, args})) continue;
      const bool attrForm = fnIt != sig.functions.end() && fnIt->second.role == SymbolRole::Attribute &&
                            args.size() == 1 && args[0].kind == ValueKind::Element;
      if (attrForm) {
        attrLines.push_back({{args[0].sym, symbol}, args[0].sym + "." + symbol + " = " + value.to_string() + ";"});
      } else {
        std::string text = symbol + "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i > 0) text += ", ";
          text += args[i].to_string();
        }
        text += ") = " + value.to_string() + ";";
        generalLines.push_back(std::move(text));
      }
    }
  }
  std::sort(attrLines.begin(), attrLines.end());
  for (const auto& [key, text] : attrLines) out << "  " << text << "\n";
  std::sort(generalLines.begin(), generalLines.end());
  for (const auto& text : generalLines) out << "  " << text << "\n";

  for (const auto& [symbol, tuples] : m.relations) {
    for (const auto& tuple : tuples) {
      out << "  " << symbol << "(";
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i > 0) out << ", ";
        out << tuple[i].to_string();
      }
      out << ");\n";
    }
  }

  out << "}\n";
  return out.str();
}

}  // namespace m2fol
