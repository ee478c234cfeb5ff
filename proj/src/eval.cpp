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

#include "m2fol/eval.hpp"

#include <algorithm>

namespace m2fol {

namespace {

constexpr std::size_t kMaxPowerSetBase = 16;

Value builtin_nat_op(const std::string& op, const Value& a, const Value& b) {
  if (a.kind != ValueKind::Nat || b.kind != ValueKind::Nat) {
    throw KernelError(ErrCode::ValueDomainMismatch, "'" + op + "' applied to non-numbers");
  }
  if (op == kBuiltinPlus) return Value::nat(a.num + b.num);
  if (a.num < b.num) {
    throw KernelError(ErrCode::ValueDomainMismatch,
                      "natural underflow: " + std::to_string(a.num) + " - " + std::to_string(b.num));
  }
  return Value::nat(a.num - b.num);
}

class Evaluator {
 public:
  Evaluator(const Structure& m, const Env& env) : m_(m), sig_(*m.language) {
    for (const auto& [name, value] : env) scope_.emplace_back(name, value);
  }

  Value term(const TermPtr& t) {
    if (const auto* v = std::get_if<VarTerm>(&t->node)) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
        if (it->first == v->name) return it->second;
      }
      throw KernelError(ErrCode::UnboundVariable, "variable '" + v->name + "'");
    }
    if (const auto* c = std::get_if<ConstTerm>(&t->node)) return Value::enum_const(c->name);
    if (const auto* n = std::get_if<NatTerm>(&t->node)) return Value::nat(n->value);
    if (const auto* f = std::get_if<ApplyTerm>(&t->node)) return apply(*f);
    if (const auto* p = std::get_if<ProjTerm>(&t->node)) {
      Value tuple = term(p->tuple);
      if (tuple.kind != ValueKind::Tuple || p->index < 1 || p->index > tuple.items.size()) {
        throw KernelError(ErrCode::ValueDomainMismatch, "bad projection " + std::to_string(p->index));
      }
      return tuple.items[p->index - 1];
    }
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
      std::vector<Value> items;
      items.reserve(tp->parts.size());
      for (const auto& part : tp->parts) items.push_back(term(part));
      return Value::tuple(std::move(items));
    }
    if (const auto* s = std::get_if<SetTerm>(&t->node)) {
      std::vector<Value> items;
      items.reserve(s->elements.size());
      for (const auto& e : s->elements) items.push_back(term(e));
      return Value::set(std::move(items));
    }
    const auto& l = std::get<ListTerm>(t->node);
    std::vector<Value> items;
    items.reserve(l.elements.size());
    for (const auto& e : l.elements) items.push_back(term(e));
    return Value::list(std::move(items));
  }

  bool formula(const FormulaPtr& f) {
    if (std::holds_alternative<TrueFormula>(f->node)) return true;
    if (const auto* e = std::get_if<EqFormula>(&f->node)) return term(e->lhs) == term(e->rhs);
    if (const auto* r = std::get_if<RelAppFormula>(&f->node)) return relapp(*r);
    if (const auto* mem = std::get_if<MemberFormula>(&f->node)) {
      Value elem = term(mem->element);
      Value set = term(mem->set);
      if (set.kind != ValueKind::Set) {
        throw KernelError(ErrCode::ValueDomainMismatch, "membership needs a set value");
      }
      return std::binary_search(set.items.begin(), set.items.end(), elem);
    }
    if (const auto* n = std::get_if<NotFormula>(&f->node)) return !formula(n->body);
    if (const auto* a = std::get_if<AndFormula>(&f->node)) return formula(a->lhs) && formula(a->rhs);
    if (const auto* o = std::get_if<OrFormula>(&f->node)) return formula(o->lhs) || formula(o->rhs);
    if (const auto* i = std::get_if<ImpliesFormula>(&f->node)) return !formula(i->lhs) || formula(i->rhs);
    if (const auto* fa = std::get_if<ForallFormula>(&f->node)) {
      for (const auto& value : enumerate_type(m_, fa->typeName)) {
        scope_.emplace_back(fa->var, value);
        bool ok = formula(fa->body);
        scope_.pop_back();
        if (!ok) return false;
      }
      return true;
    }
    const auto& ex = std::get<ExistsFormula>(f->node);
    for (const auto& value : enumerate_type(m_, ex.typeName)) {
      scope_.emplace_back(ex.var, value);
      bool ok = formula(ex.body);
      scope_.pop_back();
      if (ok) return true;
    }
    return false;
  }

 private:
  Value apply(const ApplyTerm& f) {
    auto it = sig_.functions.find(f.symbol);
    if (it == sig_.functions.end()) {
      if (f.symbol == kBuiltinPlus || f.symbol == kBuiltinMinus) {
        if (f.args.size() != 2) throw KernelError(ErrCode::ArityMismatch, "'" + f.symbol + "' takes two arguments");
        return builtin_nat_op(f.symbol, term(f.args[0]), term(f.args[1]));
      }
      throw KernelError(ErrCode::UnknownSymbol, "function '" + f.symbol + "'");
    }
    const FunctionSymbol& fn = it->second;
    if (f.args.size() != fn.domain.size()) {
      throw KernelError(ErrCode::ArityMismatch, "'" + fn.name + "' applied to " + std::to_string(f.args.size()));
    }
    std::vector<Value> args;
    args.reserve(f.args.size());
    for (const auto& a : f.args) args.push_back(term(a));
    switch (fn.backing) {
      case Backing::Plus:
        return builtin_nat_op(kBuiltinPlus, args[0], args[1]);
      case Backing::Minus:
        return builtin_nat_op(kBuiltinMinus, args[0], args[1]);
      case Backing::Proj: {
        if (args[0].kind != ValueKind::Tuple || fn.projIndex < 1 || fn.projIndex > args[0].items.size()) {
          throw KernelError(ErrCode::ValueDomainMismatch, "'" + fn.name + "' projection out of range");
        }
        return args[0].items[fn.projIndex - 1];
      }
      case Backing::Lt:
      case Backing::Contains:
        throw KernelError(ErrCode::TypeMismatch, "'" + fn.name + "' is relation-backed");
      case Backing::None:
        break;
    }
    auto interp = m_.functions.find(fn.name);
    if (interp != m_.functions.end()) {
      auto entry = interp->second.find(args);
      if (entry != interp->second.end()) return entry->second;
    }
    std::string rendered = fn.name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i > 0) rendered += ", ";
      rendered += args[i].to_string();
    }
    rendered += ")";
    throw KernelError(ErrCode::PartialFunction, "no value for " + rendered);
  }

  bool relapp(const RelAppFormula& r) {
    auto it = sig_.relations.find(r.symbol);
    if (it == sig_.relations.end()) {
      if (r.symbol == kBuiltinLt) {
        if (r.args.size() != 2) throw KernelError(ErrCode::ArityMismatch, "'lt' takes two arguments");
        Value a = term(r.args[0]);
        Value b = term(r.args[1]);
        if (a.kind != ValueKind::Nat || b.kind != ValueKind::Nat) {
          throw KernelError(ErrCode::ValueDomainMismatch, "'lt' applied to non-numbers");
        }
        return a.num < b.num;
      }
      throw KernelError(ErrCode::UnknownSymbol, "relation '" + r.symbol + "'");
    }
    const RelationSymbol& rel = it->second;
    if (r.args.size() != rel.argTypes.size()) {
      throw KernelError(ErrCode::ArityMismatch, "'" + rel.name + "' applied to " + std::to_string(r.args.size()));
    }
    std::vector<Value> args;
    args.reserve(r.args.size());
    for (const auto& a : r.args) args.push_back(term(a));
    switch (rel.backing) {
      case Backing::Lt: {
        if (args[0].kind != ValueKind::Nat || args[1].kind != ValueKind::Nat) {
          throw KernelError(ErrCode::ValueDomainMismatch, "'" + rel.name + "' applied to non-numbers");
        }
        return args[0].num < args[1].num;
      }
      case Backing::Contains: {
        if (args[1].kind != ValueKind::Set) {
          throw KernelError(ErrCode::ValueDomainMismatch, "'" + rel.name + "' needs a set argument");
        }
        return std::binary_search(args[1].items.begin(), args[1].items.end(), args[0]);
      }
      default:
        break;
    }
    auto interp = m_.relations.find(rel.name);
    if (interp == m_.relations.end()) return false;
    return interp->second.count(args) != 0;
  }

  const Structure& m_;
  const SignatureDecl& sig_;
  std::vector<std::pair<std::string, Value>> scope_;
};

}  // namespace

std::vector<Value> enumerate_domain(const Structure& m, const ValueDomain& domain) {
  switch (domain.kind) {
    case DomainKind::Enum: {
      std::vector<Value> out;
      out.reserve(domain.constants.size());
      for (const auto& c : domain.constants) out.push_back(Value::enum_const(c));
      std::sort(out.begin(), out.end());
      return out;
    }
    case DomainKind::Nat:
    case DomainKind::ListOf:
      throw KernelError(ErrCode::QuantifierOverInfiniteDomain, "cannot enumerate an infinite domain");
    case DomainKind::Ref: {
      std::vector<Value> out;
      for (const auto& id : universe_of(m, domain.target)) out.push_back(Value::element(id));
      return out;
    }
    case DomainKind::Product: {
      std::vector<std::vector<Value>> ranges;
      for (const auto& part : domain.parts) ranges.push_back(enumerate_domain(m, part));
      std::vector<Value> out;
      std::vector<std::size_t> idx(ranges.size(), 0);
      for (const auto& range : ranges) {
        if (range.empty()) return {};
      }
      while (true) {
        std::vector<Value> items;
        items.reserve(ranges.size());
        for (std::size_t i = 0; i < ranges.size(); ++i) items.push_back(ranges[i][idx[i]]);
        out.push_back(Value::tuple(std::move(items)));
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
      std::sort(out.begin(), out.end());
      return out;
    }
    case DomainKind::Union: {
      std::vector<Value> out;
      for (const auto& part : domain.parts) {
        auto sub = enumerate_domain(m, part);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    case DomainKind::SetOf: {
      auto base = enumerate_domain(m, domain.parts[0]);
      if (base.size() > kMaxPowerSetBase) {
        throw KernelError(ErrCode::DomainTooLarge,
                          "power set over " + std::to_string(base.size()) + " values");
      }
      std::vector<Value> out;
      const std::size_t count = std::size_t{1} << base.size();
      out.reserve(count);
      for (std::size_t mask = 0; mask < count; ++mask) {
        std::vector<Value> items;
        for (std::size_t i = 0; i < base.size(); ++i) {
          if (mask & (std::size_t{1} << i)) items.push_back(base[i]);
        }
        out.push_back(Value::set(std::move(items)));
      }
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return {};
}

std::vector<Value> enumerate_type(const Structure& m, const std::string& typeName) {
  const SignatureDecl& sig = *m.language;
  TypeKind kind = sig.kind_of(typeName);
  if (kind == TypeKind::Data) {
    auto it = sig.domains.find(typeName);
    if (it == sig.domains.end()) {
      throw KernelError(ErrCode::UnknownType, "data type '" + typeName + "' has no domain");
    }
    return enumerate_domain(m, it->second);
  }
  std::vector<Value> out;
  for (const auto& id : universe_of(m, typeName)) out.push_back(Value::element(id));
  return out;
}

bool evaluate(const Structure& m, const TypedFormula& formula, const Env& env) {
  return Evaluator(m, env).formula(formula.formula);
}

bool evaluate(const Structure& m, const FormulaPtr& formula, const Env& env) {
  return Evaluator(m, env).formula(formula);
}

Value evaluate_term(const Structure& m, const TermPtr& term, const Env& env) {
  return Evaluator(m, env).term(term);
}

}  // namespace m2fol
