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

#include "m2fol/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "m2fol/eval.hpp"
#include "m2fol/events.hpp"
#include "m2fol/typecheck.hpp"

namespace m2fol {

namespace {

enum class Tok {
  Ident,
  Keyword,
  Nat,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Semi,
  Colon,
  Comma,
  Dot,
  Arrow,     // ->
  FatArrow,  // =>
  Eq,        // =
  Neq,       // !=
  Bang,      // !
  Amp,       // &
  Pipe,      // |
  Star,      // *
  Lt,        // <
  End,
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kws = {
      "language", "model", "bindings", "object", "relation", "data",   "type",   "from",  "to",
      "attr",     "func",  "relsym",   "constraint", "event", "pre",   "do",     "post",  "forall",
      "exists",   "nexists", "in",     "enum",   "nat",     "ref",     "set",    "list",  "of",
      "true",     "rename", "bridge",  "foreach", "where",  "delete",  "cascade"};
  return kws;
}

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::uint64_t number = 0;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(const std::string& text, const std::string& file, std::vector<Diagnostic>& diags)
      : text_(text), file_(file), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceSpan here(int length) const { return {file_, line_, col_, length}; }

  Token next() {
    if (pos_ >= text_.size()) return {Tok::End, "", 0, here(0)};
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      SourceSpan span = here(0);
      std::string word;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        word += text_[pos_];
        advance();
      }
      span.length = static_cast<int>(word.size());
      return {keywords().count(word) ? Tok::Keyword : Tok::Ident, word, 0, span};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      SourceSpan span = here(0);
      std::uint64_t value = 0;
      int length = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        advance();
        ++length;
      }
      span.length = length;
      return {Tok::Nat, "", value, span};
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    SourceSpan span = here(1);
    if (two('-', '>')) {
      advance();
      advance();
      span.length = 2;
      return {Tok::Arrow, "->", 0, span};
    }
    if (two('=', '>')) {
      advance();
      advance();
      span.length = 2;
      return {Tok::FatArrow, "=>", 0, span};
    }
    if (two('!', '=')) {
      advance();
      advance();
      span.length = 2;
      return {Tok::Neq, "!=", 0, span};
    }
    advance();
    switch (c) {
      case '{': return {Tok::LBrace, "{", 0, span};
      case '}': return {Tok::RBrace, "}", 0, span};
      case '(': return {Tok::LParen, "(", 0, span};
      case ')': return {Tok::RParen, ")", 0, span};
      case '[': return {Tok::LBrack, "[", 0, span};
      case ']': return {Tok::RBrack, "]", 0, span};
      case ';': return {Tok::Semi, ";", 0, span};
      case ':': return {Tok::Colon, ":", 0, span};
      case ',': return {Tok::Comma, ",", 0, span};
      case '.': return {Tok::Dot, ".", 0, span};
      case '=': return {Tok::Eq, "=", 0, span};
      case '!': return {Tok::Bang, "!", 0, span};
      case '&': return {Tok::Amp, "&", 0, span};
      case '|': return {Tok::Pipe, "|", 0, span};
      case '*': return {Tok::Star, "*", 0, span};
      case '<': return {Tok::Lt, "<", 0, span};
      default:
        diags_.push_back({span, "SYNTAX", std::string("unexpected character '") + c + "'"});
        return next();
    }
  }

  const std::string& text_;
  std::string file_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Raw (unresolved) pieces collected during the declaration pass.
struct RawDom {
  DomainKind kind = DomainKind::Nat;
  std::vector<std::string> constants;
  std::string target;  // Ref
  std::vector<RawDom> parts;
  SourceSpan span;
};

struct ParserBase {
  ParserBase(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& take() {
    const Token& t = toks_[std::min(pos_, toks_.size() - 1)];
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_kw(const char* word) const { return peek().kind == Tok::Keyword && peek().text == word; }
  bool eat(Tok kind) {
    if (!at(kind)) return false;
    take();
    return true;
  }
  bool eat_kw(const char* word) {
    if (!at_kw(word)) return false;
    take();
    return true;
  }

  void error(const SourceSpan& span, const std::string& code, const std::string& message) {
    if (!suppressed_) diags_.push_back({span, code, message});
    failed_ = true;
  }

  std::optional<Token> expect(Tok kind, const std::string& what) {
    if (at(kind)) return take();
    error(peek().span, "SYNTAX", "expected " + what);
    return std::nullopt;
  }
  std::optional<std::string> expect_ident(const std::string& what) {
    if (at(Tok::Ident)) return take().text;
    error(peek().span, "SYNTAX", "expected " + what);
    return std::nullopt;
  }
  bool expect_kw(const char* word) {
    if (eat_kw(word)) return true;
    error(peek().span, "SYNTAX", std::string("expected '") + word + "'");
    return false;
  }

  // Skips to the next statement boundary after an error.
  void sync() {
    failed_ = false;
    while (!at(Tok::End)) {
      if (eat(Tok::Semi)) return;
      if (at(Tok::RBrace)) return;
      take();
    }
  }

  struct Trial {
    std::size_t pos;
    std::size_t diagCount;
    bool suppressed;
    bool failed;
  };
  Trial begin_trial() {
    Trial t{pos_, diags_.size(), suppressed_, failed_};
    suppressed_ = true;
    failed_ = false;
    return t;
  }
  // Returns true when the trial parse succeeded; otherwise rolls back.
  bool end_trial(const Trial& t, bool parsedOk) {
    bool ok = parsedOk && !failed_;
    suppressed_ = t.suppressed;
    if (!ok) {
      pos_ = t.pos;
      diags_.resize(t.diagCount);
    }
    failed_ = ok ? t.failed : t.failed;
    return ok;
  }

  std::vector<Token> toks_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  bool suppressed_ = false;
  bool failed_ = false;
};

// ---- formulas and terms ------------------------------------------------

class FormulaParser : public ParserBase {
 public:
  using ParserBase::ParserBase;

  FormulaPtr formula() { return implies_chain(); }

  TermPtr term() {
    TermPtr t = primary();
    while (t && at(Tok::Dot) && peek(1).kind == Tok::Nat) {
      take();
      std::uint64_t index = take().number;
      t = with_span(fml::proj(t, static_cast<std::size_t>(index)), t->span);
    }
    return t;
  }

 private:
  static TermPtr with_span(TermPtr t, const SourceSpan& span) {
    auto copy = std::make_shared<Term>(*t);
    copy->span = span;
    return copy;
  }
  static FormulaPtr with_span(FormulaPtr f, const SourceSpan& span) {
    auto copy = std::make_shared<Formula>(*f);
    copy->span = span;
    return copy;
  }

  FormulaPtr implies_chain() {
    FormulaPtr lhs = or_expr();
    if (!lhs) return nullptr;
    if (eat(Tok::FatArrow)) {
      FormulaPtr rhs = implies_chain();
      if (!rhs) return nullptr;
      return with_span(fml::implies(lhs, rhs), lhs->span);
    }
    return lhs;
  }

  FormulaPtr or_expr() {
    FormulaPtr lhs = and_expr();
    while (lhs && eat(Tok::Pipe)) {
      FormulaPtr rhs = and_expr();
      if (!rhs) return nullptr;
      lhs = with_span(fml::disj(lhs, rhs), lhs->span);
    }
    return lhs;
  }

  FormulaPtr and_expr() {
    FormulaPtr lhs = unary();
    while (lhs && eat(Tok::Amp)) {
      FormulaPtr rhs = unary();
      if (!rhs) return nullptr;
      lhs = with_span(fml::conj(lhs, rhs), lhs->span);
    }
    return lhs;
  }

  FormulaPtr unary() {
    const SourceSpan span = peek().span;
    if (eat(Tok::Bang)) {
      FormulaPtr body = unary();
      if (!body) return nullptr;
      return with_span(fml::neg(body), span);
    }
    if (at_kw("forall") || at_kw("exists") || at_kw("nexists")) return quantifier();
    return atom();
  }

  FormulaPtr quantifier() {
    const Token& kw = take();
    auto var = expect_ident("a variable name");
    if (!var) return nullptr;
    if (!expect(Tok::Colon, "':'")) return nullptr;
    auto typeName = expect_ident("a type name");
    if (!typeName) return nullptr;
    if (!expect(Tok::Dot, "'.'")) return nullptr;
    FormulaPtr body = formula();
    if (!body) return nullptr;
    if (kw.text == "forall") return with_span(fml::forall(*var, *typeName, body), kw.span);
    FormulaPtr ex = with_span(fml::exists(*var, *typeName, body), kw.span);
    if (kw.text == "exists") return ex;
    return with_span(fml::neg(ex), kw.span);
  }

  FormulaPtr atom() {
    const SourceSpan span = peek().span;
    if (eat_kw("true")) return with_span(fml::truth(), span);
    if (at(Tok::LParen)) {
      // grouped formula, or a tuple term starting a comparison
      Trial trial = begin_trial();
      take();
      FormulaPtr grouped = formula();
      bool ok = grouped && eat(Tok::RParen);
      if (end_trial(trial, ok)) return grouped;
    }
    TermPtr lhs = term();
    if (!lhs) return nullptr;
    return after_term(lhs, span);
  }

  FormulaPtr after_term(TermPtr lhs, const SourceSpan& span) {
    if (eat(Tok::Eq)) {
      TermPtr rhs = term();
      if (!rhs) return nullptr;
      return with_span(fml::eq(lhs, rhs), span);
    }
    if (eat(Tok::Neq)) {
      TermPtr rhs = term();
      if (!rhs) return nullptr;
      return with_span(fml::neq(lhs, rhs), span);
    }
    if (eat_kw("in")) {
      TermPtr rhs = term();
      if (!rhs) return nullptr;
      return with_span(fml::member(lhs, rhs), span);
    }
    if (const auto* app = std::get_if<ApplyTerm>(&lhs->node)) {
      return with_span(fml::rel(app->symbol, app->args), span);
    }
    error(peek().span, "SYNTAX", "expected '=', '!=' or 'in' after a term");
    return nullptr;
  }

  TermPtr primary() {
    const SourceSpan span = peek().span;
    if (at(Tok::Nat)) {
      return with_span(fml::nat(take().number), span);
    }
    if (at(Tok::Ident)) {
      std::string name = take().text;
      if (eat(Tok::LParen)) {
        std::vector<TermPtr> args;
        if (!at(Tok::RParen)) {
          do {
            TermPtr a = term();
            if (!a) return nullptr;
            args.push_back(a);
          } while (eat(Tok::Comma));
        }
        if (!expect(Tok::RParen, "')'")) return nullptr;
        return with_span(fml::apply(name, std::move(args)), span);
      }
      // bare identifier: variable, constant or element; resolved later
      return with_span(fml::var(name), span);
    }
    if (eat(Tok::LParen)) {
      std::vector<TermPtr> parts;
      do {
        TermPtr p = term();
        if (!p) return nullptr;
        parts.push_back(p);
      } while (eat(Tok::Comma));
      if (!expect(Tok::RParen, "')'")) return nullptr;
      if (parts.size() < 2) {
        error(span, "SYNTAX", "tuples need at least two components");
        return nullptr;
      }
      return with_span(fml::tuple(std::move(parts)), span);
    }
    if (eat(Tok::LBrace)) {
      std::vector<TermPtr> elems;
      if (!at(Tok::RBrace)) {
        do {
          TermPtr e = term();
          if (!e) return nullptr;
          elems.push_back(e);
        } while (eat(Tok::Comma));
      }
      if (!expect(Tok::RBrace, "'}'")) return nullptr;
      return with_span(fml::set(std::move(elems)), span);
    }
    if (eat(Tok::LBrack)) {
      std::vector<TermPtr> elems;
      if (!at(Tok::RBrack)) {
        do {
          TermPtr e = term();
          if (!e) return nullptr;
          elems.push_back(e);
        } while (eat(Tok::Comma));
      }
      if (!expect(Tok::RBrack, "']'")) return nullptr;
      return with_span(fml::list(std::move(elems)), span);
    }
    error(span, "SYNTAX", "expected a term");
    return nullptr;
  }
};

// ---- domain expressions ---------------------------------------------------

class DomParser : public FormulaParser {
 public:
  using FormulaParser::FormulaParser;

  std::optional<RawDom> domexpr() { return union_expr(); }

 private:
  std::optional<RawDom> union_expr() {
    auto lhs = prod_expr();
    if (!lhs) return std::nullopt;
    if (!at(Tok::Pipe)) return lhs;
    RawDom out;
    out.kind = DomainKind::Union;
    out.span = lhs->span;
    out.parts.push_back(std::move(*lhs));
    while (eat(Tok::Pipe)) {
      auto rhs = prod_expr();
      if (!rhs) return std::nullopt;
      out.parts.push_back(std::move(*rhs));
    }
    return out;
  }

  std::optional<RawDom> prod_expr() {
    auto lhs = prefix_expr();
    if (!lhs) return std::nullopt;
    if (!at(Tok::Star)) return lhs;
    RawDom out;
    out.kind = DomainKind::Product;
    out.span = lhs->span;
    out.parts.push_back(std::move(*lhs));
    while (eat(Tok::Star)) {
      auto rhs = prefix_expr();
      if (!rhs) return std::nullopt;
      out.parts.push_back(std::move(*rhs));
    }
    return out;
  }

  std::optional<RawDom> prefix_expr() {
    const SourceSpan span = peek().span;
    if (at_kw("set") || at_kw("list")) {
      const bool isSet = take().text == "set";
      if (!expect_kw("of")) return std::nullopt;
      auto inner = prefix_expr();
      if (!inner) return std::nullopt;
      RawDom out;
      out.kind = isSet ? DomainKind::SetOf : DomainKind::ListOf;
      out.span = span;
      out.parts.push_back(std::move(*inner));
      return out;
    }
    return primary_dom();
  }

  std::optional<RawDom> primary_dom() {
    const SourceSpan span = peek().span;
    if (eat_kw("nat")) {
      RawDom out;
      out.kind = DomainKind::Nat;
      out.span = span;
      return out;
    }
    if (eat_kw("enum")) {
      if (!expect(Tok::LBrace, "'{'")) return std::nullopt;
      RawDom out;
      out.kind = DomainKind::Enum;
      out.span = span;
      do {
        auto name = expect_ident("an enum constant");
        if (!name) return std::nullopt;
        out.constants.push_back(*name);
      } while (eat(Tok::Comma));
      if (!expect(Tok::RBrace, "'}'")) return std::nullopt;
      return out;
    }
    if (eat_kw("ref")) {
      auto name = expect_ident("a type name");
      if (!name) return std::nullopt;
      RawDom out;
      out.kind = DomainKind::Ref;
      out.target = *name;
      out.span = span;
      return out;
    }
    if (eat(Tok::LParen)) {
      auto inner = domexpr();
      if (!inner) return std::nullopt;
      if (!expect(Tok::RParen, "')'")) return std::nullopt;
      return inner;
    }
    error(span, "SYNTAX", "expected a domain expression");
    return std::nullopt;
  }
};

// ---- resolution helpers -----------------------------------------------

void collect_raw_data_refs(const RawDom& raw, const std::map<std::string, TypeKind>& types,
                           std::vector<std::string>& out) {
  if (raw.kind == DomainKind::Ref) {
    auto it = types.find(raw.target);
    if (it != types.end() && it->second == TypeKind::Data) out.push_back(raw.target);
    return;
  }
  for (const auto& part : raw.parts) collect_raw_data_refs(part, types, out);
}

// `ref X` over a data type inlines X's (already resolved) domain.
std::optional<ValueDomain> resolve_raw(const RawDom& raw, const std::map<std::string, TypeKind>& types,
                                       const std::map<std::string, ValueDomain>& dataDomains,
                                       std::vector<Diagnostic>& diags) {
  switch (raw.kind) {
    case DomainKind::Nat:
      return ValueDomain::natural();
    case DomainKind::Enum:
      return ValueDomain::enumeration(raw.constants);
    case DomainKind::Ref: {
      auto it = types.find(raw.target);
      if (it == types.end()) {
        diags.push_back({raw.span, "UNKNOWN_SYMBOL", "unknown type '" + raw.target + "'"});
        return std::nullopt;
      }
      if (it->second == TypeKind::Data) {
        auto dom = dataDomains.find(raw.target);
        if (dom == dataDomains.end()) {
          diags.push_back({raw.span, "UNKNOWN_SYMBOL", "data type '" + raw.target + "' is not resolvable here"});
          return std::nullopt;
        }
        return dom->second;
      }
      return ValueDomain::ref(raw.target);
    }
    default: {
      std::vector<ValueDomain> parts;
      for (const auto& part : raw.parts) {
        auto resolved = resolve_raw(part, types, dataDomains, diags);
        if (!resolved) return std::nullopt;
        parts.push_back(std::move(*resolved));
      }
      ValueDomain out;
      out.kind = raw.kind;
      out.parts = std::move(parts);
      return out;
    }
  }
}

std::optional<Backing> parse_backing_word(const std::string& word) {
  if (word == "plus") return Backing::Plus;
  if (word == "minus") return Backing::Minus;
  if (word == "lt") return Backing::Lt;
  return std::nullopt;
}

// Bare identifiers parse as variables; the ones that name enum constants and
// are not bound by a quantifier become constant terms.
TermPtr resolve_const_term(const TermPtr& t, const std::set<std::string>& constants,
                           std::set<std::string>& bound) {
  if (!t) return t;
  if (const auto* v = std::get_if<VarTerm>(&t->node)) {
    if (!bound.count(v->name) && constants.count(v->name)) {
      auto out = std::make_shared<Term>();
      out->node = ConstTerm{v->name};
      out->span = t->span;
      return out;
    }
    return t;
  }
  auto rebuild = [&](auto node) {
    auto out = std::make_shared<Term>();
    out->node = std::move(node);
    out->span = t->span;
    return out;
  };
  if (const auto* f = std::get_if<ApplyTerm>(&t->node)) {
    ApplyTerm node = *f;
    for (auto& a : node.args) a = resolve_const_term(a, constants, bound);
    return rebuild(std::move(node));
  }
  if (const auto* p = std::get_if<ProjTerm>(&t->node)) {
    ProjTerm node = *p;
    node.tuple = resolve_const_term(node.tuple, constants, bound);
    return rebuild(std::move(node));
  }
  if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
    TupleTerm node = *tp;
    for (auto& a : node.parts) a = resolve_const_term(a, constants, bound);
    return rebuild(std::move(node));
  }
  if (const auto* s = std::get_if<SetTerm>(&t->node)) {
    SetTerm node = *s;
    for (auto& a : node.elements) a = resolve_const_term(a, constants, bound);
    return rebuild(std::move(node));
  }
  if (const auto* l = std::get_if<ListTerm>(&t->node)) {
    ListTerm node = *l;
    for (auto& a : node.elements) a = resolve_const_term(a, constants, bound);
    return rebuild(std::move(node));
  }
  return t;
}

FormulaPtr resolve_const_formula(const FormulaPtr& f, const std::set<std::string>& constants,
                                 std::set<std::string>& bound) {
  if (!f) return f;
  auto rebuild = [&](auto node) {
    auto out = std::make_shared<Formula>();
    out->node = std::move(node);
    out->span = f->span;
    return out;
  };
  if (const auto* e = std::get_if<EqFormula>(&f->node)) {
    return rebuild(EqFormula{resolve_const_term(e->lhs, constants, bound),
                             resolve_const_term(e->rhs, constants, bound)});
  }
  if (const auto* r = std::get_if<RelAppFormula>(&f->node)) {
    RelAppFormula node = *r;
    for (auto& a : node.args) a = resolve_const_term(a, constants, bound);
    return rebuild(std::move(node));
  }
  if (const auto* m = std::get_if<MemberFormula>(&f->node)) {
    return rebuild(MemberFormula{resolve_const_term(m->element, constants, bound),
                                 resolve_const_term(m->set, constants, bound)});
  }
  if (const auto* n = std::get_if<NotFormula>(&f->node)) {
    return rebuild(NotFormula{resolve_const_formula(n->body, constants, bound)});
  }
  if (const auto* a = std::get_if<AndFormula>(&f->node)) {
    return rebuild(AndFormula{resolve_const_formula(a->lhs, constants, bound),
                              resolve_const_formula(a->rhs, constants, bound)});
  }
  if (const auto* o = std::get_if<OrFormula>(&f->node)) {
    return rebuild(OrFormula{resolve_const_formula(o->lhs, constants, bound),
                             resolve_const_formula(o->rhs, constants, bound)});
  }
  if (const auto* i = std::get_if<ImpliesFormula>(&f->node)) {
    return rebuild(ImpliesFormula{resolve_const_formula(i->lhs, constants, bound),
                                  resolve_const_formula(i->rhs, constants, bound)});
  }
  if (const auto* fa = std::get_if<ForallFormula>(&f->node)) {
    const bool fresh = bound.insert(fa->var).second;
    FormulaPtr body = resolve_const_formula(fa->body, constants, bound);
    if (fresh) bound.erase(fa->var);
    return rebuild(ForallFormula{fa->var, fa->typeName, body});
  }
  if (const auto* ex = std::get_if<ExistsFormula>(&f->node)) {
    const bool fresh = bound.insert(ex->var).second;
    FormulaPtr body = resolve_const_formula(ex->body, constants, bound);
    if (fresh) bound.erase(ex->var);
    return rebuild(ExistsFormula{ex->var, ex->typeName, body});
  }
  return f;
}

FormulaPtr resolve_constants_in(const FormulaPtr& f, const std::set<std::string>& constants,
                                const std::set<std::string>& initiallyBound = {}) {
  std::set<std::string> bound = initiallyBound;
  return resolve_const_formula(f, constants, bound);
}

std::set<std::string> constant_names(const SignatureDecl& sig) {
  std::set<std::string> names;
  for (const auto& [name, domain] : constant_table(sig)) names.insert(name);
  return names;
}

std::vector<EventStep> resolve_constants_in_steps(const std::vector<EventStep>& steps,
                                                  const std::set<std::string>& constants,
                                                  std::set<std::string>& bound) {
  std::vector<EventStep> out;
  out.reserve(steps.size());
  for (const auto& s : steps) {
    if (const auto* set = std::get_if<SetStep>(&s.step)) {
      out.push_back({SetStep{resolve_const_term(set->element, constants, bound), set->symbol,
                             resolve_const_term(set->value, constants, bound)}});
    } else if (const auto* del = std::get_if<DeleteStep>(&s.step)) {
      out.push_back({DeleteStep{resolve_const_term(del->element, constants, bound), del->cascade}});
    } else {
      const auto& fe = std::get<ForEachStep>(s.step);
      const bool fresh = bound.insert(fe.var).second;
      FormulaPtr where = fe.where ? resolve_const_formula(fe.where, constants, bound) : fe.where;
      std::vector<EventStep> body = resolve_constants_in_steps(fe.body, constants, bound);
      if (fresh) bound.erase(fe.var);
      out.push_back({ForEachStep{fe.var, fe.typeName, where, std::move(body)}});
    }
  }
  return out;
}

// ---- language files ------------------------------------------------------

struct RawAttr {
  std::string name, owner;
  RawDom codomain;
  Backing backing = Backing::None;
  std::size_t projIndex = 0;
  SourceSpan span;
};
struct RawFunc {
  std::string name;
  std::vector<std::string> domain;
  RawDom codomain;
  Backing backing = Backing::None;
  std::size_t projIndex = 0;
  SourceSpan span;
};
struct RawRelSym {
  std::string name;
  std::vector<RawDom> argTypes;
  Backing backing = Backing::None;
  SourceSpan span;
};

class LanguageParser : public DomParser {
 public:
  using DomParser::DomParser;

  std::optional<SignatureDecl> run() {
    if (!expect_kw("language")) return std::nullopt;
    auto name = expect_ident("a language name");
    if (!name) return std::nullopt;
    sig_.name = *name;
    if (!expect(Tok::LBrace, "'{'")) return std::nullopt;
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      declaration();
      if (failed_) sync();
    }
    expect(Tok::RBrace, "'}'");
    if (!diags_.empty()) return std::nullopt;
    return build();
  }

  // Shared with the bindings parser.
  bool parse_symbol_decl(std::vector<RawAttr>& attrs, std::vector<RawFunc>& funcs,
                         std::vector<RawRelSym>& relsyms) {
    if (eat_kw("attr")) {
      RawAttr a;
      a.span = peek().span;
      auto name = expect_ident("an attribute name");
      if (!name || !expect(Tok::Colon, "':'")) return false;
      auto owner = expect_ident("an owner type");
      if (!owner || !expect(Tok::Arrow, "'->'")) return false;
      auto dom = domexpr();
      if (!dom) return false;
      a.name = *name;
      a.owner = *owner;
      a.codomain = std::move(*dom);
      if (!parse_backing(a.backing, a.projIndex)) return false;
      if (!expect(Tok::Semi, "';'")) return false;
      attrs.push_back(std::move(a));
      return true;
    }
    if (eat_kw("func")) {
      RawFunc f;
      f.span = peek().span;
      auto name = expect_ident("a function name");
      if (!name || !expect(Tok::Colon, "':'")) return false;
      do {
        auto t = expect_ident("a type name");
        if (!t) return false;
        f.domain.push_back(*t);
      } while (eat(Tok::Comma));
      if (!expect(Tok::Arrow, "'->'")) return false;
      auto dom = domexpr();
      if (!dom) return false;
      f.name = *name;
      f.codomain = std::move(*dom);
      if (!parse_backing(f.backing, f.projIndex)) return false;
      if (!expect(Tok::Semi, "';'")) return false;
      funcs.push_back(std::move(f));
      return true;
    }
    if (eat_kw("relsym")) {
      RawRelSym r;
      r.span = peek().span;
      auto name = expect_ident("a relation symbol name");
      if (!name || !expect(Tok::Colon, "':'")) return false;
      do {
        auto dom = domexpr();
        if (!dom) return false;
        r.argTypes.push_back(std::move(*dom));
      } while (eat(Tok::Comma));
      r.name = *name;
      std::size_t ignored = 0;
      if (!parse_backing(r.backing, ignored, /*allowContains=*/true)) return false;
      if (!expect(Tok::Semi, "';'")) return false;
      relsyms.push_back(std::move(r));
      return true;
    }
    return false;
  }

  std::optional<NamedConstraint> parse_constraint_decl() {
    auto name = expect_ident("a constraint name");
    if (!name || !expect(Tok::Colon, "':'")) return std::nullopt;
    FormulaPtr f = formula();
    if (!f || !expect(Tok::Semi, "';'")) return std::nullopt;
    return NamedConstraint{*name, f};
  }

 private:
  bool parse_backing(Backing& backing, std::size_t& projIndex, bool allowContains = false) {
    if (!eat(Tok::Eq)) return true;
    if (allowContains && eat_kw("in")) {
      backing = Backing::Contains;
      return true;
    }
    if (at(Tok::Ident) && peek().text == "proj") {
      take();
      auto n = expect(Tok::Nat, "a projection index");
      if (!n) return false;
      backing = Backing::Proj;
      projIndex = static_cast<std::size_t>(n->number);
      return true;
    }
    if (at(Tok::Ident)) {
      auto b = parse_backing_word(peek().text);
      if (b) {
        take();
        backing = *b;
        return true;
      }
    }
    error(peek().span, "SYNTAX", "expected a builtin backing (plus, minus, lt, in, proj N)");
    return false;
  }

  void declaration() {
    if (eat_kw("object")) {
      if (!expect_kw("type")) return;
      auto name = expect_ident("a type name");
      if (!name) return;
      std::vector<std::string> parents;
      if (eat(Tok::Lt)) {
        do {
          auto parent = expect_ident("a parent type");
          if (!parent) return;
          parents.push_back(*parent);
        } while (eat(Tok::Comma));
      }
      if (!expect(Tok::Semi, "';'")) return;
      declare_type(*name, TypeKind::Object);
      for (const auto& p : parents) rawInh_.emplace_back(*name, p);
      return;
    }
    if (eat_kw("relation")) {
      if (!expect_kw("type")) return;
      auto name = expect_ident("a type name");
      if (!name || !expect_kw("from")) return;
      auto from = expect_ident("a source type");
      if (!from || !expect_kw("to")) return;
      auto to = expect_ident("a target type");
      if (!to || !expect(Tok::Semi, "';'")) return;
      declare_type(*name, TypeKind::Relation);
      rawRelTypes_.emplace_back(*name, std::make_pair(*from, *to));
      return;
    }
    if (eat_kw("data")) {
      if (!expect_kw("type")) return;
      auto name = expect_ident("a type name");
      if (!name || !expect(Tok::Eq, "'='")) return;
      auto dom = domexpr();
      if (!dom || !expect(Tok::Semi, "';'")) return;
      declare_type(*name, TypeKind::Data);
      rawData_.emplace_back(*name, std::move(*dom));
      return;
    }
    if (parse_symbol_decl(rawAttrs_, rawFuncs_, rawRelSyms_)) return;
    if (eat_kw("constraint")) {
      auto c = parse_constraint_decl();
      if (c) rawConstraints_.push_back(std::move(*c));
      return;
    }
    if (eat_kw("event")) {
      parse_event();
      return;
    }
    error(peek().span, "SYNTAX", "expected a declaration");
  }

  void parse_event() {
    auto ev = std::make_shared<DomainEvent>();
    auto name = expect_ident("an event name");
    if (!name || !expect(Tok::LParen, "'('")) return;
    ev->name = *name;
    if (!at(Tok::RParen)) {
      do {
        auto pname = expect_ident("a parameter name");
        if (!pname || !expect(Tok::Colon, "':'")) return;
        auto ptype = expect_ident("a parameter type");
        if (!ptype) return;
        ev->params.emplace_back(*pname, *ptype);
      } while (eat(Tok::Comma));
    }
    if (!expect(Tok::RParen, "')'") || !expect_kw("pre")) return;
    ev->pre = formula();
    if (!ev->pre || !expect_kw("do") || !expect(Tok::LBrace, "'{'")) return;
    if (!parse_steps(ev->body)) return;
    if (!expect(Tok::RBrace, "'}'") || !expect_kw("post")) return;
    ev->post = formula();
    if (!ev->post || !expect(Tok::Semi, "';'")) return;
    rawEvents_.push_back(std::move(ev));
  }

  bool parse_steps(std::vector<EventStep>& out) {
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      if (eat_kw("set")) {
        auto symbol = expect_ident("an attribute name");
        if (!symbol || !expect(Tok::LParen, "'('")) return false;
        TermPtr element = term();
        if (!element || !expect(Tok::RParen, "')'") || !expect(Tok::Eq, "'='")) return false;
        TermPtr value = term();
        if (!value || !expect(Tok::Semi, "';'")) return false;
        out.push_back({SetStep{element, *symbol, value}});
        continue;
      }
      if (eat_kw("delete")) {
        TermPtr element = term();
        if (!element) return false;
        bool cascade = eat_kw("cascade");
        if (!expect(Tok::Semi, "';'")) return false;
        out.push_back({DeleteStep{element, cascade}});
        continue;
      }
      if (eat_kw("foreach")) {
        ForEachStep fe;
        auto var = expect_ident("a variable name");
        if (!var || !expect(Tok::Colon, "':'")) return false;
        auto typeName = expect_ident("a type name");
        if (!typeName) return false;
        fe.var = *var;
        fe.typeName = *typeName;
        if (eat_kw("where")) {
          fe.where = formula();
          if (!fe.where) return false;
        }
        if (!expect(Tok::LBrace, "'{'")) return false;
        if (!parse_steps(fe.body)) return false;
        if (!expect(Tok::RBrace, "'}'")) return false;
        out.push_back({std::move(fe)});
        continue;
      }
      error(peek().span, "SYNTAX", "expected a step (set, delete, foreach)");
      return false;
    }
    return true;
  }

  void declare_type(const std::string& name, TypeKind kind) {
    if (!sig_.types.emplace(name, kind).second) {
      diags_.push_back({peek().span, "DUPLICATE_TYPE", "type '" + name + "' declared twice"});
    }
  }

  std::optional<SignatureDecl> build() {
    // inheritance edges
    for (const auto& [sub, super] : rawInh_) sig_.inh.emplace(sub, super);

    // data domains, expanding data-type references topologically
    std::map<std::string, ValueDomain> resolvedData;
    std::vector<std::pair<std::string, RawDom>> pending = rawData_;
    bool progress = true;
    while (progress && !pending.empty()) {
      progress = false;
      for (auto it = pending.begin(); it != pending.end();) {
        std::vector<std::string> needs;
        collect_raw_data_refs(it->second, sig_.types, needs);
        const bool ready = std::all_of(needs.begin(), needs.end(), [&](const std::string& n) {
          return resolvedData.count(n) != 0;
        });
        if (!ready) {
          ++it;
          continue;
        }
        auto resolved = resolve_raw(it->second, sig_.types, resolvedData, diags_);
        if (resolved) resolvedData.emplace(it->first, std::move(*resolved));
        it = pending.erase(it);
        progress = true;
      }
    }
    for (const auto& [name, raw] : pending) {
      diags_.push_back({raw.span, "CYCLIC_DATA", "data type '" + name + "' references itself"});
    }
    sig_.domains = resolvedData;

    // endpoint symbols implied by relation type declarations
    for (const auto& [name, fromTo] : rawRelTypes_) {
      for (bool src : {true, false}) {
        FunctionSymbol fn;
        fn.name = (src ? "src_" : "tgt_") + name;
        fn.role = src ? SymbolRole::RelSource : SymbolRole::RelTarget;
        fn.domain = {name};
        fn.codomain = ValueDomain::ref(src ? fromTo.first : fromTo.second);
        if (!sig_.functions.emplace(fn.name, fn).second) {
          diags_.push_back({{}, "DUPLICATE_SYMBOL", "symbol '" + fn.name + "' declared twice"});
        }
      }
    }

    auto add_function = [&](FunctionSymbol fn, const SourceSpan& span) {
      if (sig_.relations.count(fn.name) || !sig_.functions.emplace(fn.name, fn).second) {
        diags_.push_back({span, "DUPLICATE_SYMBOL", "symbol '" + fn.name + "' declared twice"});
      }
    };
    for (const auto& a : rawAttrs_) {
      auto codomain = resolve_raw(a.codomain, sig_.types, resolvedData, diags_);
      if (!codomain) continue;
      FunctionSymbol fn;
      fn.name = a.name;
      fn.role = SymbolRole::Attribute;
      fn.domain = {a.owner};
      fn.codomain = std::move(*codomain);
      fn.backing = a.backing;
      fn.projIndex = a.projIndex;
      add_function(std::move(fn), a.span);
    }
    for (const auto& f : rawFuncs_) {
      auto codomain = resolve_raw(f.codomain, sig_.types, resolvedData, diags_);
      if (!codomain) continue;
      FunctionSymbol fn;
      fn.name = f.name;
      fn.role = SymbolRole::Auxiliary;
      fn.domain = f.domain;
      fn.codomain = std::move(*codomain);
      fn.backing = f.backing;
      fn.projIndex = f.projIndex;
      add_function(std::move(fn), f.span);
    }
    for (const auto& r : rawRelSyms_) {
      RelationSymbol rel;
      rel.name = r.name;
      rel.backing = r.backing;
      bool ok = true;
      for (const auto& raw : r.argTypes) {
        auto resolved = resolve_raw(raw, sig_.types, resolvedData, diags_);
        if (!resolved) {
          ok = false;
          break;
        }
        rel.argTypes.push_back(std::move(*resolved));
      }
      if (!ok) continue;
      if (sig_.functions.count(rel.name) || !sig_.relations.emplace(rel.name, rel).second) {
        diags_.push_back({r.span, "DUPLICATE_SYMBOL", "symbol '" + rel.name + "' declared twice"});
      }
    }

    const std::set<std::string> constants = constant_names(sig_);
    for (const auto& c : rawConstraints_) {
      sig_.add_constraint(c.name, resolve_constants_in(c.formula, constants));
    }
    for (const auto& raw : rawEvents_) {
      auto ev = std::make_shared<DomainEvent>();
      ev->name = raw->name;
      ev->params = raw->params;
      std::set<std::string> bound;
      for (const auto& [pname, ptype] : raw->params) bound.insert(pname);
      ev->pre = resolve_constants_in(raw->pre, constants, bound);
      ev->post = resolve_constants_in(raw->post, constants, bound);
      std::set<std::string> stepBound = bound;
      ev->body = resolve_constants_in_steps(raw->body, constants, stepBound);
      sig_.events.push_back(std::move(ev));
    }
    std::sort(sig_.events.begin(), sig_.events.end(),
              [](const auto& a, const auto& b) { return a->name < b->name; });

    if (!diags_.empty()) return std::nullopt;

    // Semantic validation becomes diagnostics: a parsed language is either
    // valid or explained.
    ValidationReport report = validate_signature(sig_);
    for (const auto& finding : report.findings) {
      diags_.push_back({{}, finding.code, finding.subject + ": " + finding.detail});
    }
    if (!diags_.empty()) return std::nullopt;
    return sig_;
  }

  SignatureDecl sig_;
  std::vector<std::pair<std::string, std::string>> rawInh_;
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> rawRelTypes_;
  std::vector<std::pair<std::string, RawDom>> rawData_;
  std::vector<RawAttr> rawAttrs_;
  std::vector<RawFunc> rawFuncs_;
  std::vector<RawRelSym> rawRelSyms_;
  std::vector<NamedConstraint> rawConstraints_;
  std::vector<std::shared_ptr<const DomainEvent>> rawEvents_;
};

// ---- model files -------------------------------------------------------

struct RawElement {
  std::string type, id;
  std::optional<std::pair<std::string, std::string>> endpoints;
  SourceSpan span;
};
struct RawAssign {
  std::string element, symbol;
  TermPtr value;
  SourceSpan span;
};
struct RawEntry {
  std::string symbol;
  std::vector<TermPtr> args;
  TermPtr value;  // null for relation tuples
  SourceSpan span;
};

class ModelParser : public FormulaParser {
 public:
  ModelParser(std::vector<Token> tokens, std::vector<Diagnostic>& diags,
              std::shared_ptr<const SignatureDecl> sig)
      : FormulaParser(std::move(tokens), diags), sig_(std::move(sig)) {}

  std::optional<Structure> run() {
    if (!expect_kw("model")) return std::nullopt;
    auto name = expect_ident("a model name");
    if (!name || !expect(Tok::Colon, "':'")) return std::nullopt;
    auto langName = expect_ident("a language name");
    if (!langName) return std::nullopt;
    if (*langName != sig_->name) {
      diags_.push_back({peek().span, "UNKNOWN_SYMBOL",
                        "model declares language '" + *langName + "' but '" + sig_->name + "' was supplied"});
    }
    if (!expect(Tok::LBrace, "'{'")) return std::nullopt;
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      statement();
      if (failed_) sync();
    }
    expect(Tok::RBrace, "'}'");
    if (!diags_.empty()) return std::nullopt;
    return build(*name);
  }

 private:
  void statement() {
    const SourceSpan span = peek().span;
    auto first = expect_ident("an identifier");
    if (!first) return;
    if (at(Tok::Ident)) {
      RawElement elem;
      elem.type = *first;
      elem.id = take().text;
      elem.span = span;
      if (eat(Tok::LParen)) {
        auto src = expect_ident("a source element");
        if (!src || !expect(Tok::Arrow, "'->'")) return;
        auto tgt = expect_ident("a target element");
        if (!tgt || !expect(Tok::RParen, "')'")) return;
        elem.endpoints = {*src, *tgt};
      }
      if (!expect(Tok::Semi, "';'")) return;
      elements_.push_back(std::move(elem));
      return;
    }
    if (eat(Tok::Dot)) {
      auto symbol = expect_ident("an attribute name");
      if (!symbol || !expect(Tok::Eq, "'='")) return;
      TermPtr value = term();
      if (!value || !expect(Tok::Semi, "';'")) return;
      assigns_.push_back({*first, *symbol, value, span});
      return;
    }
    if (eat(Tok::LParen)) {
      RawEntry entry;
      entry.symbol = *first;
      entry.span = span;
      if (!at(Tok::RParen)) {
        do {
          TermPtr a = term();
          if (!a) return;
          entry.args.push_back(a);
        } while (eat(Tok::Comma));
      }
      if (!expect(Tok::RParen, "')'")) return;
      if (eat(Tok::Eq)) {
        entry.value = term();
        if (!entry.value) return;
      }
      if (!expect(Tok::Semi, "';'")) return;
      entries_.push_back(std::move(entry));
      return;
    }
    error(span, "SYNTAX", "expected an element declaration, attribute assignment or tuple");
  }

  std::optional<Value> ground(const TermPtr& t, const Structure& m,
                              const std::map<std::string, ValueDomain>& constants) {
    if (const auto* v = std::get_if<VarTerm>(&t->node)) {
      if (m.elements.count(v->name)) return Value::element(v->name);
      if (constants.count(v->name)) return Value::enum_const(v->name);
      diags_.push_back({t->span, "UNKNOWN_SYMBOL", "'" + v->name + "' is neither an element nor a constant"});
      return std::nullopt;
    }
    if (const auto* n = std::get_if<NatTerm>(&t->node)) return Value::nat(n->value);
    auto groundAll = [&](const std::vector<TermPtr>& parts) -> std::optional<std::vector<Value>> {
      std::vector<Value> out;
      for (const auto& p : parts) {
        auto v = ground(p, m, constants);
        if (!v) return std::nullopt;
        out.push_back(std::move(*v));
      }
      return out;
    };
    if (const auto* tp = std::get_if<TupleTerm>(&t->node)) {
      auto items = groundAll(tp->parts);
      if (!items) return std::nullopt;
      return Value::tuple(std::move(*items));
    }
    if (const auto* s = std::get_if<SetTerm>(&t->node)) {
      auto items = groundAll(s->elements);
      if (!items) return std::nullopt;
      return Value::set(std::move(*items));
    }
    if (const auto* l = std::get_if<ListTerm>(&t->node)) {
      auto items = groundAll(l->elements);
      if (!items) return std::nullopt;
      return Value::list(std::move(*items));
    }
    diags_.push_back({t->span, "SYNTAX", "model values must be literals"});
    return std::nullopt;
  }

  bool element_fits(const Structure& m, const std::string& id, const std::string& typeName) {
    return value_in_domain(m, Value::element(id), ValueDomain::ref(typeName));
  }

  std::optional<Structure> build(const std::string& name) {
    Structure m;
    m.name = name;
    m.language = sig_;
    for (const auto& e : elements_) {
      auto kind = sig_->types.find(e.type);
      if (kind == sig_->types.end() || kind->second == TypeKind::Data) {
        diags_.push_back({e.span, "UNKNOWN_SYMBOL", "no object or relation type '" + e.type + "'"});
        continue;
      }
      if (!m.elements.emplace(e.id, e.type).second) {
        diags_.push_back({e.span, "DUPLICATE_ELEMENT", "element '" + e.id + "' declared twice"});
      }
      if (e.endpoints && kind->second != TypeKind::Relation) {
        diags_.push_back({e.span, "TYPE_MISMATCH", "only relation elements take (src -> tgt)"});
      }
    }
    if (!diags_.empty()) return std::nullopt;

    auto constants = constant_table(*sig_);

    for (const auto& e : elements_) {
      if (!e.endpoints) continue;
      const FunctionSymbol& src = sig_->source_symbol(e.type);
      const FunctionSymbol& tgt = sig_->target_symbol(e.type);
      for (const auto& [symbol, value] :
           {std::make_pair(src.name, e.endpoints->first), std::make_pair(tgt.name, e.endpoints->second)}) {
        if (!m.elements.count(value)) {
          diags_.push_back({e.span, "UNKNOWN_ELEMENT", "no element '" + value + "'"});
          continue;
        }
        const FunctionSymbol& fn = symbol == src.name ? src : tgt;
        if (!element_fits(m, value, fn.codomain.target)) {
          diags_.push_back({e.span, "TYPE_MISMATCH",
                            "'" + value + "' is not a " + fn.codomain.target});
          continue;
        }
        m.functions[symbol][{Value::element(e.id)}] = Value::element(value);
      }
    }

    for (const auto& a : assigns_) {
      if (!m.elements.count(a.element)) {
        diags_.push_back({a.span, "UNKNOWN_ELEMENT", "no element '" + a.element + "'"});
        continue;
      }
      auto fnIt = sig_->functions.find(a.symbol);
      if (fnIt == sig_->functions.end()) {
        diags_.push_back({a.span, "UNKNOWN_SYMBOL", "no attribute '" + a.symbol + "'"});
        continue;
      }
      const FunctionSymbol& fn = fnIt->second;
      if (fn.domain.size() != 1 || !element_fits(m, a.element, fn.domain[0])) {
        diags_.push_back({a.span, "TYPE_MISMATCH",
                          "'" + a.element + "' does not own attribute '" + a.symbol + "'"});
        continue;
      }
      auto value = ground(a.value, m, constants);
      if (!value) continue;
      if (!value_in_domain(m, *value, fn.codomain)) {
        diags_.push_back({a.span, "VALUE_DOMAIN_MISMATCH",
                          "value " + value->to_string() + " outside the domain of '" + a.symbol + "'"});
        continue;
      }
      m.functions[a.symbol][{Value::element(a.element)}] = std::move(*value);
    }

    for (const auto& e : entries_) {
      if (e.value) {
        auto fnIt = sig_->functions.find(e.symbol);
        if (fnIt == sig_->functions.end()) {
          diags_.push_back({e.span, "UNKNOWN_SYMBOL", "no function symbol '" + e.symbol + "'"});
          continue;
        }
        if (fnIt->second.domain.size() != e.args.size()) {
          diags_.push_back({e.span, "ARITY_MISMATCH", "'" + e.symbol + "' has a different arity"});
          continue;
        }
        std::vector<Value> args;
        bool ok = true;
        for (const auto& arg : e.args) {
          auto v = ground(arg, m, constants);
          ok = ok && v.has_value();
          if (v) args.push_back(std::move(*v));
        }
        auto value = ok ? ground(e.value, m, constants) : std::nullopt;
        if (!ok || !value) continue;
        if (!value_in_domain(m, *value, fnIt->second.codomain)) {
          diags_.push_back({e.span, "VALUE_DOMAIN_MISMATCH",
                            "value " + value->to_string() + " outside the codomain of '" + e.symbol + "'"});
          continue;
        }
        m.functions[e.symbol][std::move(args)] = std::move(*value);
      } else {
        auto relIt = sig_->relations.find(e.symbol);
        if (relIt == sig_->relations.end()) {
          diags_.push_back({e.span, "UNKNOWN_SYMBOL", "no relation symbol '" + e.symbol + "'"});
          continue;
        }
        if (relIt->second.argTypes.size() != e.args.size()) {
          diags_.push_back({e.span, "ARITY_MISMATCH", "'" + e.symbol + "' has a different arity"});
          continue;
        }
        std::vector<Value> tuple;
        bool ok = true;
        for (const auto& arg : e.args) {
          auto v = ground(arg, m, constants);
          ok = ok && v.has_value();
          if (v) tuple.push_back(std::move(*v));
        }
        if (!ok) continue;
        m.relations[e.symbol].insert(std::move(tuple));
      }
    }

    if (!diags_.empty()) return std::nullopt;
    return m;
  }

  std::shared_ptr<const SignatureDecl> sig_;
  std::vector<RawElement> elements_;
  std::vector<RawAssign> assigns_;
  std::vector<RawEntry> entries_;
};

// ---- bindings files ---------------------------------------------------

class BindingsParser : public LanguageParser {
 public:
  BindingsParser(std::vector<Token> tokens, std::vector<Diagnostic>& diags, const SignatureDecl& a,
                 const SignatureDecl& b)
      : LanguageParser(std::move(tokens), diags), a_(a), b_(b) {}

  std::optional<FusionBinding> run() {
    if (!expect_kw("bindings")) return std::nullopt;
    if (!expect(Tok::LBrace, "'{'")) return std::nullopt;
    while (!at(Tok::RBrace) && !at(Tok::End)) {
      declaration();
      if (failed_) sync();
    }
    expect(Tok::RBrace, "'}'");
    if (!diags_.empty()) return std::nullopt;
    return resolve();
  }

 private:
  void declaration() {
    if (eat_kw("rename")) {
      auto side = expect_ident("'left' or 'right'");
      if (!side) return;
      FusionSide s;
      if (*side == "left") {
        s = FusionSide::Left;
      } else if (*side == "right") {
        s = FusionSide::Right;
      } else {
        error(peek().span, "SYNTAX", "expected 'left' or 'right'");
        return;
      }
      auto from = expect_ident("a type name");
      if (!from || !expect(Tok::Arrow, "'->'")) return;
      auto to = expect_ident("a type name");
      if (!to || !expect(Tok::Semi, "';'")) return;
      binding_.renames.push_back({s, *from, *to});
      return;
    }
    if (eat_kw("bridge")) {
      auto name = expect_ident("a bridge name");
      if (!name || !expect(Tok::Colon, "':'")) return;
      auto from = expect_ident("a type name");
      if (!from || !expect(Tok::Arrow, "'->'")) return;
      auto to = expect_ident("a type name");
      if (!to || !expect(Tok::Semi, "';'")) return;
      binding_.bridges.push_back({*name, *from, *to});
      return;
    }
    if (parse_symbol_decl(rawAttrs_, rawFuncs_, rawRelSyms_)) return;
    if (eat_kw("constraint")) {
      auto c = parse_constraint_decl();
      if (c) binding_.newConstraints.push_back(std::move(*c));
      return;
    }
    error(peek().span, "SYNTAX", "expected rename, bridge, attr, func, relsym or constraint");
  }

  std::optional<FusionBinding> resolve() {
    // Environment: both signatures with the declared renames applied.
    std::map<std::string, std::string> leftMap, rightMap;
    for (const auto& r : binding_.renames) {
      (r.side == FusionSide::Left ? leftMap : rightMap).emplace(r.from, r.to);
    }
    SignatureDecl left = leftMap.empty() ? a_ : rename_signature(a_, leftMap);
    SignatureDecl right = rightMap.empty() ? b_ : rename_signature(b_, rightMap);
    std::map<std::string, TypeKind> types = left.types;
    types.insert(right.types.begin(), right.types.end());
    std::map<std::string, ValueDomain> dataDomains = left.domains;
    dataDomains.insert(right.domains.begin(), right.domains.end());

    for (const auto& a : rawAttrs_) {
      auto codomain = resolve_raw(a.codomain, types, dataDomains, diags_);
      if (!codomain) continue;
      FunctionSymbol fn;
      fn.name = a.name;
      fn.role = SymbolRole::Attribute;
      fn.domain = {a.owner};
      fn.codomain = std::move(*codomain);
      fn.backing = a.backing;
      fn.projIndex = a.projIndex;
      binding_.newFunctions.push_back(std::move(fn));
    }
    for (const auto& f : rawFuncs_) {
      auto codomain = resolve_raw(f.codomain, types, dataDomains, diags_);
      if (!codomain) continue;
      FunctionSymbol fn;
      fn.name = f.name;
      fn.role = SymbolRole::Auxiliary;
      fn.domain = f.domain;
      fn.codomain = std::move(*codomain);
      fn.backing = f.backing;
      fn.projIndex = f.projIndex;
      binding_.newFunctions.push_back(std::move(fn));
    }
    for (const auto& r : rawRelSyms_) {
      RelationSymbol rel;
      rel.name = r.name;
      rel.backing = r.backing;
      bool ok = true;
      for (const auto& raw : r.argTypes) {
        auto resolved = resolve_raw(raw, types, dataDomains, diags_);
        if (!resolved) {
          ok = false;
          break;
        }
        rel.argTypes.push_back(std::move(*resolved));
      }
      if (ok) binding_.newRelations.push_back(std::move(rel));
    }
    if (!diags_.empty()) return std::nullopt;

    std::set<std::string> constants = constant_names(left);
    for (const auto& name : constant_names(right)) constants.insert(name);
    std::vector<ValueDomain> extraEnums;
    for (const auto& fn : binding_.newFunctions) collect_domain_enums(fn.codomain, extraEnums);
    for (const auto& rel : binding_.newRelations) {
      for (const auto& arg : rel.argTypes) collect_domain_enums(arg, extraEnums);
    }
    for (const auto& e : extraEnums) constants.insert(e.constants.begin(), e.constants.end());
    for (auto& c : binding_.newConstraints) c.formula = resolve_constants_in(c.formula, constants);
    return binding_;
  }

  const SignatureDecl& a_;
  const SignatureDecl& b_;
  FusionBinding binding_;
  std::vector<RawAttr> rawAttrs_;
  std::vector<RawFunc> rawFuncs_;
  std::vector<RawRelSym> rawRelSyms_;
};

}  // namespace

ParseResult<SignatureDecl> parse_language(const std::string& text, const std::string& file) {
  ParseResult<SignatureDecl> result;
  Lexer lexer(text, file, result.diagnostics);
  LanguageParser parser(lexer.run(), result.diagnostics);
  auto sig = parser.run();
  if (result.diagnostics.empty() && sig) result.value = std::move(*sig);
  return result;
}

ParseResult<Structure> parse_model(const std::string& text, std::shared_ptr<const SignatureDecl> sig,
                                   const std::string& file) {
  ParseResult<Structure> result;
  Lexer lexer(text, file, result.diagnostics);
  ModelParser parser(lexer.run(), result.diagnostics, std::move(sig));
  auto m = parser.run();
  if (result.diagnostics.empty() && m) result.value = std::move(*m);
  return result;
}

ParseResult<std::vector<NamedConstraint>> parse_constraints(const std::string& text, const SignatureDecl& sig,
                                                            const std::string& file) {
  ParseResult<std::vector<NamedConstraint>> result;
  Lexer lexer(text, file, result.diagnostics);
  LanguageParser parser(lexer.run(), result.diagnostics);
  std::vector<NamedConstraint> constraints;
  while (!parser.at(Tok::End)) {
    if (!parser.expect_kw("constraint")) {
      parser.sync();
      continue;
    }
    auto c = parser.parse_constraint_decl();
    if (c) {
      constraints.push_back(std::move(*c));
    } else {
      parser.sync();
    }
  }
  const std::set<std::string> constants = constant_names(sig);
  for (auto& c : constraints) {
    c.formula = resolve_constants_in(c.formula, constants);
    auto checked = typecheck_formula(sig, c.formula);
    if (const auto* errors = std::get_if<std::vector<TypeError>>(&checked)) {
      for (const auto& e : *errors) {
        result.diagnostics.push_back({e.span, e.code, "constraint '" + c.name + "': " + e.message});
      }
    }
  }
  if (result.diagnostics.empty()) result.value = std::move(constraints);
  return result;
}

ParseResult<FusionBinding> parse_bindings(const std::string& text, const SignatureDecl& a,
                                          const SignatureDecl& b, const std::string& file) {
  ParseResult<FusionBinding> result;
  Lexer lexer(text, file, result.diagnostics);
  BindingsParser parser(lexer.run(), result.diagnostics, a, b);
  auto binding = parser.run();
  if (result.diagnostics.empty() && binding) result.value = std::move(*binding);
  return result;
}

ParseResult<FormulaPtr> parse_formula(const std::string& text, const SignatureDecl& sig,
                                      const std::string& file) {
  ParseResult<FormulaPtr> result;
  Lexer lexer(text, file, result.diagnostics);
  FormulaParser parser(lexer.run(), result.diagnostics);
  FormulaPtr f = parser.formula();
  if (f && !parser.at(Tok::End)) {
    result.diagnostics.push_back({parser.peek().span, "SYNTAX", "trailing input after formula"});
  }
  if (f) f = resolve_constants_in(f, constant_names(sig));
  if (f && result.diagnostics.empty()) {
    auto checked = typecheck_formula(sig, f);
    if (const auto* errors = std::get_if<std::vector<TypeError>>(&checked)) {
      for (const auto& e : *errors) result.diagnostics.push_back({e.span, e.code, e.message});
    }
  }
  if (result.diagnostics.empty() && f) result.value = f;
  return result;
}

}  // namespace m2fol
