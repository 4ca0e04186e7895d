#pragma once

/**
 * @file tptp.hpp
 * TPTP CNF subset frontend: cnf(name, role, (L1 | ... | Ln)). with
 * equations s = t, disequations s != t, and predicate atoms P(...)
 * encoded as equations P(...) = $true over a fresh minimal constant.
 * Includes the prefix parser for redundancy formulas used by the
 * constraint debug subcommand.
 */

#include <cctype>

#include "parc/clause.hpp"
#include "parc/formula.hpp"

namespace parc {

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, unsigned line, unsigned col)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  unsigned line, col;
};

enum class Role { Axiom, Hypothesis, NegatedConjecture };

inline const char* toString(Role r) {
  switch (r) {
    case Role::Axiom: return "axiom";
    case Role::Hypothesis: return "hypothesis";
    case Role::NegatedConjecture: return "negated_conjecture";
  }
  return "?";
}

struct AnnotatedClause {
  std::string name;
  Role role = Role::Axiom;
  Clause clause;
};

struct ProblemFile {
  std::string source;
  Signature sig;
  std::vector<AnnotatedClause> clauses;

  std::vector<Clause> clauseList() const {
    std::vector<Clause> out;
    out.reserve(clauses.size());
    for (const auto& ac : clauses) out.push_back(ac.clause);
    return out;
  }
};

namespace detail {

class Lexer {
public:
  Lexer(std::string_view text) : text_(text) {}

  enum class Tok { Name, Var, LParen, RParen, Comma, Dot, Pipe, Tilde, Eq, Neq, End };

  struct Token {
    Tok kind = Tok::End;
    std::string text;
    unsigned line = 1, col = 1;
  };

  const Token& peek() {
    if (!cur_) cur_ = lex();
    return *cur_;
  }

  Token next() {
    Token t = peek();
    cur_.reset();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }
  [[noreturn]] void failAt(const Token& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.col);
  }

private:
  char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skipSpaceAndComments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && at(pos_ + 1) == '*') {
        advance();
        advance();
        while (pos_ < text_.size() && !(text_[pos_] == '*' && at(pos_ + 1) == '/')) advance();
        if (pos_ >= text_.size()) fail("unterminated block comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token lex() {
    skipSpaceAndComments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = text_[pos_];
    auto isIdent = [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::string name;
      while (pos_ < text_.size() && (isIdent(text_[pos_]) || text_[pos_] == '$')) {
        name.push_back(text_[pos_]);
        advance();
      }
      t.kind = (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_')
                   ? Tok::Var
                   : Tok::Name;
      t.text = std::move(name);
      return t;
    }
    switch (c) {
      case '(': advance(); t.kind = Tok::LParen; return t;
      case ')': advance(); t.kind = Tok::RParen; return t;
      case ',': advance(); t.kind = Tok::Comma; return t;
      case '.': advance(); t.kind = Tok::Dot; return t;
      case '|': advance(); t.kind = Tok::Pipe; return t;
      case '~': advance(); t.kind = Tok::Tilde; return t;
      case '=': advance(); t.kind = Tok::Eq; return t;
      case '!':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          t.kind = Tok::Neq;
          return t;
        }
        fail("expected '=' after '!'");
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  unsigned line_ = 1, col_ = 1;
  std::optional<Token> cur_;
};

struct VarScope {
  std::unordered_map<std::string, VarId> byName;
  VarId fresh = 0;

  VarId get(const std::string& name) {
    auto it = byName.find(name);
    if (it != byName.end()) return it->second;
    VarId v = fresh++;
    byName.emplace(name, v);
    return v;
  }
};

inline void noteAppearance(std::vector<std::string>* order, const std::string& name) {
  if (!order) return;
  for (const auto& n : *order) {
    if (n == name) return;
  }
  order->push_back(name);
}

inline TermRef parseTermRec(Lexer& lx, Signature& sig, VarScope& vars,
                            std::vector<std::string>* appearance = nullptr) {
  Lexer::Token t = lx.next();
  if (t.kind == Lexer::Tok::Var) return Term::var(vars.get(t.text));
  if (t.kind != Lexer::Tok::Name) lx.failAt(t, "expected a term");
  // appearance order is outermost first, i.e. reading order
  noteAppearance(appearance, t.text);
  std::vector<TermRef> args;
  if (lx.peek().kind == Lexer::Tok::LParen) {
    lx.next();
    while (true) {
      args.push_back(parseTermRec(lx, sig, vars, appearance));
      Lexer::Token sep = lx.next();
      if (sep.kind == Lexer::Tok::RParen) break;
      if (sep.kind != Lexer::Tok::Comma) lx.failAt(sep, "expected ',' or ')' in argument list");
    }
  }
  SymbolId id;
  try {
    id = sig.add(t.text, static_cast<unsigned>(args.size()));
  } catch (const StructuralError& e) {
    lx.failAt(t, e.what());
  }
  return Term::app(id, std::move(args));
}

inline SymbolId trueConstant(Signature& sig) { return sig.add("$true", 0); }

inline bool containsPredicateSymbol(const TermRef& t, const Signature& sig) {
  if (t->isVar()) return false;
  if (sig.symbol(t->symbol()).isPredicate) return true;
  for (const auto& a : t->args()) {
    if (containsPredicateSymbol(a, sig)) return true;
  }
  return false;
}

inline Literal parseLiteralRec(Lexer& lx, Signature& sig, VarScope& vars,
                               std::vector<std::string>* appearance = nullptr) {
  bool negated = false;
  if (lx.peek().kind == Lexer::Tok::Tilde) {
    lx.next();
    negated = true;
  }
  Lexer::Token head = lx.peek();
  TermRef first = parseTermRec(lx, sig, vars, appearance);
  Lexer::Tok k = lx.peek().kind;
  if (k == Lexer::Tok::Eq || k == Lexer::Tok::Neq) {
    if (negated) lx.failAt(head, "'~' applies to predicate atoms, not equations");
    lx.next();
    TermRef second = parseTermRec(lx, sig, vars, appearance);
    if (containsPredicateSymbol(first, sig) || containsPredicateSymbol(second, sig)) {
      lx.failAt(head, "predicate symbol used inside an equation");
    }
    return Literal{first, second, k == Lexer::Tok::Eq};
  }
  // predicate atom, encoded as an equation with the truth constant
  if (first->isVar()) lx.failAt(head, "a literal cannot be a bare variable");
  for (const auto& arg : first->args()) {
    if (containsPredicateSymbol(arg, sig)) {
      lx.failAt(head, "predicate symbol used inside a term");
    }
  }
  sig.markPredicate(first->symbol());
  TermRef truth = Term::constant(trueConstant(sig));
  return Literal{first, truth, !negated};
}

}  // namespace detail

/** Parses a TPTP CNF problem. Include directives are rejected. */
inline ProblemFile parseProblem(std::string_view text, std::string sourceName = "<input>") {
  detail::Lexer lx(text);
  ProblemFile pf;
  pf.source = std::move(sourceName);
  std::set<std::string> names;
  std::vector<std::string> appearance;
  while (lx.peek().kind != detail::Lexer::Tok::End) {
    detail::Lexer::Token kw = lx.next();
    if (kw.kind != detail::Lexer::Tok::Name) lx.failAt(kw, "expected 'cnf('");
    if (kw.text == "include") lx.failAt(kw, "include directives are not supported");
    if (kw.text != "cnf") lx.failAt(kw, "only cnf formulas are supported");
    if (lx.next().kind != detail::Lexer::Tok::LParen) lx.fail("expected '(' after cnf");
    detail::Lexer::Token nameTok = lx.next();
    if (nameTok.kind != detail::Lexer::Tok::Name && nameTok.kind != detail::Lexer::Tok::Var) {
      lx.failAt(nameTok, "expected a formula name");
    }
    if (!names.insert(nameTok.text).second) {
      lx.failAt(nameTok, "duplicate formula name '" + nameTok.text + "'");
    }
    if (lx.next().kind != detail::Lexer::Tok::Comma) lx.fail("expected ','");
    detail::Lexer::Token roleTok = lx.next();
    Role role;
    if (roleTok.text == "axiom") role = Role::Axiom;
    else if (roleTok.text == "hypothesis") role = Role::Hypothesis;
    else if (roleTok.text == "negated_conjecture") role = Role::NegatedConjecture;
    else lx.failAt(roleTok, "unknown role '" + roleTok.text + "'");
    if (lx.next().kind != detail::Lexer::Tok::Comma) lx.fail("expected ','");

    bool parenthesized = false;
    if (lx.peek().kind == detail::Lexer::Tok::LParen) {
      parenthesized = true;
      lx.next();
    }
    detail::VarScope vars;
    Clause clause;
    while (true) {
      clause.lits.push_back(detail::parseLiteralRec(lx, pf.sig, vars, &appearance));
      if (lx.peek().kind == detail::Lexer::Tok::Pipe) {
        lx.next();
        continue;
      }
      break;
    }
    if (parenthesized && lx.next().kind != detail::Lexer::Tok::RParen) lx.fail("expected ')'");
    if (lx.next().kind != detail::Lexer::Tok::RParen) lx.fail("expected ')' closing cnf");
    if (lx.next().kind != detail::Lexer::Tok::Dot) lx.fail("expected '.'");
    pf.clauses.push_back(AnnotatedClause{nameTok.text, role, std::move(clause)});
  }
  // the term algebra needs at least one constant
  if (!pf.sig.hasConstant()) {
    std::string name = "c0";
    for (int i = 0; pf.sig.find(name); ++i) name = "c" + std::to_string(i);
    pf.sig.add(name, 0);
  }
  // default precedence: reading order of first appearance, descending,
  // with the truth constant forced least
  {
    std::vector<SymbolId> order;
    std::vector<bool> placed(pf.sig.size(), false);
    for (const auto& name : appearance) {
      if (name == "$true") continue;
      if (auto id = pf.sig.find(name); id && !placed[*id]) {
        placed[*id] = true;
        order.push_back(*id);
      }
    }
    std::optional<SymbolId> tc = pf.sig.find("$true");
    for (SymbolId id = 0; id < pf.sig.size(); ++id) {
      if (!placed[id] && (!tc || id != *tc)) order.push_back(id);
    }
    if (tc) order.push_back(*tc);
    pf.sig.setPrecedence(order);
  }
  return pf;
}

/**
 * Applies a descending precedence given by symbol names. Listed symbols
 * come first in the given order; unlisted symbols keep their relative
 * order after them.
 */
inline void applyPrecedence(Signature& sig, const std::vector<std::string>& names) {
  std::vector<SymbolId> order;
  std::vector<bool> placed(sig.size(), false);
  for (const auto& n : names) {
    auto id = sig.find(n);
    if (!id) throw StructuralError("unknown symbol in precedence list: '" + n + "'");
    if (placed[*id]) throw StructuralError("symbol repeated in precedence list: '" + n + "'");
    placed[*id] = true;
    order.push_back(*id);
  }
  for (SymbolId id = 0; id < sig.size(); ++id) {
    if (!placed[id]) order.push_back(id);
  }
  sig.setPrecedence(order);
}

inline void printProblem(std::ostream& out, const ProblemFile& pf) {
  for (const auto& ac : pf.clauses) {
    out << "cnf(" << ac.name << ", " << toString(ac.role) << ", (";
    printClause(out, ac.clause, pf.sig);
    out << ")).\n";
  }
}

inline bool problemEqual(const ProblemFile& a, const ProblemFile& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    const auto& x = a.clauses[i];
    const auto& y = b.clauses[i];
    if (x.name != y.name || x.role != y.role) return false;
    if (!clauseEqual(normalizeClause(x.clause), normalizeClause(y.clause))) return false;
  }
  return true;
}

// ---- plain term/clause text helpers (tests, debug subcommands) ----

inline TermRef parseTerm(Signature& sig, std::string_view text,
                         detail::VarScope* scope = nullptr) {
  detail::Lexer lx(text);
  detail::VarScope local;
  TermRef t = detail::parseTermRec(lx, sig, scope ? *scope : local);
  if (lx.peek().kind != detail::Lexer::Tok::End) lx.fail("trailing input after term");
  return t;
}

inline Clause parseClause(Signature& sig, std::string_view text,
                          detail::VarScope* scope = nullptr) {
  detail::Lexer lx(text);
  detail::VarScope local;
  detail::VarScope& vars = scope ? *scope : local;
  Clause clause;
  while (true) {
    clause.lits.push_back(detail::parseLiteralRec(lx, sig, vars));
    if (lx.peek().kind == detail::Lexer::Tok::Pipe) {
      lx.next();
      continue;
    }
    break;
  }
  if (lx.peek().kind != detail::Lexer::Tok::End) lx.fail("trailing input after clause");
  return clause;
}

// ---- prefix formula syntax: ex Y. and(eq(s,t), gt(s,t), or(...)) ----

namespace detail {

inline FormulaRef parseFormulaRec(Lexer& lx, Signature& sig, VarScope& vars,
                                  std::vector<std::pair<std::string, VarId>>& bound) {
  Lexer::Token t = lx.peek();
  if (t.kind == Lexer::Tok::Name && t.text == "ex") {
    lx.next();
    std::vector<std::pair<std::string, VarId>> introduced;
    while (true) {
      Lexer::Token v = lx.next();
      if (v.kind != Lexer::Tok::Name && v.kind != Lexer::Tok::Var) {
        lx.failAt(v, "expected a bound variable name");
      }
      VarId id = vars.fresh++;
      introduced.emplace_back(v.text, id);
      bound.emplace_back(v.text, id);
      Lexer::Token sep = lx.next();
      if (sep.kind == Lexer::Tok::Dot) break;
      if (sep.kind != Lexer::Tok::Comma) lx.failAt(sep, "expected ',' or '.' after binder");
    }
    FormulaRef body = parseFormulaRec(lx, sig, vars, bound);
    for (auto it = introduced.rbegin(); it != introduced.rend(); ++it) {
      body = Formula::exists(it->second, body);
      bound.pop_back();
    }
    return body;
  }
  if (t.kind != Lexer::Tok::Name) lx.failAt(t, "expected a formula");
  lx.next();
  auto parseBoundAwareTerm = [&](auto&& self) -> TermRef {
    Lexer::Token tok = lx.next();
    auto lookupBound = [&](const std::string& n) -> std::optional<VarId> {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
        if (it->first == n) return it->second;
      }
      return std::nullopt;
    };
    if (tok.kind == Lexer::Tok::Var) {
      if (auto b = lookupBound(tok.text)) return Term::var(*b);
      return Term::var(vars.get(tok.text));
    }
    if (tok.kind != Lexer::Tok::Name) lx.failAt(tok, "expected a term");
    if (auto b = lookupBound(tok.text)) {
      if (lx.peek().kind == Lexer::Tok::LParen) {
        lx.failAt(tok, "bound variable used as a function symbol");
      }
      return Term::var(*b);
    }
    std::vector<TermRef> args;
    if (lx.peek().kind == Lexer::Tok::LParen) {
      lx.next();
      while (true) {
        args.push_back(self(self));
        Lexer::Token sep = lx.next();
        if (sep.kind == Lexer::Tok::RParen) break;
        if (sep.kind != Lexer::Tok::Comma) lx.failAt(sep, "expected ',' or ')'");
      }
    }
    SymbolId id;
    try {
      id = sig.add(tok.text, static_cast<unsigned>(args.size()));
    } catch (const StructuralError& e) {
      lx.failAt(tok, e.what());
    }
    return Term::app(id, std::move(args));
  };
  auto parseArgs = [&](unsigned n) {
    if (lx.next().kind != Lexer::Tok::LParen) lx.fail("expected '('");
    std::vector<FormulaRef> kids;
    while (true) {
      kids.push_back(parseFormulaRec(lx, sig, vars, bound));
      Lexer::Token sep = lx.next();
      if (sep.kind == Lexer::Tok::RParen) break;
      if (sep.kind != Lexer::Tok::Comma) lx.failAt(sep, "expected ',' or ')'");
    }
    if (n && kids.size() != n) lx.fail("wrong number of arguments");
    return kids;
  };
  if (t.text == "top") return Formula::top();
  if (t.text == "bot") return Formula::bot();
  if (t.text == "and") return Formula::conj(parseArgs(0));
  if (t.text == "or") return Formula::disj(parseArgs(0));
  if (t.text == "not") {
    auto kids = parseArgs(1);
    return Formula::neg(kids[0]);
  }
  if (t.text == "eq" || t.text == "gt") {
    if (lx.next().kind != Lexer::Tok::LParen) lx.fail("expected '('");
    TermRef a = parseBoundAwareTerm(parseBoundAwareTerm);
    if (lx.next().kind != Lexer::Tok::Comma) lx.fail("expected ','");
    TermRef b = parseBoundAwareTerm(parseBoundAwareTerm);
    if (lx.next().kind != Lexer::Tok::RParen) lx.fail("expected ')'");
    return t.text == "eq" ? Formula::eq(a, b) : Formula::gt(a, b);
  }
  lx.failAt(t, "unknown formula connective '" + t.text + "'");
}

}  // namespace detail

inline FormulaRef parseFormula(Signature& sig, std::string_view text) {
  detail::Lexer lx(text);
  detail::VarScope vars;
  std::vector<std::pair<std::string, VarId>> bound;
  FormulaRef f = detail::parseFormulaRec(lx, sig, vars, bound);
  if (lx.peek().kind != detail::Lexer::Tok::End) lx.fail("trailing input after formula");
  return f;
}

}  // namespace parc
