#pragma once

/**
 * @file formula.hpp
 * Redundancy formulas: boolean combinations (with existentials) of the
 * atoms s = t and s > t, interpreted in the ground term algebra extended
 * with the simplification order. Immutable trees.
 */

#include <memory>
#include <set>

#include "parc/substitution.hpp"
#include "parc/term.hpp"

namespace parc {

enum class FKind { Top, Bot, Eq, Gt, Not, And, Or, Exists };

class Formula;
using FormulaRef = std::shared_ptr<const Formula>;

class Formula {
public:
  struct Tag {};

  static FormulaRef top() {
    static FormulaRef t = std::make_shared<Formula>(Tag{}, FKind::Top);
    return t;
  }
  static FormulaRef bot() {
    static FormulaRef b = std::make_shared<Formula>(Tag{}, FKind::Bot);
    return b;
  }
  static FormulaRef eq(TermRef a, TermRef b) {
    return std::make_shared<Formula>(Tag{}, FKind::Eq, std::move(a), std::move(b));
  }
  static FormulaRef gt(TermRef a, TermRef b) {
    return std::make_shared<Formula>(Tag{}, FKind::Gt, std::move(a), std::move(b));
  }
  /** s >= t, as the derived disjunction s > t or s = t. */
  static FormulaRef ge(const TermRef& a, const TermRef& b) {
    return disj({gt(a, b), eq(a, b)});
  }
  static FormulaRef neg(FormulaRef f) {
    return std::make_shared<Formula>(Tag{}, FKind::Not, std::vector<FormulaRef>{std::move(f)});
  }
  static FormulaRef conj(std::vector<FormulaRef> kids) {
    if (kids.empty()) return top();
    if (kids.size() == 1) return kids[0];
    return std::make_shared<Formula>(Tag{}, FKind::And, std::move(kids));
  }
  static FormulaRef disj(std::vector<FormulaRef> kids) {
    if (kids.empty()) return bot();
    if (kids.size() == 1) return kids[0];
    return std::make_shared<Formula>(Tag{}, FKind::Or, std::move(kids));
  }
  static FormulaRef exists(VarId v, FormulaRef body) {
    return std::make_shared<Formula>(Tag{}, FKind::Exists, v, std::move(body));
  }

  FKind kind() const { return kind_; }
  bool isTop() const { return kind_ == FKind::Top; }
  bool isBot() const { return kind_ == FKind::Bot; }
  bool isAtom() const { return kind_ == FKind::Eq || kind_ == FKind::Gt; }

  const TermRef& left() const { return a_; }
  const TermRef& right() const { return b_; }
  std::span<const FormulaRef> kids() const { return {kids_.data(), kids_.size()}; }
  VarId boundVar() const { return bound_; }
  const FormulaRef& body() const { return kids_[0]; }

  Formula(Tag, FKind k) : kind_(k) {}
  Formula(Tag, FKind k, TermRef a, TermRef b) : kind_(k), a_(std::move(a)), b_(std::move(b)) {}
  Formula(Tag, FKind k, std::vector<FormulaRef> kids) : kind_(k), kids_(std::move(kids)) {}
  Formula(Tag, FKind k, VarId v, FormulaRef body) : kind_(k), bound_(v) {
    kids_.push_back(std::move(body));
  }

private:
  FKind kind_;
  TermRef a_, b_;
  std::vector<FormulaRef> kids_;
  VarId bound_ = 0;
};

inline bool formulaEqual(const FormulaRef& f, const FormulaRef& g) {
  if (f.get() == g.get()) return true;
  if (f->kind() != g->kind()) return false;
  switch (f->kind()) {
    case FKind::Top:
    case FKind::Bot:
      return true;
    case FKind::Eq:
    case FKind::Gt:
      return equal(f->left(), g->left()) && equal(f->right(), g->right());
    case FKind::Exists:
      if (f->boundVar() != g->boundVar()) return false;
      [[fallthrough]];
    default: {
      auto fk = f->kids(), gk = g->kids();
      if (fk.size() != gk.size()) return false;
      for (std::size_t i = 0; i < fk.size(); ++i) {
        if (!formulaEqual(fk[i], gk[i])) return false;
      }
      return true;
    }
  }
}

inline void collectFreeVars(const FormulaRef& f, std::set<VarId>& out,
                            std::set<VarId>& bound) {
  switch (f->kind()) {
    case FKind::Top:
    case FKind::Bot:
      return;
    case FKind::Eq:
    case FKind::Gt: {
      std::map<VarId, unsigned> counts;
      collectVars(f->left(), counts);
      collectVars(f->right(), counts);
      for (const auto& [v, _] : counts) {
        if (!bound.count(v)) out.insert(v);
      }
      return;
    }
    case FKind::Exists: {
      bool fresh = bound.insert(f->boundVar()).second;
      collectFreeVars(f->body(), out, bound);
      if (fresh) bound.erase(f->boundVar());
      return;
    }
    default:
      for (const auto& k : f->kids()) collectFreeVars(k, out, bound);
  }
}

inline std::set<VarId> freeVars(const FormulaRef& f) {
  std::set<VarId> out, bound;
  collectFreeVars(f, out, bound);
  return out;
}

inline VarId maxVarPlusOne(const FormulaRef& f) {
  VarId m = 0;
  switch (f->kind()) {
    case FKind::Eq:
    case FKind::Gt: {
      std::map<VarId, unsigned> counts;
      collectVars(f->left(), counts);
      collectVars(f->right(), counts);
      for (const auto& [v, _] : counts) m = std::max(m, v + 1);
      return m;
    }
    case FKind::Exists:
      m = std::max(m, f->boundVar() + 1);
      [[fallthrough]];
    default:
      for (const auto& k : f->kids()) m = std::max(m, maxVarPlusOne(k));
      return m;
  }
}

/** Prefix syntax: ex X. and(eq(s,t), gt(s,t), or(...)); round-trips via the parser. */
inline void printFormula(std::ostream& out, const FormulaRef& f, const Signature& sig) {
  switch (f->kind()) {
    case FKind::Top: out << "top"; return;
    case FKind::Bot: out << "bot"; return;
    case FKind::Eq:
    case FKind::Gt:
      out << (f->kind() == FKind::Eq ? "eq(" : "gt(");
      printTerm(out, f->left(), sig);
      out << ',';
      printTerm(out, f->right(), sig);
      out << ')';
      return;
    case FKind::Not:
      out << "not(";
      printFormula(out, f->body(), sig);
      out << ')';
      return;
    case FKind::And:
    case FKind::Or: {
      out << (f->kind() == FKind::And ? "and(" : "or(");
      bool first = true;
      for (const auto& k : f->kids()) {
        if (!first) out << ", ";
        first = false;
        printFormula(out, k, sig);
      }
      out << ')';
      return;
    }
    case FKind::Exists:
      out << "ex X" << f->boundVar() << ". ";
      printFormula(out, f->body(), sig);
      return;
  }
}

inline std::string toString(const FormulaRef& f, const Signature& sig) {
  std::ostringstream os;
  printFormula(os, f, sig);
  return os.str();
}

/**
 * Capture-avoiding substitution on free variables; bound variables are
 * renamed apart from the substitution's domain and range first.
 */
inline FormulaRef applySub(const Substitution& s, const FormulaRef& f) {
  switch (f->kind()) {
    case FKind::Top:
    case FKind::Bot:
      return f;
    case FKind::Eq:
      return Formula::eq(s.apply(f->left()), s.apply(f->right()));
    case FKind::Gt:
      return Formula::gt(s.apply(f->left()), s.apply(f->right()));
    case FKind::Not:
      return Formula::neg(applySub(s, f->body()));
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaRef> kids;
      kids.reserve(f->kids().size());
      for (const auto& k : f->kids()) kids.push_back(applySub(s, k));
      return f->kind() == FKind::And ? Formula::conj(std::move(kids))
                                     : Formula::disj(std::move(kids));
    }
    case FKind::Exists: {
      VarId v = f->boundVar();
      bool clash = s.lookup(v) != nullptr;
      if (!clash) {
        for (const auto& [from, to] : s.bindings()) {
          if (occurs(v, to)) {
            clash = true;
            break;
          }
        }
      }
      if (!clash) return Formula::exists(v, applySub(s, f->body()));
      VarId fresh = std::max(maxVarPlusOne(f), v + 1);
      for (const auto& [from, to] : s.bindings()) {
        fresh = std::max(fresh, from + 1);
        std::map<VarId, unsigned> counts;
        collectVars(to, counts);
        for (const auto& [w, _] : counts) fresh = std::max(fresh, w + 1);
      }
      Substitution rename;
      rename.bind(v, Term::var(fresh));
      return Formula::exists(fresh, applySub(s, applySub(rename, f->body())));
    }
  }
  return f;
}

}  // namespace parc
