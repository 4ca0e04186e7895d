#pragma once

/**
 * @file clause.hpp
 * Equality literals and clauses (multisets of literals). A literal is an
 * unordered pair of terms with polarity; the stored side order is kept
 * for display but never distinguishes literals.
 */

#include <algorithm>
#include <cstdint>

#include "parc/substitution.hpp"
#include "parc/term.hpp"

namespace parc {

struct Literal {
  TermRef lhs;
  TermRef rhs;
  bool positive = true;

  unsigned weight() const { return lhs->weight() + rhs->weight(); }
  bool ground() const { return lhs->ground() && rhs->ground(); }
};

inline Literal mkEq(TermRef l, TermRef r) { return Literal{std::move(l), std::move(r), true}; }
inline Literal mkNeq(TermRef l, TermRef r) { return Literal{std::move(l), std::move(r), false}; }

/** Unordered-pair equality: s ~ t and t ~ s are the same literal. */
inline bool litEqual(const Literal& a, const Literal& b) {
  if (a.positive != b.positive) return false;
  return (equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs)) ||
         (equal(a.lhs, b.rhs) && equal(a.rhs, b.lhs));
}

inline std::size_t litHash(const Literal& l) {
  std::size_t h1 = l.lhs->hash(), h2 = l.rhs->hash();
  if (h2 < h1) std::swap(h1, h2);  // symmetric combine
  std::size_t h = h1 * 0x9e3779b97f4a7c15ull + h2;
  return l.positive ? h : ~h;
}

inline Literal applySub(const Substitution& s, const Literal& l) {
  return Literal{s.apply(l.lhs), s.apply(l.rhs), l.positive};
}

/** A clause: multiset of literals. The empty clause is the contradiction. */
struct Clause {
  std::vector<Literal> lits;

  bool empty() const { return lits.empty(); }
  std::size_t size() const { return lits.size(); }

  unsigned weight() const {
    unsigned w = 0;
    for (const auto& l : lits) w += l.weight();
    return w;
  }

  bool ground() const {
    for (const auto& l : lits) {
      if (!l.ground()) return false;
    }
    return true;
  }
};

inline Clause applySub(const Substitution& s, const Clause& c) {
  Clause out;
  out.lits.reserve(c.lits.size());
  for (const auto& l : c.lits) out.lits.push_back(applySub(s, l));
  return out;
}

inline void collectVars(const Clause& c, std::map<VarId, unsigned>& counts) {
  for (const auto& l : c.lits) {
    collectVars(l.lhs, counts);
    collectVars(l.rhs, counts);
  }
}

inline std::map<VarId, unsigned> varCounts(const Clause& c) {
  std::map<VarId, unsigned> counts;
  collectVars(c, counts);
  return counts;
}

inline VarId maxVarPlusOne(const Clause& c) {
  VarId m = 0;
  std::map<VarId, unsigned> counts = varCounts(c);
  for (const auto& [v, _] : counts) m = std::max(m, v + 1);
  return m;
}

/** Multiset equality over literals, side order ignored. */
inline bool clauseEqual(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& la : a.lits) {
    bool found = false;
    for (std::size_t j = 0; j < b.lits.size(); ++j) {
      if (!used[j] && litEqual(la, b.lits[j])) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace detail {

// Total syntactic order used for canonicalization only. When varBlind is
// set, all variables compare equal, so the key is renaming-invariant.
inline int syntacticCmp(const TermRef& a, const TermRef& b, bool varBlind) {
  if (a->isVar() && b->isVar()) {
    if (varBlind) return 0;
    return a->varId() < b->varId() ? -1 : (a->varId() > b->varId() ? 1 : 0);
  }
  if (a->isVar() != b->isVar()) return a->isVar() ? -1 : 1;
  if (a->symbol() != b->symbol()) return a->symbol() < b->symbol() ? -1 : 1;
  auto as = a->args(), bs = b->args();
  for (std::size_t i = 0; i < as.size(); ++i) {
    int c = syntacticCmp(as[i], bs[i], varBlind);
    if (c != 0) return c;
  }
  return 0;
}

inline int syntacticCmp(const Literal& a, const Literal& b, bool varBlind) {
  if (a.positive != b.positive) return a.positive ? 1 : -1;
  // compare with sides put in canonical order first
  const TermRef* a1 = &a.lhs;
  const TermRef* a2 = &a.rhs;
  if (syntacticCmp(*a2, *a1, varBlind) < 0) std::swap(a1, a2);
  const TermRef* b1 = &b.lhs;
  const TermRef* b2 = &b.rhs;
  if (syntacticCmp(*b2, *b1, varBlind) < 0) std::swap(b1, b2);
  int c = syntacticCmp(*a1, *b1, varBlind);
  if (c != 0) return c;
  return syntacticCmp(*a2, *b2, varBlind);
}

inline void renumberVars(const TermRef& t, std::unordered_map<VarId, VarId>& map) {
  if (t->isVar()) {
    map.emplace(t->varId(), static_cast<VarId>(map.size()));
    return;
  }
  for (const auto& a : t->args()) renumberVars(a, map);
}

}  // namespace detail

/**
 * Canonical form for duplicate detection: literals sorted syntactically,
 * variables renumbered in traversal order. Two clauses equal up to
 * variable renaming and literal multiset order receive equal forms
 * (up to rare ties between renaming-equivalent literals).
 */
inline Clause normalizeClause(const Clause& c) {
  Clause sorted = c;
  std::sort(sorted.lits.begin(), sorted.lits.end(), [](const Literal& a, const Literal& b) {
    return detail::syntacticCmp(a, b, /*varBlind=*/true) < 0;
  });
  // orient each literal's sides canonically (variable-blind)
  for (auto& l : sorted.lits) {
    if (detail::syntacticCmp(l.rhs, l.lhs, /*varBlind=*/true) < 0) std::swap(l.lhs, l.rhs);
  }
  std::unordered_map<VarId, VarId> map;
  for (const auto& l : sorted.lits) {
    detail::renumberVars(l.lhs, map);
    detail::renumberVars(l.rhs, map);
  }
  Substitution ren;
  for (const auto& [from, to] : map) ren.bind(from, Term::var(to));
  Clause out = applySub(ren, sorted);
  std::sort(out.lits.begin(), out.lits.end(), [](const Literal& a, const Literal& b) {
    return detail::syntacticCmp(a, b, /*varBlind=*/false) < 0;
  });
  return out;
}

inline std::size_t clauseHash(const Clause& c) {
  std::size_t h = 0x85ebca6b;
  for (const auto& l : c.lits) h += litHash(l);  // commutative: multiset hash
  return h;
}

inline void printLiteral(std::ostream& out, const Literal& l, const Signature& sig) {
  // predicate-encoded literals print back in predicate form
  if (!l.rhs->isVar() && l.rhs->args().empty() && sig.symbol(l.rhs->symbol()).name == "$true" &&
      !l.lhs->isVar() && sig.symbol(l.lhs->symbol()).isPredicate) {
    if (!l.positive) out << '~';
    printTerm(out, l.lhs, sig);
    return;
  }
  printTerm(out, l.lhs, sig);
  out << (l.positive ? " = " : " != ");
  printTerm(out, l.rhs, sig);
}

inline void printClause(std::ostream& out, const Clause& c, const Signature& sig) {
  if (c.empty()) {
    out << "$false";
    return;
  }
  bool first = true;
  for (const auto& l : c.lits) {
    if (!first) out << " | ";
    first = false;
    printLiteral(out, l, sig);
  }
}

inline std::string toString(const Clause& c, const Signature& sig) {
  std::ostringstream os;
  printClause(os, c, sig);
  return os.str();
}

/**
 * Returns a variant of `toRename` sharing no variables with `fixed`,
 * together with the renaming used. Fresh variables start past the
 * largest id in either clause.
 */
inline std::pair<Clause, Substitution> renameApart(const Clause& fixed, const Clause& toRename) {
  auto fixedVars = varCounts(fixed);
  auto renVars = varCounts(toRename);
  bool disjoint = true;
  for (const auto& [v, _] : renVars) {
    if (fixedVars.count(v)) {
      disjoint = false;
      break;
    }
  }
  Substitution ren;
  if (disjoint) return {toRename, ren};
  VarId fresh = 0;
  for (const auto& [v, _] : fixedVars) fresh = std::max(fresh, v + 1);
  for (const auto& [v, _] : renVars) fresh = std::max(fresh, v + 1);
  for (const auto& [v, _] : renVars) ren.bind(v, Term::var(fresh++));
  return {applySub(ren, toRename), ren};
}

}  // namespace parc
