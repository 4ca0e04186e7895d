#pragma once

/**
 * @file constraints.hpp
 * Reasoning on redundancy formulas: semantics-preserving simplification
 * with quantifier elimination, certified three-valued entailment checks,
 * case-split validity certification over ordering atoms, and the
 * admissible-formula generators (demodulation step, trivial joinability).
 *
 * All certificates are one-sided: Holds and "valid" claims are sound;
 * anything uncertain stays Unknown.
 */

#include <algorithm>

#include "parc/clause.hpp"
#include "parc/formula.hpp"
#include "parc/ordering.hpp"

namespace parc {

enum class ThreeVal { Holds, Fails, Unknown };

inline const char* toString(ThreeVal v) {
  switch (v) {
    case ThreeVal::Holds: return "Holds";
    case ThreeVal::Fails: return "Fails";
    case ThreeVal::Unknown: return "Unknown";
  }
  return "?";
}

namespace detail {

/** Negation normal form step; negations of atoms expand by ground totality. */
inline FormulaRef negElim(const FormulaRef& f) {
  switch (f->kind()) {
    case FKind::Top: return Formula::bot();
    case FKind::Bot: return Formula::top();
    case FKind::Eq:  // not (s = t)  <=>  s > t or t > s
      return Formula::disj({Formula::gt(f->left(), f->right()),
                            Formula::gt(f->right(), f->left())});
    case FKind::Gt:  // not (s > t)  <=>  t > s or s = t
      return Formula::disj({Formula::gt(f->right(), f->left()),
                            Formula::eq(f->left(), f->right())});
    case FKind::Not: return f->body();
    case FKind::And: {
      std::vector<FormulaRef> kids;
      for (const auto& k : f->kids()) kids.push_back(negElim(k));
      return Formula::disj(std::move(kids));
    }
    case FKind::Or: {
      std::vector<FormulaRef> kids;
      for (const auto& k : f->kids()) kids.push_back(negElim(k));
      return Formula::conj(std::move(kids));
    }
    case FKind::Exists:
      // universal quantification is outside the supported fragment
      return Formula::neg(f);
  }
  return f;
}

inline bool sameWeightForAllGroundings(const TermRef& s, const TermRef& t) {
  int symDiff = 0;
  std::map<VarId, int> vd;
  countSymsVars(s, +1, symDiff, vd);
  countSymsVars(t, -1, symDiff, vd);
  if (symDiff != 0) return false;
  for (const auto& [v, d] : vd) {
    if (d != 0) return false;
  }
  return true;
}

}  // namespace detail

namespace detail {

FormulaRef simp(const FormulaRef& f, const KBOParams& params, const OrderAssumptions* assume);

/**
 * Lexicographic expansion of s > t for same-head terms whose weights
 * agree on every grounding: the comparison reduces to the first
 * differing argument pair, with the tie case pushed through its unifier.
 */
inline FormulaRef lexExpand(std::vector<TermRef> ss, std::vector<TermRef> ts,
                            std::size_t i, const KBOParams& params,
                            const OrderAssumptions* assume) {
  while (i < ss.size() && equal(ss[i], ts[i])) ++i;
  if (i == ss.size()) return Formula::bot();
  FormulaRef strict = Formula::gt(ss[i], ts[i]);
  auto sigma = mgu(ss[i], ts[i]);
  if (!sigma) return strict;
  std::vector<TermRef> ss2, ts2;
  for (std::size_t j = i + 1; j < ss.size(); ++j) {
    ss2.push_back(sigma->apply(ss[j]));
    ts2.push_back(sigma->apply(ts[j]));
  }
  FormulaRef rest = lexExpand(std::move(ss2), std::move(ts2), 0, params, assume);
  FormulaRef eqPart = simp(Formula::eq(ss[i], ts[i]), params, assume);
  return Formula::disj({strict, Formula::conj({eqPart, rest})});
}

inline FormulaRef simplifyGt(const TermRef& s, const TermRef& t, const KBOParams& params,
                             const OrderAssumptions* assume) {
  Cmp c = assume ? cmpTermsAssuming(s, t, params, *assume) : cmpTerms(s, t, params);
  switch (c) {
    case Cmp::Greater: return Formula::top();
    case Cmp::Less:
    case Cmp::Equal: return Formula::bot();
    default: break;
  }
  if (!s->isVar() && !t->isVar() && s->symbol() == t->symbol() &&
      sameWeightForAllGroundings(s, t)) {
    std::vector<TermRef> ss(s->args().begin(), s->args().end());
    std::vector<TermRef> ts(t->args().begin(), t->args().end());
    FormulaRef expanded = lexExpand(std::move(ss), std::move(ts), 0, params, assume);
    return simp(expanded, params, assume);
  }
  return Formula::gt(s, t);
}

inline FormulaRef simplifyEq(const TermRef& s, const TermRef& t, const KBOParams& params,
                             const OrderAssumptions* assume) {
  if (assume && (assume->holdsGreater(s, t) || assume->holdsGreater(t, s))) {
    return Formula::bot();
  }
  auto sigma = mgu(s, t);
  if (!sigma) return Formula::bot();
  if (sigma->empty()) return Formula::top();
  std::vector<std::pair<VarId, TermRef>> bindings(sigma->bindings().begin(),
                                                  sigma->bindings().end());
  std::sort(bindings.begin(), bindings.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FormulaRef> kids;
  kids.reserve(bindings.size());
  for (auto& [v, u] : bindings) kids.push_back(Formula::eq(Term::var(v), u));
  return Formula::conj(std::move(kids));
}

inline void flattenInto(FKind k, const FormulaRef& f, std::vector<FormulaRef>& out) {
  if (f->kind() == k) {
    for (const auto& kid : f->kids()) flattenInto(k, kid, out);
  } else {
    out.push_back(f);
  }
}

inline FormulaRef simplifyAnd(std::vector<FormulaRef> kids, const KBOParams& params,
                              const OrderAssumptions* assume) {
  std::vector<FormulaRef> flat;
  for (const auto& k : kids) {
    if (k->isBot()) return Formula::bot();
    if (k->isTop()) continue;
    flattenInto(FKind::And, k, flat);
  }
  // propagate solved equations x = u into sibling conjuncts
  for (int pass = 0; pass < 16; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const FormulaRef& bindAtom = flat[i];
      if (bindAtom->kind() != FKind::Eq || !bindAtom->left()->isVar()) continue;
      VarId v = bindAtom->left()->varId();
      if (occurs(v, bindAtom->right())) continue;
      Substitution sigma;
      sigma.bind(v, bindAtom->right());
      for (std::size_t j = 0; j < flat.size(); ++j) {
        if (j == i) continue;
        FormulaRef updated = applySub(sigma, flat[j]);
        if (!formulaEqual(updated, flat[j])) {
          flat[j] = simp(updated, params, assume);
          if (flat[j]->isBot()) return Formula::bot();
          changed = true;
        }
      }
      if (changed) break;  // restart: substitution may have produced nested Ands
    }
    if (!changed) break;
    std::vector<FormulaRef> reflat;
    for (const auto& k : flat) {
      if (k->isBot()) return Formula::bot();
      if (k->isTop()) continue;
      flattenInto(FKind::And, k, reflat);
    }
    flat = std::move(reflat);
  }
  // contradictory ordering atoms
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i]->kind() != FKind::Gt) continue;
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (flat[j]->kind() != FKind::Gt) continue;
      if (equal(flat[i]->left(), flat[j]->right()) &&
          equal(flat[i]->right(), flat[j]->left())) {
        return Formula::bot();
      }
    }
  }
  std::vector<FormulaRef> dedup;
  for (const auto& k : flat) {
    bool seen = false;
    for (const auto& d : dedup) {
      if (formulaEqual(k, d)) {
        seen = true;
        break;
      }
    }
    if (!seen) dedup.push_back(k);
  }
  return Formula::conj(std::move(dedup));
}

inline std::vector<FormulaRef> conjunctsOf(const FormulaRef& f) {
  if (f->kind() == FKind::And) {
    return {f->kids().begin(), f->kids().end()};
  }
  return {f};
}

inline bool conjunctsSubset(const FormulaRef& a, const FormulaRef& b) {
  for (const auto& ka : conjunctsOf(a)) {
    bool found = false;
    for (const auto& kb : conjunctsOf(b)) {
      if (formulaEqual(ka, kb)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

inline FormulaRef simplifyOr(std::vector<FormulaRef> kids, const KBOParams& params,
                             const OrderAssumptions* assume) {
  std::vector<FormulaRef> flat;
  for (const auto& k : kids) {
    if (k->isTop()) return Formula::top();
    if (k->isBot()) continue;
    flattenInto(FKind::Or, k, flat);
  }
  // absorption: a disjunct whose conjuncts include those of another is
  // implied by it and can go
  std::vector<FormulaRef> dedup;
  for (const auto& k : flat) {
    bool absorbed = false;
    for (const auto& d : dedup) {
      if (conjunctsSubset(d, k)) {
        absorbed = true;
        break;
      }
    }
    if (absorbed) continue;
    dedup.erase(std::remove_if(dedup.begin(), dedup.end(),
                               [&](const FormulaRef& d) { return conjunctsSubset(k, d); }),
                dedup.end());
    dedup.push_back(k);
  }
  return Formula::disj(std::move(dedup));
}

inline FormulaRef simplifyExists(VarId v, const FormulaRef& body, const KBOParams& params,
                                 const OrderAssumptions* assume) {
  if (body->isTop() || body->isBot()) return body;
  std::set<VarId> fv = freeVars(body);
  if (!fv.count(v)) return body;
  if (body->kind() == FKind::Or) {
    std::vector<FormulaRef> kids;
    for (const auto& k : body->kids()) {
      kids.push_back(simp(Formula::exists(v, k), params, assume));
    }
    return simplifyOr(std::move(kids), params, assume);
  }
  auto eliminates = [&](const FormulaRef& atom) -> std::optional<TermRef> {
    if (atom->kind() != FKind::Eq) return std::nullopt;
    if (atom->left()->isVar() && atom->left()->varId() == v && !occurs(v, atom->right())) {
      return atom->right();
    }
    if (atom->right()->isVar() && atom->right()->varId() == v && !occurs(v, atom->left())) {
      return atom->left();
    }
    return std::nullopt;
  };
  if (auto w = eliminates(body)) return Formula::top();
  if (body->kind() == FKind::Gt && body->left()->isVar() && body->left()->varId() == v &&
      !occurs(v, body->right())) {
    return Formula::top();  // some ground term exceeds any given one
  }
  if (body->kind() == FKind::And) {
    for (std::size_t i = 0; i < body->kids().size(); ++i) {
      if (auto w = eliminates(body->kids()[i])) {
        Substitution sigma;
        sigma.bind(v, *w);
        std::vector<FormulaRef> rest;
        for (std::size_t j = 0; j < body->kids().size(); ++j) {
          if (j != i) rest.push_back(applySub(sigma, body->kids()[j]));
        }
        return simp(Formula::conj(std::move(rest)), params, assume);
      }
    }
  }
  return Formula::exists(v, body);
}

inline FormulaRef simp(const FormulaRef& f, const KBOParams& params,
                       const OrderAssumptions* assume) {
  switch (f->kind()) {
    case FKind::Top:
    case FKind::Bot:
      return f;
    case FKind::Eq:
      return simplifyEq(f->left(), f->right(), params, assume);
    case FKind::Gt:
      return simplifyGt(f->left(), f->right(), params, assume);
    case FKind::Not: {
      FormulaRef e = negElim(f->body());
      if (e->kind() == FKind::Not) {
        FormulaRef inner = simp(e->body(), params, assume);
        if (inner->isTop()) return Formula::bot();
        if (inner->isBot()) return Formula::top();
        return Formula::neg(inner);
      }
      return simp(e, params, assume);
    }
    case FKind::And: {
      std::vector<FormulaRef> kids;
      for (const auto& k : f->kids()) kids.push_back(simp(k, params, assume));
      return simplifyAnd(std::move(kids), params, assume);
    }
    case FKind::Or: {
      std::vector<FormulaRef> kids;
      for (const auto& k : f->kids()) kids.push_back(simp(k, params, assume));
      return simplifyOr(std::move(kids), params, assume);
    }
    case FKind::Exists: {
      FormulaRef body = simp(f->body(), params, assume);
      return simplifyExists(f->boundVar(), body, params, assume);
    }
  }
  return f;
}

inline VarId boundMaxPlusOne(const FormulaRef& f) {
  VarId m = 0;
  if (f->kind() == FKind::Exists) m = f->boundVar() + 1;
  for (const auto& k : f->kids()) m = std::max(m, boundMaxPlusOne(k));
  return m;
}

/**
 * Renames bound variables to canonical ids so that formulas equal up to
 * bound renaming become structurally equal and merge as disjuncts.
 */
inline FormulaRef canonicalizeBound(const FormulaRef& f) {
  switch (f->kind()) {
    case FKind::Top:
    case FKind::Bot:
    case FKind::Eq:
    case FKind::Gt:
      return f;
    case FKind::Not:
      return Formula::neg(canonicalizeBound(f->body()));
    case FKind::And:
    case FKind::Or: {
      std::vector<FormulaRef> kids;
      kids.reserve(f->kids().size());
      for (const auto& k : f->kids()) kids.push_back(canonicalizeBound(k));
      return f->kind() == FKind::And ? Formula::conj(std::move(kids))
                                     : Formula::disj(std::move(kids));
    }
    case FKind::Exists: {
      FormulaRef body = canonicalizeBound(f->body());
      // the canonical id exceeds every other id in the body, which makes
      // it a function of the alpha-equivalence class
      VarId v = f->boundVar();
      VarId fresh = 0;
      std::set<VarId> bound;
      std::set<VarId> free;
      collectFreeVars(body, free, bound);
      for (VarId w : free) {
        if (w != v) fresh = std::max(fresh, w + 1);
      }
      fresh = std::max(fresh, boundMaxPlusOne(body));
      if (fresh == v) return Formula::exists(v, body);
      Substitution ren;
      ren.bind(v, Term::var(fresh));
      return Formula::exists(fresh, applySub(ren, body));
    }
  }
  return f;
}

}  // namespace detail

/**
 * Semantics-preserving simplification: equality atoms decompose through
 * unification, ordering atoms fold under the order (and lex-expand on
 * weight-tied same-head terms), determined existentials are eliminated,
 * and boolean structure is normalized with duplicate and absorbed
 * disjuncts merged.
 */
inline FormulaRef simplify(const FormulaRef& f, const KBOParams& params,
                           const OrderAssumptions* assume = nullptr) {
  FormulaRef g = detail::simp(f, params, assume);
  FormulaRef c = detail::canonicalizeBound(g);
  if (!formulaEqual(c, g)) {
    // canonical bound names may expose duplicate disjuncts
    c = detail::canonicalizeBound(detail::simp(c, params, assume));
  }
  return c;
}

/**
 * Validity of a formula over all groundings, certified by case analysis:
 * pick a pair from an unresolved ordering atom and split into the three
 * total-order cases. Sound; returns false when the budget runs out.
 */
inline bool certifyValid(const FormulaRef& f, const KBOParams& params,
                         OrderAssumptions assume = {}, unsigned depth = 8) {
  if (assume.inconsistent(params)) return true;  // vacuous branch
  FormulaRef g = simplify(f, params, &assume);
  if (g->isTop()) return true;
  if (g->isBot() || depth == 0) return false;

  // collect candidate split pairs from Gt atoms, variable pairs first
  std::vector<std::pair<TermRef, TermRef>> pairs;
  std::vector<FormulaRef> stack{g};
  while (!stack.empty()) {
    FormulaRef cur = stack.back();
    stack.pop_back();
    if (cur->kind() == FKind::Gt) {
      bool dup = false;
      for (const auto& [a, b] : pairs) {
        if ((equal(a, cur->left()) && equal(b, cur->right())) ||
            (equal(a, cur->right()) && equal(b, cur->left()))) {
          dup = true;
          break;
        }
      }
      if (!dup) pairs.emplace_back(cur->left(), cur->right());
    }
    for (const auto& k : cur->kids()) stack.push_back(k);
  }
  if (pairs.empty()) return false;
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    auto varness = [](const auto& p) { return (p.first->isVar() ? 0 : 1) + (p.second->isVar() ? 0 : 1); };
    return varness(a) < varness(b);
  });
  const auto& [u, v] = pairs.front();

  OrderAssumptions gtCase = assume;
  gtCase.assumeGreater(u, v);
  if (!certifyValid(g, params, std::move(gtCase), depth - 1)) return false;

  OrderAssumptions ltCase = assume;
  ltCase.assumeGreater(v, u);
  if (!certifyValid(g, params, std::move(ltCase), depth - 1)) return false;

  if (auto sigma = mgu(u, v)) {
    FormulaRef inst = applySub(*sigma, g);
    if (!certifyValid(inst, params, assume.mapped(*sigma), depth - 1)) return false;
  }
  return true;
}

/**
 * Three-valued check of sigma |= R. Holds only with a certificate that
 * every grounding of R sigma is true; Fails only with a certificate that
 * some grounding is false. With caseAnalysis set, Holds may additionally
 * be certified by ordering case splits.
 */
inline ThreeVal entails(const Substitution& sigma, const FormulaRef& r,
                        const KBOParams& params, bool caseAnalysis = false) {
  FormulaRef g = simplify(applySub(sigma, r), params);
  if (g->isTop()) return ThreeVal::Holds;
  if (g->isBot()) return ThreeVal::Fails;
  if (caseAnalysis && certifyValid(g, params)) return ThreeVal::Holds;
  // falsification probe: ground every free variable with the least constant
  std::set<VarId> fv = freeVars(g);
  if (!fv.empty() && params.sig->hasConstant()) {
    TermRef least = Term::constant(params.sig->minimalConstant());
    Substitution probe;
    for (VarId v : fv) probe.bind(v, least);
    FormulaRef p = simplify(applySub(probe, g), params);
    if (p->isBot()) return ThreeVal::Fails;
  }
  return ThreeVal::Unknown;
}

/**
 * Expands the literal/clause comparison abbreviations into atom-level
 * formulas: (s ~ t) > l is s > l or t > l, and a clause compares through
 * the disjunction over its literals. strict=false gives the >= variant.
 */
inline FormulaRef expandLiteralGt(const Literal& lit, const TermRef& l, bool strict) {
  auto side = [&](const TermRef& u) {
    return strict ? Formula::gt(u, l) : Formula::ge(u, l);
  };
  return Formula::disj({side(lit.lhs), side(lit.rhs)});
}

inline FormulaRef expandClauseGt(const Clause& c, const TermRef& l, bool strict) {
  std::vector<FormulaRef> kids;
  kids.reserve(c.lits.size());
  for (const auto& lit : c.lits) kids.push_back(expandLiteralGt(lit, l, strict));
  return Formula::disj(std::move(kids));
}

/**
 * The demodulation-step formula for a superposition of the unit equation
 * l ~ r into the clause C at the occurrence l' (premises renamed apart):
 *
 *     exists ybar. (l = l'  and  l > r  and  C > l)
 *
 * where ybar are the variables of l, r not occurring in C. Satisfied
 * instances of C are redundant once the inference's conclusion exists.
 */
inline FormulaRef demodFormula(const TermRef& l, const TermRef& r, const Clause& c,
                               const TermRef& lPrime, const KBOParams& params) {
  if (lPrime->isVar()) throw StructuralError("demodulation target must not be a variable");
  FormulaRef core = Formula::conj(
      {Formula::eq(l, lPrime), Formula::gt(l, r), expandClauseGt(c, l, /*strict=*/true)});
  std::map<VarId, unsigned> lrVars;
  collectVars(l, lrVars);
  collectVars(r, lrVars);
  auto cVars = varCounts(c);
  FormulaRef out = core;
  for (auto it = lrVars.rbegin(); it != lrVars.rend(); ++it) {
    if (!cVars.count(it->first)) out = Formula::exists(it->first, out);
  }
  return simplify(out, params);
}

/**
 * Certifies that every grounding of the clause either satisfies its
 * redundancy formula or makes some positive equation trivially true,
 * in which case Top is an admissible replacement formula.
 */
inline bool trivialJoinability(const Clause& c, const FormulaRef& r, const KBOParams& params) {
  for (const auto& lit : c.lits) {
    if (lit.positive && equal(lit.lhs, lit.rhs)) return true;
  }
  std::vector<FormulaRef> kids{r};
  bool anyEq = false;
  for (const auto& lit : c.lits) {
    if (!lit.positive) continue;
    anyEq = true;
    kids.push_back(simplify(Formula::eq(lit.lhs, lit.rhs), params));
  }
  if (!anyEq && (r->isBot())) return false;
  return certifyValid(Formula::disj(std::move(kids)), params);
}

/**
 * Evaluates a closed formula in the extended term algebra. Quantifiers
 * range over the supplied witness pool; a quantifier with no witness is
 * reported as nullopt since deeper witnesses may exist.
 */
inline std::optional<bool> evalGround(const FormulaRef& f, const KBOParams& params,
                                      const std::vector<TermRef>& witnessPool) {
  switch (f->kind()) {
    case FKind::Top: return true;
    case FKind::Bot: return false;
    case FKind::Eq:
      if (!f->left()->ground() || !f->right()->ground()) {
        throw StructuralError("evalGround requires a closed formula");
      }
      return equal(f->left(), f->right());
    case FKind::Gt:
      if (!f->left()->ground() || !f->right()->ground()) {
        throw StructuralError("evalGround requires a closed formula");
      }
      return cmpTerms(f->left(), f->right(), params) == Cmp::Greater;
    case FKind::Not: {
      auto b = evalGround(f->body(), params, witnessPool);
      if (!b) return std::nullopt;
      return !*b;
    }
    case FKind::And: {
      bool unknown = false;
      for (const auto& k : f->kids()) {
        auto b = evalGround(k, params, witnessPool);
        if (!b) unknown = true;
        else if (!*b) return false;
      }
      if (unknown) return std::nullopt;
      return true;
    }
    case FKind::Or: {
      bool unknown = false;
      for (const auto& k : f->kids()) {
        auto b = evalGround(k, params, witnessPool);
        if (!b) unknown = true;
        else if (*b) return true;
      }
      if (unknown) return std::nullopt;
      return false;
    }
    case FKind::Exists: {
      bool unknown = false;
      for (const auto& w : witnessPool) {
        Substitution sigma;
        sigma.bind(f->boundVar(), w);
        auto b = evalGround(applySub(sigma, f->body()), params, witnessPool);
        if (!b) unknown = true;
        else if (*b) return true;
      }
      (void)unknown;
      return std::nullopt;  // exhausted the pool without a witness
    }
  }
  return std::nullopt;
}

}  // namespace parc
