#pragma once

/**
 * @file calculus.hpp
 * The inference rules on partial clauses: superposition, equality
 * resolution and equality factoring, each guarded by its side
 * conditions. A violated condition yields a skip naming the first
 * condition that failed, in documented order.
 */

#include <cstdint>

#include "parc/constraints.hpp"

namespace parc {

/** A clause with a redundancy formula whose free variables occur in it. */
struct PartialClause {
  Clause clause;
  FormulaRef formula = Formula::bot();
  std::uint32_t id = 0;
  std::uint32_t age = 0;
};

enum class Rule { Input, Sup, EqRes, EqFac, Redundancy };

inline const char* toString(Rule r) {
  switch (r) {
    case Rule::Input: return "input";
    case Rule::Sup: return "sup";
    case Rule::EqRes: return "eqres";
    case Rule::EqFac: return "eqfac";
    case Rule::Redundancy: return "red";
  }
  return "?";
}

/**
 * Skip conditions, numbered as in the rules. JointC3C7 / JointC4C8
 * report a certified case split showing that every grounding violates
 * one of the paired conditions.
 */
enum class SkipCond {
  None = 0,
  C1, C2, C3, C4, C5, C6, C7, C8,
  JointC3C7, JointC4C8,
};

inline const char* toString(SkipCond c) {
  switch (c) {
    case SkipCond::None: return "none";
    case SkipCond::C1: return "condition 1";
    case SkipCond::C2: return "condition 2";
    case SkipCond::C3: return "condition 3";
    case SkipCond::C4: return "condition 4";
    case SkipCond::C5: return "condition 5";
    case SkipCond::C6: return "condition 6";
    case SkipCond::C7: return "condition 7";
    case SkipCond::C8: return "condition 8";
    case SkipCond::JointC3C7: return "condition 3 or 7";
    case SkipCond::JointC4C8: return "condition 4 or 8";
  }
  return "?";
}

/** Which checks run beyond the ordering conditions (1)-(6). */
struct CalcOptions {
  bool checkFormulas = false;  // conditions on redundancy formulas
  bool caseAnalysis = false;   // joint ordering/formula case splits
};

struct SupArgs {
  std::size_t leftLit = 0;
  bool leftReversed = false;  // use the stored rhs as the rewriting side l
  std::size_t rightLit = 0;
  bool rightSideRhs = false;  // rewrite inside the stored rhs of the right literal
  Position pos;               // position of l' within that side
};

struct RuleApplication {
  std::optional<Clause> conclusion;  // set iff the inference was performed
  SkipCond skip = SkipCond::None;
  Substitution unifier;
  bool performed() const { return conclusion.has_value(); }
};

namespace detail {

inline bool certifiedGeq(const TermRef& a, const TermRef& b, const KBOParams& params) {
  Cmp c = cmpTerms(a, b, params);
  return c == Cmp::Greater || c == Cmp::Equal;
}

}  // namespace detail

/**
 * Superposition of left = (l ~ r or C1)<R1> into right = (s[l'] ~' t or
 * C2)<R2> at the given position. Premises must already be variable
 * disjoint. Returns the conclusion (s[r] ~' t or C1 or C2) sigma with
 * formula Bot, or the first violated condition.
 */
inline RuleApplication superposition(const PartialClause& left, const PartialClause& right,
                                     const SupArgs& args, const KBOParams& params,
                                     const CalcOptions& opts) {
  RuleApplication out;
  const Literal& leftLit = left.clause.lits.at(args.leftLit);
  const Literal& rightLit = right.clause.lits.at(args.rightLit);
  if (!leftLit.positive) throw StructuralError("left superposition literal must be positive");
  const TermRef& l = args.leftReversed ? leftLit.rhs : leftLit.lhs;
  const TermRef& r = args.leftReversed ? leftLit.lhs : leftLit.rhs;
  const TermRef& s = args.rightSideRhs ? rightLit.rhs : rightLit.lhs;
  const TermRef& t = args.rightSideRhs ? rightLit.lhs : rightLit.rhs;
  TermRef lPrime = subtermAt(s, args.pos);

  if (lPrime->isVar()) {  // (2)
    out.skip = SkipCond::C2;
    return out;
  }
  auto sigmaOpt = mgu(l, lPrime);  // (1)
  if (!sigmaOpt) {
    out.skip = SkipCond::C1;
    return out;
  }
  const Substitution& sigma = *sigmaOpt;
  out.unifier = sigma;

  TermRef lS = sigma.apply(l), rS = sigma.apply(r);
  TermRef sS = sigma.apply(s), tS = sigma.apply(t);
  if (detail::certifiedGeq(rS, lS, params)) {  // (3)
    out.skip = SkipCond::C3;
    return out;
  }
  if (detail::certifiedGeq(tS, sS, params)) {  // (4)
    out.skip = SkipCond::C4;
    return out;
  }
  for (std::size_t i = 0; i < left.clause.size(); ++i) {  // (5)
    if (i == args.leftLit) continue;
    const Literal& lit = left.clause.lits[i];
    if (detail::certifiedGeq(sigma.apply(lit.lhs), lS, params) ||
        detail::certifiedGeq(sigma.apply(lit.rhs), lS, params)) {
      out.skip = SkipCond::C5;
      return out;
    }
  }
  if (rightLit.positive) {  // (6)
    for (std::size_t i = 0; i < right.clause.size(); ++i) {
      if (i == args.rightLit) continue;
      const Literal& lit = right.clause.lits[i];
      if (detail::certifiedGeq(sigma.apply(lit.lhs), sS, params) ||
          detail::certifiedGeq(sigma.apply(lit.rhs), sS, params)) {
        out.skip = SkipCond::C6;
        return out;
      }
    }
  }
  if (opts.checkFormulas) {
    if (entails(sigma, left.formula, params) == ThreeVal::Holds) {  // (7)
      out.skip = SkipCond::C7;
      return out;
    }
    if (entails(sigma, right.formula, params) == ThreeVal::Holds) {  // (8)
      out.skip = SkipCond::C8;
      return out;
    }
  }
  if (opts.caseAnalysis) {
    if (!left.formula->isBot() &&
        entails(sigma, Formula::disj({Formula::ge(r, l), left.formula}), params,
                /*caseAnalysis=*/true) == ThreeVal::Holds) {
      out.skip = SkipCond::JointC3C7;
      return out;
    }
    if (!right.formula->isBot() &&
        entails(sigma, Formula::disj({Formula::ge(t, s), right.formula}), params,
                /*caseAnalysis=*/true) == ThreeVal::Holds) {
      out.skip = SkipCond::JointC4C8;
      return out;
    }
  }

  Clause conclusion;
  conclusion.lits.push_back(
      Literal{sigma.apply(replaceAt(s, args.pos, r)), tS, rightLit.positive});
  for (std::size_t i = 0; i < left.clause.size(); ++i) {
    if (i != args.leftLit) conclusion.lits.push_back(applySub(sigma, left.clause.lits[i]));
  }
  for (std::size_t i = 0; i < right.clause.size(); ++i) {
    if (i != args.rightLit) conclusion.lits.push_back(applySub(sigma, right.clause.lits[i]));
  }
  out.conclusion = std::move(conclusion);
  return out;
}

/** Equality resolution on a selected negative literal s !~ t. */
inline RuleApplication equalityResolution(const PartialClause& pc, std::size_t litIdx,
                                          const KBOParams& params, const CalcOptions& opts) {
  RuleApplication out;
  const Literal& lit = pc.clause.lits.at(litIdx);
  if (lit.positive) throw StructuralError("equality resolution needs a negative literal");
  auto sigmaOpt = mgu(lit.lhs, lit.rhs);  // (1)
  if (!sigmaOpt) {
    out.skip = SkipCond::C1;
    return out;
  }
  out.unifier = *sigmaOpt;
  if (opts.checkFormulas && entails(out.unifier, pc.formula, params) == ThreeVal::Holds) {
    out.skip = SkipCond::C2;  // (2)
    return out;
  }
  Clause conclusion;
  for (std::size_t i = 0; i < pc.clause.size(); ++i) {
    if (i != litIdx) conclusion.lits.push_back(applySub(out.unifier, pc.clause.lits[i]));
  }
  out.conclusion = std::move(conclusion);
  return out;
}

struct EqFacArgs {
  std::size_t keepLit = 0;     // s ~ t, stays in the conclusion
  bool keepReversed = false;
  std::size_t otherLit = 0;    // s' ~ t', replaced by t !~ t'
  bool otherReversed = false;
};

/** Equality factoring; the second positive literal collapses to t !~ t'. */
inline RuleApplication equalityFactoring(const PartialClause& pc, const EqFacArgs& args,
                                         const KBOParams& params, const CalcOptions& opts) {
  RuleApplication out;
  const Literal& keep = pc.clause.lits.at(args.keepLit);
  const Literal& other = pc.clause.lits.at(args.otherLit);
  if (!keep.positive || !other.positive || args.keepLit == args.otherLit) {
    throw StructuralError("equality factoring needs two distinct positive literals");
  }
  const TermRef& sT = args.keepReversed ? keep.rhs : keep.lhs;
  const TermRef& tT = args.keepReversed ? keep.lhs : keep.rhs;
  const TermRef& sP = args.otherReversed ? other.rhs : other.lhs;
  const TermRef& tP = args.otherReversed ? other.lhs : other.rhs;
  auto sigmaOpt = mgu(sT, sP);  // (1)
  if (!sigmaOpt) {
    out.skip = SkipCond::C1;
    return out;
  }
  const Substitution& sigma = *sigmaOpt;
  out.unifier = sigma;
  TermRef sS = sigma.apply(sT), tS = sigma.apply(tT), tPS = sigma.apply(tP);
  if (detail::certifiedGeq(tS, sS, params)) {  // (2)
    out.skip = SkipCond::C2;
    return out;
  }
  if (cmpTerms(tPS, tS, params) == Cmp::Greater) {  // (3)
    out.skip = SkipCond::C3;
    return out;
  }
  for (std::size_t i = 0; i < pc.clause.size(); ++i) {  // (4)
    if (i == args.keepLit || i == args.otherLit) continue;
    const Literal& lit = pc.clause.lits[i];
    if (cmpTerms(sigma.apply(lit.lhs), sS, params) == Cmp::Greater ||
        cmpTerms(sigma.apply(lit.rhs), sS, params) == Cmp::Greater) {
      out.skip = SkipCond::C4;
      return out;
    }
  }
  if (opts.checkFormulas && entails(sigma, pc.formula, params) == ThreeVal::Holds) {
    out.skip = SkipCond::C5;  // (5)
    return out;
  }
  Clause conclusion;
  conclusion.lits.push_back(Literal{sS, tS, true});
  conclusion.lits.push_back(Literal{tS, tPS, false});
  for (std::size_t i = 0; i < pc.clause.size(); ++i) {
    if (i != args.keepLit && i != args.otherLit) {
      conclusion.lits.push_back(applySub(sigma, pc.clause.lits[i]));
    }
  }
  out.conclusion = std::move(conclusion);
  return out;
}

enum class SelectionMode { Maximal, Negative };

/**
 * Literal selection. Maximal mode selects every order-maximal literal;
 * negative mode selects one negative literal when the clause has one,
 * otherwise all maximal literals (the standard condition).
 */
inline std::vector<std::size_t> select(const Clause& c, const KBOParams& params,
                                       SelectionMode mode = SelectionMode::Maximal) {
  if (c.empty()) throw StructuralError("selection on the empty clause");
  if (mode == SelectionMode::Negative) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c.lits[i].positive) return {i};
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j != i && cmpLiterals(c.lits[j], c.lits[i], params) == Cmp::Greater) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

}  // namespace parc
