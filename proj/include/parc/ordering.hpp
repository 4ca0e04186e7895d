#pragma once

/**
 * @file ordering.hpp
 * Knuth-Bendix order with unit weights for every symbol and variable,
 * lifted to literals and clauses through the bag (multiset) extension.
 *
 * On ground inputs the comparison is total and exact. On non-ground
 * inputs, Greater certifies s theta > t theta for every grounding theta;
 * Incomparable is a "don't know" verdict, never a claim.
 */

#include <functional>

#include "parc/clause.hpp"
#include "parc/term.hpp"

namespace parc {

enum class Cmp { Greater, Less, Equal, Incomparable };

inline Cmp flip(Cmp c) {
  switch (c) {
    case Cmp::Greater: return Cmp::Less;
    case Cmp::Less: return Cmp::Greater;
    default: return c;
  }
}

inline const char* toString(Cmp c) {
  switch (c) {
    case Cmp::Greater: return "Greater";
    case Cmp::Less: return "Less";
    case Cmp::Equal: return "Equal";
    case Cmp::Incomparable: return "Incomparable";
  }
  return "?";
}

/** KBO parameters: the precedence lives in the signature; weights are 1. */
struct KBOParams {
  const Signature* sig = nullptr;
};

namespace detail {

inline void countSymsVars(const TermRef& t, int sign, int& symCount,
                          std::map<VarId, int>& vd) {
  if (t->isVar()) {
    vd[t->varId()] += sign;
    return;
  }
  symCount += sign;
  for (const auto& a : t->args()) countSymsVars(a, sign, symCount, vd);
}

}  // namespace detail

inline Cmp cmpTerms(const TermRef& s, const TermRef& t, const KBOParams& params) {
  if (equal(s, t)) return Cmp::Equal;
  if (s->isVar()) return occurs(s->varId(), t) ? Cmp::Less : Cmp::Incomparable;
  if (t->isVar()) return occurs(t->varId(), s) ? Cmp::Greater : Cmp::Incomparable;

  // unit weights: weight is the node count; the variable condition asks
  // for occurrence dominance in the winning direction
  int ws = static_cast<int>(s->weight());
  int wt = static_cast<int>(t->weight());
  int symDiff = 0;
  std::map<VarId, int> vd;
  detail::countSymsVars(s, +1, symDiff, vd);
  detail::countSymsVars(t, -1, symDiff, vd);
  bool posExcess = false, negExcess = false;
  for (const auto& [v, d] : vd) {
    if (d > 0) posExcess = true;
    if (d < 0) negExcess = true;
  }
  if (ws > wt) return negExcess ? Cmp::Incomparable : Cmp::Greater;
  if (ws < wt) return posExcess ? Cmp::Incomparable : Cmp::Less;

  if (s->symbol() != t->symbol()) {
    unsigned rs = params.sig->rank(s->symbol());
    unsigned rt = params.sig->rank(t->symbol());
    if (rs < rt) return negExcess ? Cmp::Incomparable : Cmp::Greater;
    return posExcess ? Cmp::Incomparable : Cmp::Less;
  }
  auto as = s->args(), bs = t->args();
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (equal(as[i], bs[i])) continue;
    switch (cmpTerms(as[i], bs[i], params)) {
      case Cmp::Greater: return negExcess ? Cmp::Incomparable : Cmp::Greater;
      case Cmp::Less: return posExcess ? Cmp::Incomparable : Cmp::Less;
      default: return Cmp::Incomparable;
    }
  }
  return Cmp::Equal;  // unreachable: equal terms caught above
}

/**
 * Bag extension of a (possibly partial) element order. Exact on totally
 * comparable elements; on partial inputs it certifies a direction only
 * when every leftover element on one side is dominated.
 */
template <typename T, typename CmpFn>
Cmp bagCmp(std::vector<T> xs, std::vector<T> ys, CmpFn elemCmp) {
  // drop pairwise equal elements
  for (std::size_t i = 0; i < xs.size();) {
    bool dropped = false;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (elemCmp(xs[i], ys[j]) == Cmp::Equal) {
        xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i));
        ys.erase(ys.begin() + static_cast<std::ptrdiff_t>(j));
        dropped = true;
        break;
      }
    }
    if (!dropped) ++i;
  }
  if (xs.empty() && ys.empty()) return Cmp::Equal;
  if (ys.empty()) return Cmp::Greater;
  if (xs.empty()) return Cmp::Less;
  auto dominatesAll = [&](const std::vector<T>& big, const std::vector<T>& small) {
    for (const auto& y : small) {
      bool dominated = false;
      for (const auto& x : big) {
        if (elemCmp(x, y) == Cmp::Greater) {
          dominated = true;
          break;
        }
      }
      if (!dominated) return false;
    }
    return true;
  };
  if (dominatesAll(xs, ys)) return Cmp::Greater;
  if (dominatesAll(ys, xs)) return Cmp::Less;
  return Cmp::Incomparable;
}

/** Literal encoding for the order: s ~ t as {s,t}, s !~ t as {s,s,t,t}. */
inline std::vector<TermRef> literalMultiset(const Literal& l) {
  if (l.positive) return {l.lhs, l.rhs};
  return {l.lhs, l.lhs, l.rhs, l.rhs};
}

inline Cmp cmpLiterals(const Literal& a, const Literal& b, const KBOParams& params) {
  return bagCmp(literalMultiset(a), literalMultiset(b),
                [&](const TermRef& x, const TermRef& y) { return cmpTerms(x, y, params); });
}

inline Cmp cmpClauses(const Clause& a, const Clause& b, const KBOParams& params) {
  return bagCmp(a.lits, b.lits,
                [&](const Literal& x, const Literal& y) { return cmpLiterals(x, y, params); });
}

/**
 * A set of strict ordering facts assumed during case analysis. Pairs are
 * arbitrary terms; lookups are structural.
 */
class OrderAssumptions {
public:
  void assumeGreater(TermRef a, TermRef b) { facts_.emplace_back(std::move(a), std::move(b)); }

  bool holdsGreater(const TermRef& a, const TermRef& b) const {
    for (const auto& [x, y] : facts_) {
      if (equal(x, a) && equal(y, b)) return true;
    }
    return false;
  }

  /** True when the fact set cannot hold in any grounding. */
  bool inconsistent(const KBOParams& params) const {
    for (const auto& [x, y] : facts_) {
      if (equal(x, y)) return true;
      if (holdsGreater(y, x)) return true;
      Cmp c = cmpTerms(x, y, params);
      if (c == Cmp::Less || c == Cmp::Equal) return true;
    }
    return false;
  }

  OrderAssumptions mapped(const Substitution& s) const {
    OrderAssumptions out;
    for (const auto& [x, y] : facts_) out.assumeGreater(s.apply(x), s.apply(y));
    return out;
  }

  const std::vector<std::pair<TermRef, TermRef>>& facts() const { return facts_; }

private:
  std::vector<std::pair<TermRef, TermRef>> facts_;
};

namespace detail {

/**
 * Certifies s theta > t theta for all groundings consistent with the
 * assumptions. Occurrences of a deficit variable are cancelled against
 * occurrences of an assumed-greater surplus variable; a weight tie that
 * survives cancellation is broken by head precedence alone.
 */
inline bool kboGreaterAssuming(const TermRef& s, const TermRef& t, const KBOParams& params,
                               const OrderAssumptions& assume) {
  if (s->isVar() || t->isVar()) return false;
  int symDiff = 0;
  std::map<VarId, int> vd;
  countSymsVars(s, +1, symDiff, vd);
  countSymsVars(t, -1, symDiff, vd);
  for (auto& [v, d] : vd) {
    while (d < 0) {
      bool cancelled = false;
      for (auto& [u, du] : vd) {
        if (du <= 0 || u == v) continue;
        if (assume.holdsGreater(Term::var(u), Term::var(v))) {
          --du;
          ++d;
          cancelled = true;
          break;
        }
      }
      if (!cancelled) return false;
    }
  }
  int base = symDiff;
  for (const auto& [v, d] : vd) base += d;
  if (base > 0) return true;
  if (base < 0) return false;
  // weight may tie: ties must be broken by precedence in every case
  if (s->symbol() == t->symbol()) return false;
  return params.sig->rank(s->symbol()) < params.sig->rank(t->symbol());
}

}  // namespace detail

/** cmpTerms strengthened by assumed ordering facts (sound, not complete). */
inline Cmp cmpTermsAssuming(const TermRef& s, const TermRef& t, const KBOParams& params,
                            const OrderAssumptions& assume) {
  Cmp c = cmpTerms(s, t, params);
  if (c != Cmp::Incomparable) return c;
  if (assume.holdsGreater(s, t)) return Cmp::Greater;
  if (assume.holdsGreater(t, s)) return Cmp::Less;
  if (detail::kboGreaterAssuming(s, t, params, assume)) return Cmp::Greater;
  if (detail::kboGreaterAssuming(t, s, params, assume)) return Cmp::Less;
  return Cmp::Incomparable;
}

}  // namespace parc
