#pragma once

/**
 * @file oracle.hpp
 * Test-support brute force machinery: bounded ground enumeration, ground
 * equational entailment by congruence closure, exact (bounded) checks
 * for redundancy and redundancy formulas, and reference implementations
 * of the order. Everything here trades speed for independence from the
 * production code paths it cross-checks.
 */

#include <functional>

#include "parc/constraints.hpp"
#include "parc/ordering.hpp"

namespace parc::oracle {

/** Every ground term of depth <= depth over the signature, nothing else. */
struct GroundUniverse {
  const Signature* sig = nullptr;
  unsigned depth = 0;
  std::vector<TermRef> terms;

  static GroundUniverse build(const Signature& sig, unsigned depth, std::size_t cap = 200000) {
    GroundUniverse u;
    u.sig = &sig;
    u.depth = depth;
    u.terms = groundTermsUpToDepth(sig, depth, cap);
    return u;
  }
};

/** Applies every assignment of the given variables to universe terms. */
inline void forEachAssignment(const std::vector<VarId>& vars,
                              const std::vector<TermRef>& range,
                              const std::function<bool(const Substitution&)>& visit) {
  if (range.empty() && !vars.empty()) return;
  std::vector<std::size_t> odo(vars.size(), 0);
  while (true) {
    Substitution sigma;
    for (std::size_t i = 0; i < vars.size(); ++i) sigma.bind(vars[i], range[odo[i]]);
    if (!visit(sigma)) return;
    std::size_t k = 0;
    for (; k < vars.size(); ++k) {
      if (++odo[k] < range.size()) break;
      odo[k] = 0;
    }
    if (k == vars.size() || vars.empty()) return;
  }
}

inline std::vector<Clause> groundInstances(const Clause& c, const GroundUniverse& u) {
  std::vector<VarId> vars;
  for (const auto& [v, _] : varCounts(c)) vars.push_back(v);
  std::vector<Clause> out;
  forEachAssignment(vars, u.terms, [&](const Substitution& sigma) {
    out.push_back(applySub(sigma, c));
    return true;
  });
  return out;
}

/** Congruence closure over ground terms. */
class CongruenceClosure {
public:
  void addEquation(const TermRef& s, const TermRef& t) {
    merge(intern(s), intern(t));
    rebuild();
  }

  bool equivalent(const TermRef& s, const TermRef& t) {
    int a = intern(s), b = intern(t);
    rebuild();
    return find(a) == find(b);
  }

private:
  struct Node {
    SymbolId f = 0;
    std::vector<int> args;
  };

  int intern(const TermRef& t) {
    std::vector<int> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) args.push_back(intern(a));
    if (t->isVar()) throw StructuralError("congruence closure needs ground terms");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].f == t->symbol() && nodes_[i].args == args) return static_cast<int>(i);
    }
    nodes_.push_back(Node{t->symbol(), std::move(args)});
    parent_.push_back(static_cast<int>(nodes_.size()) - 1);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[a] = b;
  }

  void rebuild() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
          if (find(static_cast<int>(i)) == find(static_cast<int>(j))) continue;
          if (nodes_[i].f != nodes_[j].f || nodes_[i].args.size() != nodes_[j].args.size()) {
            continue;
          }
          bool congruent = true;
          for (std::size_t k = 0; k < nodes_[i].args.size(); ++k) {
            if (find(nodes_[i].args[k]) != find(nodes_[j].args[k])) {
              congruent = false;
              break;
            }
          }
          if (congruent) {
            merge(static_cast<int>(i), static_cast<int>(j));
            changed = true;
          }
        }
      }
    }
  }

  std::vector<Node> nodes_;
  std::vector<int> parent_;
};

/** goal follows from the ground equations in every model. */
inline bool ccEntails(const std::vector<std::pair<TermRef, TermRef>>& eqs,
                      const TermRef& goalLhs, const TermRef& goalRhs) {
  CongruenceClosure cc;
  for (const auto& [s, t] : eqs) cc.addEquation(s, t);
  return cc.equivalent(goalLhs, goalRhs);
}

namespace detail {

inline bool refutes(std::vector<std::pair<TermRef, TermRef>>& eqs,
                    std::vector<std::pair<TermRef, TermRef>>& diseqs,
                    const std::vector<Clause>& nonUnits, std::size_t idx) {
  if (idx == nonUnits.size()) {
    CongruenceClosure cc;
    for (const auto& [s, t] : eqs) cc.addEquation(s, t);
    for (const auto& [s, t] : diseqs) {
      if (cc.equivalent(s, t)) return true;
    }
    return false;
  }
  for (const auto& lit : nonUnits[idx].lits) {
    auto& side = lit.positive ? eqs : diseqs;
    side.emplace_back(lit.lhs, lit.rhs);
    bool closed = refutes(eqs, diseqs, nonUnits, idx + 1);
    side.pop_back();
    if (!closed) return false;
  }
  return true;
}

}  // namespace detail

/**
 * premises |= goal for ground clauses, decided by branching over premise
 * disjunctions and congruence closure per branch.
 */
inline bool clauseEntails(const std::vector<Clause>& premises, const Clause& goal) {
  std::vector<std::pair<TermRef, TermRef>> eqs, diseqs;
  std::vector<Clause> nonUnits;
  for (const auto& p : premises) {
    if (p.empty()) return true;  // contradictory premises entail anything
    if (p.size() == 1) {
      const Literal& l = p.lits[0];
      (l.positive ? eqs : diseqs).emplace_back(l.lhs, l.rhs);
    } else {
      nonUnits.push_back(p);
    }
  }
  for (const auto& lit : goal.lits) {
    // negated goal literal
    (lit.positive ? diseqs : eqs).emplace_back(lit.lhs, lit.rhs);
  }
  return detail::refutes(eqs, diseqs, nonUnits, 0);
}

/**
 * D is redundant w.r.t. S over the universe: entailed by ground
 * instances of S that are smaller than D. The instantiation range is
 * trimmed to terms no heavier than D's heaviest term, which preserves
 * every witness set the demodulation-style steps can produce.
 */
inline bool isRedundant(const Clause& d, const std::vector<Clause>& s, const GroundUniverse& u,
                        const KBOParams& params, std::size_t instanceCap = 50000) {
  if (!d.ground()) throw StructuralError("isRedundant expects a ground clause");
  unsigned maxTermWeight = 1;
  for (const auto& lit : d.lits) {
    maxTermWeight = std::max({maxTermWeight, lit.lhs->weight(), lit.rhs->weight()});
  }
  std::vector<TermRef> range;
  for (const auto& t : u.terms) {
    if (t->weight() <= maxTermWeight) range.push_back(t);
  }
  std::vector<Clause> candidates;
  bool capped = false;
  for (const auto& c : s) {
    std::vector<VarId> vars;
    for (const auto& [v, _] : varCounts(c)) vars.push_back(v);
    forEachAssignment(vars, range, [&](const Substitution& sigma) {
      Clause inst = applySub(sigma, c);
      if (cmpClauses(d, inst, params) == Cmp::Greater) candidates.push_back(std::move(inst));
      if (candidates.size() > instanceCap) {
        capped = true;
        return false;
      }
      return true;
    });
    if (capped) break;
  }
  return clauseEntails(candidates, d);
}

/**
 * Closed-world evaluation over the universe: quantifiers range over
 * exactly the universe terms. Exact for the bounded structure.
 */
inline bool evalInUniverse(const FormulaRef& f, const KBOParams& params,
                           const GroundUniverse& u) {
  switch (f->kind()) {
    case FKind::Top: return true;
    case FKind::Bot: return false;
    case FKind::Eq: return equal(f->left(), f->right());
    case FKind::Gt: return cmpTerms(f->left(), f->right(), params) == Cmp::Greater;
    case FKind::Not: return !evalInUniverse(f->body(), params, u);
    case FKind::And:
      for (const auto& k : f->kids()) {
        if (!evalInUniverse(k, params, u)) return false;
      }
      return true;
    case FKind::Or:
      for (const auto& k : f->kids()) {
        if (evalInUniverse(k, params, u)) return true;
      }
      return false;
    case FKind::Exists:
      for (const auto& w : u.terms) {
        Substitution sigma;
        sigma.bind(f->boundVar(), w);
        if (evalInUniverse(applySub(sigma, f->body()), params, u)) return true;
      }
      return false;
  }
  return false;
}

/** Every grounding of R sigma over the universe is true (bounded check). */
inline bool formulaHoldsAll(const Substitution& sigma, const FormulaRef& r,
                            const KBOParams& params, const GroundUniverse& u) {
  FormulaRef g = applySub(sigma, r);
  std::vector<VarId> vars;
  for (VarId v : freeVars(g)) vars.push_back(v);
  bool all = true;
  forEachAssignment(vars, u.terms, [&](const Substitution& theta) {
    if (!evalInUniverse(applySub(theta, g), params, u)) {
      all = false;
      return false;
    }
    return true;
  });
  return all;
}

/** Finds a grounding over the universe falsifying R sigma, if any. */
inline std::optional<Substitution> findFalsifying(const Substitution& sigma, const FormulaRef& r,
                                                  const KBOParams& params,
                                                  const GroundUniverse& u) {
  FormulaRef g = applySub(sigma, r);
  std::vector<VarId> vars;
  for (VarId v : freeVars(g)) vars.push_back(v);
  std::optional<Substitution> found;
  forEachAssignment(vars, u.terms, [&](const Substitution& theta) {
    if (!evalInUniverse(applySub(theta, g), params, u)) {
      found = theta;
      return false;
    }
    return true;
  });
  return found;
}

/** All ground unifiers of s and t with variables ranging over the pool. */
inline std::vector<Substitution> bruteForceUnifiers(const TermRef& s, const TermRef& t,
                                                    const std::vector<TermRef>& range) {
  std::map<VarId, unsigned> counts;
  collectVars(s, counts);
  collectVars(t, counts);
  std::vector<VarId> vars;
  for (const auto& [v, _] : counts) vars.push_back(v);
  std::vector<Substitution> out;
  forEachAssignment(vars, range, [&](const Substitution& sigma) {
    if (equal(sigma.apply(s), sigma.apply(t))) out.push_back(sigma);
    return true;
  });
  return out;
}

/** eta factors through sigma: some mu has sigma mu = eta on the given vars. */
inline bool factorsThrough(const Substitution& sigma, const Substitution& eta,
                           const std::vector<VarId>& vars) {
  std::unordered_map<VarId, TermRef> mu;
  for (VarId v : vars) {
    TermRef lhs = sigma.apply(Term::var(v));
    TermRef rhs = eta.apply(Term::var(v));
    if (!matchInto(lhs, rhs, mu)) return false;
  }
  return true;
}

/**
 * Definition-level ground KBO, kept independent of cmpTerms: compare
 * weights, then head precedence, then arguments lexicographically.
 */
inline Cmp kboGroundRef(const TermRef& s, const TermRef& t, const KBOParams& params) {
  if (!s->ground() || !t->ground()) throw StructuralError("kboGroundRef expects ground terms");
  if (equal(s, t)) return Cmp::Equal;
  if (s->weight() != t->weight()) {
    return s->weight() > t->weight() ? Cmp::Greater : Cmp::Less;
  }
  if (s->symbol() != t->symbol()) {
    return params.sig->rank(s->symbol()) < params.sig->rank(t->symbol()) ? Cmp::Greater
                                                                         : Cmp::Less;
  }
  auto as = s->args(), bs = t->args();
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (!equal(as[i], bs[i])) return kboGroundRef(as[i], bs[i], params);
  }
  return Cmp::Equal;
}

/**
 * Definition-level bag extension for a total ground order: M > N iff
 * M != N and every element of N - M is exceeded by some element of M - N.
 */
template <typename T, typename CmpFn>
bool bagGreaterRef(std::vector<T> xs, std::vector<T> ys, CmpFn elemCmp) {
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
  if (xs.empty()) return false;
  for (const auto& y : ys) {
    bool exceeded = false;
    for (const auto& x : xs) {
      if (elemCmp(x, y) == Cmp::Greater) {
        exceeded = true;
        break;
      }
    }
    if (!exceeded) return false;
  }
  return true;
}

}  // namespace parc::oracle
