#pragma once

/**
 * @file substitution.hpp
 * Finite variable-to-term mappings, homomorphic application, syntactic
 * unification with occurs check, and one-way matching.
 */

#include <optional>
#include <unordered_map>

#include "parc/term.hpp"

namespace parc {

/**
 * A substitution with finite domain {x | x sigma != x}. Unification
 * results are idempotent: applying them twice equals applying once.
 */
class Substitution {
public:
  Substitution() = default;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  const TermRef* lookup(VarId v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
  }

  void bind(VarId v, TermRef t) { map_[v] = std::move(t); }

  TermRef operator()(const TermRef& t) const { return apply(t); }

  TermRef apply(const TermRef& t) const {
    if (map_.empty()) return t;
    if (t->isVar()) {
      const TermRef* b = lookup(t->varId());
      return b ? *b : t;
    }
    if (t->ground()) return t;
    std::vector<TermRef> args;
    args.reserve(t->args().size());
    bool changed = false;
    for (const auto& a : t->args()) {
      TermRef r = apply(a);
      changed = changed || r.get() != a.get();
      args.push_back(std::move(r));
    }
    if (!changed) return t;
    return Term::app(t->symbol(), std::move(args));
  }

  const std::unordered_map<VarId, TermRef>& bindings() const { return map_; }

  /** this then other, flattened into a single substitution. */
  Substitution composed(const Substitution& other) const {
    Substitution out;
    for (const auto& [v, t] : map_) out.bind(v, other.apply(t));
    for (const auto& [v, t] : other.map_) {
      if (!out.lookup(v) && map_.find(v) == map_.end()) out.bind(v, t);
    }
    return out;
  }

private:
  std::unordered_map<VarId, TermRef> map_;
};

namespace detail {

inline TermRef walk(TermRef t, const std::unordered_map<VarId, TermRef>& b) {
  while (t->isVar()) {
    auto it = b.find(t->varId());
    if (it == b.end()) return t;
    t = it->second;
  }
  return t;
}

inline bool occursResolved(VarId v, TermRef t,
                           const std::unordered_map<VarId, TermRef>& b) {
  t = walk(std::move(t), b);
  if (t->isVar()) return t->varId() == v;
  for (const auto& a : t->args()) {
    if (occursResolved(v, a, b)) return true;
  }
  return false;
}

inline bool unifyRec(TermRef a, TermRef b,
                     std::unordered_map<VarId, TermRef>& bind) {
  a = walk(std::move(a), bind);
  b = walk(std::move(b), bind);
  if (a->isVar() && b->isVar() && a->varId() == b->varId()) return true;
  if (a->isVar()) {
    if (occursResolved(a->varId(), b, bind)) return false;
    bind[a->varId()] = b;
    return true;
  }
  if (b->isVar()) {
    if (occursResolved(b->varId(), a, bind)) return false;
    bind[b->varId()] = a;
    return true;
  }
  if (a->symbol() != b->symbol()) return false;
  auto as = a->args(), bs = b->args();
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (!unifyRec(as[i], bs[i], bind)) return false;
  }
  return true;
}

inline TermRef resolveFully(const TermRef& t,
                            const std::unordered_map<VarId, TermRef>& bind,
                            std::unordered_map<const Term*, TermRef>& memo) {
  if (t->ground()) return t;
  auto mit = memo.find(t.get());
  if (mit != memo.end()) return mit->second;
  TermRef out;
  if (t->isVar()) {
    auto it = bind.find(t->varId());
    out = (it == bind.end()) ? t : resolveFully(it->second, bind, memo);
  } else {
    std::vector<TermRef> args;
    args.reserve(t->args().size());
    for (const auto& a : t->args()) args.push_back(resolveFully(a, bind, memo));
    out = Term::app(t->symbol(), std::move(args));
  }
  memo.emplace(t.get(), out);
  return out;
}

}  // namespace detail

/**
 * Most general unifier of s and t, or nullopt on clash / occurs-check
 * failure. The result is idempotent and least committed: every unifier
 * of s and t factors through it.
 */
inline std::optional<Substitution> mgu(const TermRef& s, const TermRef& t) {
  std::unordered_map<VarId, TermRef> bind;
  if (!detail::unifyRec(s, t, bind)) return std::nullopt;
  Substitution out;
  std::unordered_map<const Term*, TermRef> memo;
  for (const auto& [v, u] : bind) {
    TermRef r = detail::resolveFully(u, bind, memo);
    if (!(r->isVar() && r->varId() == v)) out.bind(v, r);
  }
  return out;
}

/**
 * One-way matching: finds sigma with pattern sigma = target, treating
 * target variables as constants. Extends the bindings map in place.
 */
inline bool matchInto(const TermRef& pattern, const TermRef& target,
                      std::unordered_map<VarId, TermRef>& bind) {
  if (pattern->isVar()) {
    auto it = bind.find(pattern->varId());
    if (it != bind.end()) return equal(it->second, target);
    bind.emplace(pattern->varId(), target);
    return true;
  }
  if (target->isVar() || pattern->symbol() != target->symbol()) return false;
  auto ps = pattern->args(), ts = target->args();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!matchInto(ps[i], ts[i], bind)) return false;
  }
  return true;
}

inline std::optional<Substitution> match(const TermRef& pattern, const TermRef& target) {
  std::unordered_map<VarId, TermRef> bind;
  if (!matchInto(pattern, target, bind)) return std::nullopt;
  Substitution out;
  for (auto& [v, t] : bind) out.bind(v, t);
  return out;
}

}  // namespace parc
