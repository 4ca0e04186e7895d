#pragma once

/**
 * @file term.hpp
 * First-order terms over a finite signature: symbols, variables,
 * positions and structural helpers. Terms are immutable values with
 * structural sharing; all operations here are pure.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <map>
#include <vector>

namespace parc {

using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

/** Error for malformed structural accesses (bad positions, arity misuse). */
class StructuralError : public std::runtime_error {
public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

struct Symbol {
  std::string name;
  unsigned arity = 0;
  bool isPredicate = false;
};

/**
 * Symbol table plus a strict total precedence over symbols.
 * The default precedence is the order of first registration
 * (earlier symbols are greater).
 */
class Signature {
public:
  SymbolId add(std::string name, unsigned arity, bool isPredicate = false) {
    auto it = byName_.find(name);
    if (it != byName_.end()) {
      const Symbol& s = symbols_[it->second];
      if (s.arity != arity) {
        throw StructuralError("symbol '" + name + "' used with arity " + std::to_string(arity) +
                              " but declared with arity " + std::to_string(s.arity));
      }
      return it->second;
    }
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(Symbol{std::move(name), arity, isPredicate});
    byName_.emplace(symbols_.back().name, id);
    precRank_.push_back(id);  // default: registration order = descending precedence
    return id;
  }

  void markPredicate(SymbolId id) { symbols_.at(id).isPredicate = true; }

  std::optional<SymbolId> find(const std::string& name) const {
    auto it = byName_.find(name);
    if (it == byName_.end()) return std::nullopt;
    return it->second;
  }

  const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }

  /** Precedence rank; smaller rank means greater in the precedence. */
  unsigned rank(SymbolId id) const { return precRank_.at(id); }

  /** Installs a total precedence, given symbols in descending order. */
  void setPrecedence(const std::vector<SymbolId>& descending) {
    if (descending.size() != symbols_.size()) {
      throw StructuralError("precedence list must mention every symbol exactly once");
    }
    std::vector<bool> seen(symbols_.size(), false);
    for (std::size_t r = 0; r < descending.size(); ++r) {
      SymbolId id = descending[r];
      if (id >= symbols_.size() || seen[id]) {
        throw StructuralError("precedence list must mention every symbol exactly once");
      }
      seen[id] = true;
      precRank_[id] = static_cast<unsigned>(r);
    }
  }

  bool hasConstant() const {
    for (const auto& s : symbols_) {
      if (s.arity == 0) return true;
    }
    return false;
  }

  /** The precedence-least constant; every signature we reason over has one. */
  SymbolId minimalConstant() const {
    std::optional<SymbolId> best;
    for (SymbolId id = 0; id < symbols_.size(); ++id) {
      if (symbols_[id].arity != 0) continue;
      if (!best || rank(id) > rank(*best)) best = id;
    }
    if (!best) throw StructuralError("signature has no constant");
    return *best;
  }

private:
  std::vector<Symbol> symbols_;
  std::unordered_map<std::string, SymbolId> byName_;
  std::vector<unsigned> precRank_;
};

class Term;
using TermRef = std::shared_ptr<const Term>;

/**
 * A term is either a variable or a function application whose argument
 * count matches the symbol arity. Node weight (total node count), hash
 * and groundness are cached at construction.
 */
class Term {
public:
  static TermRef var(VarId v) { return std::make_shared<Term>(Tag{}, v); }

  static TermRef app(SymbolId f, std::vector<TermRef> args) {
    return std::make_shared<Term>(Tag{}, f, std::move(args));
  }

  static TermRef constant(SymbolId c) { return app(c, {}); }

  bool isVar() const { return isVar_; }
  VarId varId() const { return var_; }
  SymbolId symbol() const { return symbol_; }
  std::span<const TermRef> args() const { return {args_.data(), args_.size()}; }

  /** Number of nodes, variables included; KBO weight under unit weights. */
  unsigned weight() const { return weight_; }
  bool ground() const { return ground_; }
  std::size_t hash() const { return hash_; }

  // shared_ptr construction detail
  struct Tag {};
  Term(Tag, VarId v) : isVar_(true), var_(v), weight_(1), ground_(false) {
    hash_ = 0x9e3779b97f4a7c15ull ^ (static_cast<std::size_t>(v) * 0xff51afd7ed558ccdull);
  }
  Term(Tag, SymbolId f, std::vector<TermRef> args)
      : isVar_(false), symbol_(f), args_(std::move(args)), weight_(1), ground_(true) {
    hash_ = 0xc2b2ae3d27d4eb4full + static_cast<std::size_t>(f) * 0x9e3779b97f4a7c15ull;
    for (const auto& a : args_) {
      weight_ += a->weight();
      ground_ = ground_ && a->ground();
      hash_ = (hash_ * 0x100000001b3ull) ^ a->hash();
    }
  }

private:
  bool isVar_ = false;
  VarId var_ = 0;
  SymbolId symbol_ = 0;
  std::vector<TermRef> args_;
  unsigned weight_ = 1;
  bool ground_ = false;
  std::size_t hash_ = 0;
};

inline bool equal(const TermRef& a, const TermRef& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash()) return false;
  if (a->isVar() != b->isVar()) return false;
  if (a->isVar()) return a->varId() == b->varId();
  if (a->symbol() != b->symbol()) return false;
  auto as = a->args(), bs = b->args();
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (!equal(as[i], bs[i])) return false;
  }
  return true;
}

inline bool occurs(VarId v, const TermRef& t) {
  if (t->isVar()) return t->varId() == v;
  if (t->ground()) return false;
  for (const auto& a : t->args()) {
    if (occurs(v, a)) return true;
  }
  return false;
}

inline bool containsSubterm(const TermRef& host, const TermRef& sub) {
  if (equal(host, sub)) return true;
  for (const auto& a : host->args()) {
    if (containsSubterm(a, sub)) return true;
  }
  return false;
}

inline void collectVars(const TermRef& t, std::map<VarId, unsigned>& counts) {
  if (t->isVar()) {
    ++counts[t->varId()];
    return;
  }
  if (t->ground()) return;
  for (const auto& a : t->args()) collectVars(a, counts);
}

inline std::map<VarId, unsigned> varCounts(const TermRef& t) {
  std::map<VarId, unsigned> counts;
  collectVars(t, counts);
  return counts;
}

/** Argument-index path from the root; the empty path addresses the term itself. */
using Position = std::vector<unsigned>;

inline TermRef subtermAt(const TermRef& t, const Position& p) {
  TermRef cur = t;
  for (unsigned idx : p) {
    if (cur->isVar() || idx >= cur->args().size()) {
      throw StructuralError("invalid position");
    }
    cur = cur->args()[idx];
  }
  return cur;
}

inline TermRef replaceAt(const TermRef& t, const Position& p, const TermRef& s,
                         std::size_t depth = 0) {
  if (depth == p.size()) return s;
  unsigned idx = p[depth];
  if (t->isVar() || idx >= t->args().size()) {
    throw StructuralError("invalid position");
  }
  std::vector<TermRef> args(t->args().begin(), t->args().end());
  args[idx] = replaceAt(args[idx], p, s, depth + 1);
  return Term::app(t->symbol(), std::move(args));
}

/** Enumerates all positions of non-variable subterms, outermost first. */
inline void nonVarPositions(const TermRef& t, std::vector<Position>& out,
                            Position& prefix) {
  if (t->isVar()) return;
  out.push_back(prefix);
  auto as = t->args();
  for (unsigned i = 0; i < as.size(); ++i) {
    prefix.push_back(i);
    nonVarPositions(as[i], out, prefix);
    prefix.pop_back();
  }
}

inline std::vector<Position> nonVarPositions(const TermRef& t) {
  std::vector<Position> out;
  Position prefix;
  nonVarPositions(t, out, prefix);
  return out;
}

inline void printTerm(std::ostream& out, const TermRef& t, const Signature& sig) {
  if (t->isVar()) {
    out << 'X' << t->varId();
    return;
  }
  out << sig.symbol(t->symbol()).name;
  if (!t->args().empty()) {
    out << '(';
    bool first = true;
    for (const auto& a : t->args()) {
      if (!first) out << ',';
      first = false;
      printTerm(out, a, sig);
    }
    out << ')';
  }
}

inline std::string toString(const TermRef& t, const Signature& sig) {
  std::ostringstream os;
  printTerm(os, t, sig);
  return os.str();
}

/** All ground terms of depth <= depth, smallest depth first. Throws if cap exceeded. */
inline std::vector<TermRef> groundTermsUpToDepth(const Signature& sig, unsigned depth,
                                                 std::size_t cap = 200000) {
  std::vector<TermRef> layerPrev;   // terms of depth <= d-1
  std::vector<TermRef> all;
  for (SymbolId id = 0; id < sig.size(); ++id) {
    if (sig.symbol(id).arity == 0) all.push_back(Term::constant(id));
  }
  layerPrev = all;
  for (unsigned d = 1; d <= depth; ++d) {
    std::vector<TermRef> next = layerPrev;
    for (SymbolId id = 0; id < sig.size(); ++id) {
      unsigned n = sig.symbol(id).arity;
      if (n == 0) continue;
      // all argument tuples over layerPrev
      std::vector<std::size_t> odo(n, 0);
      while (true) {
        std::vector<TermRef> args;
        args.reserve(n);
        for (unsigned i = 0; i < n; ++i) args.push_back(layerPrev[odo[i]]);
        TermRef t = Term::app(id, std::move(args));
        bool fresh = true;
        // depth-(d) terms built from depth-(d-2) args already exist in next
        for (const auto& u : next) {
          if (equal(u, t)) { fresh = false; break; }
        }
        if (fresh) {
          next.push_back(t);
          if (next.size() > cap) throw StructuralError("ground term enumeration exceeds cap");
        }
        unsigned k = 0;
        for (; k < n; ++k) {
          if (++odo[k] < layerPrev.size()) break;
          odo[k] = 0;
        }
        if (k == n) break;
      }
    }
    layerPrev = std::move(next);
  }
  return layerPrev;
}

}  // namespace parc
