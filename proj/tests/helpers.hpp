#pragma once

// Shared fixtures for the test suites: the example signature
// f/2 > g/1 > h/2 > a > b, term parsing shortcuts, and random
// term/formula generators with fixed seeds.

#include <random>

#include "parc/parc.hpp"

namespace parctest {

using namespace parc;

struct ExampleSig {
  Signature sig;
  SymbolId f, g, h, a, b;
  KBOParams params;

  ExampleSig() {
    f = sig.add("f", 2);
    g = sig.add("g", 1);
    h = sig.add("h", 2);
    a = sig.add("a", 0);
    b = sig.add("b", 0);
    params.sig = &sig;
  }

  ExampleSig(const ExampleSig&) = delete;

  TermRef t(std::string_view text, detail::VarScope* scope = nullptr) {
    return parseTerm(sig, text, scope);
  }
  Clause c(std::string_view text, detail::VarScope* scope = nullptr) {
    return parseClause(sig, text, scope);
  }
  FormulaRef fm(std::string_view text) { return parseFormula(sig, text); }

  std::string str(const TermRef& term) const { return toString(term, sig); }
  std::string str(const Clause& clause) const { return toString(clause, sig); }
  std::string str(const FormulaRef& formula) const { return toString(formula, sig); }
};

inline TermRef randomTerm(std::mt19937_64& rng, const Signature& sig, unsigned maxDepth,
                          unsigned numVars) {
  std::vector<SymbolId> nullary, other;
  for (SymbolId id = 0; id < sig.size(); ++id) {
    (sig.symbol(id).arity == 0 ? nullary : other).push_back(id);
  }
  std::uniform_int_distribution<unsigned> coin(0, 99);
  if (maxDepth == 0 || coin(rng) < (numVars ? 35 : 25)) {
    if (numVars && coin(rng) < 50) {
      std::uniform_int_distribution<VarId> pick(0, numVars - 1);
      return Term::var(pick(rng));
    }
    std::uniform_int_distribution<std::size_t> pick(0, nullary.size() - 1);
    return Term::constant(nullary[pick(rng)]);
  }
  std::uniform_int_distribution<std::size_t> pick(0, other.size() - 1);
  SymbolId sym = other[pick(rng)];
  std::vector<TermRef> args;
  for (unsigned i = 0; i < sig.symbol(sym).arity; ++i) {
    args.push_back(randomTerm(rng, sig, maxDepth - 1, numVars));
  }
  return Term::app(sym, std::move(args));
}

inline TermRef randomGroundTerm(std::mt19937_64& rng, const Signature& sig, unsigned maxDepth) {
  return randomTerm(rng, sig, maxDepth, 0);
}

/** Random formula in the supported fragment: disjunctions of conjunctions
 *  of =/> atoms over at most `numVars` free variables; optionally one
 *  determined existential, the shape the demodulation steps produce. */
inline FormulaRef randomFragmentFormula(std::mt19937_64& rng, const Signature& sig,
                                        unsigned numVars, bool allowExists = true) {
  std::uniform_int_distribution<unsigned> coin(0, 99);
  auto atom = [&](unsigned vars) -> FormulaRef {
    TermRef s = randomTerm(rng, sig, 2, vars);
    TermRef t = randomTerm(rng, sig, 2, vars);
    return coin(rng) < 50 ? Formula::eq(s, t) : Formula::gt(s, t);
  };
  auto conjunction = [&](unsigned vars) {
    std::vector<FormulaRef> kids;
    unsigned n = 1 + coin(rng) % 3;
    for (unsigned i = 0; i < n; ++i) kids.push_back(atom(vars));
    return Formula::conj(std::move(kids));
  };
  std::vector<FormulaRef> disjuncts;
  unsigned n = 1 + coin(rng) % 3;
  for (unsigned i = 0; i < n; ++i) disjuncts.push_back(conjunction(numVars));
  FormulaRef out = Formula::disj(std::move(disjuncts));
  if (allowExists && coin(rng) < 30) {
    // a determined existential: ex y. (y = t and ...)
    VarId y = numVars;
    FormulaRef det = Formula::eq(Term::var(y), randomTerm(rng, sig, 2, numVars));
    out = Formula::exists(y, Formula::conj({det, out}));
  }
  return out;
}

inline std::string problemPath(const std::string& name) {
  return std::string(PARC_PROBLEMS_DIR) + "/" + name;
}

}  // namespace parctest
