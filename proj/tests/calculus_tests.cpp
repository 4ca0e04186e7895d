#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace parc;
using parctest::ExampleSig;

namespace {

PartialClause pc(Clause c, FormulaRef f, std::uint32_t id) {
  return PartialClause{std::move(c), std::move(f), id, id};
}

}  // namespace

TEST_CASE("literal selection") {
  ExampleSig E;
  Clause c = E.c("a != b | a = b");
  auto sel = select(c, E.params, SelectionMode::Maximal);
  REQUIRE(sel.size() == 1);
  CHECK_FALSE(c.lits[sel[0]].positive);  // the disequation dominates

  Clause unit = E.c("f(a,b) = b");
  CHECK(select(unit, E.params) == std::vector<std::size_t>{0});

  detail::VarScope vs;
  Clause neg = E.c("f(X,b) != a", &vs);
  CHECK(select(neg, E.params, SelectionMode::Negative) == std::vector<std::size_t>{0});
}

TEST_CASE("superposition: motivating inference") {
  ExampleSig E;
  detail::VarScope vsL, vsR;
  PartialClause left = pc(E.c("h(Z,U) = h(U,Z)", &vsL), Formula::bot(), 1);
  // rename apart by hand: left uses fresh ids
  Substitution bump;
  bump.bind(vsL.get("Z"), Term::var(100));
  bump.bind(vsL.get("U"), Term::var(101));
  left.clause = applySub(bump, left.clause);
  PartialClause right = pc(E.c("f(g(Y),Y) = g(h(X,Y))", &vsR), Formula::bot(), 2);

  SupArgs args;
  args.leftLit = 0;
  args.leftReversed = false;
  args.rightLit = 0;
  args.rightSideRhs = true;  // inside g(h(X,Y))
  args.pos = {0};            // the h(X,Y) subterm
  auto app = superposition(left, right, args, E.params, CalcOptions{});
  REQUIRE(app.performed());
  detail::VarScope vsC;
  CHECK(clauseEqual(normalizeClause(*app.conclusion),
                    normalizeClause(E.c("f(g(Y),Y) = g(h(Y,X))", &vsC))));
}

TEST_CASE("superposition: skip on the right formula") {
  ExampleSig E;
  detail::VarScope vsR;
  PartialClause left = pc(E.c("f(a,b) = b"), Formula::bot(), 1);
  Clause rightClause = E.c("g(f(X,b)) != a", &vsR);
  VarId x = vsR.get("X");
  PartialClause right = pc(rightClause, Formula::eq(Term::var(x), E.t("a")), 3);

  SupArgs args;
  args.leftLit = 0;
  args.rightLit = 0;
  args.rightSideRhs = false;  // inside g(f(X,b))
  args.pos = {0};
  CalcOptions copts{/*checkFormulas=*/true, /*caseAnalysis=*/false};
  auto app = superposition(left, right, args, E.params, copts);
  CHECK_FALSE(app.performed());
  CHECK(app.skip == SkipCond::C8);
  CHECK(equal(app.unifier.apply(Term::var(x)), E.t("a")));

  // with a Bot formula the same inference goes through
  PartialClause rightBot = pc(rightClause, Formula::bot(), 3);
  auto app2 = superposition(left, rightBot, args, E.params, copts);
  REQUIRE(app2.performed());
  CHECK(clauseEqual(normalizeClause(*app2.conclusion), normalizeClause(E.c("g(b) != a"))));
}

TEST_CASE("superposition: displayed first-example inference") {
  ExampleSig E;
  detail::VarScope vsL, vsR;
  Clause leftClause = E.c("f(a,Y) = g(Y)", &vsL);
  Substitution bump;
  bump.bind(vsL.get("Y"), Term::var(100));
  PartialClause left = pc(applySub(bump, leftClause), Formula::bot(), 2);
  PartialClause right = pc(E.c("g(f(X,b)) != a", &vsR), Formula::bot(), 3);

  SupArgs args;
  args.leftLit = 0;
  args.rightLit = 0;
  args.rightSideRhs = false;
  args.pos = {0};
  auto app = superposition(left, right, args, E.params, CalcOptions{true, false});
  REQUIRE(app.performed());
  CHECK(clauseEqual(normalizeClause(*app.conclusion), normalizeClause(E.c("g(g(b)) != a"))));
}

TEST_CASE("superposition: redundant orientation skipped by case split") {
  ExampleSig E;
  // second example, S2: clause 2 carries x > y; using it right-to-left
  // as the right premise violates condition 4 or 8 on every grounding
  detail::VarScope vs2;
  Clause c2 = E.c("f(g(Y),Y) = g(h(X,Y))", &vs2);
  VarId x = vs2.get("X"), y = vs2.get("Y");
  PartialClause right = pc(c2, Formula::gt(Term::var(x), Term::var(y)), 2);

  PartialClause left = pc(Clause{{mkEq(Term::app(E.h, {Term::var(100), Term::var(101)}),
                                       Term::app(E.h, {Term::var(101), Term::var(100)}))}},
                          Formula::bot(), 1);
  SupArgs args;
  args.leftLit = 0;
  args.rightLit = 0;
  args.rightSideRhs = true;  // rewrite inside g(h(X,Y))
  args.pos = {0};
  CalcOptions croc{true, true};
  auto app = superposition(left, right, args, E.params, croc);
  CHECK_FALSE(app.performed());
  CHECK(app.skip == SkipCond::JointC4C8);

  // without case analysis the same instance is performed
  auto app2 = superposition(left, right, args, E.params, CalcOptions{true, false});
  CHECK(app2.performed());
}

TEST_CASE("equality resolution") {
  ExampleSig E;
  PartialClause triv = pc(E.c("a != a"), Formula::bot(), 1);
  auto app = equalityResolution(triv, 0, E.params, CalcOptions{});
  REQUIRE(app.performed());
  CHECK(app.conclusion->empty());

  detail::VarScope vs;
  PartialClause c = pc(E.c("f(X,b) != f(a,Y) | g(X) = Y", &vs), Formula::bot(), 2);
  auto app2 = equalityResolution(c, 0, E.params, CalcOptions{});
  REQUIRE(app2.performed());
  CHECK(clauseEqual(normalizeClause(*app2.conclusion), normalizeClause(E.c("g(a) = b"))));

  PartialClause blocked = pc(E.c("a != a"), Formula::top(), 3);
  auto app3 = equalityResolution(blocked, 0, E.params, CalcOptions{true, false});
  CHECK_FALSE(app3.performed());
  CHECK(app3.skip == SkipCond::C2);
}

TEST_CASE("equality factoring") {
  ExampleSig E;
  detail::VarScope vs;
  PartialClause c = pc(E.c("g(X) = a | g(a) = a", &vs), Formula::bot(), 1);
  auto app = equalityFactoring(c, EqFacArgs{0, false, 1, false}, E.params, CalcOptions{});
  REQUIRE(app.performed());
  CHECK(clauseEqual(normalizeClause(*app.conclusion),
                    normalizeClause(E.c("g(a) = a | a != a"))));
  CHECK(equal(app.unifier.apply(Term::var(vs.get("X"))), E.t("a")));

  detail::VarScope vs2;
  PartialClause dup = pc(E.c("f(X,b) = g(X) | f(X,b) = g(X)", &vs2), Formula::bot(), 2);
  auto app2 = equalityFactoring(dup, EqFacArgs{0, false, 1, false}, E.params, CalcOptions{});
  REQUIRE(app2.performed());
  detail::VarScope vs3;
  CHECK(clauseEqual(normalizeClause(*app2.conclusion),
                    normalizeClause(E.c("f(X,b) = g(X) | g(X) != g(X)", &vs3))));

  PartialClause blocked = pc(E.c("g(X) = a | g(a) = a", &vs), Formula::top(), 3);
  auto app3 = equalityFactoring(blocked, EqFacArgs{0, false, 1, false}, E.params,
                                CalcOptions{true, false});
  CHECK_FALSE(app3.performed());
  CHECK(app3.skip == SkipCond::C5);
}

TEST_CASE("all inferences: no right-to-left use of a constrained clause") {
  ExampleSig E;
  // second example, S2 = {1, 2<x>y>, 3}; enumerate with clause 2 as given
  detail::VarScope vs1;
  PartialClause c1 = pc(E.c("h(Z,U) = h(U,Z)", &vs1), Formula::bot(), 1);
  detail::VarScope vs2;
  Clause cl2 = E.c("f(g(Y),Y) = g(h(X,Y))", &vs2);
  VarId x = vs2.get("X"), y = vs2.get("Y");
  PartialClause c2 = pc(cl2, Formula::gt(Term::var(x), Term::var(y)), 2);
  detail::VarScope vs3;
  PartialClause c3 = pc(E.c("f(g(Y),Y) = g(h(Y,X))", &vs3), Formula::bot(), 3);

  CalcOptions croc{true, true};
  Statistics stats;
  auto results = allInferences(c2, {c1, c3}, E.params, croc, SelectionMode::Maximal, &stats);
  int performed = 0;
  for (const auto& inf : results) {
    if (inf.rule != Rule::Sup || !inf.result.performed()) continue;
    ++performed;
    CHECK_FALSE((inf.leftId == 2 && inf.supArgs.leftReversed));
    CHECK_FALSE((inf.rightId == 2 && inf.supArgs.rightSideRhs));
  }
  CHECK(performed > 0);  // left-to-right uses still fire
}

TEST_CASE("all inferences: no partners means only unary candidates") {
  ExampleSig E;
  PartialClause unit = pc(E.c("f(a,b) = b"), Formula::bot(), 1);
  auto results = allInferences(unit, {}, E.params, CalcOptions{}, SelectionMode::Maximal);
  for (const auto& inf : results) {
    if (inf.rule == Rule::Sup) {
      // only self-superpositions appear
      CHECK(inf.leftId == 1);
      CHECK(inf.rightId == 1);
    }
  }
}

TEST_CASE("all inferences: first example S1 skips exactly the covered position") {
  ExampleSig E;
  PartialClause c1 = pc(E.c("f(a,b) = b"), Formula::bot(), 1);
  detail::VarScope vs3;
  Clause cl3 = E.c("g(f(X,b)) != a", &vs3);
  PartialClause c3 = pc(cl3, Formula::eq(Term::var(vs3.get("X")), E.t("a")), 3);

  auto results = allInferences(c3, {c1}, E.params, CalcOptions{true, false},
                               SelectionMode::Maximal);
  bool sawC8 = false;
  for (const auto& inf : results) {
    if (inf.rule == Rule::Sup && inf.leftId == 1 && inf.rightId == 3 &&
        !inf.supArgs.leftReversed && !inf.supArgs.rightSideRhs &&
        inf.supArgs.pos == Position{0}) {
      CHECK(inf.result.skip == SkipCond::C8);
      sawC8 = true;
    }
  }
  CHECK(sawC8);
}

TEST_CASE("rule soundness: conclusions follow from premises") {
  ExampleSig E;
  std::mt19937_64 rng(47);
  auto universe = parc::oracle::GroundUniverse::build(E.sig, 1);
  int checked = 0;
  for (int iter = 0; iter < 40; ++iter) {
    detail::VarScope vsa, vsb;
    Clause a{{mkEq(parctest::randomTerm(rng, E.sig, 2, 1), parctest::randomTerm(rng, E.sig, 2, 1))}};
    Clause b{{Literal{parctest::randomTerm(rng, E.sig, 2, 2),
                      parctest::randomTerm(rng, E.sig, 2, 2), rng() % 2 == 0}}};
    auto [bR, ren] = renameApart(a, b);
    PartialClause left = pc(a, Formula::bot(), 1);
    PartialClause right = pc(bR, Formula::bot(), 2);
    auto results = allInferences(left, {right}, E.params, CalcOptions{}, SelectionMode::Maximal);
    for (const auto& inf : results) {
      if (!inf.result.performed() || checked > 80) continue;
      ++checked;
      const Clause& concl = *inf.result.conclusion;
      // corresponding ground instances of the premises entail each
      // ground instance of the conclusion
      Clause leftS = applySub(inf.result.unifier, inf.leftClause);
      Clause rightS = applySub(inf.result.unifier, inf.rightClause);
      std::map<VarId, unsigned> counts;
      collectVars(leftS, counts);
      collectVars(rightS, counts);
      collectVars(concl, counts);
      std::vector<VarId> vars;
      for (const auto& [v, _] : counts) vars.push_back(v);
      int sampled = 0;
      parc::oracle::forEachAssignment(vars, universe.terms, [&](const Substitution& theta) {
        std::vector<Clause> premiseInstances{applySub(theta, leftS), applySub(theta, rightS)};
        CHECK(parc::oracle::clauseEntails(premiseInstances, applySub(theta, concl)));
        return ++sampled < 20;
      });
    }
  }
  CHECK(checked > 5);
}

TEST_CASE("skipping monotonicity: flagged runs produce a subset of conclusions") {
  ExampleSig E;
  detail::VarScope vs2;
  Clause cl2 = E.c("f(g(Y),Y) = g(h(X,Y))", &vs2);
  VarId x = vs2.get("X"), y = vs2.get("Y");
  PartialClause withFormula = pc(cl2, Formula::gt(Term::var(x), Term::var(y)), 2);
  PartialClause asBot = pc(cl2, Formula::bot(), 2);
  detail::VarScope vs1;
  PartialClause c1 = pc(E.c("h(Z,U) = h(U,Z)", &vs1), Formula::bot(), 1);

  auto flagged =
      allInferences(withFormula, {c1}, E.params, CalcOptions{true, true}, SelectionMode::Maximal);
  auto baseline =
      allInferences(asBot, {c1}, E.params, CalcOptions{}, SelectionMode::Maximal);
  for (const auto& inf : flagged) {
    if (!inf.result.performed()) continue;
    bool found = false;
    for (const auto& base : baseline) {
      if (base.result.performed() &&
          clauseEqual(normalizeClause(*base.result.conclusion),
                      normalizeClause(*inf.result.conclusion))) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}
