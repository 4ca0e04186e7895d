#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace parc;
using parctest::ExampleSig;

TEST_CASE("subterm access by position") {
  ExampleSig E;
  detail::VarScope vs;
  TermRef t = E.t("g(f(X,b))", &vs);
  CHECK(equal(subtermAt(t, {0}), E.t("f(X,b)", &vs)));
  CHECK(equal(subtermAt(t, {}), t));
  TermRef u = E.t("f(g(Y),Y)", &vs);
  CHECK(equal(subtermAt(u, {0, 0}), Term::var(vs.get("Y"))));
  CHECK_THROWS_AS(subtermAt(t, {1}), StructuralError);
  CHECK_THROWS_AS(subtermAt(t, {0, 0, 0}), StructuralError);
}

TEST_CASE("replacement by position") {
  ExampleSig E;
  detail::VarScope vs;
  TermRef t = E.t("g(f(X,b))", &vs);
  CHECK(equal(replaceAt(t, {0}, E.t("g(b)")), E.t("g(g(b))")));
  CHECK(equal(replaceAt(t, {}, E.t("a")), E.t("a")));
  TermRef u = E.t("f(g(Y),Y)", &vs);
  CHECK(equal(replaceAt(u, {1}, E.t("a")), E.t("f(g(Y),a)", &vs)));
  CHECK_THROWS_AS(replaceAt(t, {2}, E.t("a")), StructuralError);
}

TEST_CASE("replace inverts subterm at every position") {
  ExampleSig E;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    TermRef t = parctest::randomTerm(rng, E.sig, 4, 3);
    for (const Position& p : nonVarPositions(t)) {
      CHECK(equal(replaceAt(t, p, subtermAt(t, p)), t));
    }
  }
}

TEST_CASE("substitution application") {
  ExampleSig E;
  detail::VarScope vs;
  Substitution s;
  s.bind(vs.get("X"), E.t("a"));
  s.bind(vs.get("Y"), E.t("b"));
  CHECK(equal(s.apply(E.t("f(X,Y)", &vs)), E.t("f(a,b)")));

  Substitution empty;
  TermRef t = E.t("g(f(X,b))", &vs);
  CHECK(equal(empty.apply(t), t));

  // literal-wise application
  Literal lit = mkNeq(E.t("g(f(X,b))", &vs), E.t("a"));
  Literal applied = applySub(s, lit);
  CHECK(litEqual(applied, mkNeq(E.t("g(f(a,b))"), E.t("a"))));
}

TEST_CASE("substitution distributes over term structure") {
  ExampleSig E;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Substitution s;
    s.bind(0, parctest::randomTerm(rng, E.sig, 2, 0));
    s.bind(1, parctest::randomTerm(rng, E.sig, 2, 0));
    TermRef t = parctest::randomTerm(rng, E.sig, 3, 2);
    if (t->isVar()) continue;
    std::vector<TermRef> mapped;
    for (const auto& arg : t->args()) mapped.push_back(s.apply(arg));
    CHECK(equal(s.apply(t), Term::app(t->symbol(), mapped)));
  }
}

TEST_CASE("mgu on the example pairs") {
  ExampleSig E;
  detail::VarScope vs;
  VarId x = vs.get("X"), y = vs.get("Y");

  auto s1 = mgu(E.t("f(a,Y)", &vs), E.t("f(X,b)", &vs));
  REQUIRE(s1);
  CHECK(equal(s1->apply(Term::var(x)), E.t("a")));
  CHECK(equal(s1->apply(Term::var(y)), E.t("b")));

  detail::VarScope vs2;
  auto s2 = mgu(E.t("h(Z,U)", &vs2), E.t("h(X,Y)", &vs2));
  REQUIRE(s2);
  CHECK(equal(s2->apply(E.t("h(Z,U)", &vs2)), s2->apply(E.t("h(X,Y)", &vs2))));
  CHECK(s2->size() == 2);

  detail::VarScope vs3;
  CHECK_FALSE(mgu(E.t("X", &vs3), E.t("f(X,a)", &vs3)));
}

TEST_CASE("mgu properties on random pairs") {
  ExampleSig E;
  std::mt19937_64 rng(13);
  int successes = 0;
  for (int i = 0; i < 500; ++i) {
    TermRef s = parctest::randomTerm(rng, E.sig, 2, 2);
    TermRef t = parctest::randomTerm(rng, E.sig, 2, 2);
    auto sigma = mgu(s, t);
    if (!sigma) continue;
    ++successes;
    CHECK(equal(sigma->apply(s), sigma->apply(t)));
    // idempotence on an arbitrary term over the same variables
    TermRef u = parctest::randomTerm(rng, E.sig, 3, 2);
    CHECK(equal(sigma->apply(sigma->apply(u)), sigma->apply(u)));
  }
  CHECK(successes > 20);
}

TEST_CASE("mgu succeeds exactly when a bounded unifier exists") {
  ExampleSig E;
  std::mt19937_64 rng(17);
  std::vector<TermRef> pool = groundTermsUpToDepth(E.sig, 1);
  for (int i = 0; i < 150; ++i) {
    TermRef s = parctest::randomTerm(rng, E.sig, 2, 2);
    TermRef t = parctest::randomTerm(rng, E.sig, 2, 2);
    auto sigma = mgu(s, t);
    auto brute = parc::oracle::bruteForceUnifiers(s, t, pool);
    if (!brute.empty()) CHECK(sigma.has_value());
    if (sigma) {
      std::vector<VarId> vars;
      std::map<VarId, unsigned> counts;
      collectVars(s, counts);
      collectVars(t, counts);
      for (const auto& [v, _] : counts) vars.push_back(v);
      for (const auto& eta : brute) {
        CHECK(parc::oracle::factorsThrough(*sigma, eta, vars));
      }
    }
  }
}

TEST_CASE("renaming apart") {
  ExampleSig E;
  detail::VarScope vs;
  Clause c1 = E.c("f(X,Y) = X", &vs);
  detail::VarScope vs2;
  Clause c2 = E.c("f(X,Y) = Y", &vs2);
  auto [renamed, ren] = renameApart(c1, c2);
  auto v1 = varCounts(c1);
  auto v2 = varCounts(renamed);
  for (const auto& [v, _] : v2) CHECK_FALSE(v1.count(v));
  CHECK(clauseEqual(normalizeClause(renamed), normalizeClause(c2)));

  // already-disjoint clauses come back untouched
  detail::VarScope vs3;
  Clause c3 = E.c("g(Z) = a", &vs3);
  Substitution bump;
  bump.bind(vs3.get("Z"), Term::var(40));
  Clause c3far = applySub(bump, c3);
  auto [renamed2, ren2] = renameApart(c1, c3far);
  CHECK(ren2.empty());
  CHECK(clauseEqual(renamed2, c3far));
}

TEST_CASE("clause normalization identifies variants") {
  ExampleSig E;
  detail::VarScope vs1, vs2;
  Clause c1 = E.c("f(X,Y) = X | g(X) != a", &vs1);
  Clause c2 = E.c("g(U) != a | f(U,W) = U", &vs2);
  CHECK(clauseEqual(normalizeClause(c1), normalizeClause(c2)));
  CHECK(clauseHash(normalizeClause(c1)) == clauseHash(normalizeClause(c2)));
  Clause c3 = E.c("f(X,Y) = Y | g(X) != a", &vs1);
  CHECK_FALSE(clauseEqual(normalizeClause(c1), normalizeClause(c3)));
}
