#include "doctest.h"
#include "gen_automata.hpp"
#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/omega.hpp"
#include "itlnl/semantics.hpp"
#include "itlnl/syntax.hpp"
#include "oracle_exists.hpp"

using namespace itl;
using itl::testing::Rng;

namespace {
const Vocabulary V1({"p"});
const Vocabulary V2({"p", "q"});
Formula P(const char* s) { return parse(s); }

bool equivalent(const Formula& a, const Formula& b, const Vocabulary& v) {
  return !dfa_equivalent(itl_to_dfa(a, v), itl_to_dfa(b, v)).has_value();
}

// Words over v without `p` that extend to a word satisfying A.
bool brute_exists(const Formula& a, const std::string& p, const Vocabulary& v, const Word& w) {
  const Letter bit = Letter{1} << v.index_of(p);
  const Dfa d = itl_to_dfa(a, v);
  for (unsigned mask = 0; mask < (1u << w.size()); ++mask) {
    Word x = w;
    for (std::size_t k = 0; k < w.size(); ++k) x[k] = (x[k] & ~bit) | ((mask >> k) & 1u ? bit : 0);
    if (d.accepts(x)) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("fin examples") {
  const Lasso all_p{{}, {1}}, once_p{{1}, {0}};
  // Prefixes ending in a p-state.
  Dfa ends_p = itl_to_dfa(P("fin p"), V1);
  CHECK_FALSE(eval_lasso(all_p, fin_formula(ends_p), V1));
  CHECK(eval_lasso(once_p, fin_formula(ends_p), V1));
  CHECK(eval_lasso(all_p, fin_formula(empty_dfa(V1)), V1));
  CHECK_FALSE(eval_lasso(all_p, fin_formula(universal_dfa(V1)), V1));
}

TEST_CASE("fin: random DFAs against the prefix count") {
  Rng rng(21);
  auto lassos = itl::testing::all_lassos(V1, 3, 3);
  for (int n = 0; n < 20; ++n) {
    Dfa x = itl::testing::random_dfa(rng, V1, 1 + itl::testing::pick(rng, 3));
    LassoEvaluator ev(fin_formula(x), V1);
    for (const auto& l : lassos) CHECK(ev(l) == finitely_many_prefixes(x, l));
  }
}

TEST_CASE("reactivity normal form: random NBAs against membership") {
  Rng rng(22);
  auto lassos = itl::testing::all_lassos(V1, 3, 3);
  for (int n = 0; n < 15; ++n) {
    Nba a = itl::testing::random_nba(rng, V1, 1 + itl::testing::pick(rng, 3));
    ReactivityForm r = reactivity_normal_form(a);
    LassoEvaluator ev(r.formula, V1);
    for (const auto& l : lassos) CHECK(ev(l) == itl::testing::nba_lasso_oracle(a, l));
  }
}

TEST_CASE("exists_elim_introspective examples") {
  CHECK(equivalent(exists_elim_introspective("p", P("p")), P("true"), V1));
  CHECK(equivalent(exists_elim_introspective("p", P("p & next ~p")), P("next true"), V1));
  CHECK(exists_elim_introspective("p", P("q")) == P("q"));
  CHECK(equivalent(exists_elim_introspective("p", P("p & q")), P("q"), V2));
  CHECK_THROWS_AS(exists_elim_introspective("p", P("<r> p")), FragmentError);
}

TEST_CASE("exists_elim_introspective: random formulas against brute force") {
  Rng rng(23);
  for (int n = 0; n < 25; ++n) {
    Formula a = itl::testing::random_introspective(rng, V2, 3);
    Formula e = exists_elim_introspective("p", a);
    CHECK_FALSE(free_vars(e).count("p"));
    const Dfa d = itl_to_dfa(e, V2);
    itl::testing::for_each_word(V2, 4, [&](const Word& w) {
      for (Letter x : w)
        if (x & 1u) return;
      CHECK(d.accepts(w) == brute_exists(a, "p", V2, w));
    });
  }
}

TEST_CASE("strongest_consequence examples") {
  CHECK(equivalent(strongest_consequence(P("p & q"), {"p"}), P("q"), V2));
  CHECK(equivalent(strongest_consequence(P("box p & box (p -> q)"), {"p"}), P("box q"), V2));
  CHECK(strongest_consequence(P("p ; q"), {}) == P("p ; q"));
}

TEST_CASE("exists_elim on separated formulas: exact bi-lasso agreement") {
  Rng rng(24);
  auto models = itl::testing::p_free_bilassos(V2, "p", 1, 1, 2);
  for (int n = 0; n < 8; ++n) {
    Formula a = itl::testing::random_separated(rng, V2, 2, 3);
    Formula e = exists_elim("p", a);
    CHECK_FALSE(free_vars(e).count("p"));
    itl::testing::ExistsOracle oracle(a, "p", V2);
    for (const auto& m : models) {
      bool got = eval_separated(m, e, V2);
      bool want = oracle(m);
      if (got != want) {
        INFO(render(a));
        INFO(format_bilasso(m, V2));
        CHECK(got == want);
        break;
      }
    }
  }
}

TEST_CASE("exists_elim: future component and mirror") {
  const Formula a = P("q & ~<r>(skip ; (p & box p))");
  const Formula e = exists_elim("p", a);
  CHECK_FALSE(free_vars(e).count("p"));
  auto models = itl::testing::p_free_bilassos(V2, "p", 1, 2, 1);
  itl::testing::ExistsOracle oracle(a, "p", V2);
  for (const auto& m : models) CHECK(eval_separated(m, e, V2) == oracle(m));

  const Formula b = time_reverse(a);
  const Formula eb = exists_elim("p", b);
  for (const auto& m : models) {
    BiLasso flipped{m.future, Word(m.body.rbegin(), m.body.rend()), m.past};
    CHECK(eval_separated(flipped, eb, V2) == eval_separated(m, e, V2));
  }
}

TEST_CASE("decide_separated examples") {
  CHECK_FALSE(decide_separated(Query::Sat, P("p & ~p")).value);
  CHECK(decide_separated(Query::Valid, P("dia p | box ~p")).value);
  CHECK_FALSE(decide_separated(Query::Sat, P("empty & skip")).value);
  Decision d = decide_separated(Query::Sat, P("p & <r>(skip ; box ~p)"), V1);
  REQUIRE(d.value);
  REQUIRE(d.witness);
  CHECK(eval_separated(*d.witness, P("p & <r>(skip ; box ~p)"), V1));
  Decision v = decide_separated(Query::Valid, P("<r>(skip ; p) | <l>(p ; skip)"), V1);
  CHECK_FALSE(v.value);
  REQUIRE(v.witness);
  CHECK_FALSE(eval_separated(*v.witness, P("<r>(skip ; p) | <l>(p ; skip)"), V1));
}

TEST_CASE("decide_separated: witnesses check out on random formulas") {
  Rng rng(25);
  for (int n = 0; n < 30; ++n) {
    Formula a = itl::testing::random_separated(rng, V2, 2, 3);
    Decision d = decide_separated(Query::Sat, a, V2);
    if (d.value) {
      REQUIRE(d.witness);
      CHECK(eval_separated(*d.witness, a, V2));
    }
    Decision v = decide_separated(Query::Valid, a, V2);
    CHECK(v.value != decide_separated(Query::Sat, fm::neg(a), V2).value);
    if (!v.value) CHECK_FALSE(eval_separated(*v.witness, a, V2));
  }
}

TEST_CASE("interpolate examples") {
  Interpolant c = interpolate(P("p & q"), P("q | r"));
  CHECK(equivalent(c.formula, P("q"), Vocabulary({"q"})));
  CHECK_FALSE(c.unverified());

  Interpolant d = interpolate(P("box p & box (p -> q)"), P("box q | r"));
  CHECK(equivalent(d.formula, P("box q"), Vocabulary({"q"})));

  try {
    interpolate(P("p"), P("q"));
    FAIL("expected ImplicationInvalid");
  } catch (const ImplicationInvalid& e) {
    REQUIRE(e.report.window);
    CHECK(e.report.window->states == Word{1});
    CHECK(e.report.window->ref_i == 0);
    CHECK(e.report.window->ref_j == 0);
  }

  Interpolant s = interpolate(P("q & <r>(skip ; p) & <r>(skip ; ~p)"), P("<r>(skip ; true) & q"));
  CHECK(s.premise_check == Check::Decided);
  CHECK_FALSE(free_vars(s.formula).count("p"));
}

TEST_CASE("beth examples") {
  Definition a = beth_define(P("p <-> q"), "p");
  CHECK(equivalent(a.formula, P("q"), Vocabulary({"q"})));
  Definition b = beth_define(P("p <-> (q ; r)"), "p");
  CHECK(equivalent(b.formula, P("q ; r"), Vocabulary({"q", "r"})));
  try {
    beth_define(P("p | q"), "p");
    FAIL("expected NotImplicitlyDefined");
  } catch (const NotImplicitlyDefined& e) {
    CHECK(std::string(e.what()).find("{q} # ref 0 0") != std::string::npos);
  }
}
