#include "doctest.h"
#include "gen_automata.hpp"
#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/semantics.hpp"
#include "itlnl/simplify.hpp"
#include "itlnl/syntax.hpp"

using namespace itl;

namespace {
const Vocabulary V1({"p"});
const Vocabulary V2({"p", "q"});
Formula P(const char* s) { return parse(s); }

// Membership of every reference interval of every sequence up to max_len
// against the window evaluator.
bool agrees_with_windows(const Formula& a, const Dfa& d, const Vocabulary& v, std::size_t max_len) {
  bool ok = true;
  enumerate_sequences(v, max_len, [&](const Word& w) {
    auto t = eval_table(w, a, v);
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i; j < w.size(); ++j)
        if (t(i, j) != d.accepts(Word(w.begin() + i, w.begin() + j + 1))) ok = false;
    return ok;
  });
  return ok;
}
}  // namespace

TEST_CASE("itl_to_dfa examples") {
  Dfa d = itl_to_dfa(P("p"), V1);
  CHECK(d.num_states == 3);
  CHECK(d.accepts({1, 0}));
  CHECK_FALSE(d.accepts({0, 1}));
  Dfa e = itl_to_dfa(P("empty"), V1);
  CHECK(e.accepts({0}));
  CHECK(e.accepts({1}));
  CHECK_FALSE(e.accepts({1, 1}));
  CHECK_THROWS_AS(itl_to_dfa(P("<r> p"), V1), FragmentError);
}

TEST_CASE("itl_to_dfa agrees with window evaluation") {
  testing::Rng rng(21);
  for (int n = 0; n < 300; ++n) {
    Formula a = testing::random_introspective(rng, V2, 4);
    CHECK_MESSAGE(agrees_with_windows(a, itl_to_dfa(a, V2), V2, 4), render(a));
  }
}

TEST_CASE("itl_to_dfa handles quantified and projected bodies") {
  testing::Rng rng(22);
  for (int n = 0; n < 60; ++n) {
    Formula a = testing::random_introspective(rng, V2, 3);
    Formula w = testing::random_state(rng, V2, 2);
    for (Formula f : {fm::exists("p", a), fm::exists("r", fm::conj(a, fm::var("r"))), fm::proj(w, a)})
      CHECK_MESSAGE(agrees_with_windows(f, itl_to_dfa(f, V2), V2, 4), render(f));
  }
  // projinv with short insertions: the brute-force budget covers every
  // witness when A's DFA is small, checked on short windows.
  for (int n = 0; n < 30; ++n) {
    Formula a = testing::random_introspective(rng, V1, 2);
    Formula f = fm::projinv(fm::var("p"), a);
    CHECK_MESSAGE(agrees_with_windows(f, itl_to_dfa(f, V1), V1, 3), render(f));
  }
}

TEST_CASE("dfa_to_formula examples") {
  Formula e = dfa_to_formula(itl_to_dfa(P("empty"), V1));
  CHECK(e == P("empty"));
  Formula p = dfa_to_formula(itl_to_dfa(P("p"), V1));
  CHECK(!dfa_equivalent(itl_to_dfa(p, V1), itl_to_dfa(P("p"), V1)));
  CHECK(dfa_to_formula(empty_dfa(V2)) == fm::bottom());
  CHECK(dfa_to_formula(universal_dfa(V2)) == fm::top());
  CHECK(is_introspective(p));
}

TEST_CASE("dfa_to_formula round trip on random DFAs") {
  testing::Rng rng(23);
  for (int n = 0; n < 100; ++n) {
    Dfa d = testing::random_dfa(rng, n % 2 ? V1 : V2, 1 + n % 4);
    Formula f = dfa_to_formula(d);
    CHECK(is_introspective(f));
    auto w = dfa_equivalent(itl_to_dfa(f, d.vocab), d);
    CHECK_MESSAGE(!w, render(f));
  }
}

TEST_CASE("regular expression rendering") {
  Dfa d = itl_to_dfa(P("p ; skip"), V1);
  RegexIR ir = dfa_to_regex(d);
  CHECK_FALSE(ir.has_epsilon);
  CHECK(render_regex(ir.body, V1) == "((([{p}] [{} {p}]) [{} {p}]+) + ([{p}] [{} {p}]))");
}

TEST_CASE("future_to_nba agrees with lasso evaluation") {
  auto lassos1 = testing::all_lassos(V1, 3, 3);
  for (const char* s : {"true", "<r>(box p & ~empty)", "~<r>(skip ; p)", "p & <r>(skip ; <r>(skip ; ~p))",
                        "<r>(skip ; box p) | ~<r>(skip ; box ~p)", "[r](p -> <r>(skip ; ~p))"}) {
    Formula f = P(s);
    Nba n = future_to_nba(f, V1);
    LassoEvaluator ev(f, V1);
    for (const auto& l : lassos1) CHECK_MESSAGE(nba_accepts(n, l) == ev(l), s);
  }
  testing::Rng rng(24);
  auto lassos2 = testing::all_lassos(V2, 2, 2);
  for (int n = 0; n < 60; ++n) {
    const Vocabulary& v = n % 2 ? V1 : V2;
    Formula f = testing::random_future(rng, v, 2, 2);
    Nba nba = future_to_nba(f, v);
    LassoEvaluator ev(f, v);
    for (const auto& l : (n % 2 ? lassos1 : lassos2)) CHECK_MESSAGE(nba_accepts(nba, l) == ev(l), render(f));
  }
}

TEST_CASE("tidy keeps the language and never grows") {
  const Vocabulary v({"p", "q"});
  CHECK(tidy(dfa_to_formula(itl_to_dfa(parse("box q"), v)), v) == parse("box q"));
  CHECK(tidy(parse("(empty ; skip)* ; empty"), v) == parse("true"));
  itl::testing::Rng rng(41);
  for (int n = 0; n < 60; ++n) {
    Formula a = itl::testing::random_introspective(rng, v, 3);
    Formula t = tidy(a, v);
    CHECK(t.size() <= a.size());
    CHECK_FALSE(dfa_equivalent(itl_to_dfa(a, v), itl_to_dfa(t, v)));
  }
}
