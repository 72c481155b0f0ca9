#include "doctest.h"
#include "gen.hpp"
#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/normal_forms.hpp"
#include "itlnl/semantics.hpp"
#include "itlnl/syntax.hpp"

using namespace itl;
using itl::testing::Rng;

namespace {
const Vocabulary V1({"p"});
const Vocabulary V2({"p", "q"});
Formula P(const char* s) { return parse(s); }

bool equivalent(const Formula& a, const Formula& b, const Vocabulary& v) {
  return !dfa_equivalent(itl_to_dfa(a, v), itl_to_dfa(b, v)).has_value();
}

// Guards are state formulas: check the letter partition by truth tables.
bool letter_partition(const std::vector<std::pair<Formula, Formula>>& branches, const Vocabulary& v) {
  LetterSet seen = 0;
  for (const auto& br : branches) {
    LetterSet s = state_letters(br.first, v);
    if (s & seen) return false;
    seen |= s;
  }
  return seen == v.all_letters();
}
}  // namespace

TEST_CASE("gnf examples") {
  GuardedNormalForm g = gnf(P("next p"), V1);
  CHECK(g.empty_part.is(Kind::False));
  REQUIRE(g.branches.size() == 1);
  CHECK(g.branches[0].first.is(Kind::True));
  CHECK(equivalent(g.branches[0].second, P("p"), V1));

  GuardedNormalForm h = gnf(P("p"), V1);
  CHECK(state_letters(h.empty_part, V1) == state_letters(P("p"), V1));
  REQUIRE(h.branches.size() == 2);
  for (const auto& [guard, cont] : h.branches) {
    if (state_letters(guard, V1) == state_letters(P("p"), V1)) CHECK(cont.is(Kind::True));
    else CHECK(cont.is(Kind::False));
  }

  GuardedNormalForm past = gnf(P("prev (fin p)"), V1, Direction::Past);
  CHECK(past.empty_part.is(Kind::False));
  CHECK(letter_partition(past.branches, V1));
  CHECK(equivalent(past.to_formula(), P("prev (fin p)"), V1));
  CHECK_THROWS_AS(gnf(P("<r> p"), V1), FragmentError);
}

TEST_CASE("gnf: random formulas are exact and coarsest") {
  Rng rng(11);
  for (int n = 0; n < 40; ++n) {
    Formula a = itl::testing::random_introspective(rng, V2, 3);
    for (Direction dir : {Direction::Future, Direction::Past}) {
      GuardedNormalForm g = gnf(a, V2, dir);
      CHECK(letter_partition(g.branches, V2));
      CHECK(equivalent(g.to_formula(), a, V2));
      CHECK(equivalent(g.universal_form(), a, V2));
      for (std::size_t i = 0; i < g.branches.size(); ++i)
        for (std::size_t j = i + 1; j < g.branches.size(); ++j)
          CHECK_FALSE(equivalent(g.branches[i].second, g.branches[j].second, V2));
    }
  }
}

TEST_CASE("full_system_chop examples") {
  FullSystemDecomposition d = full_system_chop(P("box p"), V1, Flavor::Nonstrict);
  CHECK_FALSE(check_decomposition(P("box p"), d, V1));
  bool found = false;
  for (const auto& [l, r] : d.pairs) {
    if (equivalent(l, P("box p"), V1)) {
      found = true;
      CHECK(equivalent(r, P("box p"), V1));
    } else {
      CHECK(r.is(Kind::False));
    }
  }
  CHECK(found);

  FullSystemDecomposition e = full_system_chop(P("empty"), V1, Flavor::Strict);
  CHECK(e.empty_part.is(Kind::True));
  for (const auto& pr : e.pairs) CHECK(pr.second.is(Kind::False));
}

TEST_CASE("full_system_chop: all flavors on random formulas") {
  Rng rng(12);
  for (int n = 0; n < 30; ++n) {
    Formula a = itl::testing::random_introspective(rng, V2, 3);
    for (Flavor f : {Flavor::Nonstrict, Flavor::Strict, Flavor::Mirror}) {
      FullSystemDecomposition d = full_system_chop(a, V2, f);
      CHECK_FALSE(check_decomposition(a, d, V2));
    }
  }
}

TEST_CASE("strictify_syntactic agrees with the automaton route") {
  for (const char* s : {"box p", "empty", "p ; q", "(p & skip)*", "di q -> fin p"}) {
    Formula a = P(s);
    FullSystemDecomposition strict = strictify_syntactic(a, full_system_chop(a, V2, Flavor::Nonstrict), V2);
    CHECK(strict.flavor == Flavor::Strict);
    CHECK_FALSE(check_decomposition(a, strict, V2));
    FullSystemDecomposition autom = full_system_chop(a, V2, Flavor::Strict);
    CHECK(equivalent(strict.disjunctive_form(), autom.disjunctive_form(), V2));
  }
  FullSystemDecomposition e = strictify_syntactic(P("empty"), full_system_chop(P("empty"), V1, Flavor::Nonstrict), V1);
  for (const auto& pr : e.pairs) CHECK(pr.second.is(Kind::False));
  CHECK(e.empty_part.is(Kind::True));
}

TEST_CASE("solve_equations") {
  const Formula h = fm::conj(P("q"), fm::box(P("p")));
  const Formula r1 = fm::chop(fm::conj(P("true"), fm::box(P("~p"))), fm::skip());
  EquationSystem one{{"X"}, {Equation{{ClosedTerm{std::nullopt, h, 0}}, {EqTerm{r1, 0}}}}};
  auto sol = solve_equations(one);
  CHECK(solution_formula(sol[0]) == fm::chop(fm::star(r1), h));

  EquationSystem closed{{"X"}, {Equation{{ClosedTerm{std::nullopt, h, 0}}, {}}}};
  CHECK(solution_formula(solve_equations(closed)[0]) == h);

  const Formula h2 = fm::conj(P("true"), fm::box(P("~p")));
  EquationSystem chain{{"X", "Y"},
                       {Equation{{ClosedTerm{std::nullopt, h, 0}}, {EqTerm{r1, 1}}},
                        Equation{{ClosedTerm{std::nullopt, h2, 1}}, {}}}};
  auto s2 = solve_equations(chain);
  CHECK(solution_formula(s2[0]) == fm::disj(h, fm::chop(r1, h2)));

  EquationSystem bad{{"X"}, {Equation{{}, {EqTerm{P("p"), 0}}}}};
  CHECK_THROWS_AS(solve_equations(bad), ShapeError);
}

TEST_CASE("w_closure_system examples") {
  WBlockSystem s = w_closure_system(P("box p"), P("p"), V1);
  CHECK(s.root_neg < 0);
  REQUIRE(s.root_pos >= 0);
  CHECK(s.closure(false).size() == 1);
  CHECK(s.closure(true).empty());
  CHECK(s.equations[s.root_pos].transitions.empty());
  CHECK_FALSE(s.equations[s.root_pos].homogeneous.is(Kind::False));

  WBlockSystem t = w_closure_system(P("true"), P("p"), V1);
  REQUIRE(t.root_pos >= 0);
  REQUIRE(t.root_neg >= 0);
  CHECK(t.equations[t.root_pos].transitions.size() == 1);
  CHECK(t.equations[t.root_neg].transitions.size() == 1);
  CHECK(t.equations[t.root_pos].transitions[0].target == t.root_neg);
  CHECK_THROWS_AS(w_closure_system(P("true"), P("next p"), V1), FragmentError);
}

TEST_CASE("w_block_normal_form examples") {
  Formula w = P("p");
  WGrammar g{w, fm::neg(w)};
  Formula a = w_block_normal_form(P("box p"), w, V1);
  CHECK(g.conforms(a));
  auto blocks = w_blocks(a, g);
  REQUIRE(blocks.size() == 1);
  CHECK(g.block_phase(blocks[0]) == 0);

  Formula t = w_block_normal_form(P("true"), w, V1);
  CHECK(g.conforms(t));
  CHECK(equivalent(t, P("true"), V1));
  // All four boundary signatures occur.
  unsigned classes = 0;
  std::vector<Formula> stack{t};
  while (!stack.empty()) {
    Formula x = stack.back();
    stack.pop_back();
    if (x.is(Kind::Or) || x.is(Kind::And)) {
      for (const auto& c : x.children()) stack.push_back(c);
    }
    classes |= g.r_classes(x);
  }
  CHECK(classes == 0xF);
}

TEST_CASE("w_block_normal_form: random formulas") {
  Rng rng(13);
  for (int n = 0; n < 25; ++n) {
    Formula a = itl::testing::random_introspective(rng, V2, 3);
    Formula w = itl::testing::random_state(rng, V2, 2);
    WBlockSystem sys = w_closure_system(a, w, V2);
    CHECK(sys.unknowns.size() <= 2 * static_cast<std::size_t>(sys.source.num_states));
    Formula nf = w_block_normal_form(a, w, V2);
    WGrammar g{w, fm::neg(w)};
    CHECK(g.conforms(nf));
    CHECK(equivalent(nf, a, V2));
    const LetterSet phase[2] = {state_letters(w, V2), V2.all_letters() & ~state_letters(w, V2)};
    for (const auto& b : w_blocks(nf, g)) {
      Dfa d = itl_to_dfa(b, V2);
      CHECK_FALSE(is_empty(d));
      const int e = g.block_phase(b);
      Dfa inside = itl_to_dfa(fm::box(letters_formula(phase[e], V2)), V2);
      CHECK_FALSE(dfa_subset(d, inside));
    }
  }
}
