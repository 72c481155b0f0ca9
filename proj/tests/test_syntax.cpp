#include <functional>

#include "doctest.h"
#include "gen.hpp"
#include "itlnl/error.hpp"
#include "itlnl/syntax.hpp"

using namespace itl;

namespace {
const Vocabulary pq({"p", "q"});
Formula P(const char* s) { return parse(s); }
}  // namespace

TEST_CASE("parse builds the expected trees") {
  Vocabulary v({"p", "q"});
  CHECK(parse("box (p -> <r> q)", v) ==
        fm::box(fm::imp(fm::var("p"), fm::dr(fm::var("q")))));
  CHECK(parse("(p ; q)*", v) == fm::star(fm::chop(fm::var("p"), fm::var("q"))));
  CHECK(P("p ; q ; p") == fm::chop(fm::chop(fm::var("p"), fm::var("q")), fm::var("p")));
  CHECK(P("p -> q -> p") == fm::imp(fm::var("p"), fm::imp(fm::var("q"), fm::var("p"))));
  CHECK(P("~p ; q") == fm::chop(fm::neg(fm::var("p")), fm::var("q")));
  CHECK(P("next p*") == fm::next(fm::star(fm::var("p"))));
  CHECK(P("p & q | p") == fm::disj(fm::conj(fm::var("p"), fm::var("q")), fm::var("p")));
  CHECK(P("exists p. p ; q") == fm::exists("p", fm::chop(fm::var("p"), fm::var("q"))));
  CHECK(P("proj(p, q ; q)") == fm::proj(fm::var("p"), fm::chop(fm::var("q"), fm::var("q"))));
  CHECK(P("dia_a [l] p") == fm::dia_a(fm::bl(fm::var("p"))));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("p ;; q");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse("(p", pq), SyntaxError);
  CHECK_THROWS_AS(parse("p q", pq), SyntaxError);
  CHECK_THROWS_AS(parse("p & r", pq), UndeclaredVariable);
  CHECK_THROWS_AS(parse("p $ q"), SyntaxError);
  CHECK_THROWS_AS(parse("box"), SyntaxError);
}

TEST_CASE("render uses minimal parentheses") {
  CHECK(render(fm::neg(fm::var("p"))) == "~p");
  CHECK(render(fm::chop(fm::var("p"), fm::next(fm::var("q")))) == "p ; next q");
  CHECK(render(fm::star(fm::var("p"))) == "p*");
  CHECK(render(P("(p ; q) ; p")) == "p ; q ; p");
  CHECK(render(P("p ; (q ; p)")) == "p ; (q ; p)");
  CHECK(render(P("(p -> q) -> p")) == "(p -> q) -> p");
  CHECK(render(P("~(p ; q)*")) == "~(p ; q)*");
  CHECK(render(P("(exists p. p) & q")) == "(exists p. p) & q");
}

TEST_CASE("render then parse is the identity on random formulas") {
  testing::Rng rng(7);
  for (int n = 0; n < 2000; ++n) {
    Formula a = testing::random_future(rng, pq, 4, 2);
    if (n % 3 == 0) a = fm::exists("p", a);
    if (n % 5 == 0) a = fm::conj(fm::projinv(fm::var("q"), a), fm::dl(fm::bl(a)));
    CHECK_MESSAGE(parse(render(a), pq) == a, render(a));
  }
}

TEST_CASE("vars splits free and bound") {
  auto s = vars(P("p & ~q"));
  CHECK(s.free == std::set<std::string>{"p", "q"});
  s = vars(P("exists p. (p ; q)"));
  CHECK(s.free == std::set<std::string>{"q"});
  CHECK(s.bound == std::set<std::string>{"p"});
  CHECK(vars(P("false")).free.empty());
  CHECK(free_vars(P("p & exists p. p")) == std::set<std::string>{"p"});
}

TEST_CASE("substitution") {
  CHECK(substitute_var(P("p & q"), "p", "r") == P("r & q"));
  CHECK(substitute_var(P("box(p <-> q)"), "p", "p2") == P("box(p2 <-> q)"));
  CHECK(substitute_var(P("exists p. p"), "p", "r") == P("exists p. p"));
  CHECK_THROWS_AS(substitute_var(P("exists q. p & q"), "p", "q"), CaptureError);
}

TEST_CASE("time reversal rules") {
  CHECK(time_reverse(P("next p")) == fm::prev(fm::fin(fm::var("p"))));
  CHECK(render(time_reverse(P("next p"))) == "prev fin p");
  CHECK(time_reverse(P("p ; q")) == P("fin q ; fin p"));
  CHECK(time_reverse(P("<r> p")) == P("<l> fin p"));
  CHECK(time_reverse(P("box p")) == P("bi fin p"));
  CHECK_THROWS_AS(time_reverse(P("exists p. p")), FragmentError);
}

TEST_CASE("desugar produces basic kinds only") {
  testing::Rng rng(3);
  std::function<bool(const Formula&)> basic = [&](const Formula& f) {
    if (!is_basic(f.kind())) return false;
    for (const auto& c : f.children())
      if (!basic(c)) return false;
    return true;
  };
  for (int n = 0; n < 500; ++n) {
    Formula a = testing::random_future(rng, pq, 4, 2);
    CHECK(basic(desugar(fm::box_a(a))));
  }
}

TEST_CASE("fragments") {
  CHECK(is_state(P("p & ~q | true")));
  CHECK_FALSE(is_state(P("next p")));
  CHECK(is_introspective(P("(p ; q)* & fin p")));
  CHECK_FALSE(is_introspective(P("<r> p")));
  CHECK(is_local(P("exists p. p")));
  CHECK_FALSE(is_introspective(P("exists p. p")));
  CHECK(is_strict_future_atom(P("<r>(skip ; box p)")));
  CHECK(is_strict_future_atom(P("<r> next (p & <r>(skip ; q))")));
  CHECK_FALSE(is_strict_future_atom(P("<r>(box p)")));
  CHECK(is_strict_past_atom(P("<l>(box p ; skip)")));
  CHECK(is_strict_past_atom(P("<l> prev p")));
  CHECK(is_future(P("p & <r> q | ~[r] (q & next <r> p)")));
  CHECK_FALSE(is_future(P("<l> p")));
  CHECK_FALSE(is_future(P("<r> p ; q")));
}

TEST_CASE("letters_formula covers exactly the requested letters") {
  Vocabulary v({"p", "q", "r"});
  for (LetterSet s = 0; s < (LetterSet{1} << 8); ++s) {
    Formula f = letters_formula(s, v);
    CHECK(is_state(f));
    CHECK(state_letters(f, v) == s);
  }
  CHECK(letters_formula(0b1010, pq) == fm::var("p"));
  CHECK(letters_formula(0b1111, pq) == fm::top());
}

TEST_CASE("separated DNF") {
  auto d = separated_dnf(P("p ; q"));
  REQUIRE(d.disjuncts.size() == 1);
  CHECK(d.disjuncts[0].past == fm::top());
  CHECK(d.disjuncts[0].introspective == P("p ; q"));
  CHECK(d.disjuncts[0].future == fm::top());

  d = separated_dnf(P("(p ; q) & ~<r>(skip ; box p)"));
  REQUIRE(d.disjuncts.size() == 1);
  CHECK(d.disjuncts[0].introspective == P("p ; q"));
  CHECK(d.disjuncts[0].future == P("~<r>(skip ; box p)"));

  try {
    separated_dnf(P("<r>(<l>(p ; skip) ; p)"));
    FAIL("expected NotSeparated");
  } catch (const NotSeparated& e) {
    CHECK(std::string(e.what()).find("<r> (<l> (p ; skip) ; p)") != std::string::npos);
  }
}

TEST_CASE("separated DNF is Boolean-equivalent to its source") {
  testing::Rng rng(11);
  for (int n = 0; n < 300; ++n) {
    Formula a = testing::random_future(rng, pq, 2, 2);
    a = fm::disj(fm::conj(a, fm::dl(fm::chop(testing::random_introspective(rng, pq, 2), fm::skip()))),
                 testing::random_future(rng, pq, 2, 2));
    auto atoms = separated_atoms(a);
    if (atoms.size() > 8) continue;
    Formula b = separated_dnf(a).to_formula();
    // Truth table over atom assignments; the residual is local and is
    // compared syntactically after folding.
    for (std::uint32_t m = 0; m < (1u << atoms.size()); ++m) {
      Formula x = a, y = b;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        x = assign_atom(x, atoms[k], (m >> k) & 1u);
        y = assign_atom(y, atoms[k], (m >> k) & 1u);
      }
      CHECK(is_local(x));
      CHECK(is_local(y));
      // y is a disjunction of the residues x takes; with all atoms fixed
      // exactly one disjunct can survive.
      CHECK_MESSAGE((x == y || (x.is(Kind::False) && y.is(Kind::False))), render(a));
    }
  }
}
