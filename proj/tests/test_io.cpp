#include "doctest.h"
#include "gen_automata.hpp"
#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/io.hpp"
#include "itlnl/syntax.hpp"

using namespace itl;

namespace {
const Vocabulary V2({"p", "q"});
}

TEST_CASE("windows") {
  Window w = parse_window("{p} {} {p, q} # ref 0 1", V2);
  CHECK(w.states == Word{1, 0, 3});
  CHECK(w.ref_i == 0);
  CHECK(w.ref_j == 1);
  CHECK(format_window(w, V2) == "{p} {} {p,q} # ref 0 1");
  Window whole = parse_window("{q}\n{}\n", V2);
  CHECK(whole.ref_j == 1);
  CHECK_THROWS_AS(parse_window("{p} # ref 1 0", V2), FormatError);
  CHECK_THROWS_AS(parse_window("{p} # ref 0 3", V2), FormatError);
  CHECK_THROWS_AS(parse_window("p", V2), FormatError);
  CHECK_THROWS_AS(parse_window("{r}", V2), UndeclaredVariable);
}

TEST_CASE("lassos") {
  Lasso l = parse_lasso("stem: {p}\nloop: {} {q}\n", V2);
  CHECK(l.stem == Word{1});
  CHECK(l.loop == (Word{0, 2}));
  CHECK(parse_lasso(format_lasso(l, V2), V2) == l);
  CHECK(parse_lasso("stem:\nloop: {}", V2).stem.empty());
  CHECK_THROWS_AS(parse_lasso("stem: {p}", V2), FormatError);
}

TEST_CASE("automata round trip") {
  itl::testing::Rng rng(31);
  for (int n = 0; n < 10; ++n) {
    Dfa d = itl::testing::random_dfa(rng, V2, 3);
    Automaton back = parse_automaton(write_automaton(d));
    REQUIRE(std::holds_alternative<Dfa>(back));
    CHECK_FALSE(dfa_equivalent(d, std::get<Dfa>(back)));

    Nba b = itl::testing::random_nba(rng, V2, 3);
    Automaton nb = parse_automaton(write_automaton(b));
    REQUIRE(std::holds_alternative<Nba>(nb));
    for (const auto& l : itl::testing::all_lassos(V2, 1, 2))
      CHECK(nba_accepts(std::get<Nba>(nb), l) == nba_accepts(b, l));

    Dpa p = nba_determinize(b);
    Automaton pb = parse_automaton(write_automaton(p));
    REQUIRE(std::holds_alternative<Dpa>(pb));
    CHECK(std::get<Dpa>(pb).priority == p.priority);
    CHECK(std::get<Dpa>(pb).delta == p.delta);
  }
}

TEST_CASE("automaton file errors") {
  CHECK_THROWS_AS(parse_automaton("dfa\nstates: 1\n0 --{}--> 0\n"), FormatError);  // no vocab
  CHECK_THROWS_AS(parse_automaton("dfa\nvocab: p\nstates: 1\n0 --{}--> 0\n"), FormatError);  // not total
  CHECK_THROWS_AS(parse_automaton("xyz\n"), FormatError);
  Automaton a = parse_automaton("nba\nstates 1\ninitial 0\n0 --{p}--> 0\naccepting: 0\n", Vocabulary({"p"}));
  CHECK(automaton_states(a) == 1);
  CHECK(to_dot(a).find("0 -> 0 [label=\"{p}\"]") != std::string::npos);
}
