#include "doctest.h"
#include "gen_automata.hpp"
#include "itlnl/automata.hpp"
#include "itlnl/error.hpp"

using namespace itl;
using testing::for_each_word;

namespace {

const Vocabulary V1({"p"});
const Vocabulary V2({"p", "q"});

// First letter contains p.
Dfa first_p(const Vocabulary& v) {
  Nfa n;
  n.vocab = v;
  int i = n.add_state(false), acc = n.add_state(true);
  for (int a = 0; a < v.letters(); ++a) {
    if (a & 1) n.add_edge(i, static_cast<Letter>(a), acc);
    n.add_edge(acc, static_cast<Letter>(a), acc);
  }
  n.initial = {i};
  return determinize_minimize(n);
}

Dfa some_p(const Vocabulary& v) {
  Nfa n;
  n.vocab = v;
  int i = n.add_state(false), acc = n.add_state(true);
  for (int a = 0; a < v.letters(); ++a) {
    n.add_edge(i, static_cast<Letter>(a), i);
    if (a & 1) n.add_edge(i, static_cast<Letter>(a), acc);
    n.add_edge(acc, static_cast<Letter>(a), acc);
  }
  n.initial = {i};
  return determinize_minimize(n);
}

bool same_language_upto(const Dfa& a, const std::function<bool(const Word&)>& oracle, int len) {
  bool ok = true;
  for_each_word(a.vocab, len, [&](const Word& w) { ok = ok && a.accepts(w) == oracle(w); });
  return ok;
}

Nba inf_p() {
  Nba n;
  n.vocab = V1;
  int a = n.add_state(false), b = n.add_state(true);
  for (int q : {a, b}) {
    n.add_edge(q, 0, a);
    n.add_edge(q, 1, b);
  }
  n.initial = {a};
  return n;
}

Nba fin_p() {
  Nba n;
  n.vocab = V1;
  int a = n.add_state(false), b = n.add_state(true);
  n.add_edge(a, 0, a);
  n.add_edge(a, 1, a);
  n.add_edge(a, 0, b);
  n.add_edge(b, 0, b);
  n.initial = {a};
  return n;
}

}  // namespace

TEST_CASE("determinize_minimize examples") {
  Dfa d = first_p(V1);
  CHECK(d.num_states == 3);
  CHECK(d.accepts({1}));
  CHECK(d.accepts({1, 0}));
  CHECK_FALSE(d.accepts({0, 1}));
  CHECK_FALSE(d.accepts({}));

  Nfa none;
  none.vocab = V1;
  none.add_state(false);
  none.initial = {0};
  CHECK(determinize_minimize(none).num_states == 1);

  Dfa twice = minimize(minimize(d));
  CHECK(twice.delta == d.delta);
  CHECK(twice.accepting == d.accepting);
}

TEST_CASE("minimization is canonical") {
  testing::Rng rng(1);
  for (int n = 0; n < 200; ++n) {
    Dfa a = testing::random_dfa(rng, V2, 1 + n % 5);
    // An equivalent automaton with duplicated states.
    Dfa big = a;
    big.num_states = 2 * a.num_states;
    big.accepting.insert(big.accepting.end(), a.accepting.begin(), a.accepting.end());
    for (int q = 0; q < a.num_states; ++q)
      for (int c = 0; c < 4; ++c) big.delta.push_back(a.next(q, c) + (c % 2) * a.num_states);
    for (int q = 0; q < a.num_states; ++q)
      for (int c = 0; c < 4; ++c) big.delta[q * 4 + c] = a.next(q, c) + a.num_states * (c == 3);
    Dfa m = minimize(big);
    CHECK(m.delta == a.delta);
    CHECK(m.accepting == a.accepting);
    CHECK(!m.accepting[m.initial]);
  }
}

TEST_CASE("Boolean combinations") {
  testing::Rng rng(2);
  for (int n = 0; n < 100; ++n) {
    Dfa a = testing::random_dfa(rng, V2, 3), b = testing::random_dfa(rng, V2, 3);
    CHECK(!dfa_equivalent(dfa_complement(dfa_complement(a)), a));
    CHECK(is_empty(dfa_intersection(a, dfa_complement(a))));
    CHECK(!dfa_equivalent(dfa_union(a, dfa_complement(a)), universal_dfa(V2)));
    CHECK(same_language_upto(dfa_union(a, b), [&](const Word& w) { return a.accepts(w) || b.accepts(w); }, 4));
    CHECK(same_language_upto(dfa_difference(a, b), [&](const Word& w) { return a.accepts(w) && !b.accepts(w); }, 4));
    CHECK(same_language_upto(dfa_complement(a), [&](const Word& w) { return !a.accepts(w); }, 4));
  }
  CHECK_THROWS_AS(dfa_union(first_p(V1), first_p(V2)), VocabularyMismatch);
}

TEST_CASE("equivalence counterexamples are shortest") {
  auto w = dfa_equivalent(first_p(V1), some_p(V1));
  REQUIRE(w);
  CHECK(*w == Word{0, 1});
  CHECK(!dfa_equivalent(empty_dfa(V1), empty_dfa(V1)));
  Dfa d = first_p(V2);
  CHECK(!dfa_equivalent(d, minimize(d)));
  CHECK(dfa_subset(first_p(V1), some_p(V1)) == std::nullopt);
  CHECK(dfa_subset(some_p(V1), first_p(V1)) == Word{0, 1});
}

TEST_CASE("fusion concatenation matches split enumeration") {
  testing::Rng rng(3);
  for (int n = 0; n < 60; ++n) {
    Dfa a = testing::random_dfa(rng, V2, 3), b = testing::random_dfa(rng, V2, 3);
    Dfa f = determinize_minimize(fusion_concat(a, b));
    CHECK(same_language_upto(f, [&](const Word& w) {
      for (std::size_t k = 0; k < w.size(); ++k)
        if (a.accepts(Word(w.begin(), w.begin() + k + 1)) && b.accepts(Word(w.begin() + k, w.end())))
          return true;
      return false;
    }, 5));
  }
  // Words ending in a p-letter fused with two-letter words starting with one.
  Nfa ends;
  ends.vocab = V1;
  int i = ends.add_state(false), e = ends.add_state(true);
  for (int a = 0; a < 2; ++a) ends.add_edge(i, a, i);
  ends.add_edge(i, 1, e);
  ends.initial = {i};
  Nfa starts;
  starts.vocab = V1;
  int s0 = starts.add_state(false), s1 = starts.add_state(false), s2 = starts.add_state(true);
  starts.add_edge(s0, 1, s1);
  for (int a = 0; a < 2; ++a) starts.add_edge(s1, a, s2);
  starts.initial = {s0};
  Dfa f = determinize_minimize(fusion_concat(determinize_minimize(ends), determinize_minimize(starts)));
  CHECK(f.accepts({1, 1}));
  CHECK_FALSE(f.accepts({0, 1}));
}

TEST_CASE("fusion star matches chain enumeration") {
  testing::Rng rng(4);
  for (int n = 0; n < 60; ++n) {
    Dfa a = testing::random_dfa(rng, V2, 3);
    Dfa f = determinize_minimize(fusion_star(a));
    std::function<bool(const Word&)> chain = [&](const Word& w) {
      if (w.size() == 1) return true;
      for (std::size_t k = 1; k < w.size(); ++k)
        if (a.accepts(Word(w.begin(), w.begin() + k + 1)) && chain(Word(w.begin() + k, w.end())))
          return true;
      return false;
    };
    CHECK(same_language_upto(f, chain, 5));
  }
}

TEST_CASE("prefix languages partition all words") {
  testing::Rng rng(5);
  for (int n = 0; n < 50; ++n) {
    Dfa d = testing::random_dfa(rng, V2, 4);
    Dfa cover = empty_dfa(V2);
    for (int q = 0; q < d.num_states; ++q) {
      Dfa pq = prefix_dfa(d, q);
      CHECK(is_empty(dfa_intersection(cover, pq)));
      cover = dfa_union(cover, pq);
    }
    CHECK(!dfa_equivalent(cover, universal_dfa(V2)));
  }
  Dfa d = first_p(V1);
  Dfa after_p = prefix_dfa(d, d.next(d.initial, 1));
  CHECK(!dfa_equivalent(after_p, first_p(V1)));
  CHECK_THROWS(prefix_dfa(d, 17));
}

TEST_CASE("re-rooting, shared suffixes and reversal") {
  testing::Rng rng(6);
  for (int n = 0; n < 50; ++n) {
    Dfa d = testing::random_dfa(rng, V2, 4);
    for (int q = 0; q < d.num_states; ++q) {
      Dfa r = rerooted_dfa(d, q), s = shared_suffix_dfa(d, q);
      CHECK(same_language_upto(r, [&](const Word& w) { return d.accepting[d.run(q, w)]; }, 4));
      CHECK(same_language_upto(s, [&](const Word& w) {
        return d.accepting[d.run(q, Word(w.begin() + 1, w.end()))];
      }, 4));
    }
    Dfa rev = reverse_dfa(d);
    CHECK(same_language_upto(rev, [&](const Word& w) { return d.accepts(Word(w.rbegin(), w.rend())); }, 5));
  }
}

TEST_CASE("don't-care relabeling") {
  Dfa all = determinize_minimize(relabel_dont_care(first_p(V1), "p"));
  CHECK(!dfa_equivalent(all, universal_dfa(V1)));
  Dfa only_q = first_p(V2);  // constrains p, not q
  Dfa same = determinize_minimize(relabel_dont_care(only_q, "q"));
  CHECK(!dfa_equivalent(same, only_q));
  testing::Rng rng(7);
  for (int n = 0; n < 50; ++n) {
    Dfa d = testing::random_dfa(rng, V2, 3);
    Dfa once = determinize_minimize(relabel_dont_care(d, "p"));
    Dfa twice = determinize_minimize(relabel_dont_care(once, "p"));
    CHECK(!dfa_equivalent(once, twice));
    CHECK(same_language_upto(once, [&](const Word& w) {
      // some p-relabeling of w is accepted
      for (std::uint32_t m = 0; m < (1u << w.size()); ++m) {
        Word x = w;
        for (std::size_t k = 0; k < w.size(); ++k) x[k] = (x[k] & ~1u) | ((m >> k) & 1u);
        if (d.accepts(x)) return true;
      }
      return false;
    }, 4));
  }
}

TEST_CASE("lifting to a larger vocabulary") {
  Dfa d = lift(first_p(V1), V2);
  CHECK(!dfa_equivalent(d, first_p(V2)));
  CHECK_THROWS_AS(lift(first_p(V2), V1), VocabularyMismatch);
}

TEST_CASE("inverse projection closure") {
  testing::Rng rng(8);
  const LetterSet w_letters = 0b1010;  // letters containing p
  for (int n = 0; n < 50; ++n) {
    Dfa d = testing::random_dfa(rng, V2, 3);
    Dfa pi = pi_inverse(d, w_letters);
    // Oracle: insert up to two non-w letters in every gap.
    const std::vector<Word> fills{{}, {0}, {2}, {0, 0}, {0, 2}, {2, 0}, {2, 2}};
    CHECK(same_language_upto(pi, [&](const Word& w) {
      for (Letter a : w)
        if (!has_letter(w_letters, a)) return false;
      std::function<bool(std::size_t, Word)> go = [&](std::size_t k, Word acc) {
        for (const auto& f : fills) {
          Word x = acc;
          x.insert(x.end(), f.begin(), f.end());
          if (k == w.size()) {
            if (d.accepts(x)) return true;
            continue;
          }
          x.push_back(w[k]);
          if (go(k + 1, x)) return true;
        }
        return false;
      };
      return go(0, {});
    }, 3));
  }
}

TEST_CASE("finitely many prefixes by loop analysis") {
  Dfa d = first_p(V1);
  CHECK(finitely_many_prefixes(d, {{0}, {1}}));
  CHECK_FALSE(finitely_many_prefixes(d, {{1}, {0}}));
  Dfa ends;
  ends.vocab = V1;
  ends.num_states = 2;
  ends.delta = {0, 1, 0, 1};
  ends.accepting = {false, true};
  CHECK(finitely_many_prefixes(ends, {{1}, {0}}));
  CHECK_FALSE(finitely_many_prefixes(ends, {{}, {0, 0, 1}}));
}

TEST_CASE("lasso membership and emptiness") {
  CHECK(nba_accepts(inf_p(), {{}, {1}}));
  CHECK_FALSE(nba_accepts(inf_p(), {{}, {0}}));
  CHECK(nba_accepts(fin_p(), {{1}, {0}}));
  CHECK_FALSE(nba_accepts(fin_p(), {{}, {1}}));
  auto w = nba_find_lasso(inf_p());
  REQUIRE(w);
  CHECK(w->stem == Word{});
  CHECK(w->loop == Word{1});
  CHECK(nba_is_empty(empty_nba(V1)));
  testing::Rng rng(9);
  auto lassos = testing::all_lassos(V1, 3, 3);
  for (int n = 0; n < 100; ++n) {
    Nba a = testing::random_nba(rng, V1, 4);
    for (const auto& l : lassos) CHECK(nba_accepts(a, l) == testing::nba_lasso_oracle(a, l));
    auto wit = nba_find_lasso(a);
    bool some = false;
    for (const auto& l : lassos) some = some || nba_accepts(a, l);
    if (wit) CHECK(nba_accepts(a, *wit));
    if (some) CHECK(wit.has_value());
  }
}

TEST_CASE("intersection, union and fusion of Büchi automata") {
  testing::Rng rng(10);
  auto lassos = testing::all_lassos(V1, 2, 3);
  for (int n = 0; n < 60; ++n) {
    Nba a = testing::random_nba(rng, V1, 3), b = testing::random_nba(rng, V1, 3);
    Nba i = nba_intersection(a, b), u = nba_union(a, b);
    for (const auto& l : lassos) {
      CHECK(nba_accepts(i, l) == (nba_accepts(a, l) && nba_accepts(b, l)));
      CHECK(nba_accepts(u, l) == (nba_accepts(a, l) || nba_accepts(b, l)));
      CHECK(nba_accepts(trim(a), l) == nba_accepts(a, l));
    }
    Dfa c = testing::random_dfa(rng, V1, 3);
    Nba f = fuse_dfa_nba(c, a);
    for (const auto& l : lassos) {
      bool expect = false;
      Word prefix;
      for (std::size_t k = 0; k < 8 && !expect; ++k) {
        prefix.push_back(l.at(k));
        if (!c.accepts(prefix)) continue;
        Lasso rest;
        std::size_t start = l.class_of(k);
        // the suffix from position k as a lasso
        for (std::size_t pos = start; pos < l.stem.size(); ++pos) rest.stem.push_back(l.stem[pos]);
        std::size_t off = start < l.stem.size() ? 0 : start - l.stem.size();
        for (std::size_t t = 0; t < l.loop.size(); ++t) rest.loop.push_back(l.loop[(off + t) % l.loop.size()]);
        expect = nba_accepts(a, rest);
      }
      CHECK(nba_accepts(f, l) == expect);
    }
  }
}

TEST_CASE("determinization examples") {
  auto lassos = testing::all_lassos(V1, 3, 3);
  Dpa d = nba_determinize(inf_p());
  for (const auto& l : lassos) CHECK(dpa_accepts(d, l) == nba_accepts(inf_p(), l));
  Dpa f = nba_determinize(fin_p());
  CHECK(dpa_accepts(f, {{1}, {0}}));
  CHECK_FALSE(dpa_accepts(f, {{}, {1}}));
  for (const auto& l : lassos) CHECK(dpa_accepts(f, l) == nba_accepts(fin_p(), l));
  Dpa e = nba_determinize(empty_nba(V1));
  for (const auto& l : lassos) CHECK_FALSE(dpa_accepts(e, l));
  testing::Rng big_rng(1);
  Nba big = testing::random_nba(big_rng, V1, 13);
  CHECK_THROWS_AS(nba_determinize(big), GuardExceeded);
}

TEST_CASE("determinization, complement and parity-to-Büchi on random automata") {
  testing::Rng rng(11);
  for (const Vocabulary& v : {V1, V2}) {
    auto lassos = testing::all_lassos(v, v.size() == 1 ? 3 : 2, v.size() == 1 ? 3 : 2);
    for (int n = 0; n < 60; ++n) {
      Nba a = testing::random_nba(rng, v, 1 + n % 4);
      Dpa d = nba_determinize(a);
      auto [comp, as_nba] = dpa_complement_nba(d);
      CHECK(nba_is_empty(nba_intersection(a, dpa_to_nba(comp))));
      for (const auto& l : lassos) {
        bool in = testing::nba_lasso_oracle(a, l);
        CHECK(dpa_accepts(d, l) == in);
        CHECK(dpa_accepts(comp, l) == !in);
        CHECK(nba_accepts(as_nba, l) == in);
        CHECK(dpa_accepts(dpa_complement(comp), l) == in);
      }
    }
  }
}

TEST_CASE("landing languages of parity automata") {
  Dpa d = nba_determinize(inf_p());
  Dfa evens = dpa_landing_dfa(d, [](int p) { return p % 2 == 0; });
  for_each_word(V1, 4, [&](const Word& w) {
    int q = d.initial;
    for (Letter a : w) q = d.next(q, a);
    CHECK(evens.accepts(w) == (d.priority[q] % 2 == 0));
  });
}

TEST_CASE("bisimulation reduction and prefix automata") {
  testing::Rng rng(12);
  auto lassos = testing::all_lassos(V2, 2, 2);
  for (int n = 0; n < 60; ++n) {
    Nba a = testing::random_nba(rng, V2, 4);
    Nba r = reduce(a);
    CHECK(r.num_states <= a.num_states);
    Dfa c = testing::random_dfa(rng, V2, 3);
    Nba some = some_prefix_nba(c), none = no_prefix_nba(c);
    for (const auto& l : lassos) {
      CHECK(nba_accepts(r, l) == nba_accepts(a, l));
      bool hit = false;
      Word prefix;
      for (std::size_t k = 0; k < 3 * 4 * l.classes() && !hit; ++k) {
        prefix.push_back(l.at(k));
        hit = c.accepts(prefix);
      }
      CHECK(nba_accepts(some, l) == hit);
      CHECK(nba_accepts(none, l) == !hit);
    }
  }
}
