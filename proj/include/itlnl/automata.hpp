#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "itlnl/vocabulary.hpp"

namespace itl {

/// Total deterministic automaton over the letters of `vocab`. Languages are
/// sets of non-empty words; the initial state is never accepting.
struct Dfa {
  Vocabulary vocab;
  int num_states = 0;
  int initial = 0;
  std::vector<int> delta;  // delta[q * letters + a]
  std::vector<bool> accepting;

  int letters() const { return vocab.letters(); }
  int next(int q, Letter a) const { return delta[static_cast<std::size_t>(q) * letters() + a]; }
  int run(int q, const Word& w) const;
  bool accepts(const Word& w) const;
};

/// Nondeterministic automaton; shared by Nfa (finite words) and Nba (Büchi).
struct NondetAutomaton {
  Vocabulary vocab;
  int num_states = 0;
  std::vector<int> initial;
  std::vector<std::vector<int>> succ;  // succ[q * letters + a]
  std::vector<bool> accepting;

  int letters() const { return vocab.letters(); }
  int add_state(bool acc = false);
  void add_edge(int q, Letter a, int r);
  const std::vector<int>& successors(int q, Letter a) const {
    return succ[static_cast<std::size_t>(q) * letters() + a];
  }
};

struct Nfa : NondetAutomaton {
  bool accepts(const Word& w) const;
};

struct Nba : NondetAutomaton {};

/// Deterministic parity automaton, priorities on states, min-even.
struct Dpa {
  Vocabulary vocab;
  int num_states = 0;
  int initial = 0;
  std::vector<int> delta;
  std::vector<int> priority;

  int letters() const { return vocab.letters(); }
  int next(int q, Letter a) const { return delta[static_cast<std::size_t>(q) * letters() + a]; }
};

inline constexpr std::size_t kDefaultDfaGuard = 100000;
inline constexpr int kDefaultNbaGuard = 12;

// ---------------------------------------------------------------------------
// Finite words
// ---------------------------------------------------------------------------

Dfa empty_dfa(const Vocabulary& vocab);
/// All non-empty words.
Dfa universal_dfa(const Vocabulary& vocab);
/// One-letter words whose letter is in `letters`.
Dfa letter_dfa(const Vocabulary& vocab, LetterSet letters);

/// Trims, minimizes (Moore) and renumbers states in BFS order over
/// ascending letters.
Dfa minimize(const Dfa& d);
Dfa determinize_minimize(const Nfa& n, std::size_t guard = kDefaultDfaGuard);
Nfa to_nfa(const Dfa& d);

enum class Combine { Union, Intersection, Complement, Difference };
Dfa combine(Combine kind, const Dfa& a, const Dfa* b = nullptr);
Dfa dfa_union(const Dfa& a, const Dfa& b);
Dfa dfa_intersection(const Dfa& a, const Dfa& b);
Dfa dfa_complement(const Dfa& a);
Dfa dfa_difference(const Dfa& a, const Dfa& b);

bool is_empty(const Dfa& d);
/// Shortest accepted word, ties broken by ascending letters.
std::optional<Word> shortest_word(const Dfa& d);
/// nullopt when the languages are equal; otherwise a shortest word in the
/// symmetric difference.
std::optional<Word> dfa_equivalent(const Dfa& a, const Dfa& b);
/// nullopt when L(a) ⊆ L(b); otherwise a shortest word of L(a) \ L(b).
std::optional<Word> dfa_subset(const Dfa& a, const Dfa& b);

/// {u ⊙ v : u ∈ L(a), v ∈ L(b), last(u) = first(v)} (shared letter).
Nfa fusion_concat(const Dfa& a, const Dfa& b);
/// Every one-letter word plus fusion chains of words of L(a) of length >= 2.
Nfa fusion_star(const Dfa& a);

/// Non-empty words leading from the initial state to q.
Dfa prefix_dfa(const Dfa& d, int q);
/// Non-empty words leading from q into an accepting state.
Dfa rerooted_dfa(const Dfa& d, int q);
/// Words u with |u| >= 1 such that s·u is accepted from q for the shared
/// first letter, i.e. {u : δ(q, u[1..]) ∈ F} where u[0] is any letter.
Dfa shared_suffix_dfa(const Dfa& d, int q);
/// Reversed language.
Dfa reverse_dfa(const Dfa& d);

/// h_p^{-1}(h_p(L)): every transition on s is duplicated on s with p toggled.
Nfa relabel_dont_care(const Dfa& d, const std::string& p);
Nba relabel_dont_care(const Nba& n, const std::string& p);

/// Re-encodes over a larger vocabulary; the extra variables are unconstrained.
Dfa lift(const Dfa& d, const Vocabulary& target);
Nba lift(const Nba& n, const Vocabulary& target);

/// Words σ over `w_letters` for which some σ' with σ'|_w = σ is in L(d).
Dfa pi_inverse(const Dfa& d, LetterSet w_letters);

/// True iff only finitely many non-empty prefixes of the lasso word are in L(d).
bool finitely_many_prefixes(const Dfa& d, const Lasso& l);

/// Non-empty words after which the DPA sits in a state whose priority
/// satisfies `pred`.
Dfa dpa_landing_dfa(const Dpa& d, const std::function<bool(int)>& pred);

// ---------------------------------------------------------------------------
// Infinite words
// ---------------------------------------------------------------------------

Nba empty_nba(const Vocabulary& vocab);
Nba universal_nba(const Vocabulary& vocab);
/// ω-words w with w[0..k] ∈ L(c) and w[k..] ∈ L(tail) for some k.
Nba fuse_dfa_nba(const Dfa& c, const Nba& tail);
Nba nba_union(const Nba& a, const Nba& b);
Nba nba_intersection(const Nba& a, const Nba& b);
/// Removes states that are unreachable or cannot reach an accepting cycle.
Nba trim(const Nba& n);
/// Trims and merges bisimilar states (same acceptance, same successor
/// blocks on every letter).
Nba reduce(const Nba& n);
/// ω-words having some non-empty prefix in L(c) / having none.
Nba some_prefix_nba(const Dfa& c);
Nba no_prefix_nba(const Dfa& c);

bool nba_accepts(const Nba& n, const Lasso& l);
bool dpa_accepts(const Dpa& d, const Lasso& l);
/// An accepted lasso, or nullopt when the language is empty.
std::optional<Lasso> nba_find_lasso(const Nba& n);
inline bool nba_is_empty(const Nba& n) { return !nba_find_lasso(n).has_value(); }

/// Safra/Piterman determinization; GuardExceeded above `guard` input states.
Dpa nba_determinize(const Nba& n, int guard = kDefaultNbaGuard);

struct DpaComplement {
  Dpa complement;
  Nba as_nba;  // Büchi automaton for L(original)
};
DpaComplement dpa_complement_nba(const Dpa& d);
Dpa dpa_complement(const Dpa& d);
Nba dpa_to_nba(const Dpa& d);
/// Complement of an NBA through determinization.
Nba nba_complement(const Nba& n, int guard = kDefaultNbaGuard);

}  // namespace itl
