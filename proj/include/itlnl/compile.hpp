#pragma once

#include <memory>
#include <string>

#include "itlnl/automata.hpp"
#include "itlnl/formula.hpp"

namespace itl {

/// Language {σ^i..σ^j : σ,i,j ⊨ A} of a local formula as a minimal DFA.
/// Accepts Exists/Proj/ProjInv over local bodies; rejects neighbourhood
/// modalities with FragmentError.
Dfa itl_to_dfa(const Formula& a, const Vocabulary& vocab);

// ---------------------------------------------------------------------------
// Regular expressions over letters, ε-free body plus an ε flag
// ---------------------------------------------------------------------------

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;  // null = empty language

struct RegexNode {
  enum class Op { Letters, Concat, Union, Plus } op;
  LetterSet letters = 0;
  Regex left, right;
};

struct RegexIR {
  bool has_epsilon = false;
  Regex body;
};

/// State elimination, lowest-degree state first, ties by state id.
RegexIR dfa_to_regex(const Dfa& d);
std::string render_regex(const Regex& r, const Vocabulary& vocab);
/// letter set S -> (χ_S & empty), concatenation -> `X ; skip ; Y`,
/// K+ -> `(F_K ; skip)* ; F_K`.
Formula regex_to_formula(const Regex& r, const Vocabulary& vocab);

/// Introspective formula whose language is L(d).
Formula dfa_to_formula(const Dfa& d);

/// Büchi automaton for {σ[0,∞) : σ,0,0 ⊨ F} of a future formula F.
Nba future_to_nba(const Formula& f, const Vocabulary& vocab, int guard = kDefaultNbaGuard);

}  // namespace itl
