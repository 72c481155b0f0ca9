#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "itlnl/automata.hpp"
#include "itlnl/semantics.hpp"

namespace itl {

// Windows: `{p} {} {p,q} # ref 0 1`. Without a ref marker the reference
// interval is the whole window.
Window parse_window(std::string_view text, const Vocabulary& vocab);
std::string format_window(const Window& w, const Vocabulary& vocab);

// Lassos: a `stem:` line (may be empty) and a `loop:` line.
Lasso parse_lasso(std::string_view text, const Vocabulary& vocab);
std::string format_lasso(const Lasso& l, const Vocabulary& vocab);

/// Automaton files:
///
///   nba
///   vocab: p q
///   states: 2
///   initial: 0
///   0 --{p}--> 1
///   accepting: 1
///
/// dpa files give `priority q = n` lines instead of `accepting:`. The vocab
/// line is optional when a vocabulary is supplied by the caller.
using Automaton = std::variant<Dfa, Nfa, Nba, Dpa>;

Automaton parse_automaton(std::string_view text, const std::optional<Vocabulary>& vocab = std::nullopt);
const Vocabulary& automaton_vocab(const Automaton& a);
const char* automaton_kind(const Automaton& a);
int automaton_states(const Automaton& a);

std::string write_automaton(const Automaton& a);
std::string to_dot(const Automaton& a);

/// Reads a whole file, or stdin for "-".
std::string read_source(const std::string& path);

}  // namespace itl
