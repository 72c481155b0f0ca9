#pragma once

#include <cstddef>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "itlnl/formula.hpp"
#include "itlnl/vocabulary.hpp"

namespace itl {

// ---------------------------------------------------------------------------
// Concrete syntax
// ---------------------------------------------------------------------------
//
//   false true empty skip p (A)
//   A*                                   postfix, binds tightest
//   ~ next prev <l> <r> [l] [r] dia di box bi fin dia_a box_a   prefix
//   A ; B                                chop, left associative
//   A & B,  A | B                        left associative
//   A -> B,  A <-> B                     right associative, lowest
//   exists p. A                          binder, extends to the right
//   proj(w, A)  projinv(w, A)

/// Parses `text`; every identifier must be declared in `vocab`.
Formula parse(std::string_view text, const Vocabulary& vocab);
/// Parses without a declaration check.
Formula parse(std::string_view text);

std::string render(const Formula& a);

struct VarSets {
  std::set<std::string> free;
  std::set<std::string> bound;
};
VarSets vars(const Formula& a);
std::set<std::string> free_vars(const Formula& a);
/// Free variables of all arguments, sorted by name.
Vocabulary vocabulary_of(std::initializer_list<Formula> fs);

/// Replaces every free occurrence of p by q. Throws CaptureError if q is
/// bound at an occurrence of p.
Formula substitute_var(const Formula& a, const std::string& p, const std::string& q);

/// Mirror image: Next<->Prev, <r><-><l>, chop operands exchanged, p -> fin p.
Formula time_reverse(const Formula& a);

/// Expands every derived connective into False/Var/Imp/Next/Chop/*/<l>/<r>.
Formula desugar(const Formula& a);

// ---------------------------------------------------------------------------
// Fragments
// ---------------------------------------------------------------------------

/// Boolean combination of variables and constants.
bool is_state(const Formula& a);
/// No neighbourhood modality anywhere (Exists/Proj/ProjInv allowed).
bool is_local(const Formula& a);
/// Plain ITL: no neighbourhood modality and no input-only node.
bool is_introspective(const Formula& a);
bool has_input_only(const Formula& a);

/// Rewrites a future formula into Boolean combinations of local formulas
/// and <r>-atoms whose operands are again in this shape. Accepts `next`
/// and `skip ; F` over future operands. Throws FragmentError otherwise.
Formula normalize_future(const Formula& f);
bool is_future(const Formula& f);

/// <r>(skip ; F) (or <r> next F) with F future.
bool is_strict_future_atom(const Formula& a);
/// <l>(P ; skip) (or <l> prev P) with P past.
bool is_strict_past_atom(const Formula& a);
/// The F of a strict future atom <r>(skip ; F).
Formula strict_future_body(const Formula& a);
/// The P of a strict past atom <l>(P ; skip).
Formula strict_past_body(const Formula& a);

/// Folds true/false through the Boolean connectives only.
Formula simplify_constants(const Formula& a);

// ---------------------------------------------------------------------------
// State formulas and letters
// ---------------------------------------------------------------------------

bool eval_state(const Formula& w, Letter a, const Vocabulary& vocab);
/// Letters satisfying the state formula w.
LetterSet state_letters(const Formula& w, const Vocabulary& vocab);
/// A small state formula (prime-implicant cover) true exactly on `letters`.
Formula letters_formula(LetterSet letters, const Vocabulary& vocab);

// ---------------------------------------------------------------------------
// Separated disjunctive normal form
// ---------------------------------------------------------------------------

struct SeparatedDisjunct {
  Formula past;           // conjunction of (negated) strictly past atoms
  Formula introspective;  // local formula on the reference interval
  Formula future;         // conjunction of (negated) strictly future atoms
  Formula to_formula() const;
};

struct SeparatedDnf {
  std::vector<SeparatedDisjunct> disjuncts;
  Formula to_formula() const;
};

/// Shannon expansion over the strictly past/future atoms of A. Throws
/// NotSeparated when a neighbourhood modality occurs outside such an atom,
/// GuardExceeded above `max_atoms` distinct atoms.
SeparatedDnf separated_dnf(const Formula& a, std::size_t max_atoms = 16);

/// The distinct strictly past/future atoms occurring in the Boolean
/// skeleton of A, in order of first occurrence.
std::vector<Formula> separated_atoms(const Formula& a);

/// Replaces `atom` by a constant in the Boolean skeleton of A and folds.
Formula assign_atom(const Formula& a, const Formula& atom, bool value);

}  // namespace itl
