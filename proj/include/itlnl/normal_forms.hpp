#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itlnl/automata.hpp"
#include "itlnl/formula.hpp"

namespace itl {

// ---------------------------------------------------------------------------
// Guarded normal form
// ---------------------------------------------------------------------------

enum class Direction { Future, Past };

/// Future: A_e ∧ empty ∨ ⋁ g_k ∧ next c_k.
/// Past:   A_e ∧ empty ∨ ⋁ prev c_k ∧ fin g_k.
struct GuardedNormalForm {
  Direction direction = Direction::Future;
  Formula empty_part;
  std::vector<std::pair<Formula, Formula>> branches;  // (guard, continuation)

  Formula to_formula() const;
  /// (empty -> A_e) ∧ ⋀ (g_k ∧ ¬empty) -> next c_k, or its mirror image.
  Formula universal_form() const;
};

/// Coarsest GNF: one branch per distinct continuation language; guards
/// partition the letters. Verified exactly before returning.
GuardedNormalForm gnf(const Formula& a, const Vocabulary& vocab, Direction dir = Direction::Future);
GuardedNormalForm gnf(const Formula& a, Direction dir = Direction::Future);

// ---------------------------------------------------------------------------
// Full-system chop decompositions
// ---------------------------------------------------------------------------

enum class Flavor { Nonstrict, Strict, Mirror };

/// Nonstrict: A ≡ ⋁ A_k ; A_k'           ≡ ⋀ ¬(A_k ; ¬A_k')
/// Strict:    A ≡ A_e ∧ empty ∨ ⋁ A_k ; skip ; A_k'
///              ≡ (empty -> A_e) ∧ ⋀ ¬(A_k ; skip ; ¬A_k')
/// Mirror:    A ≡ ⋁ A_k' ; A_k           ≡ ⋀ ¬(¬A_k' ; A_k)
/// In every flavor the A_k form a full system.
struct FullSystemDecomposition {
  Flavor flavor = Flavor::Nonstrict;
  Formula empty_part;                               // strict flavor only
  std::vector<std::pair<Formula, Formula>> pairs;   // (A_k, A_k')

  Formula disjunctive_form() const;
  Formula conjunctive_form() const;
};

FullSystemDecomposition full_system_chop(const Formula& a, const Vocabulary& vocab, Flavor flavor);
FullSystemDecomposition full_system_chop(const Formula& a, Flavor flavor);

/// Both equivalences of the decomposition and the full-system property of
/// the A_k, decided on automata. Returns a description of the first failure.
std::optional<std::string> check_decomposition(const Formula& a, const FullSystemDecomposition& d,
                                               const Vocabulary& vocab);

/// The syntactic route from a nonstrict decomposition to a strict one:
/// past GNFs of the A_k, future GNFs of the A_k', then elementary
/// conjunctions of the left operands to restore a full system.
FullSystemDecomposition strictify_syntactic(const Formula& a, const FullSystemDecomposition& dec,
                                            const Vocabulary& vocab);
FullSystemDecomposition strictify_syntactic(const Formula& a, const FullSystemDecomposition& dec);

// ---------------------------------------------------------------------------
// w-closure systems and canonical equations
// ---------------------------------------------------------------------------

/// One member B of Cl^{εw}(A), identified with the unknown B ∧ εw.
struct WUnknown {
  int dfa_state = 0;
  bool negated = false;  // phase ¬w
  Formula member;  // B
  Formula phase;   // εw
  Formula head() const;
};

struct WTransition {
  Formula block;  // B_k ∧ box εw
  int target = 0; // index of the unknown B_k' ∧ ε̄w
};

/// B ∧ εw ≡ H ∨ ⋁ block_k ; skip ; target_k
struct WEquation {
  int unknown = 0;
  Formula homogeneous;  // B ∧ box εw, or false when unsatisfiable
  std::vector<WTransition> transitions;
};

struct WBlockSystem {
  Vocabulary vocab;
  Formula w;
  Dfa source;  // minimal DFA of A
  std::vector<WUnknown> unknowns;
  std::vector<WEquation> equations;  // equations[k].unknown == k
  int root_pos = -1;                 // A ∧ w, -1 when unsatisfiable
  int root_neg = -1;                 // A ∧ ¬w

  std::vector<Formula> closure(bool negated) const;
  Formula equation_formula(int k) const;
};

WBlockSystem w_closure_system(const Formula& a, const Formula& w, const Vocabulary& vocab);
WBlockSystem w_closure_system(const Formula& a, const Formula& w);

/// A disjunct `prefix ; block` of a closed part (prefix may be absent).
struct ClosedTerm {
  std::optional<Formula> prefix;
  Formula block;
  int tag = 0;
  Formula to_formula() const;
};

struct EqTerm {
  Formula coef;  // R_l, must end with `; skip`
  int unknown = 0;
};

/// X ≡ ⋁ closed ∨ ⋁ coef_l ; X_l
struct Equation {
  std::vector<ClosedTerm> closed;
  std::vector<EqTerm> terms;
};

struct EquationSystem {
  std::vector<std::string> names;
  std::vector<Equation> equations;
};

/// Solution of one unknown as a list of closed terms.
using Solution = std::vector<ClosedTerm>;
Formula solution_formula(const Solution& s);

/// Gaussian elimination: the unknown with the fewest other dependencies
/// first, self-loops removed by X ≡ R_1* ; (rest), back substitution at the
/// end. Throws ShapeError when a coefficient is not of the R_0 shape.
std::vector<Solution> solve_equations(const EquationSystem& s);

/// The closed-term system of a w-closure system; tags are 0 for w-blocks
/// and 1 for ¬w-blocks.
EquationSystem to_equation_system(const WBlockSystem& s);

/// w ∧ (A^{+,+} ∨ A^{+,-}) ∨ ¬w ∧ (A^{-,+} ∨ A^{-,-}), exactly equivalent
/// to A and verified.
Formula w_block_normal_form(const Formula& a, const Formula& w, const Vocabulary& vocab);
Formula w_block_normal_form(const Formula& a, const Formula& w);

/// Grammar classes of the w-block syntax, indexed by (first phase, last
/// phase) with 0 = w and 1 = ¬w.
struct WGrammar {
  Formula w;
  Formula not_w;

  /// Phase of an H-block `B & box εw`, or -1.
  int block_phase(const Formula& f) const;
  /// Bitmask over the four R_0^{ε,ε'} classes (bit 2ε+ε').
  unsigned r0_classes(const Formula& f) const;
  unsigned r_classes(const Formula& f) const;
  /// Whole normal form w ∧ (...) ∨ ¬w ∧ (...).
  bool conforms(const Formula& f) const;
  /// Coarse grammar: R ::= H | R_0 ; H | R ∨ R with any phases.
  /// Restricted to blocks of phase `only` when it is 0 or 1.
  bool conforms_coarse(const Formula& f, int only = -1) const;
};

/// All H-blocks occurring in a w-block formula, in order of occurrence.
std::vector<Formula> w_blocks(const Formula& f, const WGrammar& g);

}  // namespace itl
