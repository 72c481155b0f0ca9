#pragma once

#include "itlnl/automata.hpp"
#include "itlnl/formula.hpp"
#include "itlnl/normal_forms.hpp"

namespace itl {

/// Language of w Π̃ A: intervals σ of w-states such that some σ' with
/// σ'|_w = σ satisfies A. Deleted states may precede, separate and follow
/// the kept ones.
Dfa pi_inverse_dfa(const Formula& w, const Formula& a, const Vocabulary& vocab);
Dfa pi_inverse_dfa(const Formula& w, const Formula& a);

/// The equations for the unknowns w Π̃ (B ∧ w), B ∈ Cl^w(A), after the
/// ¬w unknowns have been substituted away. `root` lists the unknowns whose
/// disjunction is w Π̃ A.
struct PiInverseSystem {
  EquationSystem equations;
  std::vector<int> root;
};
PiInverseSystem pi_inverse_system(const WBlockSystem& s);

/// Π̃-free formula of the coarse w-block syntax with w-blocks only,
/// language-equal to pi_inverse_dfa (verified).
Formula pi_inverse_eliminate(const Formula& w, const Formula& a, const Vocabulary& vocab);
Formula pi_inverse_eliminate(const Formula& w, const Formula& a);

}  // namespace itl
