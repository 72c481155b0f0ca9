#pragma once

#include "itlnl/formula.hpp"
#include "itlnl/vocabulary.hpp"

namespace itl {

/// Replaces local subformulas by the smallest equivalent formula from a
/// small catalogue (state formulas w and shapes such as `box w`, `w & empty`,
/// `fin w`, `l1 ; l2`). Equivalence is decided on minimal DFAs, so the result
/// is equivalent to A in every context. Never larger than A.
Formula tidy(const Formula& a, const Vocabulary& vocab);
Formula tidy(const Formula& a);

}  // namespace itl
