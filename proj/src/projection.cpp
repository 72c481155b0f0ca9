#include "itlnl/projection.hpp"

#include <algorithm>

#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/syntax.hpp"

namespace itl {

namespace {

void require_state_w(const Formula& w) {
  if (!is_state(w)) throw FragmentError("inverse projection needs a state formula, got " + render(w));
}

}  // namespace

Dfa pi_inverse_dfa(const Formula& w, const Formula& a, const Vocabulary& vocab) {
  require_state_w(w);
  if (!is_introspective(a)) throw FragmentError("introspective formula expected: " + render(a));
  return pi_inverse(itl_to_dfa(a, vocab), state_letters(w, vocab));
}

Dfa pi_inverse_dfa(const Formula& w, const Formula& a) { return pi_inverse_dfa(w, a, vocabulary_of({w, a})); }

PiInverseSystem pi_inverse_system(const WBlockSystem& s) {
  PiInverseSystem out;
  std::vector<int> index(s.unknowns.size(), -1);
  for (std::size_t k = 0; k < s.unknowns.size(); ++k)
    if (!s.unknowns[k].negated) {
      index[k] = static_cast<int>(out.equations.names.size());
      out.equations.names.push_back("projinv(" + render(s.w) + ", " + render(s.unknowns[k].head()) + ")");
    }
  // w Π̃ (B ∧ ¬w) ≡ ⋁ w Π̃ (B_k' ∧ w): the ¬w-homogeneous part contributes
  // nothing and every transition block is satisfiable.
  auto through_neg = [&](int neg) {
    std::vector<int> out_idx;
    for (const auto& t : s.equations[neg].transitions) out_idx.push_back(index[t.target]);
    return out_idx;
  };
  for (std::size_t k = 0; k < s.unknowns.size(); ++k) {
    if (s.unknowns[k].negated) continue;
    const WEquation& e = s.equations[k];
    Equation eq;
    if (!e.homogeneous.is(Kind::False)) eq.closed.push_back({std::nullopt, e.homogeneous, 0});
    for (const auto& t : e.transitions) {
      // A w-block followed only by deleted states.
      if (!s.equations[t.target].homogeneous.is(Kind::False)) eq.closed.push_back({std::nullopt, t.block, 0});
      const Formula coef = fm::chop(t.block, fm::skip());
      for (int y : through_neg(t.target)) eq.terms.push_back({coef, y});
    }
    out.equations.equations.push_back(std::move(eq));
  }
  if (s.root_pos >= 0) out.root.push_back(index[s.root_pos]);
  if (s.root_neg >= 0)
    for (int y : through_neg(s.root_neg))
      if (std::find(out.root.begin(), out.root.end(), y) == out.root.end()) out.root.push_back(y);
  return out;
}

Formula pi_inverse_eliminate(const Formula& w, const Formula& a, const Vocabulary& vocab) {
  require_state_w(w);
  WBlockSystem sys = w_closure_system(a, w, vocab);
  PiInverseSystem pis = pi_inverse_system(sys);
  std::vector<Solution> sol = solve_equations(pis.equations);
  Formula out = fm::bottom();
  for (int r : pis.root) out = fm::lor(out, solution_formula(sol[r]));
  const Dfa oracle = pi_inverse(sys.source, state_letters(w, vocab));
  if (auto bad = dfa_equivalent(itl_to_dfa(out, vocab), oracle))
    throw VerificationFailure("inverse projection elimination differs on " + vocab.format_word(*bad));
  return out;
}

Formula pi_inverse_eliminate(const Formula& w, const Formula& a) {
  return pi_inverse_eliminate(w, a, vocabulary_of({w, a}));
}

}  // namespace itl
