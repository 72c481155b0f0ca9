#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itlnl/automata.hpp"
#include "itlnl/error.hpp"
#include "itlnl/formula.hpp"
#include "itlnl/semantics.hpp"

namespace itl {

// ---------------------------------------------------------------------------
// Fin and the reactivity normal form
// ---------------------------------------------------------------------------

/// <r> ⋁_k (C_k ∧ [r] ¬C_k') for a nonstrict full-system decomposition of
/// L(X). At (0, 0) it holds iff only finitely many prefixes are in L(X).
Formula fin_formula(const Dfa& x);

/// ⋀_n Fin(M_n'') -> Fin(M_n'), one pair per odd priority o of a parity
/// automaton for L(N): M_n' are the prefixes landing in priority o, M_n''
/// those landing in an even priority below o.
struct ReactivityForm {
  std::vector<std::pair<Dfa, Dfa>> pairs;  // (M_n', M_n'')
  Formula formula;
};

ReactivityForm reactivity_normal_form(const Nba& n, int guard = kDefaultNbaGuard);

// ---------------------------------------------------------------------------
// Propositional quantifier elimination
// ---------------------------------------------------------------------------

Formula exists_elim_introspective(const std::string& p, const Formula& a);
Formula exists_elim_introspective(const std::set<std::string>& hide, const Formula& a);

/// A a Boolean combination of introspective, strictly past and strictly
/// future formulas. Throws NotSeparated otherwise.
Formula exists_elim(const std::string& p, const Formula& a, int guard = kDefaultNbaGuard);
Formula exists_elim(const std::set<std::string>& hide, const Formula& a, int guard = kDefaultNbaGuard);

/// ∃-free formula for ∃hide. F with F a conjunction of (negated) strictly
/// future atoms, as <r>(skip ; (empty ∧ H)) with H a reactivity form.
Formula exists_elim_future(const std::set<std::string>& hide, const Formula& f, const Vocabulary& vocab,
                           int guard = kDefaultNbaGuard);

Formula strongest_consequence(const Formula& a, const std::set<std::string>& hide,
                              int guard = kDefaultNbaGuard);

// ---------------------------------------------------------------------------
// Exact models for separated formulas
// ---------------------------------------------------------------------------

/// Ultimately periodic bi-infinite model around a reference interval: the
/// states before it read leftwards, the interval itself, the states after.
struct BiLasso {
  Lasso past;  // past.at(0) is the state just left of the interval
  Word body;
  Lasso future;
};

std::string format_bilasso(const BiLasso& m, const Vocabulary& vocab);

/// Exact truth of a separated formula at the reference interval.
bool eval_separated(const BiLasso& m, const Formula& a, const Vocabulary& vocab);

enum class Query { Sat, Valid };

struct Decision {
  bool value = false;
  /// A model for `sat` answers true, a countermodel for `valid` answers false.
  std::optional<BiLasso> witness;
};

/// Exact satisfiability/validity on the separated fragment.
Decision decide_separated(Query q, const Formula& a, const Vocabulary& vocab, int guard = kDefaultNbaGuard);
Decision decide_separated(Query q, const Formula& a);

// ---------------------------------------------------------------------------
// Interpolation and definability
// ---------------------------------------------------------------------------

/// How a validity claim was established.
enum class Check { Exact, Decided, Bounded };
const char* check_name(Check c);

struct ValidityReport {
  bool valid = true;
  Check method = Check::Exact;
  std::string counterexample;  // rendered window or model
  std::optional<Window> window;
};

/// ⊨ A: exact on DFAs for local formulas, by decide_separated on the
/// separated fragment, otherwise by search over windows up to max_len.
ValidityReport check_valid(const Formula& a, const Vocabulary& vocab, std::size_t max_len = 5,
                           int guard = kDefaultNbaGuard);

class ImplicationInvalid : public Error {
public:
  ImplicationInvalid(const std::string& what, ValidityReport r) : Error(what), report(std::move(r)) {}
  ValidityReport report;
};

class NotImplicitlyDefined : public Error {
public:
  NotImplicitlyDefined(const std::string& what, Window w) : Error(what), window(std::move(w)) {}
  Window window;
};

struct Interpolant {
  Formula formula;
  Check premise_check = Check::Exact;     // ⊨ A -> B
  Check conclusion_check = Check::Exact;  // ⊨ C -> B
  bool unverified() const { return premise_check == Check::Bounded || conclusion_check == Check::Bounded; }
};

Interpolant interpolate(const Formula& a, const Formula& b, int guard = kDefaultNbaGuard);

struct Definition {
  Formula formula;         // C with ⊨ box_a A -> box_a (p <-> C)
  Check implicit_check;    // the implicit-definability premise
  Check explicit_check;    // ⊨ A -> (p <-> C)
};

/// Throws NotImplicitlyDefined with a falsifying window (two readings of p
/// over one window, both satisfying A on every interval).
Definition beth_define(const Formula& a, const std::string& p, std::size_t max_len = 4,
                       int guard = kDefaultNbaGuard);

}  // namespace itl
