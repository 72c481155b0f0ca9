#include "itlnl/normal_forms.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/syntax.hpp"

namespace itl {

namespace {

void require_introspective(const Formula& a) {
  if (!is_introspective(a)) throw FragmentError("introspective formula expected: " + render(a));
}

void require_state(const Formula& w) {
  if (!is_state(w)) throw FragmentError("state formula expected: " + render(w));
}

bool same_language(const Dfa& a, const Dfa& b) { return !dfa_equivalent(a, b).has_value(); }

void verify_equal(const Formula& got, const Dfa& want, const Vocabulary& vocab, const std::string& what) {
  if (auto w = dfa_equivalent(itl_to_dfa(got, vocab), want))
    throw VerificationFailure(what + " differs on " + vocab.format_word(*w));
}

// Letters c with δ(r, c) = q for some state r.
LetterSet entering_letters(const Dfa& d, int q) {
  LetterSet out = 0;
  for (int r = 0; r < d.num_states; ++r)
    for (int c = 0; c < d.letters(); ++c)
      if (d.next(r, static_cast<Letter>(c)) == q) out |= letter_bit(static_cast<Letter>(c));
  return out;
}

// Non-empty words over `allowed` leading from `start` into `targets`.
Dfa restricted_dfa(const Dfa& d, int start, LetterSet allowed, const std::vector<bool>& targets) {
  Dfa out = d;
  const int sink = out.num_states++;
  for (int c = 0; c < d.letters(); ++c) out.delta.push_back(sink);
  for (int q = 0; q < d.num_states; ++q)
    for (int c = 0; c < d.letters(); ++c)
      if (!has_letter(allowed, static_cast<Letter>(c)))
        out.delta[static_cast<std::size_t>(q) * d.letters() + c] = sink;
  out.accepting = targets;
  out.accepting.push_back(false);
  out.initial = start;
  return minimize(out);
}

Dfa first_letter_in(const Vocabulary& vocab, LetterSet s) {
  return dfa_intersection(universal_dfa(vocab),
                          itl_to_dfa(letters_formula(s, vocab), vocab));
}

}  // namespace

// ===========================================================================
// Guarded normal form
// ===========================================================================

Formula GuardedNormalForm::to_formula() const {
  Formula out = fm::land(empty_part, fm::empty());
  for (const auto& [g, c] : branches) {
    Formula part = direction == Direction::Future ? fm::land(g, fm::next(c)) : fm::land(fm::prev(c), fm::fin(g));
    out = fm::lor(out, part);
  }
  return out;
}

Formula GuardedNormalForm::universal_form() const {
  Formula out = fm::imp(fm::empty(), empty_part);
  for (const auto& [g, c] : branches) {
    Formula guard = direction == Direction::Future ? g : fm::fin(g);
    Formula step = direction == Direction::Future ? fm::next(c) : fm::prev(c);
    out = fm::land(out, fm::imp(fm::land(guard, fm::neg(fm::empty())), step));
  }
  return out;
}

GuardedNormalForm gnf(const Formula& a, const Vocabulary& vocab, Direction dir) {
  require_introspective(a);
  const Dfa source = itl_to_dfa(a, vocab);
  const Dfa d = dir == Direction::Future ? source : reverse_dfa(source);
  GuardedNormalForm out;
  out.direction = dir;

  LetterSet accepted = 0;
  std::vector<Dfa> conts;
  std::vector<LetterSet> groups;
  for (int c = 0; c < d.letters(); ++c) {
    const Letter s = static_cast<Letter>(c);
    const int q = d.next(d.initial, s);
    if (d.accepting[q]) accepted |= letter_bit(s);
    Dfa cont = rerooted_dfa(d, q);
    std::size_t k = 0;
    while (k < conts.size() && !same_language(conts[k], cont)) ++k;
    if (k == conts.size()) {
      conts.push_back(std::move(cont));
      groups.push_back(0);
    }
    groups[k] |= letter_bit(s);
  }
  out.empty_part = letters_formula(accepted, vocab);
  for (std::size_t k = 0; k < conts.size(); ++k) {
    const Dfa& c = conts[k];
    out.branches.emplace_back(letters_formula(groups[k], vocab),
                              dfa_to_formula(dir == Direction::Future ? c : reverse_dfa(c)));
  }
  verify_equal(out.to_formula(), source, vocab, "guarded normal form");
  verify_equal(out.universal_form(), source, vocab, "universal guarded form");
  return out;
}

GuardedNormalForm gnf(const Formula& a, Direction dir) { return gnf(a, vocabulary_of({a}), dir); }

// ===========================================================================
// Full-system chop decompositions
// ===========================================================================

Formula FullSystemDecomposition::disjunctive_form() const {
  Formula out = flavor == Flavor::Strict ? fm::land(empty_part, fm::empty()) : fm::bottom();
  for (const auto& [l, r] : pairs) {
    switch (flavor) {
      case Flavor::Nonstrict: out = fm::lor(out, fm::chop(l, r)); break;
      case Flavor::Strict: out = fm::lor(out, fm::chop_chain({l, fm::skip(), r})); break;
      case Flavor::Mirror: out = fm::lor(out, fm::chop(r, l)); break;
    }
  }
  return out;
}

Formula FullSystemDecomposition::conjunctive_form() const {
  Formula out = flavor == Flavor::Strict ? fm::imp(fm::empty(), empty_part) : fm::top();
  for (const auto& [l, r] : pairs) {
    Formula bad;
    switch (flavor) {
      case Flavor::Nonstrict: bad = fm::chop(l, fm::neg(r)); break;
      case Flavor::Strict: bad = fm::chop_chain({l, fm::skip(), fm::neg(r)}); break;
      case Flavor::Mirror: bad = fm::chop(fm::neg(r), l); break;
    }
    out = fm::land(out, fm::neg(bad));
  }
  return out;
}

std::optional<std::string> check_decomposition(const Formula& a, const FullSystemDecomposition& d,
                                               const Vocabulary& vocab) {
  const Dfa want = itl_to_dfa(a, vocab);
  if (auto w = dfa_equivalent(itl_to_dfa(d.disjunctive_form(), vocab), want))
    return "disjunctive form differs on " + vocab.format_word(*w);
  if (auto w = dfa_equivalent(itl_to_dfa(d.conjunctive_form(), vocab), want))
    return "conjunctive form differs on " + vocab.format_word(*w);
  Dfa seen = empty_dfa(vocab);
  for (const auto& pr : d.pairs) {
    Dfa g = itl_to_dfa(pr.first, vocab);
    if (auto w = shortest_word(dfa_intersection(seen, g)))
      return "guards overlap on " + vocab.format_word(*w);
    seen = dfa_union(seen, g);
  }
  if (auto w = dfa_equivalent(seen, universal_dfa(vocab)))
    return "guards miss " + vocab.format_word(*w);
  return std::nullopt;
}

FullSystemDecomposition full_system_chop(const Formula& a, const Vocabulary& vocab, Flavor flavor) {
  require_introspective(a);
  const Dfa source = itl_to_dfa(a, vocab);
  const Dfa d = flavor == Flavor::Mirror ? reverse_dfa(source) : source;
  FullSystemDecomposition out;
  out.flavor = flavor;

  if (flavor == Flavor::Strict) {
    LetterSet accepted = 0;
    for (int c = 0; c < d.letters(); ++c)
      if (d.accepting[d.next(d.initial, static_cast<Letter>(c))]) accepted |= letter_bit(static_cast<Letter>(c));
    out.empty_part = letters_formula(accepted, vocab);
  }
  for (int q = 0; q < d.num_states; ++q) {
    Dfa prefix = prefix_dfa(d, q);
    if (is_empty(prefix)) continue;
    Dfa suffix;
    if (flavor == Flavor::Strict) {
      suffix = rerooted_dfa(d, q);
    } else {
      // The shared letter is the one that entered q.
      suffix = dfa_intersection(shared_suffix_dfa(d, q), first_letter_in(vocab, entering_letters(d, q)));
    }
    if (flavor == Flavor::Mirror) {
      prefix = reverse_dfa(prefix);
      suffix = reverse_dfa(suffix);
    }
    out.pairs.emplace_back(dfa_to_formula(prefix), dfa_to_formula(suffix));
  }
  if (auto err = check_decomposition(a, out, vocab)) throw VerificationFailure("full-system chop: " + *err);
  return out;
}

FullSystemDecomposition full_system_chop(const Formula& a, Flavor flavor) {
  return full_system_chop(a, vocabulary_of({a}), flavor);
}

namespace {

struct Cell {
  Formula guard;
  Formula right;
};

constexpr std::size_t kMaxCells = 4096;

void elementary_cells(const std::vector<Formula>& xs, const std::vector<Dfa>& x_dfas,
                      const std::vector<Formula>& ys, std::size_t n, const Dfa& cur, Formula guard,
                      Formula right, std::vector<Cell>& out) {
  if (is_empty(cur)) return;
  if (n == xs.size()) {
    if (out.size() >= kMaxCells) throw GuardExceeded("more than 4096 elementary conjunctions");
    out.push_back({guard, right});
    return;
  }
  elementary_cells(xs, x_dfas, ys, n + 1, dfa_intersection(cur, x_dfas[n]), fm::land(guard, xs[n]),
                   fm::lor(right, ys[n]), out);
  elementary_cells(xs, x_dfas, ys, n + 1, dfa_difference(cur, x_dfas[n]), fm::land(guard, fm::neg(xs[n])),
                   right, out);
}

}  // namespace

FullSystemDecomposition strictify_syntactic(const Formula& a, const FullSystemDecomposition& dec,
                                            const Vocabulary& vocab) {
  if (dec.flavor != Flavor::Nonstrict) throw ShapeError("strictify_syntactic expects a nonstrict decomposition");
  std::vector<Formula> xs, ys, empties;
  std::vector<Dfa> x_dfas;
  auto add = [&](Formula x, Formula y) {
    Dfa xd = itl_to_dfa(x, vocab);
    if (is_empty(xd) || is_empty(itl_to_dfa(y, vocab))) return;
    xs.push_back(std::move(x));
    x_dfas.push_back(std::move(xd));
    ys.push_back(std::move(y));
  };
  for (const auto& [ak, akp] : dec.pairs) {
    GuardedNormalForm g = gnf(ak, vocab, Direction::Past);
    GuardedNormalForm h = gnf(akp, vocab, Direction::Future);
    empties.push_back(fm::land(g.empty_part, h.empty_part));
    for (const auto& [gl, cl] : g.branches)
      add(cl, fm::land(fm::land(gl, h.empty_part), fm::empty()));
    for (const auto& [hm, cm] : h.branches) add(fm::land(ak, fm::fin(hm)), cm);
  }
  FullSystemDecomposition out;
  out.flavor = Flavor::Strict;
  out.empty_part = simplify_constants(fm::lor_all(empties));
  std::vector<Cell> cells;
  elementary_cells(xs, x_dfas, ys, 0, universal_dfa(vocab), fm::top(), fm::bottom(), cells);
  for (auto& c : cells) out.pairs.emplace_back(std::move(c.guard), std::move(c.right));
  if (auto err = check_decomposition(a, out, vocab)) throw VerificationFailure("strictify: " + *err);
  return out;
}

FullSystemDecomposition strictify_syntactic(const Formula& a, const FullSystemDecomposition& dec) {
  return strictify_syntactic(a, dec, vocabulary_of({a}));
}

// ===========================================================================
// w-closure systems
// ===========================================================================

Formula WUnknown::head() const { return fm::land(member, phase); }

std::vector<Formula> WBlockSystem::closure(bool negated) const {
  std::vector<Formula> out;
  for (const auto& u : unknowns)
    if (u.negated == negated) out.push_back(u.member);
  return out;
}

Formula WBlockSystem::equation_formula(int k) const {
  const WEquation& e = equations[k];
  Formula out = e.homogeneous;
  for (const auto& t : e.transitions)
    out = fm::lor(out, fm::chop_chain({t.block, fm::skip(), unknowns[t.target].head()}));
  return out;
}

WBlockSystem w_closure_system(const Formula& a, const Formula& w, const Vocabulary& vocab) {
  require_introspective(a);
  require_state(w);
  WBlockSystem sys;
  sys.vocab = vocab;
  sys.w = w;
  sys.source = itl_to_dfa(a, vocab);
  const Dfa& d = sys.source;
  const LetterSet phase_letters[2] = {state_letters(w, vocab), vocab.all_letters() & ~state_letters(w, vocab)};
  const Formula phases[2] = {w, fm::neg(w)};

  std::vector<Formula> members(d.num_states);
  std::vector<bool> have_member(d.num_states, false);
  auto member = [&](int q) -> const Formula& {
    if (!have_member[q]) {
      members[q] = dfa_to_formula(rerooted_dfa(d, q));
      have_member[q] = true;
    }
    return members[q];
  };
  // Language of B_q ∧ εw.
  auto head_dfa = [&](int q, int e) {
    return dfa_intersection(rerooted_dfa(d, q), first_letter_in(vocab, phase_letters[e]));
  };

  // States with the same residual share one closure member.
  std::vector<int> rep(d.num_states);
  {
    std::vector<Dfa> residuals;
    for (int q = 0; q < d.num_states; ++q) {
      residuals.push_back(rerooted_dfa(d, q));
      rep[q] = q;
      for (int r = 0; r < q; ++r)
        if (rep[r] == r && same_language(residuals[r], residuals[q])) {
          rep[q] = r;
          break;
        }
    }
  }

  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> todo;
  auto intern = [&](int q, int e) {
    q = rep[q];
    auto [it, fresh] = index.emplace(std::make_pair(q, e), static_cast<int>(sys.unknowns.size()));
    if (fresh) {
      sys.unknowns.push_back({q, e == 1, member(q), phases[e]});
      todo.emplace_back(q, e);
    }
    return it->second;
  };
  if (!is_empty(head_dfa(d.initial, 0))) sys.root_pos = intern(d.initial, 0);
  if (!is_empty(head_dfa(d.initial, 1))) sys.root_neg = intern(d.initial, 1);

  for (std::size_t k = 0; k < todo.size(); ++k) {
    const auto [q, e] = todo[k];
    WEquation eq;
    eq.unknown = static_cast<int>(k);
    Dfa homog = restricted_dfa(d, q, phase_letters[e], d.accepting);
    eq.homogeneous = is_empty(homog) ? fm::bottom() : fm::conj(member(q), fm::box(phases[e]));
    for (int r = 0; r < d.num_states; ++r) {
      if (rep[r] != r) continue;
      std::vector<bool> target(d.num_states, false);
      for (int x = 0; x < d.num_states; ++x) target[x] = rep[x] == r;
      Dfa block = restricted_dfa(d, q, phase_letters[e], target);
      if (is_empty(block) || is_empty(head_dfa(r, 1 - e))) continue;
      Formula f = fm::conj(dfa_to_formula(block), fm::box(phases[e]));
      eq.transitions.push_back({f, intern(r, 1 - e)});
    }
    sys.equations.push_back(std::move(eq));
  }
  for (std::size_t k = 0; k < sys.equations.size(); ++k) {
    const WUnknown& u = sys.unknowns[k];
    verify_equal(sys.equation_formula(static_cast<int>(k)), head_dfa(u.dfa_state, u.negated ? 1 : 0), vocab,
                 "closure equation for " + render(u.head()));
  }
  return sys;
}

WBlockSystem w_closure_system(const Formula& a, const Formula& w) {
  return w_closure_system(a, w, vocabulary_of({a, w}));
}

// ===========================================================================
// Canonical equations
// ===========================================================================

Formula ClosedTerm::to_formula() const { return prefix ? fm::chop(*prefix, block) : block; }

Formula solution_formula(const Solution& s) {
  Formula out = fm::bottom();
  for (const auto& t : s) out = fm::lor(out, t.to_formula());
  return out;
}

namespace {

bool r0_shape(const Formula& f) {
  switch (f.kind()) {
    case Kind::Chop:
      if (f[1].is(Kind::Skip)) return true;
      return r0_shape(f[0]) && r0_shape(f[1]);
    case Kind::Or: return r0_shape(f[0]) && r0_shape(f[1]);
    case Kind::ChopStar: return r0_shape(f[0]);
    default: return false;
  }
}

Formula or_merge(const Formula& a, const Formula& b) { return a == b ? a : fm::disj(a, b); }

// Merges closed terms with the same block and terms with the same unknown.
void regroup(Equation& e) {
  std::vector<ClosedTerm> closed;
  for (auto& t : e.closed) {
    auto it = std::find_if(closed.begin(), closed.end(), [&](const ClosedTerm& c) {
      return c.block == t.block && c.tag == t.tag && c.prefix.has_value() == t.prefix.has_value();
    });
    if (it == closed.end()) closed.push_back(std::move(t));
    else if (t.prefix) it->prefix = or_merge(*it->prefix, *t.prefix);
  }
  e.closed = std::move(closed);
  std::vector<EqTerm> terms;
  for (auto& t : e.terms) {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const EqTerm& c) { return c.unknown == t.unknown; });
    if (it == terms.end()) terms.push_back(std::move(t));
    else it->coef = or_merge(it->coef, t.coef);
  }
  e.terms = std::move(terms);
}

ClosedTerm prepend(const Formula& coef, const ClosedTerm& t) {
  return {t.prefix ? fm::chop(coef, *t.prefix) : coef, t.block, t.tag};
}

}  // namespace

std::vector<Solution> solve_equations(const EquationSystem& s) {
  const int n = static_cast<int>(s.equations.size());
  std::vector<Equation> eqs = s.equations;
  for (int k = 0; k < n; ++k) {
    for (const auto& t : eqs[k].terms) {
      if (t.unknown < 0 || t.unknown >= n) throw ShapeError("unknown index out of range");
      if (!r0_shape(t.coef)) throw ShapeError("coefficient is not of the form R_0: " + render(t.coef));
    }
    regroup(eqs[k]);
  }
  std::vector<bool> done(n, false);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    std::size_t best_deps = 0;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      std::size_t deps = 0;
      for (const auto& t : eqs[k].terms) deps += t.unknown != k;
      if (best < 0 || deps < best_deps) best = k, best_deps = deps;
    }
    Equation& e = eqs[best];
    auto self = std::find_if(e.terms.begin(), e.terms.end(), [&](const EqTerm& t) { return t.unknown == best; });
    if (self != e.terms.end()) {
      Formula loop = fm::star(self->coef);
      e.terms.erase(self);
      for (auto& c : e.closed) c = prepend(loop, c);
      for (auto& t : e.terms) t.coef = fm::chop(loop, t.coef);
    }
    for (int k = 0; k < n; ++k) {
      if (done[k] || k == best) continue;
      Equation& o = eqs[k];
      auto it = std::find_if(o.terms.begin(), o.terms.end(), [&](const EqTerm& t) { return t.unknown == best; });
      if (it == o.terms.end()) continue;
      Formula coef = it->coef;
      o.terms.erase(it);
      for (const auto& c : e.closed) o.closed.push_back(prepend(coef, c));
      for (const auto& t : e.terms) o.terms.push_back({fm::chop(coef, t.coef), t.unknown});
      regroup(o);
    }
    done[best] = true;
    order.push_back(best);
  }
  std::vector<Solution> sol(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Equation e = eqs[*it];
    for (const auto& t : e.terms)
      for (const auto& c : sol[t.unknown]) e.closed.push_back(prepend(t.coef, c));
    e.terms.clear();
    regroup(e);
    sol[*it] = std::move(e.closed);
  }
  return sol;
}

EquationSystem to_equation_system(const WBlockSystem& s) {
  EquationSystem out;
  for (const auto& u : s.unknowns) out.names.push_back(render(u.head()));
  for (const auto& e : s.equations) {
    Equation eq;
    const int tag = s.unknowns[e.unknown].negated ? 1 : 0;
    if (!e.homogeneous.is(Kind::False)) eq.closed.push_back({std::nullopt, e.homogeneous, tag});
    for (const auto& t : e.transitions) eq.terms.push_back({fm::chop(t.block, fm::skip()), t.target});
    out.equations.push_back(std::move(eq));
  }
  return out;
}

Formula w_block_normal_form(const Formula& a, const Formula& w, const Vocabulary& vocab) {
  WBlockSystem sys = w_closure_system(a, w, vocab);
  std::vector<Solution> sol = solve_equations(to_equation_system(sys));
  auto part = [&](int root) {
    if (root < 0) return fm::bottom();
    // A^{ε,+} ∨ A^{ε,-}
    Formula by_last[2] = {fm::bottom(), fm::bottom()};
    for (const auto& t : sol[root]) by_last[t.tag] = fm::lor(by_last[t.tag], t.to_formula());
    Formula body = fm::lor(by_last[0], by_last[1]);
    return body.is(Kind::False) ? body : fm::conj(sys.unknowns[root].phase, body);
  };
  Formula out = fm::lor(part(sys.root_pos), part(sys.root_neg));
  verify_equal(out, sys.source, vocab, "w-block normal form");
  return out;
}

Formula w_block_normal_form(const Formula& a, const Formula& w) {
  return w_block_normal_form(a, w, vocabulary_of({a, w}));
}

// ===========================================================================
// Grammar conformance
// ===========================================================================

namespace {

unsigned cls(int first, int last) { return 1u << (2 * first + last); }

class GrammarWalker {
public:
  explicit GrammarWalker(const WGrammar& g) : g_(g) {}

  unsigned r0(const Formula& f) {
    auto it = r0_memo_.find(f);
    if (it != r0_memo_.end()) return it->second;
    unsigned out = 0;
    switch (f.kind()) {
      case Kind::Chop:
        if (f[1].is(Kind::Skip)) {
          int p = g_.block_phase(f[0]);
          if (p >= 0) out |= cls(p, p);
        }
        out |= join(r0(f[0]), r0(f[1]));
        break;
      case Kind::Or: out = r0(f[0]) & r0(f[1]); break;
      case Kind::ChopStar: out = r0(f[0]) & (cls(0, 1) | cls(1, 0)); break;
      default: break;
    }
    r0_memo_.emplace(f, out);
    return out;
  }

  unsigned r(const Formula& f) {
    auto it = r_memo_.find(f);
    if (it != r_memo_.end()) return it->second;
    unsigned out = 0;
    int p = g_.block_phase(f);
    if (p >= 0) out |= cls(p, p);
    if (f.is(Kind::Chop)) {
      int last = g_.block_phase(f[1]);
      if (last >= 0) {
        unsigned a = r0(f[0]);
        for (int e = 0; e < 2; ++e)
          if (a & cls(e, 1 - last)) out |= cls(e, last);
      }
    } else if (f.is(Kind::Or)) {
      out |= r(f[0]) & r(f[1]);
    }
    r_memo_.emplace(f, out);
    return out;
  }

  // Disjunction of R formulas, all with first phase `first`.
  bool r_union(const Formula& f, int first) {
    if (f.is(Kind::Or) && !(r(f) & (cls(first, 0) | cls(first, 1))))
      return r_union(f[0], first) && r_union(f[1], first);
    return r(f) & (cls(first, 0) | cls(first, 1));
  }

  // Coarse grammar: any phases combine, star on any R_0.
  bool r0_coarse(const Formula& f, int only) {
    switch (f.kind()) {
      case Kind::Chop:
        if (f[1].is(Kind::Skip) && block_ok(f[0], only)) return true;
        return r0_coarse(f[0], only) && r0_coarse(f[1], only);
      case Kind::Or: return r0_coarse(f[0], only) && r0_coarse(f[1], only);
      case Kind::ChopStar: return r0_coarse(f[0], only);
      default: return false;
    }
  }

  bool r_coarse(const Formula& f, int only) {
    if (block_ok(f, only)) return true;
    if (f.is(Kind::Or)) return r_coarse(f[0], only) && r_coarse(f[1], only);
    if (f.is(Kind::Chop)) return block_ok(f[1], only) && r0_coarse(f[0], only);
    return false;
  }

private:
  bool block_ok(const Formula& f, int only) {
    int p = g_.block_phase(f);
    return p >= 0 && (only < 0 || p == only);
  }

  static unsigned join(unsigned a, unsigned b) {
    unsigned out = 0;
    for (int e = 0; e < 2; ++e)
      for (int m = 0; m < 2; ++m)
        for (int l = 0; l < 2; ++l)
          if ((a & cls(e, m)) && (b & cls(1 - m, l))) out |= cls(e, l);
    return out;
  }

  const WGrammar& g_;
  std::unordered_map<Formula, unsigned, FormulaHash> r0_memo_, r_memo_;
};

}  // namespace

int WGrammar::block_phase(const Formula& f) const {
  if (!f.is(Kind::And) || !f[1].is(Kind::Box)) return -1;
  if (f[1][0] == w) return 0;
  if (f[1][0] == not_w) return 1;
  return -1;
}

unsigned WGrammar::r0_classes(const Formula& f) const { return GrammarWalker(*this).r0(f); }
unsigned WGrammar::r_classes(const Formula& f) const { return GrammarWalker(*this).r(f); }

bool WGrammar::conforms(const Formula& f) const {
  GrammarWalker walk(*this);
  std::vector<Formula> parts;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula x = stack.back();
    stack.pop_back();
    if (x.is(Kind::False)) continue;
    if (x.is(Kind::Or)) {
      stack.push_back(x[1]);
      stack.push_back(x[0]);
      continue;
    }
    if (!x.is(Kind::And)) return false;
    int first = x[0] == w ? 0 : x[0] == not_w ? 1 : -1;
    if (first < 0 || !walk.r_union(x[1], first)) return false;
  }
  return true;
}

bool WGrammar::conforms_coarse(const Formula& f, int only) const {
  return f.is(Kind::False) || GrammarWalker(*this).r_coarse(f, only);
}

std::vector<Formula> w_blocks(const Formula& f, const WGrammar& g) {
  std::vector<Formula> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula x = stack.back();
    stack.pop_back();
    if (g.block_phase(x) >= 0) {
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
      continue;
    }
    if (x.is(Kind::Or) || x.is(Kind::Chop) || x.is(Kind::ChopStar) || x.is(Kind::And)) {
      for (auto it = x.children().rbegin(); it != x.children().rend(); ++it) stack.push_back(*it);
    }
  }
  return out;
}

}  // namespace itl
