#include "itlnl/omega.hpp"

#include <algorithm>
#include <unordered_map>

#include "itlnl/compile.hpp"
#include "itlnl/normal_forms.hpp"
#include "itlnl/simplify.hpp"
#include "itlnl/syntax.hpp"

namespace itl {

// ===========================================================================
// Fin and reactivity
// ===========================================================================

Formula fin_formula(const Dfa& x) {
  if (is_empty(x)) return fm::top();
  FullSystemDecomposition dec = full_system_chop(dfa_to_formula(x), x.vocab, Flavor::Nonstrict);
  Formula body = fm::bottom();
  for (const auto& [c, cp] : dec.pairs) {
    Formula never = cp.is(Kind::False) ? fm::top() : fm::br(fm::lnot(cp));
    body = fm::lor(body, fm::land(c, never));
  }
  return fm::dr(body);
}

ReactivityForm reactivity_normal_form(const Nba& n, int guard) {
  const Dpa d = nba_determinize(n, guard);
  std::vector<int> odd;
  for (int q = 0; q < d.num_states; ++q)
    if (d.priority[q] % 2 && std::find(odd.begin(), odd.end(), d.priority[q]) == odd.end())
      odd.push_back(d.priority[q]);
  std::sort(odd.begin(), odd.end());
  ReactivityForm out;
  out.formula = fm::top();
  for (int o : odd) {
    Dfa bad = dpa_landing_dfa(d, [o](int pr) { return pr == o; });
    Dfa rescue = dpa_landing_dfa(d, [o](int pr) { return pr % 2 == 0 && pr < o; });
    if (is_empty(bad)) continue;
    Formula part = is_empty(rescue) ? fin_formula(bad) : fm::imp(fin_formula(rescue), fin_formula(bad));
    out.formula = fm::land(out.formula, part);
    out.pairs.emplace_back(std::move(bad), std::move(rescue));
  }
  return out;
}

// ===========================================================================
// Quantifier elimination
// ===========================================================================

namespace {

std::set<std::string> relevant(const std::set<std::string>& hide, const Formula& a) {
  std::set<std::string> fv = free_vars(a), out;
  for (const auto& p : hide)
    if (fv.count(p)) out.insert(p);
  return out;
}

// Replaces each strict atom by the formula it amounts to at (0, 0) of the
// adjacent ray: <r>(skip ; G) -> <r> G, and for past atoms the mirror image.
Formula anchor(const Formula& a) {
  if (is_boolean(a.kind())) {
    std::vector<Formula> kids;
    for (const auto& c : a.children()) kids.push_back(anchor(c));
    return Formula::make(a.kind(), std::move(kids));
  }
  if (is_strict_future_atom(a)) return fm::dr(strict_future_body(a));
  if (is_strict_past_atom(a)) return fm::dr(time_reverse(strict_past_body(a)));
  return a;
}

Formula exists_elim_dfa(const std::set<std::string>& hide, const Formula& a, const Vocabulary& vocab) {
  Dfa d = itl_to_dfa(a, vocab);
  for (const auto& p : hide) d = determinize_minimize(relabel_dont_care(d, p));
  return dfa_to_formula(d);
}

}  // namespace

Formula exists_elim_introspective(const std::set<std::string>& hide, const Formula& a) {
  if (!is_local(a)) throw FragmentError("introspective formula expected: " + render(a));
  auto h = relevant(hide, a);
  if (h.empty()) return a;
  const Vocabulary vocab = vocabulary_of({a});
  return tidy(exists_elim_dfa(h, a, vocab), vocab);
}

Formula exists_elim_introspective(const std::string& p, const Formula& a) {
  return exists_elim_introspective(std::set<std::string>{p}, a);
}

namespace {

void split_and(const Formula& a, std::vector<Formula>& out) {
  if (a.is(Kind::And))
    for (const auto& c : a.children()) split_and(c, out);
  else
    out.push_back(a);
}

}  // namespace

Formula exists_elim_future(const std::set<std::string>& hide, const Formula& f, const Vocabulary& vocab,
                           int guard) {
  if (f.is(Kind::True) || f.is(Kind::False)) return f;
  // Conjuncts without hidden variables stay outside the quantifier.
  std::vector<Formula> parts;
  split_and(f, parts);
  Formula kept = fm::top(), inner = fm::top();
  for (const auto& c : parts) {
    Formula& slot = relevant(hide, c).empty() ? kept : inner;
    slot = fm::land(slot, c);
  }
  if (inner.is(Kind::True)) return kept;
  if (is_strict_future_atom(inner) && is_local(strict_future_body(inner))) {
    Formula body = exists_elim_introspective(hide, strict_future_body(inner));
    return fm::land(kept, fm::dr(fm::chop(fm::skip(), body)));
  }
  if (!kept.is(Kind::True)) return fm::land(kept, exists_elim_future(hide, inner, vocab, guard));
  Nba n = future_to_nba(anchor(f), vocab, guard);
  for (const auto& p : hide)
    if (vocab.contains(p)) n = reduce(relabel_dont_care(n, p));
  if (nba_is_empty(n)) return fm::bottom();
  if (nba_is_empty(nba_complement(n, guard))) return fm::top();  // every ray has a witness
  Formula h = reactivity_normal_form(n, guard).formula;
  return fm::dr(fm::chop(fm::skip(), fm::land(fm::empty(), h)));
}

Formula exists_elim(const std::set<std::string>& hide, const Formula& a, int guard) {
  auto h = relevant(hide, a);
  if (h.empty()) return a;
  if (is_local(a)) return exists_elim_introspective(h, a);
  const Vocabulary vocab = vocabulary_of({a});
  SeparatedDnf dnf = separated_dnf(a);
  using Memo = std::unordered_map<Formula, Formula, FormulaHash>;
  Memo past_memo, local_memo, future_memo;
  auto cached = [](Memo& memo, const Formula& key, auto&& compute) {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Formula v = compute();
    memo.emplace(key, v);
    return v;
  };
  Formula out = fm::bottom();
  for (const auto& d : dnf.disjuncts) {
    Formula c = cached(local_memo, d.introspective, [&] {
      return relevant(h, d.introspective).empty() ? d.introspective : exists_elim_dfa(h, d.introspective, vocab);
    });
    if (c.is(Kind::False)) continue;
    Formula f = cached(future_memo, d.future, [&] {
      return relevant(h, d.future).empty() ? d.future : exists_elim_future(h, d.future, vocab, guard);
    });
    if (f.is(Kind::False)) continue;
    Formula p = cached(past_memo, d.past, [&] {
      if (relevant(h, d.past).empty()) return d.past;
      return time_reverse(exists_elim_future(h, time_reverse(d.past), vocab, guard));
    });
    out = fm::lor(out, fm::land_all({p, c, f}));
  }
  return tidy(out, vocab);
}

Formula exists_elim(const std::string& p, const Formula& a, int guard) {
  return exists_elim(std::set<std::string>{p}, a, guard);
}

Formula strongest_consequence(const Formula& a, const std::set<std::string>& hide, int guard) {
  return exists_elim(hide, a, guard);
}

// ===========================================================================
// Separated models and decisions
// ===========================================================================

std::string format_bilasso(const BiLasso& m, const Vocabulary& vocab) {
  auto lasso = [&](const Lasso& l) {
    return "u=[" + vocab.format_word(l.stem) + "] v=[" + vocab.format_word(l.loop) + "]";
  };
  return "past (leftwards) " + lasso(m.past) + " # body " + vocab.format_word(m.body) + " # future " +
         lasso(m.future);
}

bool eval_separated(const BiLasso& m, const Formula& a, const Vocabulary& vocab) {
  switch (a.kind()) {
    case Kind::False: return false;
    case Kind::True: return true;
    case Kind::Not: return !eval_separated(m, a[0], vocab);
    case Kind::And: return eval_separated(m, a[0], vocab) && eval_separated(m, a[1], vocab);
    case Kind::Or: return eval_separated(m, a[0], vocab) || eval_separated(m, a[1], vocab);
    case Kind::Imp: return !eval_separated(m, a[0], vocab) || eval_separated(m, a[1], vocab);
    case Kind::Iff: return eval_separated(m, a[0], vocab) == eval_separated(m, a[1], vocab);
    default: break;
  }
  if (is_local(a)) return itl_to_dfa(a, vocab).accepts(m.body);
  if (is_strict_future_atom(a)) return eval_lasso(m.future, fm::dr(strict_future_body(a)), vocab);
  if (is_strict_past_atom(a)) return eval_lasso(m.past, fm::dr(time_reverse(strict_past_body(a))), vocab);
  throw NotSeparated(render(a));
}

namespace {

std::optional<Lasso> ray_model(const Formula& component, const Vocabulary& vocab, int guard) {
  if (component.is(Kind::True)) return Lasso{{}, {0}};
  Nba n = future_to_nba(anchor(component), vocab, guard);
  return nba_find_lasso(n);
}

std::optional<BiLasso> satisfiable(const Formula& a, const Vocabulary& vocab, int guard) {
  SeparatedDnf dnf = separated_dnf(a);
  for (const auto& d : dnf.disjuncts) {
    auto body = shortest_word(itl_to_dfa(d.introspective, vocab));
    if (!body) continue;
    auto fut = ray_model(d.future, vocab, guard);
    if (!fut) continue;
    auto past = ray_model(time_reverse(d.past), vocab, guard);
    if (!past) continue;
    return BiLasso{*past, *body, *fut};
  }
  return std::nullopt;
}

}  // namespace

Decision decide_separated(Query q, const Formula& a, const Vocabulary& vocab, int guard) {
  Decision out;
  if (q == Query::Sat) {
    out.witness = satisfiable(a, vocab, guard);
    out.value = out.witness.has_value();
  } else {
    out.witness = satisfiable(fm::neg(a), vocab, guard);
    out.value = !out.witness.has_value();
  }
  return out;
}

Decision decide_separated(Query q, const Formula& a) { return decide_separated(q, a, vocabulary_of({a})); }

// ===========================================================================
// Validity, interpolation, definability
// ===========================================================================

const char* check_name(Check c) {
  switch (c) {
    case Check::Exact: return "exact";
    case Check::Decided: return "decided";
    case Check::Bounded: return "bounded";
  }
  return "?";
}

ValidityReport check_valid(const Formula& a, const Vocabulary& vocab, std::size_t max_len, int guard) {
  ValidityReport r;
  if (is_local(a)) {
    r.method = Check::Exact;
    if (auto w = shortest_word(dfa_complement(itl_to_dfa(a, vocab)))) {
      r.valid = false;
      r.window = Window{*w, 0, w->size() - 1};
      r.counterexample = vocab.format_word(*w) + " # ref 0 " + std::to_string(w->size() - 1);
    }
    return r;
  }
  try {
    Decision d = decide_separated(Query::Valid, a, vocab, guard);
    r.method = Check::Decided;
    r.valid = d.value;
    if (d.witness) r.counterexample = format_bilasso(*d.witness, vocab);
    return r;
  } catch (const FragmentError&) {
  }
  r.method = Check::Bounded;
  enumerate_models(vocab, max_len, [&](const Window& w) {
    if (eval_window(w, a, vocab).truth) return true;
    r.valid = false;
    r.window = w;
    r.counterexample =
        vocab.format_word(w.states) + " # ref " + std::to_string(w.ref_i) + " " + std::to_string(w.ref_j);
    return false;
  });
  return r;
}

Interpolant interpolate(const Formula& a, const Formula& b, int guard) {
  const Vocabulary vocab = vocabulary_of({a, b});
  ValidityReport pre = check_valid(fm::imp(a, b), vocab, 5, guard);
  if (!pre.valid) throw ImplicationInvalid("implication invalid, counterexample " + pre.counterexample, pre);
  std::set<std::string> va = free_vars(a), vb = free_vars(b), hide;
  for (const auto& p : va)
    if (!vb.count(p)) hide.insert(p);
  Interpolant out;
  out.formula = strongest_consequence(a, hide, guard);
  for (const auto& p : free_vars(out.formula))
    if (!va.count(p) || !vb.count(p)) throw VerificationFailure("interpolant mentions " + p);
  out.premise_check = pre.method;
  ValidityReport post = check_valid(fm::imp(out.formula, b), vocab, 5, guard);
  if (!post.valid) {
    if (pre.method == Check::Bounded)
      throw ImplicationInvalid("implication invalid, counterexample " + post.counterexample, post);
    throw VerificationFailure("interpolant does not imply the conclusion: " + post.counterexample);
  }
  out.conclusion_check = post.method;
  return out;
}

Definition beth_define(const Formula& a, const std::string& p, std::size_t max_len, int guard) {
  if (!free_vars(a).count(p)) throw FragmentError(p + " does not occur in " + render(a));
  Vocabulary vocab = vocabulary_of({a});
  const std::string q = vocab.fresh(p);
  const Formula aq = substitute_var(a, p, q);
  const Vocabulary wide = vocab.with(q);
  const int ip = wide.index_of(p), iq = wide.index_of(q);

  // Two readings of p over one window, A holding on every interval of it.
  enumerate_sequences(wide, max_len, [&](const Word& s) {
    std::size_t diff = s.size();
    for (std::size_t k = 0; k < s.size() && diff == s.size(); ++k)
      if (((s[k] >> ip) & 1u) != ((s[k] >> iq) & 1u)) diff = k;
    if (diff == s.size()) return true;
    IntervalTable ta = eval_table(s, a, wide), tq = eval_table(s, aq, wide);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i; j < s.size(); ++j)
        if (!ta(i, j) || !tq(i, j)) return true;
    // Shown over the remaining variables: the two readings of p differ at `diff`.
    std::vector<std::string> rest;
    for (const auto& n : wide.names())
      if (n != p && n != q) rest.push_back(n);
    const Vocabulary shown(rest);
    Word t;
    for (Letter a : s) {
      Letter b = 0;
      for (std::size_t k = 0; k < rest.size(); ++k)
        if ((a >> wide.index_of(rest[k])) & 1u) b |= Letter{1} << k;
      t.push_back(b);
    }
    throw NotImplicitlyDefined("not implicitly defined: " + shown.format_word(t) + " # ref " +
                                   std::to_string(diff) + " " + std::to_string(diff),
                               Window{s, diff, diff});
  });

  const Formula pv = fm::var(p), qv = fm::var(q);
  Interpolant c;
  try {
    c = interpolate(fm::conj(a, pv), fm::imp(aq, qv), guard);
  } catch (const ImplicationInvalid& e) {
    throw FragmentError("the reference interval alone does not determine " + p + " (" + e.report.counterexample +
                        "); a definition would need the universal modality");
  }
  ValidityReport ex = check_valid(fm::imp(a, fm::iff(pv, c.formula)), vocab, max_len, guard);
  if (!ex.valid) throw VerificationFailure("definition check failed: " + ex.counterexample);
  return {c.formula, Check::Bounded, ex.method};
}

}  // namespace itl
