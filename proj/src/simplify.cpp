#include "itlnl/simplify.hpp"

#include <map>
#include <unordered_map>

#include "itlnl/compile.hpp"
#include "itlnl/syntax.hpp"

namespace itl {

namespace {

std::vector<int> dfa_key(const Dfa& d) {
  std::vector<int> k{d.num_states, d.initial};
  k.insert(k.end(), d.delta.begin(), d.delta.end());
  for (bool b : d.accepting) k.push_back(b);
  return k;
}

class Catalogue {
public:
  explicit Catalogue(const Vocabulary& v) : v_(v) {
    // Small state formulas, smallest per letter set.
    std::vector<Formula> lits{fm::top(), fm::bottom()};
    for (const auto& n : v.names()) {
      lits.push_back(fm::var(n));
      lits.push_back(fm::neg(fm::var(n)));
    }
    std::map<LetterSet, Formula> state;
    auto offer_state = [&](const Formula& f) {
      LetterSet s = state_letters(f, v);
      auto it = state.find(s);
      if (it == state.end() || f.size() < it->second.size()) state[s] = f;
    };
    for (const auto& l : lits) offer_state(l);
    const std::size_t base = lits.size();
    for (std::size_t i = 2; i < base; ++i)
      for (std::size_t j = i + 1; j < base; ++j) {
        offer_state(fm::conj(lits[i], lits[j]));
        offer_state(fm::disj(lits[i], lits[j]));
      }
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        offer_state(fm::iff(fm::var(v.name(i)), fm::var(v.name(j))));
        offer_state(fm::neg(fm::iff(fm::var(v.name(i)), fm::var(v.name(j)))));
      }

    offer(fm::empty());
    offer(fm::skip());
    offer(fm::neg(fm::empty()));
    for (const auto& [s, w] : state) {
      offer(w);
      if (w.is(Kind::True) || w.is(Kind::False)) continue;
      offer(fm::conj(w, fm::empty()));
      offer(fm::conj(w, fm::skip()));
      offer(fm::conj(w, fm::neg(fm::empty())));
      offer(fm::box(w));
      offer(fm::dia(w));
      offer(fm::fin(w));
      offer(fm::di(w));
      offer(fm::bi(w));
      offer(fm::next(w));
    }
    for (std::size_t i = 2; i < base; ++i)
      for (std::size_t j = 2; j < base; ++j) offer(fm::chop(lits[i], lits[j]));
  }

  /// Smallest catalogued formula with the language of `a`, if any.
  const Formula* find(const Formula& a) const {
    auto it = table_.find(dfa_key(itl_to_dfa(a, v_)));
    return it == table_.end() ? nullptr : &it->second;
  }

private:
  void offer(const Formula& f) {
    auto k = dfa_key(itl_to_dfa(f, v_));
    auto it = table_.find(k);
    if (it == table_.end() || f.size() < it->second.size()) table_[k] = f;
  }

  Vocabulary v_;
  std::map<std::vector<int>, Formula> table_;
};

class Tidier {
public:
  explicit Tidier(const Vocabulary& v) : cat_(v) {}

  Formula run(const Formula& a) {
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    Formula out = step(a);
    memo_.emplace(a, out);
    return out;
  }

private:
  Formula step(const Formula& a) {
    if (a.children().empty()) return a;
    // Strict atoms keep their syntactic shape; only the body is tidied.
    if (is_strict_future_atom(a)) return fm::dr(fm::chop(fm::skip(), run(strict_future_body(a))));
    if (is_strict_past_atom(a)) return fm::dl(fm::chop(run(strict_past_body(a)), fm::skip()));
    if (is_introspective(a))
      if (const Formula* c = cat_.find(a); c && c->size() < a.size()) return *c;
    std::vector<Formula> kids;
    for (const auto& c : a.children()) kids.push_back(run(c));
    Formula out = simplify_constants(Formula::make(a.kind(), std::move(kids), a.name()));
    return out.size() < a.size() ? out : a;
  }

  Catalogue cat_;
  std::unordered_map<Formula, Formula, FormulaHash> memo_;
};

}  // namespace

Formula tidy(const Formula& a, const Vocabulary& vocab) { return Tidier(vocab).run(a); }

Formula tidy(const Formula& a) { return tidy(a, vocabulary_of({a})); }

}  // namespace itl
