#include "itlnl/semantics.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "itlnl/compile.hpp"
#include "itlnl/error.hpp"
#include "itlnl/syntax.hpp"

namespace itl {

// ===========================================================================
// Finite sequences
// ===========================================================================

namespace {

class TableEvaluator {
public:
  TableEvaluator(const Word& s, const Vocabulary& v, const EvalOptions& opt)
      : s_(s), n_(s.size()), vocab_(v), opt_(opt) {}

  const IntervalTable& operator()(const Formula& a) {
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    IntervalTable t = build(a);
    return memo_.emplace(a, std::move(t)).first->second;
  }

private:
  template <class F>
  IntervalTable fill(F&& f) {
    IntervalTable t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) t.set(i, j, f(i, j));
    return t;
  }

  bool holds_var(const std::string& p, Letter a) const {
    int k = vocab_.index_of(p);
    if (k < 0) throw UndeclaredVariable(p);
    return (a >> k) & 1u;
  }

  IntervalTable build(const Formula& a) {
    switch (a.kind()) {
      case Kind::False: return fill([](auto, auto) { return false; });
      case Kind::True: return fill([](auto, auto) { return true; });
      case Kind::Var: {
        const std::string& p = a.name();
        return fill([&](std::size_t i, std::size_t) { return holds_var(p, s_[i]); });
      }
      case Kind::Empty: return fill([](std::size_t i, std::size_t j) { return i == j; });
      case Kind::Skip: return fill([](std::size_t i, std::size_t j) { return j == i + 1; });
      default: break;
    }
    if (a.is(Kind::Exists)) return exists(a);
    if (a.is(Kind::Proj)) return proj(a);
    if (a.is(Kind::ProjInv)) return projinv(a);
    if (a.is(Kind::DiamondA)) return (*this)(fm::dr(fm::dr(fm::dl(fm::dl(a[0])))));
    if (a.is(Kind::BoxA)) return (*this)(fm::neg(fm::dia_a(fm::neg(a[0]))));

    const IntervalTable x = (*this)(a[0]);
    const IntervalTable y = a.children().size() > 1 ? (*this)(a[1]) : IntervalTable();
    switch (a.kind()) {
      case Kind::Not: return fill([&](auto i, auto j) { return !x(i, j); });
      case Kind::And: return fill([&](auto i, auto j) { return x(i, j) && y(i, j); });
      case Kind::Or: return fill([&](auto i, auto j) { return x(i, j) || y(i, j); });
      case Kind::Imp: return fill([&](auto i, auto j) { return !x(i, j) || y(i, j); });
      case Kind::Iff: return fill([&](auto i, auto j) { return x(i, j) == y(i, j); });
      case Kind::Next: return fill([&](auto i, auto j) { return j > i && x(i + 1, j); });
      case Kind::Prev: return fill([&](auto i, auto j) { return j > i && x(i, j - 1); });
      case Kind::Chop:
        return fill([&](std::size_t i, std::size_t j) {
          for (std::size_t k = i; k <= j; ++k)
            if (x(i, k) && y(k, j)) return true;
          return false;
        });
      case Kind::ChopStar: {
        IntervalTable t(n_);
        for (std::size_t i = n_; i-- > 0;)
          for (std::size_t j = i; j < n_; ++j) {
            bool v = i == j;
            for (std::size_t k = i + 1; k <= j && !v; ++k) v = x(i, k) && t(k, j);
            t.set(i, j, v);
          }
        return t;
      }
      case Kind::DiamondL:
      case Kind::BoxL:
        return fill([&](std::size_t i, std::size_t) {
          const bool dia = a.is(Kind::DiamondL);
          for (std::size_t k = 0; k <= i; ++k)
            if (x(k, i) == dia) return dia;
          return !dia;
        });
      case Kind::DiamondR:
      case Kind::BoxR:
        return fill([&](std::size_t, std::size_t j) {
          const bool dia = a.is(Kind::DiamondR);
          for (std::size_t k = j; k < n_; ++k)
            if (x(j, k) == dia) return dia;
          return !dia;
        });
      case Kind::Diamond:
      case Kind::Box:
        return fill([&](std::size_t i, std::size_t j) {
          const bool dia = a.is(Kind::Diamond);
          for (std::size_t k = i; k <= j; ++k)
            if (x(k, j) == dia) return dia;
          return !dia;
        });
      case Kind::Di:
      case Kind::Bi:
        return fill([&](std::size_t i, std::size_t j) {
          const bool dia = a.is(Kind::Di);
          for (std::size_t k = i; k <= j; ++k)
            if (x(i, k) == dia) return dia;
          return !dia;
        });
      case Kind::Fin: return fill([&](auto, auto j) { return x(j, j); });
      default: break;
    }
    throw Error(std::string("evaluation of ") + kind_name(a.kind()) + " not supported");
  }

  IntervalTable exists(const Formula& a) {
    const std::string& p = a.name();
    Vocabulary v = vocab_.with(p);
    const Letter bit = Letter{1} << v.index_of(p);
    // Re-encode the sequence over v (identity if p is already declared).
    Word base(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      Letter x = 0;
      for (std::size_t b = 0; b < vocab_.size(); ++b)
        if ((s_[k] >> b) & 1u) x |= Letter{1} << v.index_of(vocab_.name(b));
      base[k] = x & ~bit;
    }
    IntervalTable out(n_);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n_); ++m) {
      Word t = base;
      for (std::size_t k = 0; k < n_; ++k)
        if ((m >> k) & 1u) t[k] |= bit;
      IntervalTable x = TableEvaluator(t, v, opt_)(a[0]);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
          if (x(i, j)) out.set(i, j, true);
    }
    return out;
  }

  IntervalTable proj(const Formula& a) {
    return fill([&](std::size_t i, std::size_t j) {
      Word sub;
      for (std::size_t k = i; k <= j; ++k)
        if (eval_state(a[0], s_[k], vocab_)) sub.push_back(s_[k]);
      if (sub.empty()) return false;
      return eval_table(sub, a[1], vocab_, opt_)(0, sub.size() - 1);
    });
  }

  IntervalTable projinv(const Formula& a) {
    std::vector<Letter> others;
    for (int c = 0; c < vocab_.letters(); ++c)
      if (!eval_state(a[0], static_cast<Letter>(c), vocab_)) others.push_back(static_cast<Letter>(c));
    std::map<Word, bool> cache;
    return fill([&](std::size_t i, std::size_t j) {
      Word sub(s_.begin() + i, s_.begin() + j + 1);
      for (Letter x : sub)
        if (!eval_state(a[0], x, vocab_)) return false;
      auto it = cache.find(sub);
      if (it != cache.end()) return it->second;
      bool found = false;
      // Gap g precedes sub[g]; gap sub.size() is after the last state.
      std::function<void(std::size_t, int, Word&)> go = [&](std::size_t g, int used, Word& acc) {
        if (found) return;
        auto place = [&](auto&& self, int in_gap) -> void {
          if (found) return;
          if (g < sub.size()) {
            acc.push_back(sub[g]);
            go(g + 1, used + in_gap, acc);
            acc.pop_back();
          } else if (eval_table(acc, a[1], vocab_, opt_)(0, acc.size() - 1)) {
            found = true;
          }
          if (in_gap == opt_.budget || used + in_gap == opt_.total_budget) return;
          for (Letter x : others) {
            acc.push_back(x);
            self(self, in_gap + 1);
            acc.pop_back();
            if (found) return;
          }
        };
        place(place, 0);
      };
      Word acc;
      go(0, 0, acc);
      cache.emplace(sub, found);
      return found;
    });
  }

  const Word& s_;
  std::size_t n_;
  Vocabulary vocab_;
  EvalOptions opt_;
  std::unordered_map<Formula, IntervalTable, FormulaHash> memo_;
};

}  // namespace

IntervalTable eval_table(const Word& states, const Formula& a, const Vocabulary& vocab,
                         const EvalOptions& opt) {
  if (states.empty()) throw Error("evaluation needs a non-empty sequence");
  return TableEvaluator(states, vocab, opt)(a);
}

bool exact_on_windows(const Formula& a) {
  if (!is_local(a)) return false;
  std::function<bool(const Formula&)> no_projinv = [&](const Formula& x) {
    if (x.is(Kind::ProjInv)) return false;
    for (const auto& c : x.children())
      if (!no_projinv(c)) return false;
    return true;
  };
  return no_projinv(a);
}

EvalResult eval_window(const Window& w, const Formula& a, const Vocabulary& vocab,
                       const EvalOptions& opt) {
  if (w.ref_i > w.ref_j || w.ref_j >= w.states.size()) throw Error("reference interval outside the window");
  return {eval_table(w.states, a, vocab, opt)(w.ref_i, w.ref_j), exact_on_windows(a)};
}

// ===========================================================================
// Lassos
// ===========================================================================

struct LassoEvaluator::Impl {
  // Boolean skeleton over local leaves (decided by DFAs) and <r>-atoms.
  struct Node {
    Kind kind;
    std::vector<int> kids;
    int leaf = -1;
    int atom = -1;
  };
  struct Skeleton {
    std::vector<Node> nodes;  // root last
    std::vector<Dfa> leaves;
  };

  Vocabulary vocab;
  Skeleton top;
  std::vector<Skeleton> atoms;  // body of atom k; nested atoms have smaller ids
  std::unordered_map<Formula, int, FormulaHash> atom_ids;

  int add_node(Skeleton& s, const Formula& a) {
    Node n{a.kind(), {}, -1, -1};
    if (is_local(a)) {
      n.leaf = static_cast<int>(s.leaves.size());
      s.leaves.push_back(itl_to_dfa(a, vocab));
    } else if (a.is(Kind::DiamondR)) {
      n.atom = atom_id(a);
    } else if (is_boolean(a.kind())) {
      for (const auto& c : a.children()) n.kids.push_back(add_node(s, c));
    } else {
      throw FragmentError("not a future formula: " + render(a));
    }
    s.nodes.push_back(std::move(n));
    return static_cast<int>(s.nodes.size()) - 1;
  }

  int atom_id(const Formula& a) {
    auto it = atom_ids.find(a);
    if (it != atom_ids.end()) return it->second;
    Skeleton body;
    add_node(body, a[0]);
    atoms.push_back(std::move(body));
    int id = static_cast<int>(atoms.size()) - 1;
    atom_ids.emplace(a, id);
    return id;
  }

  static bool eval(const Skeleton& s, int node, const std::vector<int>& states,
                   const std::vector<std::vector<char>>& atom_value, std::size_t cls) {
    const Node& n = s.nodes[node];
    if (n.leaf >= 0) return s.leaves[n.leaf].accepting[states[n.leaf]];
    if (n.atom >= 0) return atom_value[n.atom][cls];
    auto k = [&](int i) { return eval(s, n.kids[i], states, atom_value, cls); };
    switch (n.kind) {
      case Kind::False: return false;
      case Kind::True: return true;
      case Kind::Not: return !k(0);
      case Kind::And: return k(0) && k(1);
      case Kind::Or: return k(0) || k(1);
      case Kind::Imp: return !k(0) || k(1);
      case Kind::Iff: return k(0) == k(1);
      default: return false;
    }
  }

  // Some k >= start with the skeleton true on [start, k].
  static bool scan(const Skeleton& s, const Lasso& l, std::size_t start,
                   const std::vector<std::vector<char>>& atom_value) {
    std::vector<int> states;
    for (const auto& d : s.leaves) states.push_back(d.initial);
    std::set<std::pair<std::vector<int>, std::size_t>> seen;
    for (std::size_t k = start;; ++k) {
      const Letter a = l.at(k);
      for (std::size_t x = 0; x < states.size(); ++x) states[x] = s.leaves[x].next(states[x], a);
      const std::size_t cls = l.class_of(k);
      if (eval(s, static_cast<int>(s.nodes.size()) - 1, states, atom_value, cls)) return true;
      if (!seen.emplace(states, cls).second) return false;
    }
  }

  bool run(const Lasso& l) const {
    if (l.loop.empty()) throw Error("lasso loop must be non-empty");
    const std::size_t C = l.classes();
    std::vector<std::vector<char>> value(atoms.size(), std::vector<char>(C, 0));
    for (std::size_t id = 0; id < atoms.size(); ++id)
      for (std::size_t c = 0; c < C; ++c) value[id][c] = scan(atoms[id], l, c, value);
    std::vector<int> states;
    for (const auto& d : top.leaves) states.push_back(d.next(d.initial, l.at(0)));
    return eval(top, static_cast<int>(top.nodes.size()) - 1, states, value, 0);
  }
};

LassoEvaluator::LassoEvaluator(const Formula& f, const Vocabulary& vocab) : impl_(std::make_unique<Impl>()) {
  impl_->vocab = vocab;
  impl_->add_node(impl_->top, normalize_future(f));
}

LassoEvaluator::~LassoEvaluator() = default;
LassoEvaluator::LassoEvaluator(LassoEvaluator&&) noexcept = default;

bool LassoEvaluator::operator()(const Lasso& l) const { return impl_->run(l); }

bool eval_lasso(const Lasso& l, const Formula& f, const Vocabulary& vocab) {
  return LassoEvaluator(f, vocab)(l);
}

// ===========================================================================
// Enumeration
// ===========================================================================

void enumerate_sequences(const Vocabulary& vocab, std::size_t max_len,
                         const std::function<bool(const Word&)>& visit) {
  const Letter top = static_cast<Letter>(vocab.letters() - 1);
  for (std::size_t len = 1; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      if (!visit(w)) return;
      std::size_t k = len;
      while (k > 0 && w[k - 1] == top) w[--k] = 0;
      if (k == 0) break;
      ++w[k - 1];
    }
  }
}

void enumerate_models(const Vocabulary& vocab, std::size_t max_len,
                      const std::function<bool(const Window&)>& visit) {
  enumerate_sequences(vocab, max_len, [&](const Word& w) {
    Window win{w, 0, 0};
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i; j < w.size(); ++j) {
        win.ref_i = i;
        win.ref_j = j;
        if (!visit(win)) return false;
      }
    return true;
  });
}

std::size_t count_models(const Vocabulary& vocab, std::size_t max_len) {
  std::size_t total = 0, seqs = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    seqs *= static_cast<std::size_t>(vocab.letters());
    total += seqs * len * (len + 1) / 2;
  }
  return total;
}

EquivResult bounded_equiv_check(const Formula& a, const Formula& b, const Vocabulary& vocab,
                                std::size_t max_len, const EvalOptions& opt) {
  EquivResult r;
  r.exact = exact_on_windows(a) && exact_on_windows(b);
  enumerate_sequences(vocab, max_len, [&](const Word& w) {
    IntervalTable x = eval_table(w, a, vocab, opt), y = eval_table(w, b, vocab, opt);
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i; j < w.size(); ++j) {
        ++r.windows;
        if (x(i, j) != y(i, j)) {
          r.pass = false;
          r.counterexample = Window{w, i, j};
          return false;
        }
      }
    return true;
  });
  return r;
}

}  // namespace itl
