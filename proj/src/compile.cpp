#include "itlnl/compile.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "itlnl/error.hpp"
#include "itlnl/syntax.hpp"

namespace itl {

// ===========================================================================
// Formula to DFA
// ===========================================================================

namespace {

Dfa first_letter_dfa(const Vocabulary& vocab, LetterSet first) {
  const int L = vocab.letters();
  Dfa d;
  d.vocab = vocab;
  d.num_states = 3;  // initial, accept-all, reject-all
  d.delta.assign(3 * static_cast<std::size_t>(L), 0);
  for (int a = 0; a < L; ++a) {
    d.delta[a] = has_letter(first, static_cast<Letter>(a)) ? 1 : 2;
    d.delta[L + a] = 1;
    d.delta[2 * L + a] = 2;
  }
  d.accepting = {false, true, false};
  return minimize(d);
}

Dfa next_dfa(const Dfa& a) {
  Dfa d = a;
  const int fresh = d.num_states++;
  for (int c = 0; c < a.letters(); ++c) d.delta.push_back(a.initial);
  d.accepting.push_back(false);
  d.initial = fresh;
  return minimize(d);
}

// Words whose w-letter subsequence is non-empty and in L(a).
Dfa proj_dfa(const Dfa& a, LetterSet w) {
  Dfa d = a;
  for (int q = 0; q < d.num_states; ++q)
    for (int c = 0; c < d.letters(); ++c)
      if (!has_letter(w, static_cast<Letter>(c))) d.delta[static_cast<std::size_t>(q) * d.letters() + c] = q;
  return minimize(d);
}

Dfa exists_dfa(const Dfa& body, const std::string& p, const Vocabulary& vocab) {
  Dfa closed = determinize_minimize(relabel_dont_care(body, p));
  if (body.vocab == vocab) return closed;
  // Drop p: keep the transitions on letters without p.
  const int k = closed.vocab.index_of(p);
  Dfa d;
  d.vocab = vocab;
  d.num_states = closed.num_states;
  d.initial = closed.initial;
  d.accepting = closed.accepting;
  const int L = vocab.letters();
  d.delta.resize(static_cast<std::size_t>(d.num_states) * L);
  for (int q = 0; q < d.num_states; ++q)
    for (int b = 0; b < L; ++b) {
      // insert a zero bit at position k
      Letter low = static_cast<Letter>(b) & ((Letter{1} << k) - 1);
      Letter high = (static_cast<Letter>(b) >> k) << (k + 1);
      d.delta[static_cast<std::size_t>(q) * L + b] = closed.next(q, low | high);
    }
  return minimize(d);
}

class DfaCompiler {
public:
  explicit DfaCompiler(const Vocabulary& v) : vocab_(v) {}

  Dfa operator()(const Formula& a) {
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    Dfa d = build(a);
    memo_.emplace(a, d);
    return d;
  }

private:
  Dfa build(const Formula& a) {
    auto& self = *this;
    switch (a.kind()) {
      case Kind::False: return empty_dfa(vocab_);
      case Kind::True: return universal_dfa(vocab_);
      case Kind::Var: {
        const int k = vocab_.index_of(a.name());
        if (k < 0) throw UndeclaredVariable(a.name());
        LetterSet s = 0;
        for (int c = 0; c < vocab_.letters(); ++c)
          if ((c >> k) & 1) s |= letter_bit(static_cast<Letter>(c));
        return first_letter_dfa(vocab_, s);
      }
      case Kind::Not: return dfa_complement(self(a[0]));
      case Kind::And: return dfa_intersection(self(a[0]), self(a[1]));
      case Kind::Or: return dfa_union(self(a[0]), self(a[1]));
      case Kind::Imp: return dfa_union(dfa_complement(self(a[0])), self(a[1]));
      case Kind::Iff: {
        Dfa x = self(a[0]), y = self(a[1]);
        return dfa_union(dfa_intersection(x, y), dfa_intersection(dfa_complement(x), dfa_complement(y)));
      }
      case Kind::Empty: return letter_dfa(vocab_, vocab_.all_letters());
      case Kind::Skip: return next_dfa(letter_dfa(vocab_, vocab_.all_letters()));
      case Kind::Next: return next_dfa(self(a[0]));
      case Kind::Prev: return self(fm::chop(a[0], fm::skip()));
      case Kind::Chop: return determinize_minimize(fusion_concat(self(a[0]), self(a[1])));
      case Kind::ChopStar: return determinize_minimize(fusion_star(self(a[0])));
      case Kind::Diamond: return self(fm::chop(fm::top(), a[0]));
      case Kind::Di: return self(fm::chop(a[0], fm::top()));
      case Kind::Box: return dfa_complement(self(fm::dia(fm::neg(a[0]))));
      case Kind::Bi: return dfa_complement(self(fm::di(fm::neg(a[0]))));
      case Kind::Fin: return self(fm::box(fm::imp(fm::empty(), a[0])));
      case Kind::Exists: {
        const std::string& p = a.name();
        if (vocab_.contains(p)) return exists_dfa(self(a[0]), p, vocab_);
        Dfa body = DfaCompiler(vocab_.with(p))(a[0]);
        return exists_dfa(body, p, vocab_);
      }
      case Kind::Proj:
      case Kind::ProjInv: {
        if (!is_state(a[0])) throw FragmentError("first operand of projection must be a state formula");
        LetterSet w = state_letters(a[0], vocab_);
        Dfa body = self(a[1]);
        return a.is(Kind::Proj) ? proj_dfa(body, w) : pi_inverse(body, w);
      }
      default:
        break;
    }
    throw FragmentError("not introspective: " + render(a));
  }

  Vocabulary vocab_;
  std::unordered_map<Formula, Dfa, FormulaHash> memo_;
};

}  // namespace

Dfa itl_to_dfa(const Formula& a, const Vocabulary& vocab) {
  if (!is_local(a)) throw FragmentError("not introspective: " + render(a));
  return DfaCompiler(vocab)(a);
}

// ===========================================================================
// DFA to regular expression
// ===========================================================================

namespace {

Regex letters_re(LetterSet s) {
  if (!s) return nullptr;
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Op::Letters, s, nullptr, nullptr});
}

Regex union_re(const Regex& a, const Regex& b) {
  if (!a) return b;
  if (!b) return a;
  if (a->op == RegexNode::Op::Letters && b->op == RegexNode::Op::Letters)
    return letters_re(a->letters | b->letters);
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Op::Union, 0, a, b});
}

Regex concat_re(const Regex& a, const Regex& b) {
  if (!a || !b) return nullptr;
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Op::Concat, 0, a, b});
}

Regex plus_re(const Regex& a) {
  if (!a) return nullptr;
  if (a->op == RegexNode::Op::Plus) return a;
  return std::make_shared<RegexNode>(RegexNode{RegexNode::Op::Plus, 0, a, nullptr});
}

RegexIR union_ir(const RegexIR& a, const RegexIR& b) {
  return {a.has_epsilon || b.has_epsilon, union_re(a.body, b.body)};
}

RegexIR concat_ir(const RegexIR& a, const RegexIR& b) {
  Regex body = concat_re(a.body, b.body);
  if (a.has_epsilon) body = union_re(body, b.body);
  if (b.has_epsilon) body = union_re(body, a.body);
  return {a.has_epsilon && b.has_epsilon, body};
}

// (ε ∪ B)* = ε ∪ B+
RegexIR star_ir(const RegexIR& a) { return {true, plus_re(a.body)}; }

bool is_nothing(const RegexIR& a) { return !a.has_epsilon && !a.body; }

}  // namespace

RegexIR dfa_to_regex(const Dfa& input) {
  const Dfa d = minimize(input);
  const int n = d.num_states;
  const int L = d.letters();
  // Useful states: reachable (all, after minimization) and co-reachable.
  std::vector<bool> live(n, false);
  for (int q = 0; q < n; ++q) live[q] = d.accepting[q];
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < n; ++q) {
      if (live[q]) continue;
      for (int c = 0; c < L; ++c)
        if (live[d.next(q, static_cast<Letter>(c))]) {
          live[q] = changed = true;
          break;
        }
    }
  }
  if (!live[d.initial]) return {};
  // Generalized automaton: nodes 0..n-1, START = n, FIN = n+1.
  const int start = n, fin = n + 1;
  std::map<std::pair<int, int>, RegexIR> edge;
  auto add = [&](int x, int y, const RegexIR& r) {
    if (is_nothing(r)) return;
    auto it = edge.find({x, y});
    if (it == edge.end()) edge.emplace(std::make_pair(x, y), r);
    else it->second = union_ir(it->second, r);
  };
  add(start, d.initial, {true, nullptr});
  for (int q = 0; q < n; ++q) {
    if (!live[q]) continue;
    if (d.accepting[q]) add(q, fin, {true, nullptr});
    std::map<int, LetterSet> by_target;
    for (int c = 0; c < L; ++c) {
      int r = d.next(q, static_cast<Letter>(c));
      if (live[r]) by_target[r] |= letter_bit(static_cast<Letter>(c));
    }
    for (auto [r, s] : by_target) add(q, r, {false, letters_re(s)});
  }
  std::vector<bool> alive = live;
  while (true) {
    int best = -1;
    std::size_t best_degree = 0;
    for (int q = 0; q < n; ++q) {
      if (!alive[q]) continue;
      std::set<int> nb;
      for (const auto& [key, r] : edge) {
        if (key.first == q && key.second != q) nb.insert(key.second + 1000);
        if (key.second == q && key.first != q) nb.insert(key.first);
      }
      if (best < 0 || nb.size() < best_degree) {
        best = q;
        best_degree = nb.size();
      }
    }
    if (best < 0) break;
    const int x = best;
    RegexIR loop;
    std::vector<std::pair<int, RegexIR>> ins, outs;
    for (const auto& [key, r] : edge) {
      if (key.first == x && key.second == x) loop = r;
      else if (key.second == x) ins.emplace_back(key.first, r);
      else if (key.first == x) outs.emplace_back(key.second, r);
    }
    for (auto it = edge.begin(); it != edge.end();)
      it = (it->first.first == x || it->first.second == x) ? edge.erase(it) : std::next(it);
    const RegexIR mid = star_ir(loop);
    for (const auto& [p, a] : ins)
      for (const auto& [r, b] : outs) add(p, r, concat_ir(concat_ir(a, mid), b));
    alive[x] = false;
  }
  auto it = edge.find({start, fin});
  return it == edge.end() ? RegexIR{} : it->second;
}

std::string render_regex(const Regex& r, const Vocabulary& vocab) {
  if (!r) return "∅";
  switch (r->op) {
    case RegexNode::Op::Letters: {
      std::string s = "[";
      bool first = true;
      for (int c = 0; c < vocab.letters(); ++c)
        if (has_letter(r->letters, static_cast<Letter>(c))) {
          if (!first) s += ' ';
          s += vocab.format_letter(static_cast<Letter>(c));
          first = false;
        }
      return s + "]";
    }
    case RegexNode::Op::Concat:
      return "(" + render_regex(r->left, vocab) + " " + render_regex(r->right, vocab) + ")";
    case RegexNode::Op::Union:
      return "(" + render_regex(r->left, vocab) + " + " + render_regex(r->right, vocab) + ")";
    case RegexNode::Op::Plus:
      return render_regex(r->left, vocab) + "+";
  }
  return "?";
}

Formula regex_to_formula(const Regex& r, const Vocabulary& vocab) {
  if (!r) return fm::bottom();
  switch (r->op) {
    case RegexNode::Op::Letters:
      return fm::land(letters_formula(r->letters, vocab), fm::empty());
    case RegexNode::Op::Concat:
      return fm::chop_chain({regex_to_formula(r->left, vocab), fm::skip(), regex_to_formula(r->right, vocab)});
    case RegexNode::Op::Union:
      return fm::lor(regex_to_formula(r->left, vocab), regex_to_formula(r->right, vocab));
    case RegexNode::Op::Plus: {
      Formula k = regex_to_formula(r->left, vocab);
      return fm::chop(fm::star(fm::chop(k, fm::skip())), k);
    }
  }
  return fm::bottom();
}

Formula dfa_to_formula(const Dfa& d) {
  if (is_empty(d)) return fm::bottom();
  if (!dfa_equivalent(d, universal_dfa(d.vocab))) return fm::top();
  RegexIR ir = dfa_to_regex(d);
  return regex_to_formula(ir.body, d.vocab);
}

// ===========================================================================
// Future formulas to Büchi automata
// ===========================================================================

namespace {

class FutureCompiler {
public:
  FutureCompiler(const Vocabulary& v, int guard) : vocab_(v), guard_(guard) {}

  // ω-words σ with σ,0,k ⊨ G for some k.
  Nba lambda(const Formula& g) {
    auto it = memo_.find(g);
    if (it != memo_.end()) return it->second;
    Nba out = empty_nba(vocab_);
    if (is_local(g)) {
      out = some_prefix_nba(itl_to_dfa(g, vocab_));
    } else {
      std::vector<Formula> atoms;
      collect(g, atoms);
      std::vector<std::pair<Formula, bool>> lits;
      expand(g, atoms, 0, lits, out);
      out = reduce(out);
    }
    memo_.emplace(g, out);
    return out;
  }

private:
  static void collect(const Formula& a, std::vector<Formula>& atoms) {
    if (a.is(Kind::DiamondR)) {
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
      return;
    }
    if (!is_boolean(a.kind()) || is_local(a)) return;
    for (const auto& c : a.children()) collect(c, atoms);
  }

  static Formula assign(const Formula& a, const Formula& atom, bool v) {
    if (a == atom) return v ? fm::top() : fm::bottom();
    if (!is_boolean(a.kind()) || is_local(a)) return a;
    std::vector<Formula> kids;
    for (const auto& c : a.children()) kids.push_back(assign(c, atom, v));
    return simplify_constants(Formula::make(a.kind(), std::move(kids)));
  }

  void expand(const Formula& g, const std::vector<Formula>& atoms, std::size_t k,
              std::vector<std::pair<Formula, bool>>& lits, Nba& out) {
    if (g.is(Kind::False)) return;
    if (k == atoms.size()) {
      Dfa c = itl_to_dfa(g, vocab_);
      if (is_empty(c)) return;
      Nba tail = universal_nba(vocab_);
      for (const auto& [atom, positive] : lits) {
        Nba x;
        if (positive) x = lambda(atom[0]);
        else if (is_local(atom[0])) x = no_prefix_nba(itl_to_dfa(atom[0], vocab_));
        else x = nba_complement(lambda(atom[0]), guard_);
        tail = reduce(nba_intersection(tail, x));
      }
      out = nba_union(out, reduce(fuse_dfa_nba(c, tail)));
      return;
    }
    Formula pos = assign(g, atoms[k], true), neg = assign(g, atoms[k], false);
    if (pos == neg) {
      expand(pos, atoms, k + 1, lits, out);
      return;
    }
    lits.emplace_back(atoms[k], true);
    expand(pos, atoms, k + 1, lits, out);
    lits.back().second = false;
    expand(neg, atoms, k + 1, lits, out);
    lits.pop_back();
  }

  Vocabulary vocab_;
  int guard_;
  std::unordered_map<Formula, Nba, FormulaHash> memo_;
};

}  // namespace

Nba future_to_nba(const Formula& f, const Vocabulary& vocab, int guard) {
  Formula g = normalize_future(f);
  return FutureCompiler(vocab, guard).lambda(fm::land(g, fm::empty()));
}

}  // namespace itl
