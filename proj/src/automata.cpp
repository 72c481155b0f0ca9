#include "itlnl/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "itlnl/error.hpp"

namespace itl {

namespace {

void check_same(const Vocabulary& a, const Vocabulary& b) {
  if (!(a == b)) throw VocabularyMismatch("automata over different vocabularies");
}

std::size_t idx(int q, int letters, Letter a) {
  return static_cast<std::size_t>(q) * letters + a;
}

// Graph helpers on explicit successor lists.
using Graph = std::vector<std::vector<int>>;

// Tarjan SCC; returns component id per node (reverse topological order).
std::vector<int> scc(const Graph& g, int& count) {
  const int n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on(n, false);
  int counter = 0;
  count = 0;
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    std::vector<Frame> work{{s, 0}};
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = true;
    while (!work.empty()) {
      Frame& f = work.back();
      if (f.next < g[f.v].size()) {
        int w = g[f.v][f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = true;
          work.push_back({w, 0});
        } else if (on[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on[w] = false;
            comp[w] = count;
            if (w == v) break;
          }
          ++count;
        }
        work.pop_back();
        if (!work.empty()) low[work.back().v] = std::min(low[work.back().v], low[v]);
      }
    }
  }
  return comp;
}

// Nodes lying on some cycle.
std::vector<bool> on_cycle(const Graph& g) {
  int count = 0;
  auto comp = scc(g, count);
  std::vector<int> size(count, 0);
  for (int c : comp) ++size[c];
  std::vector<bool> out(g.size(), false);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (size[comp[v]] > 1) out[v] = true;
    for (int w : g[v])
      if (static_cast<std::size_t>(w) == v) out[v] = true;
  }
  return out;
}

std::vector<bool> reachable_from(const Graph& g, const std::vector<int>& sources) {
  std::vector<bool> seen(g.size(), false);
  std::vector<int> stack;
  for (int s : sources)
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return seen;
}

// Gives a DFA a non-accepting initial state by splitting off a copy.
Dfa separate_initial(const Dfa& d) {
  if (!d.accepting[d.initial]) return d;
  Dfa out = d;
  const int L = d.letters();
  const int copy = out.num_states++;
  for (int a = 0; a < L; ++a) out.delta.push_back(d.next(d.initial, static_cast<Letter>(a)));
  out.accepting.push_back(false);
  out.initial = copy;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Basic structures
// ---------------------------------------------------------------------------

int Dfa::run(int q, const Word& w) const {
  for (Letter a : w) q = next(q, a);
  return q;
}

bool Dfa::accepts(const Word& w) const { return !w.empty() && accepting[run(initial, w)]; }

int NondetAutomaton::add_state(bool acc) {
  accepting.push_back(acc);
  succ.resize(succ.size() + letters());
  return num_states++;
}

void NondetAutomaton::add_edge(int q, Letter a, int r) {
  auto& s = succ[idx(q, letters(), a)];
  if (std::find(s.begin(), s.end(), r) == s.end()) s.push_back(r);
}

bool Nfa::accepts(const Word& w) const {
  if (w.empty()) return false;
  std::vector<bool> cur(num_states, false);
  for (int q : initial) cur[q] = true;
  for (Letter a : w) {
    std::vector<bool> nxt(num_states, false);
    for (int q = 0; q < num_states; ++q)
      if (cur[q])
        for (int r : successors(q, a)) nxt[r] = true;
    cur = std::move(nxt);
  }
  for (int q = 0; q < num_states; ++q)
    if (cur[q] && accepting[q]) return true;
  return false;
}

namespace {
Dfa universal_dfa_impl(const Vocabulary& vocab) {
  Dfa d;
  d.vocab = vocab;
  d.num_states = 2;
  d.delta.assign(2 * static_cast<std::size_t>(vocab.letters()), 1);
  d.accepting = {false, true};
  return d;
}
}  // namespace

Dfa empty_dfa(const Vocabulary& vocab) {
  Dfa d;
  d.vocab = vocab;
  d.num_states = 1;
  d.delta.assign(vocab.letters(), 0);
  d.accepting = {false};
  return d;
}

Dfa universal_dfa(const Vocabulary& vocab) { return universal_dfa_impl(vocab); }

Dfa letter_dfa(const Vocabulary& vocab, LetterSet letters) {
  Dfa d;
  d.vocab = vocab;
  d.num_states = 3;  // initial, accept, sink
  const int L = vocab.letters();
  d.delta.assign(3 * static_cast<std::size_t>(L), 2);
  for (int a = 0; a < L; ++a)
    if (has_letter(letters, static_cast<Letter>(a))) d.delta[a] = 1;
  d.accepting = {false, true, false};
  return minimize(d);
}

// ---------------------------------------------------------------------------
// Minimization and determinization
// ---------------------------------------------------------------------------

Dfa minimize(const Dfa& input) {
  const Dfa d = separate_initial(input);
  const int L = d.letters();
  // Reachable states.
  std::vector<int> order{d.initial};
  std::vector<bool> seen(d.num_states, false);
  seen[d.initial] = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int a = 0; a < L; ++a) {
      int r = d.next(order[k], static_cast<Letter>(a));
      if (!seen[r]) {
        seen[r] = true;
        order.push_back(r);
      }
    }
  // Moore refinement over reachable states.
  std::vector<int> block(d.num_states, -1);
  int blocks = 0;
  {
    int acc = -1, rej = -1;
    for (int q : order) {
      int& b = d.accepting[q] ? acc : rej;
      if (b < 0) b = blocks++;
      block[q] = b;
    }
  }
  while (true) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> nb(d.num_states, -1);
    for (int q : order) {
      std::vector<int> key;
      key.reserve(L + 1);
      key.push_back(block[q]);
      for (int a = 0; a < L; ++a) key.push_back(block[d.next(q, static_cast<Letter>(a))]);
      auto [it, fresh] = sig.emplace(std::move(key), static_cast<int>(sig.size()));
      nb[q] = it->second;
    }
    const int nblocks = static_cast<int>(sig.size());
    block = std::move(nb);
    if (nblocks == blocks) break;
    blocks = nblocks;
  }
  // Canonical BFS numbering of the quotient.
  std::vector<int> rep(blocks, -1);
  for (int q : order)
    if (rep[block[q]] < 0) rep[block[q]] = q;
  std::vector<int> number(blocks, -1);
  std::vector<int> queue{block[d.initial]};
  number[block[d.initial]] = 0;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int a = 0; a < L; ++a) {
      int b = block[d.next(rep[queue[k]], static_cast<Letter>(a))];
      if (number[b] < 0) {
        number[b] = static_cast<int>(queue.size());
        queue.push_back(b);
      }
    }
  Dfa out;
  out.vocab = d.vocab;
  out.num_states = static_cast<int>(queue.size());
  out.initial = 0;
  out.delta.resize(static_cast<std::size_t>(out.num_states) * L);
  out.accepting.resize(out.num_states);
  for (int k = 0; k < out.num_states; ++k) {
    int q = rep[queue[k]];
    out.accepting[k] = d.accepting[q];
    for (int a = 0; a < L; ++a)
      out.delta[idx(k, L, static_cast<Letter>(a))] = number[block[d.next(q, static_cast<Letter>(a))]];
  }
  return out;
}

Dfa determinize_minimize(const Nfa& n, std::size_t guard) {
  const int L = n.letters();
  const std::size_t words = (static_cast<std::size_t>(n.num_states) + 63) / 64;
  using Set = std::vector<std::uint64_t>;
  struct SetHash {
    std::size_t operator()(const Set& s) const {
      std::size_t h = 1469598103934665603ull;
      for (auto x : s) h = (h ^ x) * 1099511628211ull;
      return h;
    }
  };
  std::unordered_map<Set, int, SetHash> ids;
  std::vector<Set> sets;
  Dfa d;
  d.vocab = n.vocab;
  // State 0 is a dedicated initial copy; it is never accepting.
  Set init(words, 0);
  for (int q : n.initial) init[q / 64] |= std::uint64_t{1} << (q % 64);
  auto accepting = [&](const Set& s) {
    for (int q = 0; q < n.num_states; ++q)
      if (((s[q / 64] >> (q % 64)) & 1u) && n.accepting[q]) return true;
    return false;
  };
  sets.push_back(init);
  d.accepting.push_back(false);
  auto intern = [&](Set s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(sets.size());
    if (sets.size() >= guard)
      throw GuardExceeded("subset construction exceeds " + std::to_string(guard) + " states");
    ids.emplace(s, id);
    d.accepting.push_back(accepting(s));
    sets.push_back(std::move(s));
    return id;
  };
  for (std::size_t k = 0; k < sets.size(); ++k) {
    for (int a = 0; a < L; ++a) {
      Set t(words, 0);
      const Set cur = sets[k];
      for (int q = 0; q < n.num_states; ++q)
        if ((cur[q / 64] >> (q % 64)) & 1u)
          for (int r : n.successors(q, static_cast<Letter>(a))) t[r / 64] |= std::uint64_t{1} << (r % 64);
      int id = intern(std::move(t));
      d.delta.resize(static_cast<std::size_t>(k + 1) * L);
      d.delta[idx(static_cast<int>(k), L, static_cast<Letter>(a))] = id;
    }
  }
  d.num_states = static_cast<int>(sets.size());
  d.initial = 0;
  d.delta.resize(static_cast<std::size_t>(d.num_states) * L);
  return minimize(d);
}

Nfa to_nfa(const Dfa& d) {
  Nfa n;
  n.vocab = d.vocab;
  for (int q = 0; q < d.num_states; ++q) n.add_state(d.accepting[q]);
  for (int q = 0; q < d.num_states; ++q)
    for (int a = 0; a < d.letters(); ++a) n.add_edge(q, static_cast<Letter>(a), d.next(q, static_cast<Letter>(a)));
  n.initial = {d.initial};
  return n;
}

// ---------------------------------------------------------------------------
// Boolean algebra
// ---------------------------------------------------------------------------

Dfa combine(Combine kind, const Dfa& a, const Dfa* b) {
  if (kind == Combine::Complement) {
    if (b) throw Error("complement takes one automaton");
    Dfa out = a;
    for (int q = 0; q < out.num_states; ++q) out.accepting[q] = !out.accepting[q];
    const int fresh = out.num_states++;
    for (int c = 0; c < a.letters(); ++c) out.delta.push_back(a.next(a.initial, static_cast<Letter>(c)));
    out.accepting.push_back(false);
    out.initial = fresh;
    return minimize(out);
  }
  if (!b) throw Error("binary combination needs two automata");
  check_same(a.vocab, b->vocab);
  const int L = a.letters();
  const int nb = b->num_states;
  Dfa out;
  out.vocab = a.vocab;
  out.num_states = a.num_states * nb;
  out.initial = a.initial * nb + b->initial;
  out.delta.resize(static_cast<std::size_t>(out.num_states) * L);
  out.accepting.resize(out.num_states);
  for (int p = 0; p < a.num_states; ++p)
    for (int q = 0; q < nb; ++q) {
      const int s = p * nb + q;
      bool x = a.accepting[p], y = b->accepting[q];
      switch (kind) {
        case Combine::Union: out.accepting[s] = x || y; break;
        case Combine::Intersection: out.accepting[s] = x && y; break;
        default: out.accepting[s] = x && !y; break;
      }
      for (int c = 0; c < L; ++c)
        out.delta[idx(s, L, static_cast<Letter>(c))] =
            a.next(p, static_cast<Letter>(c)) * nb + b->next(q, static_cast<Letter>(c));
    }
  return minimize(out);
}

Dfa dfa_union(const Dfa& a, const Dfa& b) { return combine(Combine::Union, a, &b); }
Dfa dfa_intersection(const Dfa& a, const Dfa& b) { return combine(Combine::Intersection, a, &b); }
Dfa dfa_complement(const Dfa& a) { return combine(Combine::Complement, a); }
Dfa dfa_difference(const Dfa& a, const Dfa& b) { return combine(Combine::Difference, a, &b); }


namespace {

// BFS over the synchronous product; returns a shortest non-empty word
// reaching a pair for which `bad(acc_a, acc_b)` holds.
std::optional<Word> product_search(const Dfa& a, const Dfa& b,
                                   const std::function<bool(bool, bool)>& bad) {
  check_same(a.vocab, b.vocab);
  const int L = a.letters();
  const int nb = b.num_states;
  const int total = a.num_states * nb;
  std::vector<int> parent(total, -2), via(total, -1);
  std::vector<int> queue;
  const int start = a.initial * nb + b.initial;
  auto word_to = [&](int t) {
    Word w;
    for (int s = t; s != -1; s = parent[s]) w.push_back(static_cast<Letter>(via[s]));
    std::reverse(w.begin(), w.end());
    return w;
  };
  int head = -1;  // -1 denotes the start pair before any letter
  std::size_t k = 0;
  while (true) {
    const int s = head < 0 ? start : head;
    const int p = s / nb, q = s % nb;
    for (int c = 0; c < L; ++c) {
      int t = a.next(p, static_cast<Letter>(c)) * nb + b.next(q, static_cast<Letter>(c));
      if (parent[t] != -2) continue;
      parent[t] = head;
      via[t] = c;
      if (bad(a.accepting[t / nb], b.accepting[t % nb])) return word_to(t);
      queue.push_back(t);
    }
    if (k == queue.size()) return std::nullopt;
    head = queue[k++];
  }
}

}  // namespace

bool is_empty(const Dfa& d) { return !shortest_word(d).has_value(); }

std::optional<Word> shortest_word(const Dfa& d) {
  return product_search(d, universal_dfa(d.vocab), [](bool x, bool) { return x; });
}

std::optional<Word> dfa_equivalent(const Dfa& a, const Dfa& b) {
  return product_search(a, b, [](bool x, bool y) { return x != y; });
}

std::optional<Word> dfa_subset(const Dfa& a, const Dfa& b) {
  return product_search(a, b, [](bool x, bool y) { return x && !y; });
}

// ---------------------------------------------------------------------------
// Fusion
// ---------------------------------------------------------------------------

Nfa fusion_concat(const Dfa& a, const Dfa& b) {
  check_same(a.vocab, b.vocab);
  const int L = a.letters();
  Nfa n;
  n.vocab = a.vocab;
  for (int q = 0; q < a.num_states; ++q) n.add_state(false);
  const int off = a.num_states;
  for (int q = 0; q < b.num_states; ++q) n.add_state(b.accepting[q]);
  for (int q = 0; q < a.num_states; ++q)
    for (int c = 0; c < L; ++c) {
      const Letter s = static_cast<Letter>(c);
      const int r = a.next(q, s);
      n.add_edge(q, s, r);
      if (a.accepting[r]) n.add_edge(q, s, off + b.next(b.initial, s));
    }
  for (int q = 0; q < b.num_states; ++q)
    for (int c = 0; c < L; ++c) n.add_edge(off + q, static_cast<Letter>(c), off + b.next(q, static_cast<Letter>(c)));
  n.initial = {a.initial};
  return n;
}

Nfa fusion_star(const Dfa& a) {
  const int L = a.letters();
  Nfa n;
  n.vocab = a.vocab;
  const int init = n.add_state(false);
  const int one = n.add_state(true);
  const int ended = n.add_state(true);
  // first[q]: one letter of the current chunk read; more[q]: at least two.
  const int first = n.num_states;
  for (int q = 0; q < a.num_states; ++q) n.add_state(false);
  const int more = n.num_states;
  for (int q = 0; q < a.num_states; ++q) n.add_state(false);
  for (int c = 0; c < L; ++c) {
    const Letter s = static_cast<Letter>(c);
    n.add_edge(init, s, one);
    n.add_edge(init, s, first + a.next(a.initial, s));
  }
  for (int q = 0; q < a.num_states; ++q)
    for (int c = 0; c < L; ++c) {
      const Letter s = static_cast<Letter>(c);
      const int r = a.next(q, s);
      for (int from : {first + q, more + q}) {
        n.add_edge(from, s, more + r);
        if (a.accepting[r]) {
          n.add_edge(from, s, ended);
          n.add_edge(from, s, first + a.next(a.initial, s));
        }
      }
    }
  n.initial = {init};
  return n;
}

// ---------------------------------------------------------------------------
// Re-rooting and relabeling
// ---------------------------------------------------------------------------

Dfa prefix_dfa(const Dfa& d, int q) {
  if (q < 0 || q >= d.num_states) throw Error("unknown state " + std::to_string(q));
  Dfa out = d;
  std::fill(out.accepting.begin(), out.accepting.end(), false);
  out.accepting[q] = true;
  return minimize(out);
}

Dfa rerooted_dfa(const Dfa& d, int q) {
  if (q < 0 || q >= d.num_states) throw Error("unknown state " + std::to_string(q));
  Dfa out = d;
  out.initial = q;
  return minimize(out);
}

Dfa shared_suffix_dfa(const Dfa& d, int q) {
  if (q < 0 || q >= d.num_states) throw Error("unknown state " + std::to_string(q));
  Dfa out = d;
  const int L = d.letters();
  const int fresh = out.num_states++;
  for (int c = 0; c < L; ++c) out.delta.push_back(q);
  out.accepting.push_back(false);
  out.initial = fresh;
  return minimize(out);
}

Dfa reverse_dfa(const Dfa& d) {
  Nfa n;
  n.vocab = d.vocab;
  for (int q = 0; q < d.num_states; ++q) n.add_state(q == d.initial);
  for (int q = 0; q < d.num_states; ++q)
    for (int c = 0; c < d.letters(); ++c) n.add_edge(d.next(q, static_cast<Letter>(c)), static_cast<Letter>(c), q);
  for (int q = 0; q < d.num_states; ++q)
    if (d.accepting[q]) n.initial.push_back(q);
  return determinize_minimize(n);
}

namespace {

template <class N>
void relabel_into(N& n, Letter bit) {
  const int L = n.letters();
  for (int q = 0; q < n.num_states; ++q)
    for (int c = 0; c < L; ++c) {
      auto targets = n.successors(q, static_cast<Letter>(c));
      for (int r : targets) n.add_edge(q, static_cast<Letter>(c) ^ bit, r);
    }
}

Letter var_bit(const Vocabulary& v, const std::string& p) {
  int k = v.index_of(p);
  if (k < 0) throw UndeclaredVariable(p);
  return Letter{1} << k;
}

// Letter of `from` obtained by restricting a letter of `to`.
std::vector<Letter> restriction_map(const Vocabulary& from, const Vocabulary& to) {
  std::vector<int> pos(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) {
    pos[k] = to.index_of(from.name(k));
    if (pos[k] < 0) throw VocabularyMismatch("variable " + from.name(k) + " missing from target vocabulary");
  }
  std::vector<Letter> out(to.letters());
  for (int b = 0; b < to.letters(); ++b) {
    Letter a = 0;
    for (std::size_t k = 0; k < from.size(); ++k)
      if ((b >> pos[k]) & 1) a |= Letter{1} << k;
    out[b] = a;
  }
  return out;
}

}  // namespace

Nfa relabel_dont_care(const Dfa& d, const std::string& p) {
  Nfa n = to_nfa(d);
  relabel_into(n, var_bit(d.vocab, p));
  return n;
}

Nba relabel_dont_care(const Nba& in, const std::string& p) {
  Nba n = in;
  relabel_into(n, var_bit(n.vocab, p));
  return n;
}

Dfa lift(const Dfa& d, const Vocabulary& target) {
  if (d.vocab == target) return d;
  auto map = restriction_map(d.vocab, target);
  const int L = target.letters();
  Dfa out;
  out.vocab = target;
  out.num_states = d.num_states;
  out.initial = d.initial;
  out.accepting = d.accepting;
  out.delta.resize(static_cast<std::size_t>(d.num_states) * L);
  for (int q = 0; q < d.num_states; ++q)
    for (int b = 0; b < L; ++b) out.delta[idx(q, L, static_cast<Letter>(b))] = d.next(q, map[b]);
  return minimize(out);
}

Nba lift(const Nba& n, const Vocabulary& target) {
  if (n.vocab == target) return n;
  auto map = restriction_map(n.vocab, target);
  Nba out;
  out.vocab = target;
  for (int q = 0; q < n.num_states; ++q) out.add_state(n.accepting[q]);
  for (int q = 0; q < n.num_states; ++q)
    for (int b = 0; b < target.letters(); ++b)
      for (int r : n.successors(q, map[b])) out.add_edge(q, static_cast<Letter>(b), r);
  out.initial = n.initial;
  return out;
}

Dfa pi_inverse(const Dfa& d, LetterSet w_letters) {
  const int L = d.letters();
  // closure[q]: states reachable from q by words of non-w letters.
  std::vector<std::vector<bool>> closure(d.num_states, std::vector<bool>(d.num_states, false));
  for (int q = 0; q < d.num_states; ++q) {
    std::vector<int> stack{q};
    closure[q][q] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int c = 0; c < L; ++c) {
        if (has_letter(w_letters, static_cast<Letter>(c))) continue;
        int y = d.next(x, static_cast<Letter>(c));
        if (!closure[q][y]) {
          closure[q][y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  Nfa n;
  n.vocab = d.vocab;
  for (int q = 0; q < d.num_states; ++q) {
    bool acc = false;
    for (int r = 0; r < d.num_states; ++r) acc = acc || (closure[q][r] && d.accepting[r]);
    n.add_state(acc);
  }
  for (int q = 0; q < d.num_states; ++q)
    for (int c = 0; c < L; ++c) {
      if (!has_letter(w_letters, static_cast<Letter>(c))) continue;
      for (int r = 0; r < d.num_states; ++r)
        if (closure[q][r]) n.add_edge(q, static_cast<Letter>(c), d.next(r, static_cast<Letter>(c)));
    }
  n.initial = {d.initial};
  return determinize_minimize(n);
}

bool finitely_many_prefixes(const Dfa& d, const Lasso& l) {
  // Deterministic run over (lasso class, state); the pair after reading
  // position k describes the prefix of length k+1.
  const std::size_t C = l.classes();
  std::vector<int> first_seen(C * d.num_states, -1);
  std::vector<bool> acc_at;
  int q = d.initial;
  std::size_t c = 0;
  for (int step = 0;; ++step) {
    q = d.next(q, l.at(c));
    c = l.succ(c);
    const std::size_t key = c * d.num_states + q;
    if (first_seen[key] >= 0) {
      for (std::size_t k = first_seen[key]; k < acc_at.size(); ++k)
        if (acc_at[k]) return false;
      return true;
    }
    first_seen[key] = step;
    acc_at.push_back(d.accepting[q]);
  }
}

Dfa dpa_landing_dfa(const Dpa& p, const std::function<bool(int)>& pred) {
  Dfa d;
  d.vocab = p.vocab;
  d.num_states = p.num_states;
  d.initial = p.initial;
  d.delta = p.delta;
  d.accepting.resize(p.num_states);
  for (int q = 0; q < p.num_states; ++q) d.accepting[q] = pred(p.priority[q]);
  return minimize(d);
}

// ---------------------------------------------------------------------------
// Büchi automata
// ---------------------------------------------------------------------------

Nba empty_nba(const Vocabulary& vocab) {
  Nba n;
  n.vocab = vocab;
  return n;
}

Nba universal_nba(const Vocabulary& vocab) {
  Nba n;
  n.vocab = vocab;
  int q = n.add_state(true);
  for (int c = 0; c < vocab.letters(); ++c) n.add_edge(q, static_cast<Letter>(c), q);
  n.initial = {q};
  return n;
}

Nba fuse_dfa_nba(const Dfa& c, const Nba& tail) {
  check_same(c.vocab, tail.vocab);
  const int L = c.letters();
  Nba n;
  n.vocab = c.vocab;
  for (int q = 0; q < c.num_states; ++q) n.add_state(false);
  const int off = c.num_states;
  for (int q = 0; q < tail.num_states; ++q) n.add_state(tail.accepting[q]);
  for (int q = 0; q < c.num_states; ++q)
    for (int x = 0; x < L; ++x) {
      const Letter s = static_cast<Letter>(x);
      const int r = c.next(q, s);
      n.add_edge(q, s, r);
      if (c.accepting[r])
        for (int t0 : tail.initial)
          for (int t : tail.successors(t0, s)) n.add_edge(q, s, off + t);
    }
  for (int q = 0; q < tail.num_states; ++q)
    for (int x = 0; x < L; ++x)
      for (int r : tail.successors(q, static_cast<Letter>(x))) n.add_edge(off + q, static_cast<Letter>(x), off + r);
  n.initial = {c.initial};
  return trim(n);
}

Nba nba_union(const Nba& a, const Nba& b) {
  check_same(a.vocab, b.vocab);
  Nba n = a;
  const int off = n.num_states;
  for (int q = 0; q < b.num_states; ++q) n.add_state(b.accepting[q]);
  for (int q = 0; q < b.num_states; ++q)
    for (int x = 0; x < b.letters(); ++x)
      for (int r : b.successors(q, static_cast<Letter>(x))) n.add_edge(off + q, static_cast<Letter>(x), off + r);
  for (int q : b.initial) n.initial.push_back(off + q);
  return n;
}

Nba nba_intersection(const Nba& a, const Nba& b) {
  check_same(a.vocab, b.vocab);
  const int L = a.letters();
  // States (p, q, phase); phase 0 waits for an accepting a-state, phase 1
  // for an accepting b-state. Accepting: phase 0 states with p accepting.
  std::map<std::tuple<int, int, int>, int> ids;
  std::vector<std::tuple<int, int, int>> states;
  Nba n;
  n.vocab = a.vocab;
  auto intern = [&](int p, int q, int f) {
    auto key = std::make_tuple(p, q, f);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = n.add_state(f == 0 && a.accepting[p]);
    ids.emplace(key, id);
    states.push_back(key);
    return id;
  };
  for (int p : a.initial)
    for (int q : b.initial) n.initial.push_back(intern(p, q, 0));
  for (std::size_t k = 0; k < states.size(); ++k) {
    auto [p, q, f] = states[k];
    int nf = f;
    if (f == 0 && a.accepting[p]) nf = 1;
    else if (f == 1 && b.accepting[q]) nf = 0;
    for (int x = 0; x < L; ++x)
      for (int p2 : a.successors(p, static_cast<Letter>(x)))
        for (int q2 : b.successors(q, static_cast<Letter>(x))) {
          int t = intern(p2, q2, nf);
          n.add_edge(static_cast<int>(k), static_cast<Letter>(x), t);
        }
  }
  return trim(n);
}

namespace {

Graph letter_graph(const NondetAutomaton& n) {
  Graph g(n.num_states);
  for (int q = 0; q < n.num_states; ++q)
    for (int x = 0; x < n.letters(); ++x)
      for (int r : n.successors(q, static_cast<Letter>(x))) g[q].push_back(r);
  for (auto& v : g) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return g;
}

}  // namespace

Nba trim(const Nba& n) {
  Graph g = letter_graph(n);
  auto reach = reachable_from(g, n.initial);
  auto cyc = on_cycle(g);
  // Good: accepting states on a cycle, then everything that reaches one.
  Graph rev(n.num_states);
  for (int q = 0; q < n.num_states; ++q)
    for (int r : g[q]) rev[r].push_back(q);
  std::vector<int> good;
  for (int q = 0; q < n.num_states; ++q)
    if (reach[q] && n.accepting[q] && cyc[q]) good.push_back(q);
  auto live = reachable_from(rev, good);
  std::vector<int> map(n.num_states, -1);
  Nba out;
  out.vocab = n.vocab;
  for (int q = 0; q < n.num_states; ++q)
    if (reach[q] && live[q]) map[q] = out.add_state(n.accepting[q]);
  for (int q = 0; q < n.num_states; ++q) {
    if (map[q] < 0) continue;
    for (int x = 0; x < n.letters(); ++x)
      for (int r : n.successors(q, static_cast<Letter>(x)))
        if (map[r] >= 0) out.add_edge(map[q], static_cast<Letter>(x), map[r]);
  }
  for (int q : n.initial)
    if (map[q] >= 0) out.initial.push_back(map[q]);
  return out;
}

Nba reduce(const Nba& input) {
  const Nba n = trim(input);
  const int L = n.letters();
  std::vector<int> block(n.num_states);
  for (int q = 0; q < n.num_states; ++q) block[q] = n.accepting[q] ? 1 : 0;
  int blocks = -1;
  while (true) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> nb(n.num_states);
    for (int q = 0; q < n.num_states; ++q) {
      std::vector<int> key{block[q]};
      for (int a = 0; a < L; ++a) {
        std::vector<int> succ;
        for (int r : n.successors(q, static_cast<Letter>(a))) succ.push_back(block[r]);
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        key.push_back(-1 - a);
        key.insert(key.end(), succ.begin(), succ.end());
      }
      nb[q] = sig.emplace(std::move(key), static_cast<int>(sig.size())).first->second;
    }
    const int count = static_cast<int>(sig.size());
    block = std::move(nb);
    if (count == blocks) break;
    blocks = count;
  }
  Nba out;
  out.vocab = n.vocab;
  for (int b = 0; b < std::max(blocks, 0); ++b) out.add_state(false);
  for (int q = 0; q < n.num_states; ++q) {
    out.accepting[block[q]] = n.accepting[q];
    for (int a = 0; a < L; ++a)
      for (int r : n.successors(q, static_cast<Letter>(a))) out.add_edge(block[q], static_cast<Letter>(a), block[r]);
  }
  for (int q : n.initial)
    if (std::find(out.initial.begin(), out.initial.end(), block[q]) == out.initial.end())
      out.initial.push_back(block[q]);
  return out;
}

Nba some_prefix_nba(const Dfa& c) {
  // Run c until it accepts, then loop in an accepting sink.
  Nba n;
  n.vocab = c.vocab;
  for (int q = 0; q < c.num_states; ++q) n.add_state(false);
  const int sink = n.add_state(true);
  for (int q = 0; q < c.num_states; ++q)
    for (int a = 0; a < c.letters(); ++a) {
      int r = c.next(q, static_cast<Letter>(a));
      n.add_edge(q, static_cast<Letter>(a), c.accepting[r] ? sink : r);
    }
  for (int a = 0; a < c.letters(); ++a) n.add_edge(sink, static_cast<Letter>(a), sink);
  n.initial = {c.initial};
  return reduce(n);
}

Nba no_prefix_nba(const Dfa& c) {
  Nba n;
  n.vocab = c.vocab;
  for (int q = 0; q < c.num_states; ++q) n.add_state(true);
  for (int q = 0; q < c.num_states; ++q)
    for (int a = 0; a < c.letters(); ++a) {
      int r = c.next(q, static_cast<Letter>(a));
      if (!c.accepting[r]) n.add_edge(q, static_cast<Letter>(a), r);
    }
  n.initial = {c.initial};
  return reduce(n);
}

bool nba_accepts(const Nba& n, const Lasso& l) {
  if (l.loop.empty()) throw Error("lasso loop must be non-empty");
  const int C = static_cast<int>(l.classes());
  // Node (class c, state q) -> c * num_states + q.
  Graph g(static_cast<std::size_t>(C) * n.num_states);
  for (int c = 0; c < C; ++c) {
    const Letter s = l.at(c);
    const int c2 = static_cast<int>(l.succ(c));
    for (int q = 0; q < n.num_states; ++q)
      for (int r : n.successors(q, s)) g[c * n.num_states + q].push_back(c2 * n.num_states + r);
  }
  std::vector<int> init;
  for (int q : n.initial) init.push_back(q);
  auto reach = reachable_from(g, init);
  auto cyc = on_cycle(g);
  for (std::size_t v = 0; v < g.size(); ++v)
    if (reach[v] && cyc[v] && n.accepting[v % n.num_states]) return true;
  return false;
}

bool dpa_accepts(const Dpa& d, const Lasso& l) {
  if (l.loop.empty()) throw Error("lasso loop must be non-empty");
  const std::size_t C = l.classes();
  std::vector<int> first_seen(C * d.num_states, -1);
  std::vector<int> prio;
  int q = d.initial;
  std::size_t c = 0;
  for (int step = 0;; ++step) {
    const std::size_t key = c * d.num_states + q;
    if (first_seen[key] >= 0) {
      int best = *std::min_element(prio.begin() + first_seen[key], prio.end());
      return best % 2 == 0;
    }
    first_seen[key] = step;
    prio.push_back(d.priority[q]);
    q = d.next(q, l.at(c));
    c = l.succ(c);
  }
}

std::optional<Lasso> nba_find_lasso(const Nba& n) {
  Graph g = letter_graph(n);
  auto reach = reachable_from(g, n.initial);
  auto cyc = on_cycle(g);
  int target = -1;
  for (int q = 0; q < n.num_states && target < 0; ++q)
    if (reach[q] && cyc[q] && n.accepting[q]) target = q;
  if (target < 0) return std::nullopt;
  // BFS by ascending letters; sources are roots that are not marked, so a
  // path back to a source has length >= 1.
  auto path = [&](const std::vector<int>& sources, int goal) {
    std::vector<int> parent(n.num_states, -1), via(n.num_states, -1), queue;
    std::vector<bool> seen(n.num_states, false), from_root(n.num_states, false);
    auto visit = [&](int from, bool root, int x, int r) {
      if (seen[r]) return false;
      seen[r] = true;
      parent[r] = from;
      from_root[r] = root;
      via[r] = x;
      queue.push_back(r);
      return r == goal;
    };
    bool found = false;
    for (int s : sources)
      for (int x = 0; x < n.letters() && !found; ++x)
        for (int r : n.successors(s, static_cast<Letter>(x)))
          if (visit(s, true, x, r)) {
            found = true;
            break;
          }
    for (std::size_t k = 0; k < queue.size() && !found; ++k)
      for (int x = 0; x < n.letters() && !found; ++x)
        for (int r : n.successors(queue[k], static_cast<Letter>(x)))
          if (visit(queue[k], false, x, r)) {
            found = true;
            break;
          }
    if (!found) throw Error("internal: no path in lasso search");
    Word w;
    for (int u = goal;; u = parent[u]) {
      w.push_back(static_cast<Letter>(via[u]));
      if (from_root[u]) break;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  Lasso l;
  if (std::find(n.initial.begin(), n.initial.end(), target) == n.initial.end())
    l.stem = path(n.initial, target);
  l.loop = path({target}, target);
  return l.canonical();
}

// ---------------------------------------------------------------------------
// Parity automata
// ---------------------------------------------------------------------------

Dpa dpa_complement(const Dpa& d) {
  Dpa out = d;
  for (auto& p : out.priority) ++p;
  return out;
}

Nba dpa_to_nba(const Dpa& d) {
  const int L = d.letters();
  std::vector<int> evens;
  for (int p : d.priority)
    if (p % 2 == 0) evens.push_back(p);
  std::sort(evens.begin(), evens.end());
  evens.erase(std::unique(evens.begin(), evens.end()), evens.end());
  Nba n;
  n.vocab = d.vocab;
  for (int q = 0; q < d.num_states; ++q) n.add_state(false);
  std::vector<int> base;
  for (int e : evens) {
    base.push_back(n.num_states);
    for (int q = 0; q < d.num_states; ++q) n.add_state(d.priority[q] == e);
  }
  for (int q = 0; q < d.num_states; ++q)
    for (int x = 0; x < L; ++x) {
      const Letter s = static_cast<Letter>(x);
      const int r = d.next(q, s);
      n.add_edge(q, s, r);
      for (std::size_t k = 0; k < evens.size(); ++k) {
        if (d.priority[r] < evens[k]) continue;
        n.add_edge(q, s, base[k] + r);
        if (d.priority[q] >= evens[k]) n.add_edge(base[k] + q, s, base[k] + r);
      }
    }
  n.initial = {d.initial};
  return trim(n);
}

DpaComplement dpa_complement_nba(const Dpa& d) { return {dpa_complement(d), dpa_to_nba(d)}; }

Nba nba_complement(const Nba& n, int guard) {
  return reduce(dpa_to_nba(dpa_complement(nba_determinize(reduce(n), guard))));
}

// ---------------------------------------------------------------------------
// Determinization (compact Safra trees)
// ---------------------------------------------------------------------------

namespace {

// Node k has name k+1; names reflect age, so siblings are ordered by index.
struct SafraNode {
  int parent;  // index, -1 for the root
  std::uint32_t label;
};
using SafraTree = std::vector<SafraNode>;

struct SafraStep {
  const Nba& n;
  std::uint32_t final_mask = 0;
  std::vector<std::vector<std::uint32_t>> post;  // post[q][a]: successor mask

  explicit SafraStep(const Nba& nba) : n(nba) {
    post.assign(n.num_states, std::vector<std::uint32_t>(n.letters(), 0));
    for (int q = 0; q < n.num_states; ++q) {
      if (n.accepting[q]) final_mask |= 1u << q;
      for (int a = 0; a < n.letters(); ++a)
        for (int r : n.successors(q, static_cast<Letter>(a))) post[q][a] |= 1u << r;
    }
  }

  std::uint32_t image(std::uint32_t s, int a) const {
    std::uint32_t out = 0;
    for (int q = 0; q < n.num_states; ++q)
      if ((s >> q) & 1u) out |= post[q][a];
    return out;
  }

  // Returns the successor tree and the priority of the transition.
  std::pair<SafraTree, int> operator()(const SafraTree& t, int a) const {
    const int none = 2 * n.num_states + 1;
    if (t.empty()) return {t, none};
    const int old = static_cast<int>(t.size());
    SafraTree u = t;
    // 1. spawn children holding the accepting states
    for (int v = 0; v < old; ++v)
      if (t[v].label & final_mask) u.push_back({v, t[v].label & final_mask});
    // 2. successors
    for (auto& node : u) node.label = image(node.label, a);
    const int m = static_cast<int>(u.size());
    std::vector<std::vector<int>> kids(m);
    for (int v = 1; v < m; ++v) kids[u[v].parent].push_back(v);
    // 3. horizontal merge: older siblings keep shared states
    std::function<void(int, std::uint32_t)> merge = [&](int v, std::uint32_t allowed) {
      u[v].label &= allowed;
      std::uint32_t avail = u[v].label;
      for (int c : kids[v]) {
        merge(c, avail);
        avail &= ~u[c].label;
      }
    };
    merge(0, ~0u);
    // 4. remove empty nodes; 5. vertical merge
    std::vector<bool> removed(m, false), green(m, false);
    std::function<void(int)> drop = [&](int v) {
      removed[v] = true;
      for (int c : kids[v]) drop(c);
    };
    for (int v = 0; v < m; ++v)
      if (!removed[v] && u[v].label == 0) drop(v);
    std::function<void(int)> vertical = [&](int v) {
      if (removed[v]) return;
      std::uint32_t below = 0;
      bool any = false;
      for (int c : kids[v])
        if (!removed[c]) {
          below |= u[c].label;
          any = true;
        }
      if (any && below == u[v].label) {
        green[v] = true;
        for (int c : kids[v]) drop(c);
        return;
      }
      for (int c : kids[v]) vertical(c);
    };
    vertical(0);
    int priority = none;
    for (int v = 0; v < old; ++v) {
      if (green[v]) priority = std::min(priority, 2 * (v + 1));
      if (removed[v]) priority = std::min(priority, 2 * (v + 1) - 1);
    }
    // 6. compact names, order preserving
    std::vector<int> rename(m, -1);
    SafraTree out;
    for (int v = 0; v < m; ++v) {
      if (removed[v]) continue;
      rename[v] = static_cast<int>(out.size());
      out.push_back({u[v].parent < 0 ? -1 : rename[u[v].parent], u[v].label});
    }
    return {out, priority};
  }
};

}  // namespace

Dpa nba_determinize(const Nba& n, int guard) {
  if (n.num_states > guard || n.num_states > 32)
    throw GuardExceeded("determinization input has " + std::to_string(n.num_states) +
                        " states, limit " + std::to_string(std::min(guard, 32)));
  const int L = n.letters();
  SafraStep step(n);
  std::map<std::pair<SafraTree, int>, int, std::less<>> ids;
  std::vector<std::pair<SafraTree, int>> states;
  auto less_tree = [](const std::pair<SafraTree, int>& x) {
    std::vector<std::uint32_t> key{static_cast<std::uint32_t>(x.second)};
    for (const auto& node : x.first) {
      key.push_back(static_cast<std::uint32_t>(node.parent + 1));
      key.push_back(node.label);
    }
    return key;
  };
  std::map<std::vector<std::uint32_t>, int> index;
  Dpa d;
  d.vocab = n.vocab;
  auto intern = [&](std::pair<SafraTree, int> s) {
    auto key = less_tree(s);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(states.size());
    if (states.size() >= kDefaultDfaGuard) throw GuardExceeded("determinized automaton too large");
    index.emplace(std::move(key), id);
    d.priority.push_back(s.second);
    states.push_back(std::move(s));
    return id;
  };
  std::uint32_t init = 0;
  for (int q : n.initial) init |= 1u << q;
  SafraTree t0;
  if (init) t0.push_back({-1, init});
  intern({t0, 2 * n.num_states + 1});
  for (std::size_t k = 0; k < states.size(); ++k)
    for (int a = 0; a < L; ++a) {
      auto nxt = step(states[k].first, a);
      int id = intern(std::move(nxt));
      d.delta.resize(static_cast<std::size_t>(k + 1) * L);
      d.delta[idx(static_cast<int>(k), L, static_cast<Letter>(a))] = id;
    }
  d.num_states = static_cast<int>(states.size());
  d.initial = 0;
  d.delta.resize(static_cast<std::size_t>(d.num_states) * L);
  (void)ids;
  return d;
}

}  // namespace itl
