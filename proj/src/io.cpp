#include "itlnl/io.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <type_traits>

#include "itlnl/error.hpp"

namespace itl {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Letters `{...}` in order; anything else but whitespace is an error.
Word parse_letters(std::string_view text, const Vocabulary& vocab) {
  Word w;
  std::size_t k = 0;
  while (k < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[k]))) {
      ++k;
      continue;
    }
    if (text[k] != '{') throw FormatError("expected a letter at '" + std::string(text.substr(k)) + "'");
    std::size_t close = text.find('}', k);
    if (close == std::string_view::npos) throw FormatError("unterminated letter");
    w.push_back(vocab.parse_letter(text.substr(k, close - k + 1)));
    k = close + 1;
  }
  return w;
}

std::size_t to_index(const std::string& s) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size() || v < 0) throw FormatError("bad number '" + s + "'");
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw FormatError("bad number '" + s + "'");
  }
}

/// "key: value" or "key value"; empty optional when the key differs.
std::optional<std::string> field(const std::string& line, std::string_view key) {
  if (line.rfind(key, 0) != 0) return std::nullopt;
  std::string rest = line.substr(key.size());
  if (!rest.empty() && rest[0] != ':' && !std::isspace(static_cast<unsigned char>(rest[0]))) return std::nullopt;
  if (!rest.empty() && rest[0] == ':') rest = rest.substr(1);
  return trim(rest);
}

std::vector<std::size_t> numbers(const std::string& s) {
  std::vector<std::size_t> out;
  std::istringstream in(s);
  for (std::string t; in >> t;) out.push_back(to_index(t));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Windows and lassos
// ---------------------------------------------------------------------------

Window parse_window(std::string_view text, const Vocabulary& vocab) {
  Window w;
  std::string body(text);
  std::optional<std::pair<std::size_t, std::size_t>> ref;
  if (auto hash = body.find('#'); hash != std::string::npos) {
    std::istringstream in(body.substr(hash + 1));
    std::string kw, i, j, extra;
    in >> kw >> i >> j;
    if (kw != "ref" || j.empty() || (in >> extra)) throw FormatError("expected '# ref i j'");
    ref = {to_index(i), to_index(j)};
    body.resize(hash);
  }
  w.states = parse_letters(body, vocab);
  if (w.states.empty()) throw FormatError("empty window");
  if (ref) {
    w.ref_i = ref->first;
    w.ref_j = ref->second;
  } else {
    w.ref_i = 0;
    w.ref_j = w.states.size() - 1;
  }
  if (w.ref_i > w.ref_j || w.ref_j >= w.states.size())
    throw FormatError("reference interval out of range");
  return w;
}

std::string format_window(const Window& w, const Vocabulary& vocab) {
  return vocab.format_word(w.states) + " # ref " + std::to_string(w.ref_i) + " " + std::to_string(w.ref_j);
}

Lasso parse_lasso(std::string_view text, const Vocabulary& vocab) {
  Lasso l;
  bool seen_loop = false;
  for (const auto& raw : lines_of(text)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (auto v = field(line, "stem")) l.stem = parse_letters(*v, vocab);
    else if (auto v = field(line, "loop")) {
      l.loop = parse_letters(*v, vocab);
      seen_loop = true;
    } else {
      throw FormatError("unexpected lasso line '" + line + "'");
    }
  }
  if (!seen_loop || l.loop.empty()) throw FormatError("lasso needs a non-empty loop");
  return l;
}

std::string format_lasso(const Lasso& l, const Vocabulary& vocab) {
  return "stem: " + vocab.format_word(l.stem) + "\nloop: " + vocab.format_word(l.loop) + "\n";
}

// ---------------------------------------------------------------------------
// Automata
// ---------------------------------------------------------------------------

Automaton parse_automaton(std::string_view text, const std::optional<Vocabulary>& given) {
  std::vector<std::string> lines;
  for (const auto& raw : lines_of(text)) {
    std::string line = trim(raw);
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  if (lines.empty()) throw FormatError("empty automaton file");
  const std::string kind = lines[0];
  if (kind != "dfa" && kind != "nfa" && kind != "nba" && kind != "dpa")
    throw FormatError("unknown automaton kind '" + kind + "'");

  std::optional<Vocabulary> vocab = given;
  std::optional<std::size_t> states;
  std::vector<std::size_t> initial, accepting;
  std::vector<std::pair<std::size_t, std::size_t>> priorities;
  struct Edge {
    std::size_t from, to;
    std::string letter;
  };
  std::vector<Edge> edges;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string& line = lines[k];
    if (auto v = field(line, "vocab")) {
      Vocabulary file = Vocabulary::from_list(*v);
      if (vocab && !(*vocab == file)) throw FormatError("automaton vocabulary differs from --vocab");
      vocab = file;
    } else if (auto v = field(line, "states")) {
      states = to_index(*v);
    } else if (auto v = field(line, "initial")) {
      initial = numbers(*v);
    } else if (auto v = field(line, "accepting")) {
      auto n = numbers(*v);
      accepting.insert(accepting.end(), n.begin(), n.end());
    } else if (auto v = field(line, "priority")) {
      auto eq = v->find('=');
      if (eq == std::string::npos) throw FormatError("expected 'priority q = n'");
      priorities.emplace_back(to_index(trim(v->substr(0, eq))), to_index(trim(v->substr(eq + 1))));
    } else if (auto arrow = line.find("--"); arrow != std::string::npos) {
      auto close = line.find("-->", arrow + 2);
      if (close == std::string::npos) throw FormatError("malformed transition '" + line + "'");
      edges.push_back({to_index(trim(line.substr(0, arrow))), to_index(trim(line.substr(close + 3))),
                       trim(line.substr(arrow + 2, close - arrow - 2))});
    } else {
      throw FormatError("unexpected automaton line '" + line + "'");
    }
  }
  if (!states || *states == 0) throw FormatError("missing or zero state count");
  if (!vocab) throw FormatError("automaton file needs a vocab line or --vocab");
  const std::size_t N = *states;
  auto check = [&](std::size_t q) {
    if (q >= N) throw FormatError("state " + std::to_string(q) + " out of range");
    return static_cast<int>(q);
  };
  if (initial.empty()) initial = {0};
  for (auto q : initial) check(q);
  for (auto q : accepting) check(q);

  if (kind == "dfa" || kind == "dpa") {
    if (initial.size() != 1) throw FormatError(kind + " needs exactly one initial state");
    std::vector<int> delta(N * vocab->letters(), -1);
    for (const auto& e : edges) {
      Letter a = vocab->parse_letter(e.letter);
      int& slot = delta[check(e.from) * vocab->letters() + a];
      if (slot >= 0 && slot != check(e.to)) throw FormatError("nondeterministic transition in " + kind);
      slot = check(e.to);
    }
    for (int t : delta)
      if (t < 0) throw FormatError(kind + " transition function is not total");
    if (kind == "dfa") {
      Dfa d;
      d.vocab = *vocab;
      d.num_states = static_cast<int>(N);
      d.initial = check(initial[0]);
      d.delta = std::move(delta);
      d.accepting.assign(N, false);
      for (auto q : accepting) d.accepting[q] = true;
      return d;
    }
    Dpa d;
    d.vocab = *vocab;
    d.num_states = static_cast<int>(N);
    d.initial = check(initial[0]);
    d.delta = std::move(delta);
    d.priority.assign(N, -1);
    for (auto [q, pr] : priorities) d.priority[check(q)] = static_cast<int>(pr);
    for (int pr : d.priority)
      if (pr < 0) throw FormatError("every dpa state needs a priority");
    return d;
  }

  auto fill = [&](NondetAutomaton& n) {
    n.vocab = *vocab;
    for (std::size_t q = 0; q < N; ++q) n.add_state(false);
    for (auto q : accepting) n.accepting[q] = true;
    for (const auto& e : edges) n.add_edge(check(e.from), vocab->parse_letter(e.letter), check(e.to));
    for (auto q : initial) n.initial.push_back(static_cast<int>(q));
  };
  if (kind == "nfa") {
    Nfa n;
    fill(n);
    return n;
  }
  Nba n;
  fill(n);
  return n;
}

const Vocabulary& automaton_vocab(const Automaton& a) {
  return std::visit([](const auto& x) -> const Vocabulary& { return x.vocab; }, a);
}

const char* automaton_kind(const Automaton& a) {
  static constexpr const char* names[] = {"dfa", "nfa", "nba", "dpa"};
  return names[a.index()];
}

int automaton_states(const Automaton& a) {
  return std::visit([](const auto& x) { return x.num_states; }, a);
}

namespace {

// (from, letter, to) in state-then-letter order.
template <class F>
void each_edge(const Automaton& a, F&& f) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        for (int q = 0; q < x.num_states; ++q)
          for (Letter c = 0; c < static_cast<Letter>(x.letters()); ++c) {
            if constexpr (std::is_same_v<T, Dfa> || std::is_same_v<T, Dpa>) {
              f(q, c, x.next(q, c));
            } else {
              for (int r : x.successors(q, c)) f(q, c, r);
            }
          }
      },
      a);
}

std::vector<int> initial_states(const Automaton& a) {
  return std::visit(
      [](const auto& x) -> std::vector<int> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Dfa> || std::is_same_v<T, Dpa>) return {x.initial};
        else return x.initial;
      },
      a);
}

std::vector<int> accepting_states(const Automaton& a) {
  std::vector<int> out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (!std::is_same_v<T, Dpa>) {
          for (int q = 0; q < x.num_states; ++q)
            if (x.accepting[q]) out.push_back(q);
        }
      },
      a);
  return out;
}

}  // namespace

std::string write_automaton(const Automaton& a) {
  const Vocabulary& v = automaton_vocab(a);
  std::ostringstream out;
  out << automaton_kind(a) << "\n";
  out << "vocab:";
  for (const auto& n : v.names()) out << ' ' << n;
  out << "\nstates: " << automaton_states(a) << "\ninitial:";
  for (int q : initial_states(a)) out << ' ' << q;
  out << "\n";
  each_edge(a, [&](int q, Letter c, int r) { out << q << " --" << v.format_letter(c) << "--> " << r << "\n"; });
  if (const auto* d = std::get_if<Dpa>(&a)) {
    for (int q = 0; q < d->num_states; ++q) out << "priority " << q << " = " << d->priority[q] << "\n";
  } else {
    out << "accepting:";
    for (int q : accepting_states(a)) out << ' ' << q;
    out << "\n";
  }
  return out.str();
}

std::string to_dot(const Automaton& a) {
  const Vocabulary& v = automaton_vocab(a);
  std::ostringstream out;
  out << "digraph " << automaton_kind(a) << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int q : accepting_states(a)) out << "  " << q << " [shape=doublecircle];\n";
  if (const auto* d = std::get_if<Dpa>(&a))
    for (int q = 0; q < d->num_states; ++q)
      out << "  " << q << " [label=\"" << q << " / " << d->priority[q] << "\"];\n";
  int k = 0;
  for (int q : initial_states(a)) {
    out << "  init" << k << " [shape=point];\n  init" << k << " -> " << q << ";\n";
    ++k;
  }
  // One edge per (q, r) with the letters joined.
  std::map<std::pair<int, int>, std::string> labels;
  each_edge(a, [&](int q, Letter c, int r) {
    std::string& s = labels[{q, r}];
    if (!s.empty()) s += " ";
    s += v.format_letter(c);
  });
  for (const auto& [e, s] : labels) out << "  " << e.first << " -> " << e.second << " [label=\"" << s << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string read_source(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

}  // namespace itl
