#include "itlnl/syntax.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <optional>

#include "itlnl/error.hpp"

namespace itl {

// ===========================================================================
// Lexer and parser
// ===========================================================================

namespace {

enum class Tok {
  End, Ident, LParen, RParen, Comma, Dot, Tilde, Amp, Bar, Arrow, DArrow, Semi, Star,
  DiaL, DiaR, BoxLTok, BoxRTok,
};

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    auto push = [&](Tok t, std::size_t len) {
      out.push_back({t, std::string(s.substr(i, len)), start});
      i += len;
    };
    if (starts("<->")) push(Tok::DArrow, 3);
    else if (starts("->")) push(Tok::Arrow, 2);
    else if (starts("<l>")) push(Tok::DiaL, 3);
    else if (starts("<r>")) push(Tok::DiaR, 3);
    else if (starts("[l]")) push(Tok::BoxLTok, 3);
    else if (starts("[r]")) push(Tok::BoxRTok, 3);
    else if (c == '(') push(Tok::LParen, 1);
    else if (c == ')') push(Tok::RParen, 1);
    else if (c == ',') push(Tok::Comma, 1);
    else if (c == '.') push(Tok::Dot, 1);
    else if (c == '~') push(Tok::Tilde, 1);
    else if (c == '&') push(Tok::Amp, 1);
    else if (c == '|') push(Tok::Bar, 1);
    else if (c == ';') push(Tok::Semi, 1);
    else if (c == '*') push(Tok::Star, 1);
    else throw SyntaxError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

const std::map<std::string, Kind, std::less<>>& prefix_keywords() {
  static const std::map<std::string, Kind, std::less<>> m = {
      {"next", Kind::Next}, {"prev", Kind::Prev},   {"dia", Kind::Diamond},
      {"di", Kind::Di},     {"box", Kind::Box},     {"bi", Kind::Bi},
      {"fin", Kind::Fin},   {"dia_a", Kind::DiamondA}, {"box_a", Kind::BoxA},
  };
  return m;
}

bool is_keyword(std::string_view s) {
  static const std::set<std::string, std::less<>> kw = {
      "true", "false", "empty", "skip", "exists", "proj", "projinv"};
  return kw.count(s) || prefix_keywords().count(s);
}

class Parser {
public:
  Parser(std::string_view text, const Vocabulary* vocab) : toks_(lex(text)), vocab_(vocab) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().pos); }
  void expect(Tok t, const char* what) {
    if (peek().type != t) fail(std::string("expected ") + what);
    ++pos_;
  }

  Formula formula() {
    if (peek().type == Tok::Ident && peek().text == "exists") return binder();
    Formula lhs = disjunction();
    if (peek().type == Tok::Arrow) {
      take();
      return fm::imp(lhs, formula());
    }
    if (peek().type == Tok::DArrow) {
      take();
      return fm::iff(lhs, formula());
    }
    return lhs;
  }

  Formula binder() {
    take();
    if (peek().type != Tok::Ident || is_keyword(peek().text)) fail("expected variable after exists");
    std::string p = take().text;
    if (!is_identifier(p)) {
      --pos_;
      fail("invalid identifier '" + p + "'");
    }
    expect(Tok::Dot, "'.'");
    bound_.push_back(p);
    Formula body = formula();
    bound_.pop_back();
    return fm::exists(p, body);
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().type == Tok::Bar) {
      take();
      f = fm::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = chop();
    while (peek().type == Tok::Amp) {
      take();
      f = fm::conj(f, chop());
    }
    return f;
  }

  Formula chop() {
    Formula f = unary();
    while (peek().type == Tok::Semi) {
      take();
      f = fm::chop(f, unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Tilde: take(); return fm::neg(unary());
      case Tok::DiaL: take(); return fm::dl(unary());
      case Tok::DiaR: take(); return fm::dr(unary());
      case Tok::BoxLTok: take(); return fm::bl(unary());
      case Tok::BoxRTok: take(); return fm::br(unary());
      case Tok::Ident: {
        if (t.text == "exists") return binder();
        auto it = prefix_keywords().find(t.text);
        if (it != prefix_keywords().end()) {
          take();
          return Formula::make(it->second, {unary()});
        }
        break;
      }
      default:
        break;
    }
    return postfix();
  }

  Formula postfix() {
    Formula f = primary();
    while (peek().type == Tok::Star) {
      take();
      f = fm::star(f);
    }
    return f;
  }

  Formula primary() {
    const Token t = peek();
    if (t.type == Tok::LParen) {
      take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.type != Tok::Ident) fail(t.type == Tok::End ? "unexpected end of input"
                                                      : "unexpected '" + t.text + "'");
    take();
    if (t.text == "true") return fm::top();
    if (t.text == "false") return fm::bottom();
    if (t.text == "empty") return fm::empty();
    if (t.text == "skip") return fm::skip();
    if (t.text == "proj" || t.text == "projinv") {
      expect(Tok::LParen, "'('");
      Formula w = formula();
      expect(Tok::Comma, "','");
      Formula a = formula();
      expect(Tok::RParen, "')'");
      return t.text == "proj" ? fm::proj(w, a) : fm::projinv(w, a);
    }
    if (is_keyword(t.text)) {
      --pos_;
      fail("misplaced keyword '" + t.text + "'");
    }
    if (!is_identifier(t.text)) {
      --pos_;
      fail("invalid identifier '" + t.text + "'");
    }
    declare(t.text);
    return fm::var(t.text);
  }

  void declare(const std::string& name) const {
    if (!vocab_ || vocab_->contains(name)) return;
    if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) return;
    throw UndeclaredVariable(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Vocabulary* vocab_;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse(std::string_view text, const Vocabulary& vocab) {
  return Parser(text, &vocab).parse_all();
}

Formula parse(std::string_view text) { return Parser(text, nullptr).parse_all(); }

// ===========================================================================
// Rendering
// ===========================================================================

namespace {

int precedence(Kind k) {
  switch (k) {
    case Kind::Exists: return 0;
    case Kind::Imp:
    case Kind::Iff: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Chop: return 4;
    case Kind::ChopStar: return 6;
    case Kind::False:
    case Kind::True:
    case Kind::Var:
    case Kind::Empty:
    case Kind::Skip:
    case Kind::Proj:
    case Kind::ProjInv: return 7;
    default: return 5;  // prefix operators
  }
}

const char* prefix_text(Kind k) {
  switch (k) {
    case Kind::Not: return "~";
    case Kind::Next: return "next ";
    case Kind::Prev: return "prev ";
    case Kind::DiamondL: return "<l> ";
    case Kind::DiamondR: return "<r> ";
    case Kind::BoxL: return "[l] ";
    case Kind::BoxR: return "[r] ";
    case Kind::Diamond: return "dia ";
    case Kind::Di: return "di ";
    case Kind::Box: return "box ";
    case Kind::Bi: return "bi ";
    case Kind::Fin: return "fin ";
    case Kind::DiamondA: return "dia_a ";
    case Kind::BoxA: return "box_a ";
    default: return nullptr;
  }
}

void render_into(const Formula& a, int min_prec, std::string& out) {
  const int p = precedence(a.kind());
  const bool paren = p < min_prec;
  if (paren) out += '(';
  auto binary = [&](const char* op, int lp, int rp) {
    render_into(a[0], lp, out);
    out += op;
    render_into(a[1], rp, out);
  };
  switch (a.kind()) {
    case Kind::False: out += "false"; break;
    case Kind::True: out += "true"; break;
    case Kind::Empty: out += "empty"; break;
    case Kind::Skip: out += "skip"; break;
    case Kind::Var: out += a.name(); break;
    case Kind::Imp: binary(" -> ", 2, 1); break;
    case Kind::Iff: binary(" <-> ", 2, 1); break;
    case Kind::Or: binary(" | ", 2, 3); break;
    case Kind::And: binary(" & ", 3, 4); break;
    case Kind::Chop: binary(" ; ", 4, 5); break;
    case Kind::ChopStar:
      render_into(a[0], 6, out);
      out += '*';
      break;
    case Kind::Exists:
      out += "exists " + a.name() + ". ";
      render_into(a[0], 0, out);
      break;
    case Kind::Proj:
    case Kind::ProjInv:
      out += a.is(Kind::Proj) ? "proj(" : "projinv(";
      render_into(a[0], 0, out);
      out += ", ";
      render_into(a[1], 0, out);
      out += ')';
      break;
    default:
      out += prefix_text(a.kind());
      render_into(a[0], 5, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string render(const Formula& a) {
  std::string out;
  render_into(a, 0, out);
  return out;
}

// ===========================================================================
// Variables and substitution
// ===========================================================================

namespace {

void collect_vars(const Formula& a, std::set<std::string>& bound_here, VarSets& out) {
  if (a.is(Kind::Var)) {
    if (!bound_here.count(a.name())) out.free.insert(a.name());
    return;
  }
  if (a.is(Kind::Exists)) {
    out.bound.insert(a.name());
    const bool fresh = bound_here.insert(a.name()).second;
    collect_vars(a[0], bound_here, out);
    if (fresh) bound_here.erase(a.name());
    return;
  }
  for (const auto& c : a.children()) collect_vars(c, bound_here, out);
}

Formula rebuild(const Formula& a, std::vector<Formula> kids) {
  return Formula::make(a.kind(), std::move(kids), a.name());
}

template <class F>
Formula map_children(const Formula& a, F&& f) {
  if (a.children().empty()) return a;
  std::vector<Formula> kids;
  kids.reserve(a.children().size());
  bool changed = false;
  for (const auto& c : a.children()) {
    kids.push_back(f(c));
    changed = changed || !(kids.back() == c);
  }
  return changed ? rebuild(a, std::move(kids)) : a;
}

Formula subst(const Formula& a, const std::string& p, const std::string& q,
              std::set<std::string>& bound) {
  if (a.is(Kind::Var)) {
    if (a.name() != p || bound.count(p)) return a;
    if (bound.count(q)) throw CaptureError("substituting " + q + " for " + p + " is captured by exists " + q);
    return fm::var(q);
  }
  if (a.is(Kind::Exists)) {
    const bool fresh = bound.insert(a.name()).second;
    Formula body = subst(a[0], p, q, bound);
    if (fresh) bound.erase(a.name());
    return body == a[0] ? a : fm::exists(a.name(), body);
  }
  return map_children(a, [&](const Formula& c) { return subst(c, p, q, bound); });
}

}  // namespace

VarSets vars(const Formula& a) {
  VarSets out;
  std::set<std::string> bound;
  collect_vars(a, bound, out);
  return out;
}

std::set<std::string> free_vars(const Formula& a) { return vars(a).free; }

Vocabulary vocabulary_of(std::initializer_list<Formula> fs) {
  std::set<std::string> names;
  for (const auto& f : fs) names.merge(free_vars(f));
  return Vocabulary({names.begin(), names.end()});
}

Formula substitute_var(const Formula& a, const std::string& p, const std::string& q) {
  if (p == q) return a;
  std::set<std::string> bound;
  return subst(a, p, q, bound);
}

// ===========================================================================
// Time reversal and desugaring
// ===========================================================================

Formula time_reverse(const Formula& a) {
  auto r = [](const Formula& x) { return time_reverse(x); };
  switch (a.kind()) {
    case Kind::False:
    case Kind::True:
    case Kind::Empty:
    case Kind::Skip:
      return a;
    case Kind::Var: return fm::fin(a);
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
    case Kind::ChopStar:
      return map_children(a, r);
    case Kind::Next: return fm::prev(r(a[0]));
    case Kind::Prev: return fm::next(r(a[0]));
    case Kind::Chop: return fm::chop(r(a[1]), r(a[0]));
    case Kind::DiamondL: return fm::dr(r(a[0]));
    case Kind::DiamondR: return fm::dl(r(a[0]));
    case Kind::BoxL: return fm::br(r(a[0]));
    case Kind::BoxR: return fm::bl(r(a[0]));
    case Kind::Diamond: return fm::di(r(a[0]));
    case Kind::Di: return fm::dia(r(a[0]));
    case Kind::Box: return fm::bi(r(a[0]));
    case Kind::Bi: return fm::box(r(a[0]));
    case Kind::Fin: return fm::bi(fm::imp(fm::empty(), r(a[0])));
    case Kind::DiamondA: return fm::dia_a(r(a[0]));
    case Kind::BoxA: return fm::box_a(r(a[0]));
    case Kind::Exists:
    case Kind::Proj:
    case Kind::ProjInv:
      break;
  }
  throw FragmentError(std::string("time reversal does not support ") + kind_name(a.kind()));
}

Formula desugar(const Formula& a) {
  using namespace fm;
  auto d = [](const Formula& x) { return desugar(x); };
  const Formula t = imp(bottom(), bottom());
  auto n = [](Formula x) { return imp(std::move(x), bottom()); };
  switch (a.kind()) {
    case Kind::False:
    case Kind::Var:
      return a;
    case Kind::Imp:
    case Kind::Next:
    case Kind::Chop:
    case Kind::ChopStar:
    case Kind::DiamondL:
    case Kind::DiamondR:
    case Kind::Exists:
    case Kind::Proj:
    case Kind::ProjInv:
      return map_children(a, d);
    case Kind::True: return t;
    case Kind::Not: return n(d(a[0]));
    case Kind::And: return n(imp(d(a[0]), n(d(a[1]))));
    case Kind::Or: return imp(n(d(a[0])), d(a[1]));
    case Kind::Iff: {
      Formula x = d(a[0]), y = d(a[1]);
      return n(imp(imp(x, y), n(imp(y, x))));
    }
    case Kind::Empty: return n(next(t));
    case Kind::Skip: return next(n(next(t)));
    case Kind::Prev: return chop(d(a[0]), next(n(next(t))));
    case Kind::Diamond: return chop(t, d(a[0]));
    case Kind::Di: return chop(d(a[0]), t);
    case Kind::Box: return n(chop(t, n(d(a[0]))));
    case Kind::Bi: return n(chop(n(d(a[0])), t));
    case Kind::BoxL: return n(dl(n(d(a[0]))));
    case Kind::BoxR: return n(dr(n(d(a[0]))));
    case Kind::Fin: return n(chop(t, n(imp(n(next(t)), d(a[0])))));
    case Kind::DiamondA: return dr(dr(dl(dl(d(a[0])))));
    case Kind::BoxA: return n(dr(dr(dl(dl(n(d(a[0])))))));
  }
  return a;
}

// ===========================================================================
// Fragments
// ===========================================================================

namespace {

bool is_neighbourhood(Kind k) {
  return k == Kind::DiamondL || k == Kind::DiamondR || k == Kind::BoxL || k == Kind::BoxR ||
         k == Kind::DiamondA || k == Kind::BoxA;
}

template <class Pred>
bool any_node(const Formula& a, Pred&& pred) {
  if (pred(a)) return true;
  for (const auto& c : a.children())
    if (any_node(c, pred)) return true;
  return false;
}

}  // namespace

bool is_state(const Formula& a) {
  if (a.is(Kind::Var) || a.is(Kind::True) || a.is(Kind::False)) return true;
  if (!is_boolean(a.kind())) return false;
  return std::all_of(a.children().begin(), a.children().end(),
                     [](const Formula& c) { return is_state(c); });
}

bool is_local(const Formula& a) {
  return !any_node(a, [](const Formula& x) { return is_neighbourhood(x.kind()); });
}

bool has_input_only(const Formula& a) {
  return any_node(a, [](const Formula& x) {
    return x.is(Kind::Exists) || x.is(Kind::Proj) || x.is(Kind::ProjInv);
  });
}

bool is_introspective(const Formula& a) { return is_local(a) && !has_input_only(a); }

namespace {

Formula push_next(const Formula& n) {
  using namespace fm;
  if (is_local(n)) return next(n);
  const Formula nonempty = neg(empty());
  switch (n.kind()) {
    case Kind::Not: return conj(nonempty, neg(push_next(n[0])));
    case Kind::And: return conj(push_next(n[0]), push_next(n[1]));
    case Kind::Or: return disj(push_next(n[0]), push_next(n[1]));
    case Kind::Imp: return conj(nonempty, imp(push_next(n[0]), push_next(n[1])));
    case Kind::Iff: return conj(nonempty, iff(push_next(n[0]), push_next(n[1])));
    case Kind::DiamondR: return conj(nonempty, n);
    default: break;
  }
  throw FragmentError("not a future formula: " + render(n));
}

}  // namespace

Formula normalize_future(const Formula& f) {
  if (is_local(f)) return f;
  switch (f.kind()) {
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
      return map_children(f, [](const Formula& c) { return normalize_future(c); });
    case Kind::DiamondR: return fm::dr(normalize_future(f[0]));
    case Kind::BoxR: return fm::neg(fm::dr(normalize_future(fm::neg(f[0]))));
    case Kind::Next: return push_next(normalize_future(f[0]));
    case Kind::Chop:
      if (f[0].is(Kind::Skip)) return push_next(normalize_future(f[1]));
      break;
    default:
      break;
  }
  throw FragmentError("not a future formula: " + render(f));
}

bool is_future(const Formula& f) {
  try {
    normalize_future(f);
    return true;
  } catch (const FragmentError&) {
    return false;
  }
}

Formula strict_future_body(const Formula& a) {
  if (a.is(Kind::DiamondR)) {
    const Formula& b = a[0];
    if (b.is(Kind::Chop) && b[0].is(Kind::Skip)) return b[1];
    if (b.is(Kind::Next)) return b[0];
  }
  throw FragmentError("not a strictly future atom: " + render(a));
}

Formula strict_past_body(const Formula& a) {
  if (a.is(Kind::DiamondL)) {
    const Formula& b = a[0];
    if (b.is(Kind::Chop) && b[1].is(Kind::Skip)) return b[0];
    if (b.is(Kind::Prev)) return b[0];
  }
  throw FragmentError("not a strictly past atom: " + render(a));
}

bool is_strict_future_atom(const Formula& a) {
  try {
    return is_future(strict_future_body(a));
  } catch (const FragmentError&) {
    return false;
  }
}

bool is_strict_past_atom(const Formula& a) {
  try {
    return is_future(time_reverse(strict_past_body(a)));
  } catch (const FragmentError&) {
    return false;
  }
}

Formula simplify_constants(const Formula& a) {
  if (!is_boolean(a.kind())) return a;
  switch (a.kind()) {
    case Kind::Not: return fm::lnot(simplify_constants(a[0]));
    case Kind::And: return fm::land(simplify_constants(a[0]), simplify_constants(a[1]));
    case Kind::Or: return fm::lor(simplify_constants(a[0]), simplify_constants(a[1]));
    case Kind::Imp: {
      Formula x = simplify_constants(a[0]), y = simplify_constants(a[1]);
      if (x.is(Kind::False) || y.is(Kind::True)) return fm::top();
      if (x.is(Kind::True)) return y;
      if (y.is(Kind::False)) return fm::lnot(x);
      return fm::imp(x, y);
    }
    case Kind::Iff: {
      Formula x = simplify_constants(a[0]), y = simplify_constants(a[1]);
      if (x.is(Kind::True)) return y;
      if (y.is(Kind::True)) return x;
      if (x.is(Kind::False)) return fm::lnot(y);
      if (y.is(Kind::False)) return fm::lnot(x);
      return fm::iff(x, y);
    }
    default:
      return a;
  }
}

// ===========================================================================
// State formulas
// ===========================================================================

bool eval_state(const Formula& w, Letter a, const Vocabulary& vocab) {
  switch (w.kind()) {
    case Kind::False: return false;
    case Kind::True: return true;
    case Kind::Var: {
      int k = vocab.index_of(w.name());
      if (k < 0) throw UndeclaredVariable(w.name());
      return (a >> k) & 1u;
    }
    case Kind::Not: return !eval_state(w[0], a, vocab);
    case Kind::And: return eval_state(w[0], a, vocab) && eval_state(w[1], a, vocab);
    case Kind::Or: return eval_state(w[0], a, vocab) || eval_state(w[1], a, vocab);
    case Kind::Imp: return !eval_state(w[0], a, vocab) || eval_state(w[1], a, vocab);
    case Kind::Iff: return eval_state(w[0], a, vocab) == eval_state(w[1], a, vocab);
    default:
      throw FragmentError("not a state formula: " + render(w));
  }
}

LetterSet state_letters(const Formula& w, const Vocabulary& vocab) {
  if (!is_state(w)) throw FragmentError("not a state formula: " + render(w));
  LetterSet out = 0;
  for (int a = 0; a < vocab.letters(); ++a)
    if (eval_state(w, static_cast<Letter>(a), vocab)) out |= letter_bit(static_cast<Letter>(a));
  return out;
}

namespace {

struct Cube {
  Letter value;
  Letter care;  // bits that are fixed
  bool operator<(const Cube& o) const {
    return care != o.care ? care < o.care : value < o.value;
  }
  bool operator==(const Cube&) const = default;
  bool covers(Letter a) const { return (a & care) == value; }
};

Formula cube_formula(const Cube& c, const Vocabulary& vocab) {
  std::vector<Formula> lits;
  for (std::size_t k = 0; k < vocab.size(); ++k) {
    if (!((c.care >> k) & 1u)) continue;
    Formula v = fm::var(vocab.name(k));
    lits.push_back(((c.value >> k) & 1u) ? v : fm::neg(v));
  }
  return fm::land_all(lits);
}

}  // namespace

Formula letters_formula(LetterSet letters, const Vocabulary& vocab) {
  const int n = vocab.letters();
  letters &= vocab.all_letters();
  if (letters == 0) return fm::bottom();
  if (letters == vocab.all_letters()) return fm::top();
  const Letter full = static_cast<Letter>(n - 1);

  // Prime implicants by iterated merging.
  std::set<Cube> current, primes;
  for (int a = 0; a < n; ++a)
    if (has_letter(letters, static_cast<Letter>(a))) current.insert({static_cast<Letter>(a), full});
  while (!current.empty()) {
    std::set<Cube> next, merged;
    for (auto it = current.begin(); it != current.end(); ++it) {
      for (auto jt = std::next(it); jt != current.end(); ++jt) {
        if (it->care != jt->care) continue;
        Letter diff = it->value ^ jt->value;
        if (std::popcount(diff) != 1) continue;
        next.insert({it->value & ~diff, it->care & ~diff});
        merged.insert(*it);
        merged.insert(*jt);
      }
    }
    for (const auto& c : current)
      if (!merged.count(c)) primes.insert(c);
    current = std::move(next);
  }

  // Greedy cover, essential implicants first.
  std::vector<Cube> chosen;
  LetterSet uncovered = letters;
  std::vector<Cube> pool(primes.begin(), primes.end());
  auto cover_of = [&](const Cube& c) {
    LetterSet s = 0;
    for (int a = 0; a < n; ++a)
      if (c.covers(static_cast<Letter>(a))) s |= letter_bit(static_cast<Letter>(a));
    return s;
  };
  for (int a = 0; a < n; ++a) {
    if (!has_letter(uncovered, static_cast<Letter>(a))) continue;
    const Cube* only = nullptr;
    int count = 0;
    for (const auto& c : pool)
      if (c.covers(static_cast<Letter>(a))) {
        only = &c;
        ++count;
      }
    if (count == 1) {
      chosen.push_back(*only);
      uncovered &= ~cover_of(*only);
    }
  }
  while (uncovered) {
    const Cube* best = nullptr;
    int best_gain = -1;
    for (const auto& c : pool) {
      int gain = std::popcount(cover_of(c) & uncovered);
      if (gain > best_gain) {
        best_gain = gain;
        best = &c;
      }
    }
    chosen.push_back(*best);
    uncovered &= ~cover_of(*best);
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  std::vector<Formula> terms;
  for (const auto& c : chosen) terms.push_back(cube_formula(c, vocab));
  return fm::lor_all(terms);
}

// ===========================================================================
// Separated DNF
// ===========================================================================

Formula SeparatedDisjunct::to_formula() const {
  return fm::land_all({past, introspective, future});
}

Formula SeparatedDnf::to_formula() const {
  std::vector<Formula> parts;
  for (const auto& d : disjuncts) parts.push_back(d.to_formula());
  return fm::lor_all(parts);
}

namespace {

void collect_atoms(const Formula& a, std::vector<Formula>& atoms) {
  if (is_boolean(a.kind())) {
    for (const auto& c : a.children()) collect_atoms(c, atoms);
    return;
  }
  if (is_local(a)) return;
  if (is_strict_future_atom(a) || is_strict_past_atom(a)) {
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
    return;
  }
  throw NotSeparated(render(a));
}

Formula replace_atom(const Formula& a, const Formula& atom, const Formula& value) {
  if (a == atom) return value;
  if (!is_boolean(a.kind())) return a;
  return map_children(a, [&](const Formula& c) { return replace_atom(c, atom, value); });
}

struct Expansion {
  const std::vector<Formula>& atoms;
  std::vector<SeparatedDisjunct>& out;

  void run(const Formula& a, std::size_t k, std::vector<Formula>& past,
           std::vector<Formula>& future) {
    if (a.is(Kind::False)) return;
    if (k == atoms.size()) {
      out.push_back({fm::land_all(past), a, fm::land_all(future)});
      return;
    }
    const Formula& atom = atoms[k];
    Formula pos = simplify_constants(replace_atom(a, atom, fm::top()));
    Formula negv = simplify_constants(replace_atom(a, atom, fm::bottom()));
    if (pos == negv) {
      run(pos, k + 1, past, future);
      return;
    }
    auto& side = is_strict_future_atom(atom) ? future : past;
    side.push_back(atom);
    run(pos, k + 1, past, future);
    side.back() = fm::neg(atom);
    run(negv, k + 1, past, future);
    side.pop_back();
  }
};

}  // namespace

std::vector<Formula> separated_atoms(const Formula& a) {
  std::vector<Formula> atoms;
  collect_atoms(a, atoms);
  return atoms;
}

Formula assign_atom(const Formula& a, const Formula& atom, bool value) {
  return simplify_constants(replace_atom(a, atom, value ? fm::top() : fm::bottom()));
}

SeparatedDnf separated_dnf(const Formula& a, std::size_t max_atoms) {
  if (has_input_only(a) && !is_local(a))
    throw FragmentError("quantified or projected input must be eliminated first");
  auto atoms = separated_atoms(a);
  if (atoms.size() > max_atoms)
    throw GuardExceeded("separated DNF over " + std::to_string(atoms.size()) +
                        " atoms exceeds the limit of " + std::to_string(max_atoms));
  SeparatedDnf dnf;
  std::vector<Formula> past, future;
  Expansion{atoms, dnf.disjuncts}.run(simplify_constants(a), 0, past, future);
  return dnf;
}

}  // namespace itl
