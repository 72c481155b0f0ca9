#include "itlnl/formula.hpp"

#include <algorithm>
#include <functional>

#include "itlnl/error.hpp"

namespace itl {

int arity(Kind k) {
  switch (k) {
    case Kind::False:
    case Kind::True:
    case Kind::Var:
    case Kind::Empty:
    case Kind::Skip:
      return 0;
    case Kind::Imp:
    case Kind::Chop:
    case Kind::And:
    case Kind::Or:
    case Kind::Iff:
    case Kind::Proj:
    case Kind::ProjInv:
      return 2;
    default:
      return 1;
  }
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::False: return "False";
    case Kind::Var: return "Var";
    case Kind::Imp: return "Imp";
    case Kind::Next: return "Next";
    case Kind::Chop: return "Chop";
    case Kind::ChopStar: return "ChopStar";
    case Kind::DiamondL: return "DiamondL";
    case Kind::DiamondR: return "DiamondR";
    case Kind::True: return "True";
    case Kind::Not: return "Not";
    case Kind::And: return "And";
    case Kind::Or: return "Or";
    case Kind::Iff: return "Iff";
    case Kind::Empty: return "Empty";
    case Kind::Skip: return "Skip";
    case Kind::Prev: return "Prev";
    case Kind::Diamond: return "Diamond";
    case Kind::Di: return "Di";
    case Kind::Box: return "Box";
    case Kind::Bi: return "Bi";
    case Kind::BoxL: return "BoxL";
    case Kind::BoxR: return "BoxR";
    case Kind::Fin: return "Fin";
    case Kind::DiamondA: return "DiamondA";
    case Kind::BoxA: return "BoxA";
    case Kind::Exists: return "Exists";
    case Kind::Proj: return "Proj";
    case Kind::ProjInv: return "ProjInv";
  }
  return "?";
}

bool is_basic(Kind k) { return k <= Kind::DiamondR; }

bool is_boolean(Kind k) {
  switch (k) {
    case Kind::False:
    case Kind::True:
    case Kind::Not:
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

namespace {
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace

Formula::Formula() {
  static const auto kFalse = std::make_shared<const Node>(
      Node{Kind::False, {}, {}, mix(0, static_cast<std::size_t>(Kind::False)), 1, 0});
  node_ = kFalse;
}

Formula Formula::make(Kind kind, std::vector<Formula> children, std::string name) {
  if (static_cast<int>(children.size()) != arity(kind))
    throw Error(std::string("wrong arity for ") + kind_name(kind));
  std::size_t h = mix(0x51ed2701, static_cast<std::size_t>(kind));
  if (!name.empty()) h = mix(h, std::hash<std::string>{}(name));
  std::size_t size = 1;
  int depth = 0;
  for (const auto& c : children) {
    h = mix(h, c.hash());
    size += c.size();
    depth = std::max(depth, c.depth() + 1);
  }
  return Formula(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(children), h, size, depth}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.name() != b.name()) return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (int c = compare(a[i], b[i]); c != 0) return c;
  return 0;
}

namespace fm {

Formula bottom() { return Formula(); }
Formula top() {
  static const Formula t = Formula::make(Kind::True, {});
  return t;
}
Formula var(const std::string& name) { return Formula::make(Kind::Var, {}, name); }
Formula neg(Formula a) { return Formula::make(Kind::Not, {std::move(a)}); }
Formula conj(Formula a, Formula b) { return Formula::make(Kind::And, {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return Formula::make(Kind::Or, {std::move(a), std::move(b)}); }
Formula imp(Formula a, Formula b) { return Formula::make(Kind::Imp, {std::move(a), std::move(b)}); }
Formula iff(Formula a, Formula b) { return Formula::make(Kind::Iff, {std::move(a), std::move(b)}); }
Formula next(Formula a) { return Formula::make(Kind::Next, {std::move(a)}); }
Formula prev(Formula a) { return Formula::make(Kind::Prev, {std::move(a)}); }
Formula chop(Formula a, Formula b) { return Formula::make(Kind::Chop, {std::move(a), std::move(b)}); }
Formula star(Formula a) { return Formula::make(Kind::ChopStar, {std::move(a)}); }
Formula dl(Formula a) { return Formula::make(Kind::DiamondL, {std::move(a)}); }
Formula dr(Formula a) { return Formula::make(Kind::DiamondR, {std::move(a)}); }
Formula bl(Formula a) { return Formula::make(Kind::BoxL, {std::move(a)}); }
Formula br(Formula a) { return Formula::make(Kind::BoxR, {std::move(a)}); }
Formula empty() {
  static const Formula e = Formula::make(Kind::Empty, {});
  return e;
}
Formula skip() {
  static const Formula s = Formula::make(Kind::Skip, {});
  return s;
}
Formula dia(Formula a) { return Formula::make(Kind::Diamond, {std::move(a)}); }
Formula di(Formula a) { return Formula::make(Kind::Di, {std::move(a)}); }
Formula box(Formula a) { return Formula::make(Kind::Box, {std::move(a)}); }
Formula bi(Formula a) { return Formula::make(Kind::Bi, {std::move(a)}); }
Formula fin(Formula a) { return Formula::make(Kind::Fin, {std::move(a)}); }
Formula dia_a(Formula a) { return Formula::make(Kind::DiamondA, {std::move(a)}); }
Formula box_a(Formula a) { return Formula::make(Kind::BoxA, {std::move(a)}); }
Formula exists(const std::string& p, Formula a) {
  return Formula::make(Kind::Exists, {std::move(a)}, p);
}
Formula proj(Formula w, Formula a) { return Formula::make(Kind::Proj, {std::move(w), std::move(a)}); }
Formula projinv(Formula w, Formula a) {
  return Formula::make(Kind::ProjInv, {std::move(w), std::move(a)});
}

Formula chop_chain(const std::vector<Formula>& parts) {
  if (parts.empty()) throw Error("empty chop chain");
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = chop(out, parts[i]);
  return out;
}

Formula land(Formula a, Formula b) {
  if (a.is(Kind::False) || b.is(Kind::False)) return bottom();
  if (a.is(Kind::True)) return b;
  if (b.is(Kind::True)) return a;
  if (a == b) return a;
  return conj(std::move(a), std::move(b));
}

Formula lor(Formula a, Formula b) {
  if (a.is(Kind::True) || b.is(Kind::True)) return top();
  if (a.is(Kind::False)) return b;
  if (b.is(Kind::False)) return a;
  if (a == b) return a;
  return disj(std::move(a), std::move(b));
}

Formula lnot(Formula a) {
  if (a.is(Kind::True)) return bottom();
  if (a.is(Kind::False)) return top();
  if (a.is(Kind::Not)) return a[0];
  return neg(std::move(a));
}

Formula land_all(const std::vector<Formula>& parts) {
  Formula out = top();
  for (const auto& p : parts) out = land(out, p);
  return out;
}

Formula lor_all(const std::vector<Formula>& parts) {
  Formula out = bottom();
  for (const auto& p : parts) out = lor(out, p);
  return out;
}

}  // namespace fm
}  // namespace itl
