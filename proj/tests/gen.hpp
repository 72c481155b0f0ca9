// Random generators shared by the test suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "itlnl/formula.hpp"
#include "itlnl/vocabulary.hpp"

namespace itl::testing {

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

inline Formula random_state(Rng& rng, const Vocabulary& v, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) {
    int k = pick(rng, static_cast<int>(v.size()) + 1);
    if (k == static_cast<int>(v.size())) return pick(rng, 2) ? fm::top() : fm::bottom();
    return fm::var(v.name(k));
  }
  switch (pick(rng, 3)) {
    case 0: return fm::neg(random_state(rng, v, depth - 1));
    case 1: return fm::conj(random_state(rng, v, depth - 1), random_state(rng, v, depth - 1));
    default: return fm::disj(random_state(rng, v, depth - 1), random_state(rng, v, depth - 1));
  }
}

/// Plain ITL over v, nesting depth at most `depth`.
inline Formula random_introspective(Rng& rng, const Vocabulary& v, int depth) {
  if (depth <= 0 || pick(rng, 5) == 0) {
    switch (pick(rng, 6)) {
      case 0: return fm::empty();
      case 1: return fm::skip();
      case 2: return pick(rng, 2) ? fm::top() : fm::bottom();
      default: return fm::var(v.name(pick(rng, static_cast<int>(v.size()))));
    }
  }
  auto sub = [&] { return random_introspective(rng, v, depth - 1); };
  switch (pick(rng, 16)) {
    case 0:
    case 1: return fm::neg(sub());
    case 2: return fm::conj(sub(), sub());
    case 3: return fm::disj(sub(), sub());
    case 4: return fm::imp(sub(), sub());
    case 5: return fm::iff(sub(), sub());
    case 6: return fm::next(sub());
    case 7: return fm::prev(sub());
    case 8:
    case 9: return fm::chop(sub(), sub());
    case 10: return fm::star(sub());
    case 11: return fm::dia(sub());
    case 12: return fm::box(sub());
    case 13: return fm::di(sub());
    case 14: return fm::bi(sub());
    default: return fm::fin(sub());
  }
}

/// Boolean combination of introspective formulas and strictly future atoms
/// <r>(skip ; G) with G again future, `levels` deep.
inline Formula random_future(Rng& rng, const Vocabulary& v, int depth, int levels) {
  if (levels <= 0 || pick(rng, 3) == 0) return random_introspective(rng, v, depth);
  auto atom = [&] {
    return fm::dr(fm::chop(fm::skip(), random_future(rng, v, depth, levels - 1)));
  };
  switch (pick(rng, 5)) {
    case 0: return atom();
    case 1: return fm::neg(atom());
    case 2: return fm::conj(random_introspective(rng, v, depth), atom());
    case 3: return fm::disj(atom(), random_future(rng, v, depth, levels - 1));
    default: return fm::conj(fm::neg(atom()), random_introspective(rng, v, depth));
  }
}

}  // namespace itl::testing
