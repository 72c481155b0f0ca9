#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace itl {

/// A state of a model: the subset of the vocabulary that holds, as a bit
/// pattern (bit k set iff the k-th variable is true).
using Letter = std::uint32_t;

/// A set of letters, bit a set iff letter a is a member.
using LetterSet = std::uint64_t;

using Word = std::vector<Letter>;

/// Ordered list of distinct propositional variables. The order fixes the
/// letter encoding for the lifetime of every automaton built over it.
class Vocabulary {
public:
  static constexpr std::size_t kMaxSize = 6;

  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> names);

  /// Parses "p,q" or "p q".
  static Vocabulary from_list(std::string_view text);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t k) const { return names_[k]; }

  int index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name) >= 0; }

  /// Number of letters, 2^|V|.
  int letters() const { return 1 << names_.size(); }
  LetterSet all_letters() const;

  /// A copy with `name` appended (no-op if already present).
  Vocabulary with(const std::string& name) const;
  /// A name of the form base, base2, base3, ... not in this vocabulary.
  std::string fresh(const std::string& base) const;

  std::string format_letter(Letter a) const;
  /// Parses `{}`, `{p}`, `{p,q}`.
  Letter parse_letter(std::string_view text) const;
  std::string format_word(const Word& w) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

private:
  std::vector<std::string> names_;
};

bool is_identifier(std::string_view s);

/// Ultimately periodic omega-word stem . loop . loop ...
struct Lasso {
  Word stem;
  Word loop;

  /// Positions 0 .. stem.size()+loop.size()-1 represent every suffix.
  std::size_t classes() const { return stem.size() + loop.size(); }
  std::size_t class_of(std::size_t pos) const {
    if (pos < classes()) return pos;
    return stem.size() + (pos - stem.size()) % loop.size();
  }
  std::size_t succ(std::size_t c) const { return c + 1 < classes() ? c + 1 : stem.size(); }
  Letter at(std::size_t pos) const {
    std::size_t c = class_of(pos);
    return c < stem.size() ? stem[c] : loop[c - stem.size()];
  }
  /// The same omega-word with the shortest stem and a primitive loop.
  Lasso canonical() const {
    Lasso l = *this;
    for (std::size_t p = 1; p < l.loop.size(); ++p) {
      if (l.loop.size() % p) continue;
      bool periodic = true;
      for (std::size_t k = p; k < l.loop.size() && periodic; ++k) periodic = l.loop[k] == l.loop[k - p];
      if (periodic) {
        l.loop.resize(p);
        break;
      }
    }
    while (!l.stem.empty() && l.stem.back() == l.loop.back()) {
      l.loop.insert(l.loop.begin(), l.loop.back());
      l.loop.pop_back();
      l.stem.pop_back();
    }
    return l;
  }
  friend bool operator==(const Lasso&, const Lasso&) = default;
};

inline bool has_letter(LetterSet s, Letter a) { return (s >> a) & 1u; }
inline LetterSet letter_bit(Letter a) { return LetterSet{1} << a; }

}  // namespace itl
