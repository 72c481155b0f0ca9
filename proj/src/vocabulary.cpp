#include "itlnl/vocabulary.hpp"

#include <algorithm>
#include <cctype>

#include "itlnl/error.hpp"

namespace itl {

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) ||
           std::isdigit(static_cast<unsigned char>(c));
  });
}

Vocabulary::Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxSize)
    throw Error("vocabulary larger than " + std::to_string(kMaxSize) + " variables");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_identifier(names_[i])) throw Error("invalid variable name '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw Error("duplicate variable '" + names_[i] + "'");
  }
}

Vocabulary Vocabulary::from_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return Vocabulary(std::move(out));
}

int Vocabulary::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return static_cast<int>(k);
  return -1;
}

LetterSet Vocabulary::all_letters() const {
  const int n = letters();
  return n >= 64 ? ~LetterSet{0} : (LetterSet{1} << n) - 1;
}

Vocabulary Vocabulary::with(const std::string& name) const {
  if (contains(name)) return *this;
  auto names = names_;
  names.push_back(name);
  return Vocabulary(std::move(names));
}

std::string Vocabulary::fresh(const std::string& base) const {
  if (!contains(base)) return base;
  for (int k = 2;; ++k) {
    auto candidate = base + std::to_string(k);
    if (!contains(candidate)) return candidate;
  }
}

std::string Vocabulary::format_letter(Letter a) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (!((a >> k) & 1u)) continue;
    if (!first) out += ',';
    out += names_[k];
    first = false;
  }
  return out + "}";
}

Letter Vocabulary::parse_letter(std::string_view text) const {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw FormatError("malformed letter '" + std::string(text) + "'");
  Letter a = 0;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    int k = index_of(cur);
    if (k < 0) throw UndeclaredVariable(cur);
    a |= Letter{1} << k;
    cur.clear();
  };
  for (char c : text.substr(1, text.size() - 2)) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) flush();
    else cur.push_back(c);
  }
  flush();
  return a;
}

std::string Vocabulary::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += format_letter(w[i]);
  }
  return out;
}

}  // namespace itl
