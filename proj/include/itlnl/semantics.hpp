#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "itlnl/formula.hpp"
#include "itlnl/vocabulary.hpp"

namespace itl {

/// A finite stretch of a model with a reference interval inside it.
struct Window {
  Word states;
  std::size_t ref_i = 0;
  std::size_t ref_j = 0;
  friend bool operator==(const Window&, const Window&) = default;
};

struct EvalOptions {
  /// Inverse projection: at most this many inserted states per gap ...
  int budget = 4;
  /// ... and at most this many in total.
  int total_budget = 8;
};

struct EvalResult {
  bool truth = false;
  /// True when the value does not depend on the truncation of the model.
  bool exact = false;
};

/// Truth of A at every interval [i, j] of a finite sequence.
class IntervalTable {
public:
  IntervalTable() = default;
  explicit IntervalTable(std::size_t n) : n_(n), bits_(n * n, false) {}
  std::size_t size() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, bool v) { bits_[i * n_ + j] = v; }
  friend bool operator==(const IntervalTable&, const IntervalTable&) = default;

private:
  std::size_t n_ = 0;
  std::vector<bool> bits_;
};

/// Every defining clause applied literally on the sequence; neighbourhood
/// modalities range inside the sequence.
IntervalTable eval_table(const Word& states, const Formula& a, const Vocabulary& vocab,
                         const EvalOptions& opt = {});

EvalResult eval_window(const Window& w, const Formula& a, const Vocabulary& vocab,
                       const EvalOptions& opt = {});

/// Whether eval_window's verdict on A is independent of the context.
bool exact_on_windows(const Formula& a);

/// Exact evaluation of a future formula at (0, 0) of an ultimately periodic
/// word. Throws FragmentError outside the future fragment.
bool eval_lasso(const Lasso& l, const Formula& f, const Vocabulary& vocab);

/// Precompiled form of eval_lasso for repeated queries.
class LassoEvaluator {
public:
  LassoEvaluator(const Formula& f, const Vocabulary& vocab);
  ~LassoEvaluator();
  LassoEvaluator(LassoEvaluator&&) noexcept;
  bool operator()(const Lasso& l) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Visits every window of length 1..max_len: sequences in ascending order
/// (first position most significant), then reference pairs (i, j) in
/// lexicographic order. Stops early when `visit` returns false.
void enumerate_models(const Vocabulary& vocab, std::size_t max_len,
                      const std::function<bool(const Window&)>& visit);
/// Every sequence of length 1..max_len in the same order.
void enumerate_sequences(const Vocabulary& vocab, std::size_t max_len,
                         const std::function<bool(const Word&)>& visit);
/// (2^|V|)^L · L(L+1)/2 summed over L = 1..max_len.
std::size_t count_models(const Vocabulary& vocab, std::size_t max_len);

struct EquivResult {
  bool pass = true;
  std::optional<Window> counterexample;
  std::size_t windows = 0;
  /// Both formulas are exact on windows (agreement is then a theorem about
  /// all intervals up to max_len, not only about truncated contexts).
  bool exact = false;
};

/// First window (in enumerate_models order) where A and B differ.
EquivResult bounded_equiv_check(const Formula& a, const Formula& b, const Vocabulary& vocab,
                                std::size_t max_len, const EvalOptions& opt = {});

}  // namespace itl
