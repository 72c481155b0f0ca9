#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace itl {

/// Node kinds. Basic connectives come first; derived ones expand to basics
/// through `desugar`; Exists/Proj/ProjInv are accepted on input only.
enum class Kind : std::uint8_t {
  // basic
  False,
  Var,
  Imp,
  Next,
  Chop,
  ChopStar,
  DiamondL,
  DiamondR,
  // derived
  True,
  Not,
  And,
  Or,
  Iff,
  Empty,
  Skip,
  Prev,
  Diamond,
  Di,
  Box,
  Bi,
  BoxL,
  BoxR,
  Fin,
  DiamondA,
  BoxA,
  // input only
  Exists,
  Proj,
  ProjInv,
};

int arity(Kind k);
const char* kind_name(Kind k);
bool is_basic(Kind k);
bool is_boolean(Kind k);

/// Immutable formula tree with shared structure. Cheap to copy.
class Formula {
public:
  /// The constant `false`.
  Formula();

  static Formula make(Kind kind, std::vector<Formula> children, std::string name = {});

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  /// Variable name for Var and the bound variable for Exists.
  const std::string& name() const { return node_->name; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& operator[](std::size_t i) const { return node_->children[i]; }
  std::size_t hash() const { return node_->hash; }
  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  int depth() const { return node_->depth; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Formula> children;
    std::size_t hash;
    std::size_t size;
    int depth;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Total order used for ordered containers; consistent with ==.
int compare(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Plain constructors; they build exactly the requested node.
namespace fm {
Formula bottom();
Formula top();
Formula var(const std::string& name);
Formula neg(Formula a);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula next(Formula a);
Formula prev(Formula a);
Formula chop(Formula a, Formula b);
Formula star(Formula a);
Formula dl(Formula a);
Formula dr(Formula a);
Formula bl(Formula a);
Formula br(Formula a);
Formula empty();
Formula skip();
Formula dia(Formula a);
Formula di(Formula a);
Formula box(Formula a);
Formula bi(Formula a);
Formula fin(Formula a);
Formula dia_a(Formula a);
Formula box_a(Formula a);
Formula exists(const std::string& p, Formula a);
Formula proj(Formula w, Formula a);
Formula projinv(Formula w, Formula a);

/// Chop chain a_1 ; a_2 ; ... (left-nested).
Formula chop_chain(const std::vector<Formula>& parts);

/// Boolean constructors that fold the constants true/false.
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula lnot(Formula a);
Formula land_all(const std::vector<Formula>& parts);
Formula lor_all(const std::vector<Formula>& parts);
}  // namespace fm

}  // namespace itl
