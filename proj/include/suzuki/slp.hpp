#pragma once

// Straight-line programs over abstract generators.
//
// An Slp is a handle to the root of an immutable DAG; combining programs
// shares their subgraphs, so long product-replacement histories cost one
// node per step. Length is measured on the folded DAG.

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "suzuki/mat4.hpp"

namespace suzuki {

class SlpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_decimal(u128 value);
u128 parse_u128(const std::string& text);

class Slp {
 public:
  enum class Op : std::uint8_t { Gen, Mul, Inv, Pow };

  struct Node {
    Op op = Op::Gen;
    std::size_t gen = 0;
    u128 exponent = 0;
    mutable std::shared_ptr<const Node> lhs;
    mutable std::shared_ptr<const Node> rhs;
    ~Node();
  };

  /// The empty program; most operations on it throw.
  Slp() = default;

  static Slp generator(std::size_t index);
  /// Pow(Gen 0, 0): evaluates to the identity given at least one image.
  static Slp identity();

  friend Slp operator*(const Slp& a, const Slp& b);
  Slp inverse() const;
  Slp pow(u128 n) const;

  bool empty() const { return !root_; }
  const Node* root() const { return root_.get(); }

  /// Nodes reachable from the root, children before parents.
  std::vector<const Node*> topological_order() const;
  std::size_t node_count() const { return topological_order().size(); }
  /// Mul and Inv count one each; Pow(x, n) counts the multiplications of
  /// square-and-multiply, floor(log2 n) + popcount(n) - 1; Gen is free.
  std::size_t length() const;
  /// One more than the largest generator index used (0 for empty).
  std::size_t generator_count() const;

  /// `G i`, `M a b`, `I a`, `P a n` per line, then `R root`.
  std::string to_text() const;
  static Slp parse(const std::string& text);

  /// Folds the DAG in a group given by `ops` (mul, inv, pow members).
  template <class T, class Ops>
  T evaluate(std::span<const T> images, const Ops& ops) const;

  /// Replaces generator i by images[i].
  Slp substitute(std::span<const Slp> images) const;

 private:
  explicit Slp(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

std::size_t pow_cost(u128 n);

/// Matrix evaluation; throws SlpError if a generator index is out of range.
Mat4 eval(const Slp& slp, std::span<const Mat4> images);

/// A group element kept together with a program that produces it.
struct Tracked {
  Mat4 mat;
  Slp slp;
};

Tracked operator*(const Tracked& a, const Tracked& b);
Tracked inverse(const Tracked& a);
Tracked pow(const Tracked& a, u128 n);
/// a^-1 b^-1 a b
Tracked commutator(const Tracked& a, const Tracked& b);
/// b^-1 a b
Tracked conjugate(const Tracked& a, const Tracked& b);

template <class T, class Ops>
T Slp::evaluate(std::span<const T> images, const Ops& ops) const {
  if (!root_) throw SlpError("evaluating an empty program");
  const std::vector<const Node*> order = topological_order();
  std::unordered_map<const Node*, std::size_t> slot;
  slot.reserve(order.size() * 2);
  std::vector<T> values;
  values.reserve(order.size());
  for (const Node* node : order) {
    switch (node->op) {
      case Op::Gen:
        if (node->gen >= images.size()) throw SlpError("generator index out of range");
        values.push_back(images[node->gen]);
        break;
      case Op::Mul:
        values.push_back(ops.mul(values[slot.at(node->lhs.get())], values[slot.at(node->rhs.get())]));
        break;
      case Op::Inv:
        values.push_back(ops.inv(values[slot.at(node->lhs.get())]));
        break;
      case Op::Pow:
        values.push_back(ops.pow(values[slot.at(node->lhs.get())], node->exponent));
        break;
    }
    slot.emplace(node, values.size() - 1);
  }
  return values.back();
}

}  // namespace suzuki
