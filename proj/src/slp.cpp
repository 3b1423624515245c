#include "suzuki/slp.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

namespace suzuki {

std::string to_decimal(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 parse_u128(const std::string& text) {
  if (text.empty()) throw SlpError("empty integer");
  u128 value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw SlpError("bad integer: " + text);
    const u128 next = value * 10 + static_cast<unsigned>(ch - '0');
    if (next / 10 != value) throw SlpError("integer overflow: " + text);
    value = next;
  }
  return value;
}

Slp::Node::~Node() {
  // Release long chains iteratively instead of through nested destructors.
  std::vector<std::shared_ptr<const Node>> pending;
  auto take = [&](std::shared_ptr<const Node>& child) {
    if (child && child.use_count() == 1) pending.push_back(std::move(child));
    child.reset();
  };
  take(lhs);
  take(rhs);
  while (!pending.empty()) {
    std::shared_ptr<const Node> node = std::move(pending.back());
    pending.pop_back();
    take(node->lhs);
    take(node->rhs);
  }
}

namespace {

std::shared_ptr<const Slp::Node> make_node(Slp::Op op, std::size_t gen, u128 exponent,
                                           std::shared_ptr<const Slp::Node> lhs,
                                           std::shared_ptr<const Slp::Node> rhs) {
  auto node = std::make_shared<Slp::Node>();
  node->op = op;
  node->gen = gen;
  node->exponent = exponent;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

}  // namespace

Slp Slp::generator(std::size_t index) {
  return Slp(make_node(Op::Gen, index, 0, nullptr, nullptr));
}

Slp Slp::identity() { return generator(0).pow(0); }

Slp operator*(const Slp& a, const Slp& b) {
  if (a.empty() || b.empty()) throw SlpError("multiplying an empty program");
  return Slp(make_node(Slp::Op::Mul, 0, 0, a.root_, b.root_));
}

Slp Slp::inverse() const {
  if (empty()) throw SlpError("inverting an empty program");
  return Slp(make_node(Op::Inv, 0, 0, root_, nullptr));
}

Slp Slp::pow(u128 n) const {
  if (empty()) throw SlpError("powering an empty program");
  if (n == 1) return *this;
  return Slp(make_node(Op::Pow, 0, n, root_, nullptr));
}

std::vector<const Slp::Node*> Slp::topological_order() const {
  std::vector<const Node*> order;
  if (!root_) return order;
  std::unordered_set<const Node*> done;
  // (node, children pushed) pairs; iterative post-order DFS.
  std::vector<std::pair<const Node*, bool>> stack{{root_.get(), false}};
  while (!stack.empty()) {
    auto [node, expanded] = stack.back();
    stack.pop_back();
    if (done.count(node)) continue;
    if (expanded) {
      done.insert(node);
      order.push_back(node);
      continue;
    }
    stack.emplace_back(node, true);
    if (node->rhs && !done.count(node->rhs.get())) stack.emplace_back(node->rhs.get(), false);
    if (node->lhs && !done.count(node->lhs.get())) stack.emplace_back(node->lhs.get(), false);
  }
  return order;
}

std::size_t pow_cost(u128 n) {
  if (n <= 1) return 0;
  const auto hi = static_cast<std::uint64_t>(n >> 64);
  const auto lo = static_cast<std::uint64_t>(n);
  const int width = hi ? 64 + std::bit_width(hi) : std::bit_width(lo);
  const int ones = std::popcount(hi) + std::popcount(lo);
  return static_cast<std::size_t>(width - 1 + ones - 1);
}

std::size_t Slp::length() const {
  std::size_t total = 0;
  for (const Node* node : topological_order()) {
    switch (node->op) {
      case Op::Gen: break;
      case Op::Mul:
      case Op::Inv: ++total; break;
      case Op::Pow: total += pow_cost(node->exponent); break;
    }
  }
  return total;
}

std::size_t Slp::generator_count() const {
  std::size_t count = 0;
  for (const Node* node : topological_order()) {
    if (node->op == Op::Gen) count = std::max(count, node->gen + 1);
  }
  return count;
}

std::string Slp::to_text() const {
  if (!root_) throw SlpError("serialising an empty program");
  const auto order = topological_order();
  std::unordered_map<const Node*, std::size_t> index;
  std::ostringstream os;
  for (const Node* node : order) {
    switch (node->op) {
      case Op::Gen: os << "G " << node->gen << '\n'; break;
      case Op::Mul: os << "M " << index.at(node->lhs.get()) << ' ' << index.at(node->rhs.get()) << '\n'; break;
      case Op::Inv: os << "I " << index.at(node->lhs.get()) << '\n'; break;
      case Op::Pow: os << "P " << index.at(node->lhs.get()) << ' ' << to_decimal(node->exponent) << '\n'; break;
    }
    index.emplace(node, index.size());
  }
  os << "R " << order.size() - 1 << '\n';
  return os.str();
}

Slp Slp::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::shared_ptr<const Node>> nodes;
  std::string line;
  auto ref = [&](std::size_t i) {
    if (i >= nodes.size()) throw SlpError("forward or dangling reference");
    return nodes[i];
  };
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    std::size_t a = 0, b = 0;
    std::string word;
    if (op == "G") {
      if (!(ls >> a)) throw SlpError("bad line: " + line);
      nodes.push_back(make_node(Op::Gen, a, 0, nullptr, nullptr));
    } else if (op == "M") {
      if (!(ls >> a >> b)) throw SlpError("bad line: " + line);
      nodes.push_back(make_node(Op::Mul, 0, 0, ref(a), ref(b)));
    } else if (op == "I") {
      if (!(ls >> a)) throw SlpError("bad line: " + line);
      nodes.push_back(make_node(Op::Inv, 0, 0, ref(a), nullptr));
    } else if (op == "P") {
      if (!(ls >> a >> word)) throw SlpError("bad line: " + line);
      nodes.push_back(make_node(Op::Pow, 0, parse_u128(word), ref(a), nullptr));
    } else if (op == "R") {
      if (!(ls >> a)) throw SlpError("bad line: " + line);
      return Slp(ref(a));
    } else {
      throw SlpError("unknown instruction: " + line);
    }
  }
  throw SlpError("missing root line");
}

namespace {

struct SlpOps {
  Slp mul(const Slp& a, const Slp& b) const { return a * b; }
  Slp inv(const Slp& a) const { return a.inverse(); }
  Slp pow(const Slp& a, u128 n) const { return a.pow(n); }
};

struct MatOps {
  Mat4 mul(const Mat4& a, const Mat4& b) const { return a * b; }
  Mat4 inv(const Mat4& a) const { return a.inverse(); }
  Mat4 pow(const Mat4& a, u128 n) const { return mat_pow(a, n); }
};

}  // namespace

Slp Slp::substitute(std::span<const Slp> images) const {
  return evaluate(images, SlpOps{});
}

Mat4 eval(const Slp& slp, std::span<const Mat4> images) {
  return slp.evaluate(images, MatOps{});
}

Tracked operator*(const Tracked& a, const Tracked& b) {
  return {a.mat * b.mat, a.slp.empty() || b.slp.empty() ? Slp{} : a.slp * b.slp};
}

Tracked inverse(const Tracked& a) {
  return {a.mat.inverse(), a.slp.empty() ? Slp{} : a.slp.inverse()};
}

Tracked pow(const Tracked& a, u128 n) {
  return {mat_pow(a.mat, n), a.slp.empty() ? Slp{} : a.slp.pow(n)};
}

Tracked commutator(const Tracked& a, const Tracked& b) {
  return inverse(a) * inverse(b) * a * b;
}

Tracked conjugate(const Tracked& a, const Tracked& b) {
  return inverse(b) * a * b;
}

}  // namespace suzuki
