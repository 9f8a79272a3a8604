#pragma once

// Operations of the operad tower I, I+, I++, ... over the initial untyped
// operad.
//
// Level 0 has one type (written "*") and one operation, the identity "1".
// At level L >= 1 the types are the operations of level L-1, and an operation
// is a composition tree of level L-1 operations together with
//   - a node order: input j of the operation is the label of node node_order[j]
//   - a leaf order (carried by the tree): input j of the tree's composite is
//     the planar leaf leaf_order[j].
// The output of a level-L operation is the composite of its tree.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/permutation.hpp"

namespace opetope {

struct OpData;

/// Immutable, cheaply copyable handle to an operation at some tower level.
class Operation {
 public:
  Operation() = default;

  bool valid() const noexcept { return static_cast<bool>(d_); }
  std::size_t level() const;
  std::size_t arity() const;
  const std::string& code() const;
  std::size_t size() const;
  const struct Type& output() const;
  std::span<const struct Type> inputs() const;
  const class CompTree& body() const;
  std::span<const std::size_t> node_order() const;

  friend bool operator==(const Operation& a, const Operation& b) {
    return a.d_ == b.d_ || (a.d_ && b.d_ && a.code() == b.code());
  }
  friend bool operator<(const Operation& a, const Operation& b) { return a.code() < b.code(); }

 private:
  friend Operation make_operation_data(std::shared_ptr<const OpData>);
  std::shared_ptr<const OpData> d_;
};

/// A type of the operad at `level`: the unique type "*" at level 0, otherwise
/// an operation of level-1.
struct Type {
  std::size_t level = 0;
  Operation op;  // empty at level 0

  static Type point() { return Type{}; }
  static Type of(const Operation& o) { return Type{o.level() + 1, o}; }

  std::string code() const { return level == 0 ? std::string("*") : op.code(); }
  std::size_t size() const { return level == 0 ? 0 : op.size(); }

  friend bool operator==(const Type& a, const Type& b) {
    return a.level == b.level && (a.level == 0 || a.op == b.op);
  }
  friend bool operator<(const Type& a, const Type& b) {
    if (a.level != b.level) return a.level < b.level;
    return a.code() < b.code();
  }
};

inline constexpr std::size_t leaf_slot = static_cast<std::size_t>(-1);

struct TreeNode {
  Operation label;
  std::vector<std::size_t> child;  // child[s] is a node index or leaf_slot
};

/// A well-typed composition tree of operations at `level()`.
///
/// Nodes are stored in preorder with children indexed by input slot, so the
/// planar shape is intrinsic: there is no separate embedding to canonicalize.
/// The empty tree has no nodes, a single edge of type `edge_type()`, and
/// exactly one leaf.
class CompTree {
 public:
  CompTree() = default;

  /// Empty tree on one edge of type t.
  static CompTree empty(const Type& t) {
    CompTree c;
    c.level_ = t.level;
    c.empty_type_ = t;
    c.leaf_order_ = {0};
    c.leaves_ = {{leaf_slot, 0}};
    return c;
  }

  /// Validates typing and the leaf labeling; throws Error(ill_typed).
  CompTree(std::size_t level, std::vector<TreeNode> nodes, std::vector<std::size_t> leaf_order)
      : level_(level), nodes_(std::move(nodes)), leaf_order_(std::move(leaf_order)) {
    if (nodes_.empty()) throw Error(Errc::ill_typed, "use CompTree::empty for the empty tree");
    std::vector<int> parents(nodes_.size(), 0);
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      const auto& n = nodes_[v];
      if (!n.label.valid() || n.label.level() != level_)
        throw Error(Errc::ill_typed, "node label at wrong level");
      if (n.child.size() != n.label.arity())
        throw Error(Errc::ill_typed, "node slot count differs from label arity");
      for (std::size_t s = 0; s < n.child.size(); ++s) {
        const auto c = n.child[s];
        if (c == leaf_slot) continue;
        if (c <= v || c >= nodes_.size()) throw Error(Errc::ill_typed, "nodes not in preorder");
        ++parents[c];
        if (!(nodes_[c].label.output() == n.label.inputs()[s]))
          throw Error(Errc::ill_typed, "edge type mismatch between " + nodes_[c].label.code() +
                                           " and slot " + std::to_string(s) + " of " +
                                           n.label.code());
      }
    }
    for (std::size_t v = 1; v < nodes_.size(); ++v)
      if (parents[v] != 1) throw Error(Errc::ill_typed, "not a tree");
    collect_leaves(0);
    check_preorder();
    if (leaf_order_.size() != leaves_.size())
      throw Error(Errc::ill_typed, "leaf labeling has wrong length");
    std::vector<bool> seen(leaves_.size(), false);
    for (auto p : leaf_order_) {
      if (p >= leaves_.size() || seen[p]) throw Error(Errc::ill_typed, "leaf labeling not a bijection");
      seen[p] = true;
    }
  }

  std::size_t level() const noexcept { return level_; }
  bool is_empty() const noexcept { return nodes_.empty(); }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(std::size_t v) const {
    if (v >= nodes_.size()) throw Error(Errc::no_such_node, "node " + std::to_string(v));
    return nodes_[v];
  }
  const Type& edge_type() const noexcept { return empty_type_; }

  /// Planar leaves as (node, slot), in depth-first slot order.
  const std::vector<std::pair<std::size_t, std::size_t>>& leaves() const noexcept { return leaves_; }
  std::span<const std::size_t> leaf_order() const noexcept { return leaf_order_; }

  /// Type carried by planar leaf p.
  Type leaf_type(std::size_t p) const {
    if (is_empty()) return empty_type_;
    const auto [v, s] = leaves_.at(p);
    return nodes_[v].label.inputs()[s];
  }

  Type root_type() const { return is_empty() ? empty_type_ : nodes_[0].label.output(); }

  /// Parent (node, slot) of every node; the root maps to (leaf_slot, 0).
  std::vector<std::pair<std::size_t, std::size_t>> parents() const {
    std::vector<std::pair<std::size_t, std::size_t>> p(nodes_.size(), {leaf_slot, 0});
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      for (std::size_t s = 0; s < nodes_[v].child.size(); ++s)
        if (nodes_[v].child[s] != leaf_slot) p[nodes_[v].child[s]] = {v, s};
    return p;
  }

  std::string code() const {
    std::string out;
    if (is_empty()) {
      out = "{" + empty_type_.code() + "}";
    } else {
      node_code(0, out);
    }
    return out;
  }

  friend bool operator==(const CompTree& a, const CompTree& b) {
    return a.level_ == b.level_ && a.code() == b.code() && a.leaf_order_ == b.leaf_order_;
  }

 private:
  void collect_leaves(std::size_t v) {
    for (std::size_t s = 0; s < nodes_[v].child.size(); ++s) {
      if (nodes_[v].child[s] == leaf_slot)
        leaves_.emplace_back(v, s);
      else
        collect_leaves(nodes_[v].child[s]);
    }
  }

  void check_preorder() const {
    std::size_t next = 0;
    check_preorder(0, next);
    if (next != nodes_.size()) throw Error(Errc::ill_typed, "nodes not in preorder");
  }
  void check_preorder(std::size_t v, std::size_t& next) const {
    if (v != next) throw Error(Errc::ill_typed, "nodes not in preorder");
    ++next;
    for (auto c : nodes_[v].child)
      if (c != leaf_slot) check_preorder(c, next);
  }

  void node_code(std::size_t v, std::string& out) const {
    out += '(';
    out += nodes_[v].label.code();
    for (auto c : nodes_[v].child) {
      out += ',';
      if (c == leaf_slot)
        out += '_';
      else
        node_code(c, out);
    }
    out += ')';
  }

  std::size_t level_ = 0;
  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> leaf_order_;
  std::vector<std::pair<std::size_t, std::size_t>> leaves_;
  Type empty_type_;
};

struct OpData {
  std::size_t level = 0;
  CompTree body;
  std::vector<std::size_t> node_order;
  std::vector<Type> inputs;
  Type output;
  std::string code;
  std::size_t size = 0;
};

inline Operation make_operation_data(std::shared_ptr<const OpData> d) {
  Operation o;
  o.d_ = std::move(d);
  return o;
}

inline std::size_t Operation::level() const { return d_->level; }
inline std::size_t Operation::arity() const { return d_->inputs.size(); }
inline const std::string& Operation::code() const { return d_->code; }
inline std::size_t Operation::size() const { return d_->size; }
inline const Type& Operation::output() const { return d_->output; }
inline std::span<const Type> Operation::inputs() const { return d_->inputs; }
inline const CompTree& Operation::body() const { return d_->body; }
inline std::span<const std::size_t> Operation::node_order() const { return d_->node_order; }

namespace detail {

inline std::string join_indices(std::span<const std::size_t> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace detail

/// The identity operation 1_x of the initial operad.
inline const Operation& unit_operation() {
  static const Operation one = [] {
    auto d = std::make_shared<OpData>();
    d->level = 0;
    d->inputs = {Type::point()};
    d->output = Type::point();
    d->code = "1";
    return make_operation_data(std::move(d));
  }();
  return one;
}

Operation graft_composite(const CompTree& tree);

/// Builds a level (body.level()+1) operation; output is computed by grafting.
inline Operation make_operation(CompTree body, std::vector<std::size_t> node_order) {
  auto d = std::make_shared<OpData>();
  d->level = body.level() + 1;
  const auto k = body.node_count();
  if (node_order.size() != k) throw Error(Errc::ill_typed, "node order has wrong length");
  std::vector<bool> seen(k, false);
  for (auto v : node_order) {
    if (v >= k || seen[v]) throw Error(Errc::ill_typed, "node order not a bijection");
    seen[v] = true;
  }
  d->inputs.reserve(k);
  for (auto v : node_order) d->inputs.push_back(Type::of(body.nodes()[v].label));
  d->output = Type::of(graft_composite(body));
  d->code = "[" + body.code() + "|" + detail::join_indices(node_order) + "|" +
            detail::join_indices(body.leaf_order()) + "]";
  if (body.is_empty()) {
    d->size = body.edge_type().size();
  } else {
    d->size = k;
    for (const auto& n : body.nodes()) d->size += n.label.size();
  }
  d->body = std::move(body);
  d->node_order = std::move(node_order);
  return make_operation_data(std::move(d));
}

/// The identity on type t: at level >= 1, the corolla on t.
inline Operation identity(const Type& t) {
  if (t.level == 0) return unit_operation();
  const auto a = t.op.arity();
  std::vector<std::size_t> slots(a, leaf_slot);
  std::vector<std::size_t> leaves(a);
  for (std::size_t i = 0; i < a; ++i) leaves[i] = i;
  CompTree corolla(t.level - 1, {TreeNode{t.op, slots}}, std::move(leaves));
  return make_operation(std::move(corolla), {0});
}

/// The right action f -> f.sigma: input j of the result is input sigma(j) of f.
inline Operation permute(const Operation& f, const Permutation& sigma) {
  if (sigma.degree() != f.arity())
    throw Error(Errc::degree_mismatch, "permutation of degree " + std::to_string(sigma.degree()) +
                                           " on operation of arity " + std::to_string(f.arity()));
  if (f.level() == 0 || sigma.is_identity()) return f;
  std::vector<std::size_t> order(f.arity());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = f.node_order()[sigma(j)];
  return make_operation(f.body(), std::move(order));
}

namespace detail {

/// Rebuilds `outer`, replacing each node v that has a replacement by that
/// operation's body (whose composite must equal v's label). Records where the
/// replacement nodes and the untouched nodes land, and the new planar index of
/// every planar leaf of `outer`.
struct Regraft {
  const CompTree& outer;
  std::span<const Operation* const> replacement;  // per outer node, may be null

  std::vector<TreeNode> nodes;
  std::vector<std::vector<std::size_t>> inner_index;  // [outer node][inner node] -> new
  std::vector<std::size_t> kept_index;                // outer node -> new (when kept)
  std::vector<std::size_t> leaf_index;                // outer planar leaf -> new
  std::vector<std::size_t> outer_leaf_of;             // flattened (node,slot) -> planar leaf
  std::vector<std::size_t> slot_offset;
  std::size_t leaf_counter = 0;

  Regraft(const CompTree& t, std::span<const Operation* const> r)
      : outer(t), replacement(r), inner_index(t.node_count()),
        kept_index(t.node_count(), leaf_slot), leaf_index(t.leaves().size(), leaf_slot) {
    slot_offset.resize(t.node_count() + 1, 0);
    for (std::size_t v = 0; v < t.node_count(); ++v)
      slot_offset[v + 1] = slot_offset[v] + t.nodes()[v].child.size();
    outer_leaf_of.assign(slot_offset.back(), leaf_slot);
    for (std::size_t p = 0; p < t.leaves().size(); ++p) {
      const auto [v, s] = t.leaves()[p];
      outer_leaf_of[slot_offset[v] + s] = p;
    }
  }

  std::size_t run() { return emit_outer(0); }

  // Returns the new index of the subtree that now sits where node v was, or
  // leaf_slot if it collapsed to a leaf.
  std::size_t emit_outer(std::size_t v) {
    const auto* rep = replacement[v];
    if (!rep) {
      const auto idx = nodes.size();
      kept_index[v] = idx;
      nodes.push_back(TreeNode{outer.nodes()[v].label, {}});
      std::vector<std::size_t> kids;
      for (std::size_t s = 0; s < outer.nodes()[v].child.size(); ++s) kids.push_back(emit_slot(v, s));
      nodes[idx].child = std::move(kids);
      return idx;
    }
    const auto& body = rep->body();
    inner_index[v].assign(body.node_count(), leaf_slot);
    if (body.is_empty()) return emit_slot(v, 0);
    // inverse of the inner leaf labeling: planar leaf -> slot of v
    std::vector<std::size_t> slot_of_leaf(body.leaves().size());
    for (std::size_t j = 0; j < body.leaf_order().size(); ++j) slot_of_leaf[body.leaf_order()[j]] = j;
    std::size_t inner_leaf = 0;
    return emit_inner(v, body, 0, slot_of_leaf, inner_leaf);
  }

  std::size_t emit_inner(std::size_t v, const CompTree& body, std::size_t w,
                         const std::vector<std::size_t>& slot_of_leaf, std::size_t& inner_leaf) {
    const auto idx = nodes.size();
    inner_index[v][w] = idx;
    nodes.push_back(TreeNode{body.nodes()[w].label, {}});
    std::vector<std::size_t> kids;
    for (auto c : body.nodes()[w].child) {
      if (c == leaf_slot)
        kids.push_back(emit_slot(v, slot_of_leaf[inner_leaf++]));
      else
        kids.push_back(emit_inner(v, body, c, slot_of_leaf, inner_leaf));
    }
    nodes[idx].child = std::move(kids);
    return idx;
  }

  std::size_t emit_slot(std::size_t v, std::size_t s) {
    const auto c = outer.nodes()[v].child[s];
    if (c != leaf_slot) return emit_outer(c);
    leaf_index[outer_leaf_of[slot_offset[v] + s]] = leaf_counter++;
    return leaf_slot;
  }

  CompTree finish() {
    std::vector<std::size_t> order(outer.leaf_order().size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = leaf_index[outer.leaf_order()[j]];
    if (nodes.empty()) return CompTree::empty(outer.root_type());
    return CompTree(outer.level(), std::move(nodes), std::move(order));
  }
};

}  // namespace detail

/// Operad composition f o (g_0, ..., g_{k-1}).
inline Operation compose(const Operation& f, std::span<const Operation> gs) {
  if (gs.size() != f.arity())
    throw Error(Errc::arity_mismatch, "compose: " + std::to_string(gs.size()) +
                                          " arguments for arity " + std::to_string(f.arity()));
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (gs[i].level() != f.level())
      throw Error(Errc::type_mismatch, "compose: operations at different levels");
    if (!(gs[i].output() == f.inputs()[i]))
      throw Error(Errc::type_mismatch, "compose: output of argument " + std::to_string(i) +
                                           " does not match input type");
  }
  if (f.level() == 0 || f.arity() == 0) return f;

  const auto& body = f.body();
  std::vector<const Operation*> rep(body.node_count(), nullptr);
  for (std::size_t i = 0; i < gs.size(); ++i) rep[f.node_order()[i]] = &gs[i];
  detail::Regraft r(body, rep);
  r.run();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const auto v = f.node_order()[i];
    for (auto w : gs[i].node_order()) order.push_back(r.inner_index[v][w]);
  }
  return make_operation(r.finish(), std::move(order));
}

inline Operation compose(const Operation& f, std::initializer_list<Operation> gs) {
  return compose(f, std::span<const Operation>(gs.begin(), gs.size()));
}

namespace detail {

inline Operation planar_composite(const CompTree& t, std::size_t v) {
  const auto& n = t.nodes()[v];
  std::vector<Operation> args;
  args.reserve(n.child.size());
  for (std::size_t s = 0; s < n.child.size(); ++s)
    args.push_back(n.child[s] == leaf_slot ? identity(n.label.inputs()[s])
                                           : planar_composite(t, n.child[s]));
  return compose(n.label, args);
}

}  // namespace detail

/// Composite of all node labels, with inputs ordered by the leaf labeling.
inline Operation graft_composite(const CompTree& tree) {
  if (tree.is_empty()) return identity(tree.edge_type());
  if (tree.level() == 0) return unit_operation();
  auto planar = detail::planar_composite(tree, 0);
  return permute(planar, Permutation(std::vector<std::size_t>(tree.leaf_order().begin(),
                                                              tree.leaf_order().end())));
}

/// Replaces node `at_node` of `outer` by `inner`, whose composite must equal
/// the node's label. The outer leaf labeling carries over.
inline CompTree substitute(const CompTree& outer, std::size_t at_node, const CompTree& inner) {
  if (at_node >= outer.node_count())
    throw Error(Errc::no_such_node, "substitute: node " + std::to_string(at_node));
  const auto& label = outer.nodes()[at_node].label;
  if (!(graft_composite(inner) == label))
    throw Error(Errc::composite_mismatch, "substitute: composite of inner tree is not " + label.code());
  std::vector<std::size_t> order(inner.node_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto law = make_operation(inner, std::move(order));
  std::vector<const Operation*> rep(outer.node_count(), nullptr);
  rep[at_node] = &law;
  detail::Regraft r(outer, rep);
  r.run();
  return r.finish();
}

// ---------------------------------------------------------------------------
// Parsing of canonical codes.

namespace detail {

struct CodeParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::parse_error, msg + " at offset " + std::to_string(pos));
  }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::size_t number() {
    std::size_t start = pos, v = 0;
    while (peek() >= '0' && peek() <= '9') v = v * 10 + static_cast<std::size_t>(s[pos++] - '0');
    if (pos == start) fail("expected number");
    return v;
  }
  std::vector<std::size_t> list(char end) {
    std::vector<std::size_t> out;
    if (peek() == end) return out;
    out.push_back(number());
    while (peek() == ',') {
      ++pos;
      out.push_back(number());
    }
    return out;
  }

  Type type() {
    if (peek() == '*') {
      ++pos;
      return Type::point();
    }
    return Type::of(operation());
  }

  Operation operation() {
    if (peek() == '1') {
      ++pos;
      return unit_operation();
    }
    expect('[');
    std::optional<CompTree> empty;
    std::vector<TreeNode> nodes;
    std::size_t level = 0;
    if (peek() == '{') {
      ++pos;
      auto t = type();
      expect('}');
      empty = CompTree::empty(t);
    } else {
      node(nodes);
      level = nodes.front().label.level();
    }
    expect('|');
    auto order = list('|');
    expect('|');
    auto leaves = list(']');
    expect(']');
    if (empty) {
      if (leaves != std::vector<std::size_t>{0}) fail("empty tree must have leaf labeling 0");
      return make_operation(*empty, std::move(order));
    }
    return make_operation(CompTree(level, std::move(nodes), std::move(leaves)), std::move(order));
  }

  std::size_t node(std::vector<TreeNode>& nodes) {
    expect('(');
    const auto idx = nodes.size();
    nodes.push_back(TreeNode{operation(), {}});
    std::vector<std::size_t> kids;
    while (peek() == ',') {
      ++pos;
      if (peek() == '_') {
        ++pos;
        kids.push_back(leaf_slot);
      } else {
        kids.push_back(node(nodes));
      }
    }
    expect(')');
    nodes[idx].child = std::move(kids);
    return idx;
  }
};

}  // namespace detail

inline Operation parse_operation(std::string_view code) {
  detail::CodeParser p{code};
  auto op = p.operation();
  if (p.pos != code.size()) p.fail("trailing characters");
  return op;
}

inline Type parse_type(std::string_view code) {
  detail::CodeParser p{code};
  auto t = p.type();
  if (p.pos != code.size()) p.fail("trailing characters");
  return t;
}

}  // namespace opetope
