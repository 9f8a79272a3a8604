#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/operation.hpp"
#include "opetope/parallel.hpp"
#include "opetope/permutation.hpp"

namespace opetope {

// ---------------------------------------------------------------------------
// Bounded enumeration of tower operations.

namespace detail {

struct GenNode {
  Operation label;
  std::vector<std::shared_ptr<const GenNode>> kids;  // null = leaf
};
using GenPtr = std::shared_ptr<const GenNode>;

inline void flatten(const GenNode& g, std::vector<TreeNode>& out) {
  const auto idx = out.size();
  out.push_back(TreeNode{g.label, {}});
  std::vector<std::size_t> kids;
  for (const auto& k : g.kids) {
    if (!k) {
      kids.push_back(leaf_slot);
    } else {
      kids.push_back(out.size());
      flatten(*k, out);
    }
  }
  out[idx].child = std::move(kids);
}

class TreeGenerator {
 public:
  explicit TreeGenerator(const std::vector<Operation>& labels) {
    for (const auto& l : labels) by_output_[l.output().code()].push_back(l);
    all_ = labels;
  }

  // Planar trees whose root output is `want` (any when null), with cost at
  // most budget. Cost of a node is 1 + size(label).
  std::vector<std::pair<GenPtr, std::size_t>> trees(const Type* want, std::size_t budget) {
    std::vector<std::pair<GenPtr, std::size_t>> out;
    const std::vector<Operation>* pool = &all_;
    if (want) {
      auto it = by_output_.find(want->code());
      if (it == by_output_.end()) return out;
      pool = &it->second;
    }
    for (const auto& label : *pool) {
      const auto cost = 1 + label.size();
      if (cost > budget) continue;
      std::vector<GenPtr> kids(label.arity());
      fill_slots(label, 0, budget - cost, cost, kids, out);
    }
    return out;
  }

 private:
  void fill_slots(const Operation& label, std::size_t s, std::size_t budget, std::size_t used,
                  std::vector<GenPtr>& kids, std::vector<std::pair<GenPtr, std::size_t>>& out) {
    if (s == label.arity()) {
      out.emplace_back(std::make_shared<GenNode>(GenNode{label, kids}), used);
      return;
    }
    kids[s] = nullptr;
    fill_slots(label, s + 1, budget, used, kids, out);
    for (auto& [sub, c] : trees(&label.inputs()[s], budget)) {
      kids[s] = sub;
      fill_slots(label, s + 1, budget - c, used + c, kids, out);
    }
    kids[s] = nullptr;
  }

  std::map<std::string, std::vector<Operation>> by_output_;
  std::vector<Operation> all_;
};

}  // namespace detail

std::vector<Operation> tower_operations(std::size_t level, std::size_t bound);

/// Types of I^{level+} of size at most `bound`, in canonical order.
inline std::vector<Type> tower_types(std::size_t level, std::size_t bound) {
  if (level == 0) return {Type::point()};
  std::vector<Type> out;
  for (const auto& op : tower_operations(level - 1, bound)) out.push_back(Type::of(op));
  return out;
}

/// All operations of I^{level+} whose size is at most `bound`, sorted by
/// canonical code. Size counts tree nodes at every nesting depth.
inline std::vector<Operation> tower_operations(std::size_t level, std::size_t bound) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<Operation>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({level, bound});
    if (it != cache.end()) return it->second;
  }
  std::vector<Operation> out;
  if (level == 0) {
    out.push_back(unit_operation());
  } else {
    for (const auto& t : tower_types(level - 1, bound)) out.push_back(make_operation(CompTree::empty(t), {}));
    const auto labels = tower_operations(level - 1, bound);
    detail::TreeGenerator gen(labels);
    for (auto& [root, cost] : gen.trees(nullptr, bound)) {
      std::vector<TreeNode> nodes;
      detail::flatten(*root, nodes);
      std::size_t leaves = 0;
      for (const auto& n : nodes)
        for (auto c : n.child) leaves += (c == leaf_slot);
      for (const auto& lo : all_permutations(leaves)) {
        std::vector<std::size_t> leaf_order(lo.image().begin(), lo.image().end());
        CompTree body(level - 1, nodes, leaf_order);
        for (const auto& no : all_permutations(nodes.size()))
          out.push_back(make_operation(body, {no.image().begin(), no.image().end()}));
      }
    }
  }
  std::sort(out.begin(), out.end());
  std::lock_guard lock(mutex);
  cache.emplace(std::make_pair(level, bound), out);
  return out;
}

// ---------------------------------------------------------------------------
// Operads.

/// The operad I^{d+} of the tower over the initial untyped operad.
class OperadLevel {
 public:
  using op_type = Operation;
  using type_type = Type;

  explicit OperadLevel(std::size_t depth) : depth_(depth) {}

  std::size_t depth() const noexcept { return depth_; }

  std::vector<Type> types(std::size_t bound) const { return tower_types(depth_, bound); }
  std::vector<Operation> operations(std::size_t bound) const { return tower_operations(depth_, bound); }
  std::vector<Operation> operations(std::size_t arity, std::size_t bound) const {
    std::vector<Operation> out;
    for (const auto& op : operations(bound))
      if (op.arity() == arity) out.push_back(op);
    return out;
  }

  std::optional<Operation> compose(const Operation& f, std::span<const Operation> gs) const {
    check_level(f);
    return opetope::compose(f, gs);
  }
  std::optional<Operation> permute(const Operation& f, const Permutation& s) const {
    check_level(f);
    return opetope::permute(f, s);
  }
  Operation identity(const Type& t) const {
    if (t.level != depth_) throw Error(Errc::type_mismatch, "identity: type at wrong level");
    return opetope::identity(t);
  }

  std::size_t arity(const Operation& f) const { return f.arity(); }
  std::vector<Type> inputs(const Operation& f) const { return {f.inputs().begin(), f.inputs().end()}; }
  Type output(const Operation& f) const { return f.output(); }
  std::size_t size(const Operation& f) const { return f.size(); }
  std::string code(const Operation& f) const { return f.code(); }
  std::string type_code(const Type& t) const { return t.code(); }

  friend bool operator==(const OperadLevel&, const OperadLevel&) = default;

 private:
  void check_level(const Operation& f) const {
    if (f.level() != depth_) throw Error(Errc::type_mismatch, "operation from a different tower level");
  }
  std::size_t depth_;
};

/// The initial untyped operad I: one type, one operation, every composite of
/// identities equal to the identity.
inline OperadLevel initial_operad() { return OperadLevel(0); }

/// The slice operad: types are the operations of `level`, operations are its
/// reduction laws (composition trees), composed by substituting trees into
/// nodes.
inline OperadLevel slice(const OperadLevel& level) { return OperadLevel(level.depth() + 1); }

/// A reduction law of I^{d+}: a composition tree together with its composite.
struct ReductionLaw {
  CompTree tree;
  Operation composite;

  explicit ReductionLaw(CompTree t) : tree(std::move(t)), composite(graft_composite(tree)) {}
  explicit ReductionLaw(const Operation& slice_op)
      : tree(slice_op.body()), composite(slice_op.output().op) {}
};

/// A small typed operad given by explicit tables. Composition may be partial:
/// a missing entry means the composite is not available ("does not make
/// sense"), and axiom instances touching it are skipped.
class FiniteOperad {
 public:
  using op_type = std::size_t;
  using type_type = std::size_t;

  struct Op {
    std::string name;
    std::vector<std::size_t> inputs;
    std::size_t output = 0;
  };

  std::vector<std::string> type_names;
  std::vector<Op> ops;
  std::vector<std::size_t> identities;  // per type
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> composition;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> action;

  /// Untyped operad whose operations are all unary: a monoid. Element u of the
  /// table composes as f o (g) = table[g][f] (g first, then f).
  static FiniteOperad from_monoid(const std::vector<std::vector<std::size_t>>& table, std::size_t unit) {
    FiniteOperad o;
    o.type_names = {"x"};
    for (std::size_t i = 0; i < table.size(); ++i) o.ops.push_back(Op{"m" + std::to_string(i), {0}, 0});
    o.identities = {unit};
    for (std::size_t f = 0; f < table.size(); ++f)
      for (std::size_t g = 0; g < table.size(); ++g) o.composition[{f, {g}}] = table[g][f];
    return o;
  }

  std::vector<std::size_t> operations(std::size_t) const {
    std::vector<std::size_t> out(ops.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    std::sort(out.begin(), out.end(), [&](auto a, auto b) { return ops[a].name < ops[b].name; });
    return out;
  }

  std::optional<std::size_t> compose(std::size_t f, std::span<const std::size_t> gs) const {
    if (gs.size() != ops.at(f).inputs.size()) throw Error(Errc::arity_mismatch, "compose");
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (ops.at(gs[i]).output != ops[f].inputs[i]) throw Error(Errc::type_mismatch, "compose");
    auto it = composition.find({f, std::vector<std::size_t>(gs.begin(), gs.end())});
    if (it == composition.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> permute(std::size_t f, const Permutation& s) const {
    if (s.degree() != ops.at(f).inputs.size()) throw Error(Errc::degree_mismatch, "permute");
    if (s.is_identity()) return f;
    auto it = action.find({f, std::vector<std::size_t>(s.image().begin(), s.image().end())});
    if (it == action.end()) return std::nullopt;
    return it->second;
  }

  std::size_t identity(std::size_t t) const { return identities.at(t); }
  std::size_t arity(std::size_t f) const { return ops.at(f).inputs.size(); }
  std::vector<std::size_t> inputs(std::size_t f) const { return ops.at(f).inputs; }
  std::size_t output(std::size_t f) const { return ops.at(f).output; }
  std::size_t size(std::size_t) const { return 0; }
  std::string code(std::size_t f) const { return ops.at(f).name; }
  std::string type_code(std::size_t t) const { return type_names.at(t); }
};

/// Only tower levels can be sliced.
inline OperadLevel slice(const FiniteOperad&) {
  throw Error(Errc::unsupported_operad, "slice is only defined for tower levels I^{d+}");
}

template <class O>
concept OperadLike = requires(const O& o, const typename O::op_type& f,
                              std::span<const typename O::op_type> gs, const Permutation& s,
                              const typename O::type_type& t, std::size_t b) {
  { o.operations(b) } -> std::convertible_to<std::vector<typename O::op_type>>;
  { o.compose(f, gs) } -> std::convertible_to<std::optional<typename O::op_type>>;
  { o.permute(f, s) } -> std::convertible_to<std::optional<typename O::op_type>>;
  { o.identity(t) } -> std::convertible_to<typename O::op_type>;
  { o.arity(f) } -> std::convertible_to<std::size_t>;
  { o.inputs(f) } -> std::convertible_to<std::vector<typename O::type_type>>;
  { o.output(f) } -> std::convertible_to<typename O::type_type>;
  { o.size(f) } -> std::convertible_to<std::size_t>;
  { o.code(f) } -> std::convertible_to<std::string>;
  { o.type_code(t) } -> std::convertible_to<std::string>;
};

// ---------------------------------------------------------------------------
// Axiom verification.

struct Violation {
  std::string axiom;  // "a" .. "e"
  std::string witness;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

struct Report {
  std::vector<Violation> violations;
  std::map<std::string, std::size_t> instances;  // per axiom

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(const std::string& axiom) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [&](const auto& v) { return v.axiom == axiom; }));
  }
};

namespace detail {

template <OperadLike O>
class AxiomChecker {
 public:
  using Op = typename O::op_type;

  AxiomChecker(const O& o, std::size_t bound) : o_(o), bound_(bound), ops_(o.operations(bound)) {
    for (const auto& f : ops_) by_output_[o_.type_code(o_.output(f))].push_back(f);
  }

  const std::vector<Op>& ops() const { return ops_; }

  void check(const Op& f, Report& r) const {
    units(f, r);
    right_action(f, r);
    std::vector<Op> gs;
    choose(o_.inputs(f), 0, bound_ - std::min(bound_, o_.size(f)), gs,
           [&](const std::vector<Op>& chosen, std::size_t left) { with_arguments(f, chosen, left, r); });
  }

 private:
  template <class Fn>
  void choose(const std::vector<typename O::type_type>& want, std::size_t i, std::size_t budget,
              std::vector<Op>& chosen, Fn&& fn) const {
    if (i == want.size()) {
      fn(chosen, budget);
      return;
    }
    auto it = by_output_.find(o_.type_code(want[i]));
    if (it == by_output_.end()) return;
    for (const auto& g : it->second) {
      const auto s = o_.size(g);
      if (s > budget) continue;
      chosen.push_back(g);
      choose(want, i + 1, budget - s, chosen, fn);
      chosen.pop_back();
    }
  }

  std::string names(const std::vector<Op>& v) const {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "; " : "") + o_.code(v[i]);
    return s + ")";
  }

  void record(Report& r, const char* axiom, std::string witness) const {
    r.violations.push_back(Violation{axiom, std::move(witness)});
  }

  void units(const Op& f, Report& r) const {
    ++r.instances["b"];
    const std::vector<Op> one{f};
    auto left = o_.compose(o_.identity(o_.output(f)), one);
    std::vector<Op> ids;
    for (const auto& t : o_.inputs(f)) ids.push_back(o_.identity(t));
    auto right = o_.compose(f, ids);
    if ((left && !(*left == f)) || (right && !(*right == f)))
      record(r, "b", "f=" + o_.code(f));
  }

  void right_action(const Op& f, Report& r) const {
    const auto perms = all_permutations(o_.arity(f));
    for (const auto& s : perms) {
      auto fs = o_.permute(f, s);
      if (!fs) continue;
      for (const auto& t : perms) {
        auto lhs = o_.permute(f, s * t);
        auto rhs = o_.permute(*fs, t);
        if (!lhs || !rhs) continue;
        ++r.instances["c"];
        if (!(*lhs == *rhs))
          record(r, "c", "f=" + o_.code(f) + " s=" + s.str() + " t=" + t.str());
      }
    }
  }

  void with_arguments(const Op& f, const std::vector<Op>& gs, std::size_t budget, Report& r) const {
    const auto fg = o_.compose(f, gs);
    if (!fg) return;
    std::vector<std::size_t> arities;
    for (const auto& g : gs) arities.push_back(o_.arity(g));

    // (d)
    for (const auto& s : all_permutations(gs.size())) {
      auto fs = o_.permute(f, s);
      if (!fs) continue;
      std::vector<Op> gs_s;
      for (std::size_t j = 0; j < gs.size(); ++j) gs_s.push_back(gs[s(j)]);
      auto lhs = o_.compose(*fs, gs_s);
      auto rhs = o_.permute(*fg, block_permutation(s, arities));
      if (!lhs || !rhs) continue;
      ++r.instances["d"];
      if (!(*lhs == *rhs)) record(r, "d", "f=" + o_.code(f) + " g=" + names(gs) + " s=" + s.str());
    }

    // (e)
    std::vector<std::vector<Permutation>> per_block;
    for (auto a : arities) per_block.push_back(all_permutations(a));
    std::vector<std::size_t> idx(gs.size(), 0);
    for (;;) {
      std::vector<Op> gsig;
      std::vector<Permutation> sig;
      bool defined = true;
      for (std::size_t i = 0; i < gs.size(); ++i) {
        sig.push_back(per_block[i][idx[i]]);
        auto p = o_.permute(gs[i], sig.back());
        if (!p) {
          defined = false;
          break;
        }
        gsig.push_back(*p);
      }
      if (defined) {
        auto lhs = o_.compose(f, gsig);
        auto rhs = o_.permute(*fg, direct_sum(sig));
        if (lhs && rhs) {
          ++r.instances["e"];
          if (!(*lhs == *rhs)) {
            std::string ss;
            for (const auto& p : sig) ss += p.str();
            record(r, "e", "f=" + o_.code(f) + " g=" + names(gs) + " s=" + ss);
          }
        }
      }
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == per_block[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }

    // (a)
    std::vector<typename O::type_type> want;
    for (const auto& g : gs)
      for (const auto& t : o_.inputs(g)) want.push_back(t);
    std::vector<Op> hs;
    choose(want, 0, budget, hs, [&](const std::vector<Op>& h, std::size_t) {
      std::vector<Op> inner;
      std::size_t off = 0;
      for (const auto& g : gs) {
        const auto a = o_.arity(g);
        std::vector<Op> hi(h.begin() + static_cast<std::ptrdiff_t>(off),
                           h.begin() + static_cast<std::ptrdiff_t>(off + a));
        off += a;
        auto gh = o_.compose(g, hi);
        if (!gh) return;
        inner.push_back(*gh);
      }
      auto lhs = o_.compose(f, inner);
      auto rhs = o_.compose(*fg, h);
      if (!lhs || !rhs) return;
      ++r.instances["a"];
      if (!(*lhs == *rhs))
        record(r, "a", "f=" + o_.code(f) + " g=" + names(gs) + " h=" + names(h));
    });
  }

  const O& o_;
  std::size_t bound_;
  std::vector<Op> ops_;
  std::map<std::string, std::vector<Op>> by_output_;
};

}  // namespace detail

/// Verifies associativity (a), units (b) and equivariance (c)-(e) on every
/// instance whose operations have total size at most `size_bound`. The report
/// is identical for any worker count.
template <OperadLike O>
Report check_operad_axioms(const O& operad, std::size_t size_bound, std::size_t workers = 1) {
  if (size_bound == 0) throw Error(Errc::bound_exceeded, "size_bound must be at least 1");
  detail::AxiomChecker<O> checker(operad, size_bound);
  const auto& ops = checker.ops();
  std::vector<Report> partial(ops.size());
  parallel_for(ops.size(), workers, [&](std::size_t i) { checker.check(ops[i], partial[i]); });
  Report out;
  for (auto& p : partial) {
    out.violations.insert(out.violations.end(), p.violations.begin(), p.violations.end());
    for (const auto& [k, v] : p.instances) out.instances[k] += v;
  }
  std::sort(out.violations.begin(), out.violations.end());
  return out;
}

}  // namespace opetope
