#pragma once

// Algebras of an operad over finite carriers.
//
// An algebra assigns a finite carrier to each type (stored as its size, with
// elements 0..size-1) and to each operation a table over the product of its
// input carriers. Tables are indexed in mixed radix, first argument most
// significant.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/operad.hpp"
#include "opetope/permutation.hpp"

namespace opetope {

struct Algebra {
  std::map<std::string, std::size_t> carrier;                 // type code -> size
  std::map<std::string, std::vector<std::size_t>> action;     // operation code -> table

  bool has(const std::string& op_code) const { return action.count(op_code) != 0; }
};

namespace detail {

inline std::size_t carrier_of(const Algebra& alg, const std::string& type_code) {
  auto it = alg.carrier.find(type_code);
  if (it == alg.carrier.end()) throw Error(Errc::carrier_mismatch, "no carrier for type " + type_code);
  return it->second;
}

template <OperadLike O>
std::vector<std::size_t> radices(const O& o, const Algebra& alg, const typename O::op_type& f) {
  std::vector<std::size_t> r;
  for (const auto& t : o.inputs(f)) r.push_back(carrier_of(alg, o.type_code(t)));
  return r;
}

inline std::size_t table_size(std::span<const std::size_t> radix) {
  std::size_t n = 1;
  for (auto r : radix) n *= r;
  return n;
}

inline std::size_t encode(std::span<const std::size_t> radix, std::span<const std::size_t> args) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) idx = idx * radix[i] + args[i];
  return idx;
}

inline std::vector<std::size_t> decode(std::span<const std::size_t> radix, std::size_t idx) {
  std::vector<std::size_t> args(radix.size());
  for (std::size_t i = radix.size(); i-- > 0;) {
    args[i] = idx % radix[i];
    idx /= radix[i];
  }
  return args;
}

}  // namespace detail

/// alpha(f)(args). Throws CarrierMismatch if the arguments do not lie in the
/// input carriers or no action is stored for f.
template <OperadLike O>
std::size_t eval_algebra(const O& o, const Algebra& alg, const typename O::op_type& f,
                         std::span<const std::size_t> args) {
  const auto radix = detail::radices(o, alg, f);
  if (args.size() != radix.size())
    throw Error(Errc::carrier_mismatch, "expected " + std::to_string(radix.size()) + " arguments");
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i] >= radix[i]) throw Error(Errc::carrier_mismatch, "argument " + std::to_string(i) + " out of carrier");
  auto it = alg.action.find(o.code(f));
  if (it == alg.action.end()) throw Error(Errc::carrier_mismatch, "no action for " + o.code(f));
  return it->second.at(detail::encode(radix, args));
}

inline std::size_t eval_algebra(const Algebra& alg, const Operation& f, std::span<const std::size_t> args) {
  return eval_algebra(OperadLevel(f.level()), alg, f, args);
}

/// Checks the algebra axioms on every stored operation of `o` with size at
/// most `size_bound`: composition (a), units (b) and equivariance (c). For
/// (a) the arguments g_i range over tuples of total size at most `size_bound`.
/// Instances whose composite or permuted operation has no stored action are
/// skipped.
template <OperadLike O>
Report check_algebra_axioms(const O& o, const Algebra& alg, std::size_t size_bound) {
  using Op = typename O::op_type;
  Report r;
  std::vector<Op> ops;
  for (const auto& f : o.operations(size_bound))
    if (alg.has(o.code(f))) ops.push_back(f);
  std::map<std::string, std::vector<Op>> by_output;
  for (const auto& f : ops) by_output[o.type_code(o.output(f))].push_back(f);
  auto fail = [&](const char* axiom, std::string w) { r.violations.push_back({axiom, std::move(w)}); };

  for (const auto& f : ops) {
    const auto radix = detail::radices(o, alg, f);
    if (alg.action.at(o.code(f)).size() != detail::table_size(radix)) fail("table", o.code(f));
  }
  if (!r.ok()) return r;

  // (b)
  for (const auto& f : ops) {
    const auto ins = o.inputs(f);
    if (ins.size() != 1 || !(o.identity(ins[0]) == f)) continue;
    ++r.instances["b"];
    for (std::size_t a = 0; a < detail::carrier_of(alg, o.type_code(ins[0])); ++a)
      if (eval_algebra(o, alg, f, std::vector<std::size_t>{a}) != a) {
        fail("b", o.code(f));
        break;
      }
  }

  // (c)
  for (const auto& f : ops) {
    const auto k = o.arity(f);
    const auto radix = detail::radices(o, alg, f);
    for (const auto& s : all_permutations(k)) {
      const auto fs = o.permute(f, s);
      if (!fs || !alg.has(o.code(*fs))) continue;
      ++r.instances["c"];
      const auto sradix = detail::radices(o, alg, *fs);
      for (std::size_t idx = 0; idx < detail::table_size(sradix); ++idx) {
        const auto b = detail::decode(sradix, idx);
        std::vector<std::size_t> a(k);
        for (std::size_t j = 0; j < k; ++j) a[s(j)] = b[j];
        if (eval_algebra(o, alg, *fs, b) != eval_algebra(o, alg, f, a)) {
          fail("c", o.code(f) + " " + s.str());
          break;
        }
      }
    }
  }

  // (a)
  for (const auto& f : ops) {
    const auto ins = o.inputs(f);
    std::vector<Op> gs;
    auto check = [&] {
      const auto h = o.compose(f, gs);
      if (!h || !alg.has(o.code(*h))) return;
      ++r.instances["a"];
      const auto hradix = detail::radices(o, alg, *h);
      for (std::size_t idx = 0; idx < detail::table_size(hradix); ++idx) {
        const auto args = detail::decode(hradix, idx);
        std::vector<std::size_t> inner;
        std::size_t at = 0;
        for (const auto& g : gs) {
          const auto ga = o.arity(g);
          inner.push_back(eval_algebra(o, alg, g, std::span<const std::size_t>(args).subspan(at, ga)));
          at += ga;
        }
        if (eval_algebra(o, alg, *h, args) != eval_algebra(o, alg, f, inner)) {
          std::string w = o.code(f) + " o (";
          for (std::size_t i = 0; i < gs.size(); ++i) w += (i ? ", " : "") + o.code(gs[i]);
          fail("a", w + ")");
          return;
        }
      }
    };
    auto pick = [&](auto&& self, std::size_t i, std::size_t budget) -> void {
      if (i == ins.size()) {
        check();
        return;
      }
      auto it = by_output.find(o.type_code(ins[i]));
      if (it == by_output.end()) return;
      for (const auto& g : it->second) {
        const auto s = o.size(g);
        if (s > budget) continue;
        gs.push_back(g);
        self(self, i + 1, budget - s);
        gs.pop_back();
      }
    };
    pick(pick, 0, size_bound);
  }
  std::sort(r.violations.begin(), r.violations.end());
  return r;
}

/// The algebra of I (a plain set of the given size): 1_x acts as identity.
inline Algebra set_algebra(std::size_t size) {
  Algebra alg;
  alg.carrier["*"] = size;
  std::vector<std::size_t> id(size);
  for (std::size_t i = 0; i < size; ++i) id[i] = i;
  alg.action[unit_operation().code()] = id;
  return alg;
}

namespace detail {

/// Product of the arguments in path order: deepest node first, root last.
inline std::size_t chain_product(const Operation& chain, std::span<const std::size_t> args,
                                 const std::vector<std::vector<std::size_t>>& table, std::size_t unit) {
  const auto& body = chain.body();
  std::vector<std::size_t> arg_of_node(body.node_count());
  for (std::size_t j = 0; j < args.size(); ++j) arg_of_node[chain.node_order()[j]] = args[j];
  std::size_t acc = unit;
  for (std::size_t v = body.node_count(); v-- > 0;) acc = table[acc][arg_of_node[v]];
  return acc;
}

}  // namespace detail

/// The I+-algebra of a monoid: the carrier of the single type is the monoid,
/// and every numbered chain acts as the product of its inputs along the path.
inline Algebra monoid_algebra(const std::vector<std::vector<std::size_t>>& table, std::size_t unit,
                              std::size_t size_bound) {
  const OperadLevel lvl(1);
  Algebra alg;
  const auto n = table.size();
  alg.carrier[Type::of(unit_operation()).code()] = n;
  for (const auto& f : lvl.operations(size_bound)) {
    const auto radix = std::vector<std::size_t>(f.arity(), n);
    std::vector<std::size_t> t(detail::table_size(radix));
    for (std::size_t idx = 0; idx < t.size(); ++idx)
      t[idx] = detail::chain_product(f, detail::decode(radix, idx), table, unit);
    alg.action[f.code()] = std::move(t);
  }
  return alg;
}

/// Tries to extend a binary table to an I+-algebra on chains of arity <= 3.
/// Chains of arity <= 2 are fixed by the table (nullary: unit, unary:
/// identity, binary: the table in path order); each ternary chain is forced by
/// every way of writing it as a binary chain composed with chains of arity
/// <= 2. Returns nullopt when two such decompositions disagree.
inline std::optional<Algebra> extend_binary_table(const std::vector<std::vector<std::size_t>>& table,
                                                  std::size_t unit) {
  const OperadLevel lvl(1);
  const auto n = table.size();
  Algebra alg;
  alg.carrier[Type::of(unit_operation()).code()] = n;
  const auto low = lvl.operations(2);
  for (const auto& f : low) {
    std::vector<std::size_t> radix(f.arity(), n);
    std::vector<std::size_t> t(detail::table_size(radix));
    for (std::size_t idx = 0; idx < t.size(); ++idx)
      t[idx] = detail::chain_product(f, detail::decode(radix, idx), table, unit);
    alg.action[f.code()] = std::move(t);
  }
  for (const auto& h : lvl.operations(3, 3)) {
    std::optional<std::vector<std::size_t>> forced;
    for (const auto& f : low) {
      if (f.arity() != 2) continue;
      for (const auto& g0 : low)
        for (const auto& g1 : low) {
          if (g0.arity() + g1.arity() != 3) continue;
          const std::vector<Operation> gs{g0, g1};
          if (!(compose(f, gs) == h)) continue;
          std::vector<std::size_t> t(n * n * n);
          for (std::size_t idx = 0; idx < t.size(); ++idx) {
            const auto args = detail::decode(std::vector<std::size_t>(3, n), idx);
            const std::span<const std::size_t> a(args);
            const std::vector<std::size_t> inner{eval_algebra(lvl, alg, g0, a.subspan(0, g0.arity())),
                                                 eval_algebra(lvl, alg, g1, a.subspan(g0.arity()))};
            t[idx] = eval_algebra(lvl, alg, f, inner);
          }
          if (forced && *forced != t) return std::nullopt;
          forced = std::move(t);
        }
    }
    if (forced) alg.action[h.code()] = std::move(*forced);
  }
  return alg;
}

}  // namespace opetope
