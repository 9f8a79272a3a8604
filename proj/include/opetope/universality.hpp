#pragma once

// Universal niche-occupants, balanced punctured niches, composites and the
// weak n-category check.
//
// The two predicates recurse into each other: is_universal at dimension j
// asks for balancedness at j+1, and is_balanced at m asks for universality at
// m and balancedness at m+1. Balancedness above n+1 is trivially true, so the
// recursion bottoms out after at most n+2 levels.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/opetopic_set.hpp"
#include "opetope/parallel.hpp"

namespace opetope {

struct Verdict {
  bool value = false;
  std::vector<std::string> witnesses;

  explicit operator bool() const noexcept { return value; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Human-readable rendering of a configuration, using cell names.
inline std::string describe(const OpetopicSet& set, const BoundaryConfig& cfg) {
  std::string s = kind_name(cfg.kind) + " (";
  const auto k = cfg.faces.empty() ? 0 : cfg.faces.size() - 1;
  for (std::size_t i = 0; i < k; ++i) s += (i ? "," : "") + (cfg.faces[i] ? set.name(*cfg.faces[i]) : std::string("?"));
  s += ") -> ";
  s += !cfg.faces.empty() && cfg.faces.back() ? set.name(*cfg.faces.back()) : std::string("?");
  if (!cfg.edges.empty()) {
    s += " edges [";
    for (std::size_t e = 0; e < cfg.edges.size(); ++e) s += (e ? "," : "") + set.name(cfg.edges[e]);
    s += "]";
  }
  return s + " shape " + cfg.shape.code();
}

/// Which of the two punctured niches of each recursive step to build.
enum class MirrorPolicy { both, stated_only, mirror_only, both_mirror_first };

class CheckContext {
 public:
  CheckContext(const OpetopicSet& set, std::size_t n, bool use_memo = true)
      : set_(set), n_(n), use_memo_(use_memo) {}

  const OpetopicSet& set() const noexcept { return set_; }
  std::size_t n() const noexcept { return n_; }
  bool use_memo() const noexcept { return use_memo_; }

  MirrorPolicy mirror_policy = MirrorPolicy::both;

  /// Highest dimension at which is_universal or is_balanced was called.
  std::size_t max_call_dim() const noexcept { return max_call_dim_.load(); }
  std::size_t calls() const noexcept { return calls_.load(); }

  void note_call(std::size_t dim) {
    ++calls_;
    auto cur = max_call_dim_.load();
    while (dim > cur && !max_call_dim_.compare_exchange_weak(cur, dim)) {
    }
    if (dim > n_ + 2) throw Error(Errc::dimension_overflow, "recursion reached dimension " + std::to_string(dim));
  }

  std::optional<Verdict> lookup(const std::string& key) const {
    if (!use_memo_) return std::nullopt;
    std::lock_guard lock(mutex_);
    auto it = memo_.find(key);
    if (it == memo_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, const Verdict& v) {
    if (!use_memo_) return;
    std::lock_guard lock(mutex_);
    memo_.emplace(key, v);
  }

 private:
  const OpetopicSet& set_;
  std::size_t n_;
  bool use_memo_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Verdict> memo_;
  std::atomic<std::size_t> max_call_dim_{0};
  std::atomic<std::size_t> calls_{0};
};

Verdict is_balanced(CheckContext& ctx, const BoundaryConfig& p);

namespace detail {

inline std::vector<std::vector<std::size_t>> mirror_orders(MirrorPolicy policy) {
  // node 1 is the first listed inface of the stated version
  switch (policy) {
    case MirrorPolicy::both: return {{1, 0}, {0, 1}};
    case MirrorPolicy::stated_only: return {{1, 0}};
    case MirrorPolicy::mirror_only: return {{0, 1}};
    case MirrorPolicy::both_mirror_first: return {{0, 1}, {1, 0}};
  }
  return {};
}

inline std::vector<std::size_t> iota_order(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = i;
  return v;
}

/// Shape of (c) -u-> d followed by d -?-> d': a two-node tree with the
/// identity-shaped node at the root and u's shape above it.
inline Opetope universality_shape(const Opetope& u_shape, const Opetope& d_shape,
                                  const std::vector<std::size_t>& order) {
  const auto& U = u_shape.operation();
  const auto level = U.level();
  std::vector<std::size_t> slots(U.arity(), leaf_slot);
  CompTree tree(level, {TreeNode{identity(d_shape.type()), {1}}, TreeNode{U, slots}}, iota_order(U.arity()));
  return Opetope::of(make_operation(std::move(tree), order));
}

/// Shape of a'_i -?-> a_i grafted into slot i of u's shape.
inline Opetope balance_shape(const Opetope& u_shape, std::size_t i, const std::vector<std::size_t>& order) {
  const auto& P = u_shape.operation();
  const auto& ai = P.inputs()[i];
  std::vector<std::size_t> slots(P.arity(), leaf_slot);
  slots[i] = 1;
  CompTree tree(P.level(), {TreeNode{P, slots}, TreeNode{identity(ai), {leaf_slot}}}, iota_order(P.arity()));
  return Opetope::of(make_operation(std::move(tree), order));
}

inline Verdict conjunction(std::vector<Verdict> parts) {
  Verdict v{true, {}};
  for (auto& p : parts)
    if (!p.value) {
      v.value = false;
      v.witnesses.insert(v.witnesses.end(), p.witnesses.begin(), p.witnesses.end());
    }
  return v;
}

}  // namespace detail

/// Whether `u` is a universal occupant of its niche, relative to ctx.n().
/// 0-cells occupy no niche and count as universal.
inline Verdict is_universal(CheckContext& ctx, CellId u) {
  const auto& set = ctx.set();
  const auto& cell = set.cell(u);
  const auto j = cell.shape.dim();
  if (j == 0) return {true, {}};
  ctx.note_call(j);
  const auto key = "u#" + std::to_string(u);
  if (auto hit = ctx.lookup(key)) return *hit;

  Verdict v{true, {}};
  const auto niche = niche_of(set, u);
  if (j > ctx.n()) {
    const auto occ = occupants(set, niche);
    if (occ.size() != 1) {
      v.value = false;
      v.witnesses.push_back(std::to_string(occ.size()) + " occupants of " + describe(set, niche));
    } else {
      v.witnesses.push_back("unique occupant " + cell.name);
    }
  } else {
    if (j + 1 > set.max_dim())
      throw Error(Errc::dimension_overflow, "universality at dimension " + std::to_string(j) +
                                                " needs cells of dimension " + std::to_string(j + 1));
    const auto d = set.face(u, cell.faces.size() - 1);
    const auto& d_shape = set.cell(d).shape;
    for (auto d2 : competitors(set, d, CompetitorMode::frame)) {
      for (const auto& order : detail::mirror_orders(ctx.mirror_policy)) {
        const auto q = detail::universality_shape(cell.shape, d_shape, order);
        const auto& info = shape_info(q);
        std::vector<std::optional<CellId>> faces(info.arity + 1);
        faces[info.node_position[1]] = u;
        const auto p = make_config(set, ConfigKind::punctured_niche, q, std::move(faces),
                                   {{info.root_edge, d2}}, info.node_position[0]);
        auto b = is_balanced(ctx, p);
        if (!b.value) {
          v.value = false;
          v.witnesses.push_back("not balanced: " + describe(set, p));
          break;
        }
      }
      if (!v.value) break;
    }
  }
  ctx.store(key, v);
  return v;
}

/// Whether a punctured niche is balanced, relative to ctx.n().
inline Verdict is_balanced(CheckContext& ctx, const BoundaryConfig& p) {
  const auto& set = ctx.set();
  if (p.kind != ConfigKind::punctured_niche) throw Error(Errc::malformed_config, "not a punctured niche");
  check_config(set, p);
  const auto m = p.shape.dim();
  ctx.note_call(m);
  if (m > ctx.n() + 1) return {true, {}};
  if (m > set.max_dim())
    throw Error(Errc::dimension_overflow, "balancedness at dimension " + std::to_string(m));
  const auto key = "b#" + p.key();
  if (auto hit = ctx.lookup(key)) return *hit;

  const auto& info = shape_info(p.shape);
  const auto i = *p.missing_inface;
  const auto out = info.outface_position();
  Verdict v{true, {}};

  // Extensions: cells of the outface shape matching the leaf and root edges.
  std::vector<CellId> extensions;
  for (auto b : set.cells_of_shape(info.position_shapes[out])) {
    bool ok = true;
    for (std::size_t s = 0; s < info.position_edges[out].size() && ok; ++s)
      ok = set.face(b, s) == p.edges[info.position_edges[out][s]];
    if (ok) extensions.push_back(b);
  }

  std::vector<CellId> universal_fillers;
  for (auto b : extensions) {
    auto cfg = p;
    cfg.faces[out] = b;
    bool found = false;
    for (auto x : detail::matching_cells(set, cfg)) {
      if (is_universal(ctx, x).value) {
        universal_fillers.push_back(x);
        found = true;
      }
    }
    if (!found) {
      v.value = false;
      v.witnesses.push_back("no universal filler with outface " + set.name(b) + " for " + describe(set, p));
      break;
    }
  }

  if (v.value) {
    for (auto u : universal_fillers) {
      const auto& u_shape = set.cell(u).shape;
      const auto ai = set.face(u, i);
      for (auto a2 : competitors(set, ai, CompetitorMode::frame)) {
        for (const auto& order : detail::mirror_orders(ctx.mirror_policy)) {
          const auto r = detail::balance_shape(u_shape, i, order);
          const auto& rinfo = shape_info(r);
          std::vector<std::optional<CellId>> faces(rinfo.arity + 1);
          faces[rinfo.node_position[0]] = u;
          const auto child_pos = rinfo.node_position[1];
          const auto q = make_config(set, ConfigKind::punctured_niche, r, std::move(faces),
                                     {{rinfo.position_edges[child_pos][0], a2}}, child_pos);
          if (!is_balanced(ctx, q).value) {
            v.value = false;
            v.witnesses.push_back("not balanced: " + describe(set, q));
            break;
          }
        }
        if (!v.value) break;
      }
      if (!v.value) break;
    }
  }
  ctx.store(key, v);
  return v;
}

/// Outfaces of the universal occupants of a niche, deduplicated, in order.
inline std::vector<CellId> composites(CheckContext& ctx, const BoundaryConfig& niche) {
  if (niche.kind != ConfigKind::niche) throw Error(Errc::malformed_config, "not a niche");
  std::vector<CellId> out;
  for (auto x : occupants(ctx.set(), niche))
    if (is_universal(ctx, x).value) out.push_back(ctx.set().face(x, niche.faces.size() - 1));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct NicheStatus {
  BoundaryConfig niche;
  std::string description;
  std::vector<CellId> occupants;
  std::vector<CellId> universal_occupants;
  bool infaces_universal = false;
  bool has_universal = false;   // condition 1
  bool composites_ok = true;    // condition 2
  std::string failure;

  bool ok() const noexcept { return has_universal && composites_ok; }
};

inline const char* condition_two_rule =
    "for every niche whose infaces are all universal, every universal occupant has a universal outface";

struct CategoryVerdict {
  bool value = false;
  std::size_t n = 0;
  std::size_t shape_bound = 0;
  std::vector<NicheStatus> niches;  // canonical order
  std::optional<std::size_t> first_failure;
  std::size_t max_call_dim = 0;

  explicit operator bool() const noexcept { return value; }
};

/// Checks both weak n-category conditions over every niche of dimension
/// 1..n+1 whose shape has size at most `shape_bound`.
inline CategoryVerdict check_weak_n_category(const OpetopicSet& set, std::size_t n, std::size_t shape_bound,
                                             std::size_t workers = 1, bool use_memo = true) {
  const auto report = validate(set);
  if (!report.ok()) throw Error(Errc::invalid_set, report.violations.front());
  if (set.max_dim() < n + 1)
    throw Error(Errc::insufficient_dimension,
                "max_dim " + std::to_string(set.max_dim()) + " < n+1 = " + std::to_string(n + 1));

  CategoryVerdict verdict;
  verdict.n = n;
  verdict.shape_bound = shape_bound;
  for (std::size_t d = 1; d <= n + 1; ++d)
    for (auto& cfg : enumerate_configs(set, ConfigKind::niche, d, shape_bound))
      verdict.niches.push_back(NicheStatus{std::move(cfg), {}, {}, {}, false, false, true, {}});

  CheckContext ctx(set, n, use_memo);
  parallel_for(verdict.niches.size(), workers, [&](std::size_t idx) {
    auto& st = verdict.niches[idx];
    st.description = describe(set, st.niche);
    st.occupants = occupants(set, st.niche);
    for (auto x : st.occupants)
      if (is_universal(ctx, x).value) st.universal_occupants.push_back(x);
    st.has_universal = !st.universal_occupants.empty();
    st.infaces_universal = true;
    for (std::size_t i = 0; i + 1 < st.niche.faces.size(); ++i)
      st.infaces_universal = st.infaces_universal && is_universal(ctx, *st.niche.faces[i]).value;
    if (!st.has_universal) {
      st.failure = "condition 1: no universal occupant";
    } else if (st.infaces_universal) {
      for (auto x : st.universal_occupants) {
        const auto b = set.face(x, st.niche.faces.size() - 1);
        if (!is_universal(ctx, b).value) {
          st.composites_ok = false;
          st.failure = "condition 2: composite " + set.name(b) + " via " + set.name(x) + " is not universal";
          break;
        }
      }
    }
  });

  verdict.value = true;
  for (std::size_t i = 0; i < verdict.niches.size(); ++i)
    if (!verdict.niches[i].ok()) {
      verdict.value = false;
      verdict.first_failure = i;
      break;
    }
  verdict.max_call_dim = ctx.max_call_dim();
  return verdict;
}

}  // namespace opetope
