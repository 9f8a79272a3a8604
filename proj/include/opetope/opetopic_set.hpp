#pragma once

// Finite opetopic sets: cells indexed by opetope shape, with face maps.
//
// Each cell of a shape with k infaces stores k+1 faces (infaces in input
// order, then the outface). The incidence relations are the codimension-2
// identifications forced by the shape's tree: every edge of the tree is a
// face of the nodes it touches, of the outface when it is a leaf or the root,
// and these must all be the same cell. Higher relations follow from the faces
// themselves being valid cells.

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/opetope.hpp"

namespace opetope {

using CellId = std::size_t;

/// Face structure of a shape: which lower shapes sit at each face position,
/// and which tree edge each sub-face of each position corresponds to.
struct ShapeInfo {
  Opetope shape;
  std::size_t arity = 0;
  std::vector<Opetope> position_shapes;                  // infaces, then outface
  std::vector<Opetope> edge_shapes;                      // codimension-2 faces
  std::vector<std::vector<std::size_t>> position_edges;  // [position][sub-face] -> edge
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> edge_sources;  // edge -> (pos, sub)
  std::size_t root_edge = 0;

  std::size_t outface_position() const noexcept { return arity; }
  /// Position of the node-th tree node (preorder) among the infaces.
  std::vector<std::size_t> node_position;

  std::vector<std::string> relations() const {
    std::vector<std::string> out;
    for (std::size_t e = 0; e < edge_sources.size(); ++e) {
      if (edge_sources[e].size() < 2) continue;
      std::string r = "e" + std::to_string(e) + ":";
      for (std::size_t i = 0; i < edge_sources[e].size(); ++i) {
        const auto [p, s] = edge_sources[e][i];
        r += (i ? " = " : " ") + (p == arity ? std::string("out") : "in" + std::to_string(p)) + "." +
             std::to_string(s);
      }
      out.push_back(std::move(r));
    }
    return out;
  }
};

namespace detail {

inline ShapeInfo build_shape_info(const Opetope& shape) {
  ShapeInfo info;
  info.shape = shape;
  const auto m = shape.dim();
  if (m == 0) return info;
  info.arity = shape.inface_count();
  for (const auto& f : shape.infaces()) info.position_shapes.push_back(f);
  info.position_shapes.push_back(shape.outface());
  info.position_edges.assign(info.arity + 1, {});
  if (m == 1) return info;

  const auto& op = shape.operation();
  const auto& body = op.body();
  if (body.is_empty()) {
    info.edge_shapes = {Opetope(body.edge_type())};
    info.root_edge = 0;
    info.position_edges[info.arity] = {0, 0};
  } else {
    std::vector<std::size_t> first_edge(body.node_count());
    for (std::size_t v = 0; v < body.node_count(); ++v) {
      first_edge[v] = info.edge_shapes.size();
      const auto& label = body.nodes()[v].label;
      for (const auto& t : label.inputs()) info.edge_shapes.emplace_back(t);
    }
    info.root_edge = info.edge_shapes.size();
    info.edge_shapes.emplace_back(body.root_type());

    info.node_position.assign(body.node_count(), 0);
    for (std::size_t j = 0; j < op.node_order().size(); ++j) info.node_position[op.node_order()[j]] = j;
    const auto parents = body.parents();
    for (std::size_t v = 0; v < body.node_count(); ++v) {
      auto& pe = info.position_edges[info.node_position[v]];
      for (std::size_t s = 0; s < body.nodes()[v].child.size(); ++s) pe.push_back(first_edge[v] + s);
      const auto [p, s] = parents[v];
      pe.push_back(p == leaf_slot ? info.root_edge : first_edge[p] + s);
    }
    auto& out = info.position_edges[info.arity];
    for (auto leaf : body.leaf_order()) {
      const auto [v, s] = body.leaves()[leaf];
      out.push_back(first_edge[v] + s);
    }
    out.push_back(info.root_edge);
  }
  info.edge_sources.assign(info.edge_shapes.size(), {});
  for (std::size_t p = 0; p < info.position_edges.size(); ++p)
    for (std::size_t s = 0; s < info.position_edges[p].size(); ++s)
      info.edge_sources[info.position_edges[p][s]].emplace_back(p, s);
  return info;
}

}  // namespace detail

/// Cached face structure of a shape.
inline const ShapeInfo& shape_info(const Opetope& shape) {
  static std::mutex mutex;
  static std::map<std::string, ShapeInfo> cache;
  const auto code = shape.code();
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(code);
    if (it != cache.end()) return it->second;
  }
  auto info = detail::build_shape_info(shape);
  std::lock_guard lock(mutex);
  return cache.emplace(code, std::move(info)).first->second;
}

struct CellSpec {
  std::string name;
  std::string shape;               // canonical code
  std::vector<std::string> faces;  // infaces in input order, then outface

  friend bool operator==(const CellSpec&, const CellSpec&) = default;
};

struct Cell {
  std::string name;
  Opetope shape;
  std::vector<CellId> faces;
};

/// A finite opetopic set truncated at `max_dim`. Cells are kept in canonical
/// order (dimension, shape code, name); a CellId is a position in that order.
class OpetopicSet {
 public:
  OpetopicSet() = default;

  /// Throws Error(invalid_set) on duplicate names or dangling face names and
  /// Error(parse_error) on malformed shape codes. Typing and incidence are
  /// left to validate().
  OpetopicSet(std::size_t max_dim, std::size_t shape_bound, std::vector<CellSpec> specs)
      : max_dim_(max_dim), shape_bound_(shape_bound) {
    std::vector<std::tuple<std::size_t, std::string, std::size_t>> order;
    std::vector<Opetope> shapes;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      shapes.push_back(opetope_from_code(specs[i].shape));
      order.emplace_back(shapes.back().dim(), shapes.back().code(), i);
    }
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a), specs[std::get<2>(a)].name) <
             std::tie(std::get<0>(b), std::get<1>(b), specs[std::get<2>(b)].name);
    });
    for (const auto& [dim, code, i] : order) {
      if (!by_name_.emplace(specs[i].name, cells_.size()).second)
        throw Error(Errc::invalid_set, "duplicate cell name '" + specs[i].name + "'");
      cells_.push_back(Cell{specs[i].name, shapes[i], {}});
      by_shape_[code].push_back(cells_.size() - 1);
    }
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      const auto& spec = specs[std::get<2>(order[c])];
      for (const auto& f : spec.faces) {
        auto it = by_name_.find(f);
        if (it == by_name_.end())
          throw Error(Errc::invalid_set, "cell '" + spec.name + "' names unknown face '" + f + "'");
        cells_[c].faces.push_back(it->second);
      }
    }
  }

  std::size_t max_dim() const noexcept { return max_dim_; }
  std::size_t shape_bound() const noexcept { return shape_bound_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  const Cell& cell(CellId c) const {
    if (c >= cells_.size()) throw Error(Errc::unknown_cell, "cell id " + std::to_string(c));
    return cells_[c];
  }
  const std::string& name(CellId c) const { return cell(c).name; }
  std::size_t dim(CellId c) const { return cell(c).shape.dim(); }
  CellId face(CellId c, std::size_t position) const { return cell(c).faces.at(position); }

  std::optional<CellId> find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }
  CellId at(const std::string& name) const {
    auto c = find(name);
    if (!c) throw Error(Errc::unknown_cell, "no cell named '" + name + "'");
    return *c;
  }

  std::span<const CellId> cells_of_shape(const Opetope& shape) const {
    auto it = by_shape_.find(shape.code());
    if (it == by_shape_.end()) return {};
    return it->second;
  }

  std::vector<CellId> cells_of_dim(std::size_t d) const {
    std::vector<CellId> out;
    for (CellId c = 0; c < cells_.size(); ++c)
      if (cells_[c].shape.dim() == d) out.push_back(c);
    return out;
  }

  std::vector<CellSpec> specs() const {
    std::vector<CellSpec> out;
    for (const auto& c : cells_) {
      CellSpec s{c.name, c.shape.code(), {}};
      for (auto f : c.faces) s.faces.push_back(cells_[f].name);
      out.push_back(std::move(s));
    }
    return out;
  }

 private:
  std::size_t max_dim_ = 0;
  std::size_t shape_bound_ = 0;
  std::vector<Cell> cells_;
  std::unordered_map<std::string, CellId> by_name_;
  std::map<std::string, std::vector<CellId>> by_shape_;
};

struct SetReport {
  std::vector<std::string> violations;
  std::vector<std::string> relations;  // per shape present, for auditing

  bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

/// Sub-face `sub` of the cell at `position`, or nullopt if the cell does not
/// have that many faces.
inline std::optional<CellId> sub_face(const OpetopicSet& set, CellId c, std::size_t sub) {
  const auto& f = set.cell(c).faces;
  if (sub >= f.size()) return std::nullopt;
  return f[sub];
}

/// Checks the incidence relations of `info` for a full face assignment whose
/// cells already have the right shapes. Returns a description of the first
/// broken relation.
inline std::optional<std::string> incidence_error(const OpetopicSet& set, const ShapeInfo& info,
                                                  std::span<const CellId> faces) {
  for (std::size_t e = 0; e < info.edge_sources.size(); ++e) {
    std::optional<CellId> seen;
    for (const auto& [p, s] : info.edge_sources[e]) {
      auto x = sub_face(set, faces[p], s);
      if (!x) return "edge e" + std::to_string(e) + " missing";
      if (seen && *seen != *x)
        return "edge e" + std::to_string(e) + ": '" + set.name(*seen) + "' vs '" + set.name(*x) + "'";
      seen = x;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks face typing and incidence for every cell.
inline SetReport validate(const OpetopicSet& set) {
  SetReport r;
  std::set<std::string> shapes_seen;
  for (CellId c = 0; c < set.size(); ++c) {
    const auto& cell = set.cell(c);
    const auto d = cell.shape.dim();
    const auto tag = "cell '" + cell.name + "': ";
    if (d > set.max_dim()) r.violations.push_back(tag + "dimension above max_dim");
    const auto& info = shape_info(cell.shape);
    if (shapes_seen.insert(cell.shape.code()).second)
      for (const auto& rel : info.relations()) r.relations.push_back(cell.shape.code() + " " + rel);
    const auto expected = d == 0 ? 0 : info.arity + 1;
    if (cell.faces.size() != expected) {
      r.violations.push_back(tag + "expected " + std::to_string(expected) + " faces, got " +
                             std::to_string(cell.faces.size()));
      continue;
    }
    bool typed = true;
    for (std::size_t p = 0; p < cell.faces.size(); ++p) {
      const auto& got = set.cell(cell.faces[p]).shape;
      if (!(got == info.position_shapes[p])) {
        typed = false;
        r.violations.push_back(tag + "typing: face " + std::to_string(p) + " '" +
                               set.name(cell.faces[p]) + "' has shape " + got.code() + ", expected " +
                               info.position_shapes[p].code());
      }
    }
    if (!typed) continue;
    if (auto err = detail::incidence_error(set, info, cell.faces))
      r.violations.push_back(tag + "incidence: " + *err);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Frames, niches, punctured niches.

enum class ConfigKind { frame, niche, punctured_niche };

inline std::string kind_name(ConfigKind k) {
  switch (k) {
    case ConfigKind::frame: return "frame";
    case ConfigKind::niche: return "niche";
    case ConfigKind::punctured_niche: return "punctured_niche";
  }
  return "?";
}

/// A boundary configuration: a partial assignment of the codimension-1 faces
/// of `shape` together with all of its codimension-2 faces (tree edges).
struct BoundaryConfig {
  ConfigKind kind = ConfigKind::frame;
  Opetope shape;
  std::vector<std::optional<CellId>> faces;  // arity + 1 entries
  std::vector<CellId> edges;
  std::optional<std::size_t> missing_inface;

  std::string key() const {
    std::string k = kind_name(kind) + "#" + shape.code() + "#";
    if (missing_inface) k += std::to_string(*missing_inface);
    k += "#";
    for (const auto& f : faces) k += (f ? std::to_string(*f) : std::string("?")) + ",";
    k += "#";
    for (auto e : edges) k += std::to_string(e) + ",";
    return k;
  }

  friend bool operator<(const BoundaryConfig& a, const BoundaryConfig& b) {
    const auto ka = std::make_tuple(a.shape.dim(), a.shape.inface_count(), a.shape.code());
    const auto kb = std::make_tuple(b.shape.dim(), b.shape.inface_count(), b.shape.code());
    if (ka != kb) return ka < kb;
    return std::tie(a.missing_inface, a.faces, a.edges) < std::tie(b.missing_inface, b.faces, b.edges);
  }
  friend bool operator==(const BoundaryConfig& a, const BoundaryConfig& b) {
    return a.kind == b.kind && a.shape == b.shape && a.faces == b.faces && a.edges == b.edges &&
           a.missing_inface == b.missing_inface;
  }
};

/// Edge cells of a (well-typed) cell.
inline std::vector<CellId> cell_edges(const OpetopicSet& set, CellId c) {
  const auto& info = shape_info(set.cell(c).shape);
  std::vector<CellId> out;
  for (const auto& src : info.edge_sources) out.push_back(set.face(set.face(c, src.front().first), src.front().second));
  return out;
}

namespace detail {

inline std::optional<std::string> config_error(const OpetopicSet& set, const BoundaryConfig& cfg,
                                               bool check_kind) {
  const auto& info = shape_info(cfg.shape);
  const auto positions = cfg.shape.dim() == 0 ? 0 : info.arity + 1;
  if (cfg.faces.size() != positions) return "wrong number of face positions";
  if (cfg.edges.size() != info.edge_shapes.size()) return "wrong number of edges";
  if (check_kind) {
    for (std::size_t p = 0; p < positions; ++p) {
      bool want = true;
      if (p == info.arity && cfg.kind != ConfigKind::frame) want = false;
      if (cfg.kind == ConfigKind::punctured_niche) {
        if (!cfg.missing_inface || *cfg.missing_inface >= info.arity) return "bad missing inface";
        if (p == *cfg.missing_inface) want = false;
      }
      if (cfg.faces[p].has_value() != want) return "assignment does not match kind";
    }
  }
  for (std::size_t p = 0; p < positions; ++p) {
    if (!cfg.faces[p]) continue;
    if (*cfg.faces[p] >= set.size()) return "unknown cell";
    if (!(set.cell(*cfg.faces[p]).shape == info.position_shapes[p])) return "face of wrong shape";
  }
  for (std::size_t e = 0; e < cfg.edges.size(); ++e) {
    if (cfg.edges[e] >= set.size()) return "unknown cell";
    if (!(set.cell(cfg.edges[e]).shape == info.edge_shapes[e])) return "edge of wrong shape";
  }
  for (std::size_t p = 0; p < positions; ++p) {
    if (cfg.faces[p]) {
      for (std::size_t s = 0; s < info.position_edges[p].size(); ++s)
        if (set.face(*cfg.faces[p], s) != cfg.edges[info.position_edges[p][s]])
          return "face " + std::to_string(p) + " disagrees with edge " + std::to_string(info.position_edges[p][s]);
    } else if (cfg.shape.dim() >= 2) {
      const auto& sub = shape_info(info.position_shapes[p]);
      std::vector<CellId> implied;
      for (auto e : info.position_edges[p]) implied.push_back(cfg.edges[e]);
      if (auto err = incidence_error(set, sub, implied)) return "implied boundary of position " + std::to_string(p) + ": " + *err;
    }
  }
  return std::nullopt;
}

inline bool extends(const OpetopicSet& set, const BoundaryConfig& cfg, CellId x) {
  const auto& cell = set.cell(x);
  if (!(cell.shape == cfg.shape)) return false;
  for (std::size_t p = 0; p < cfg.faces.size(); ++p)
    if (cfg.faces[p] && cell.faces[p] != *cfg.faces[p]) return false;
  if (cfg.edges.empty()) return true;
  return cell_edges(set, x) == cfg.edges;
}

/// Cells of cfg.shape compatible with every assignment in cfg, regardless of
/// which positions are assigned.
inline std::vector<CellId> matching_cells(const OpetopicSet& set, const BoundaryConfig& cfg) {
  std::vector<CellId> out;
  for (auto x : set.cells_of_shape(cfg.shape))
    if (extends(set, cfg, x)) out.push_back(x);
  return out;
}

}  // namespace detail

inline void check_config(const OpetopicSet& set, const BoundaryConfig& cfg) {
  if (auto err = detail::config_error(set, cfg, true)) throw Error(Errc::malformed_config, *err);
}

inline bool well_formed(const OpetopicSet& set, const BoundaryConfig& cfg) {
  return !detail::config_error(set, cfg, true).has_value();
}

/// Builds a configuration from assigned faces plus any edges not reachable
/// from them. Throws MalformedConfig if an edge is undetermined or the
/// result is not well formed.
inline BoundaryConfig make_config(const OpetopicSet& set, ConfigKind kind, const Opetope& shape,
                                  std::vector<std::optional<CellId>> faces,
                                  const std::map<std::size_t, CellId>& extra_edges = {},
                                  std::optional<std::size_t> missing = std::nullopt) {
  const auto& info = shape_info(shape);
  std::vector<std::optional<CellId>> edges(info.edge_shapes.size());
  auto put = [&](std::size_t e, CellId c) {
    if (edges[e] && *edges[e] != c) throw Error(Errc::malformed_config, "conflicting edge " + std::to_string(e));
    edges[e] = c;
  };
  for (std::size_t p = 0; p < faces.size() && p < info.position_edges.size(); ++p) {
    if (!faces[p]) continue;
    const auto& f = set.cell(*faces[p]).faces;
    for (std::size_t s = 0; s < info.position_edges[p].size(); ++s) {
      if (s >= f.size()) throw Error(Errc::malformed_config, "face cell lacks sub-faces");
      put(info.position_edges[p][s], f[s]);
    }
  }
  for (const auto& [e, c] : extra_edges) {
    if (e >= edges.size()) throw Error(Errc::malformed_config, "no edge " + std::to_string(e));
    put(e, c);
  }
  BoundaryConfig cfg{kind, shape, std::move(faces), {}, missing};
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edges[e]) throw Error(Errc::malformed_config, "edge " + std::to_string(e) + " undetermined");
    cfg.edges.push_back(*edges[e]);
  }
  check_config(set, cfg);
  return cfg;
}

inline BoundaryConfig frame_of(const OpetopicSet& set, CellId c) {
  const auto& cell = set.cell(c);
  std::vector<std::optional<CellId>> f(cell.faces.begin(), cell.faces.end());
  return make_config(set, ConfigKind::frame, cell.shape, std::move(f));
}

inline BoundaryConfig niche_of(const OpetopicSet& set, CellId c) {
  const auto& cell = set.cell(c);
  if (cell.shape.dim() == 0) throw Error(Errc::malformed_config, "points do not occupy niches");
  BoundaryConfig cfg{ConfigKind::niche, cell.shape, {}, cell_edges(set, c), std::nullopt};
  cfg.faces.assign(cell.faces.begin(), cell.faces.end());
  cfg.faces.back().reset();
  check_config(set, cfg);
  return cfg;
}

/// Cells of the configuration's shape whose boundary extends it.
inline std::vector<CellId> occupants(const OpetopicSet& set, const BoundaryConfig& cfg) {
  check_config(set, cfg);
  return detail::matching_cells(set, cfg);
}

enum class CompetitorMode { frame, niche };

inline std::vector<CellId> competitors(const OpetopicSet& set, CellId c, CompetitorMode mode) {
  if (c >= set.size()) throw Error(Errc::unknown_cell, "cell id " + std::to_string(c));
  if (set.dim(c) == 0 && mode == CompetitorMode::frame) return set.cells_of_dim(0);
  return occupants(set, mode == CompetitorMode::frame ? frame_of(set, c) : niche_of(set, c));
}

namespace detail {

struct ConfigEnumerator {
  const OpetopicSet& set;
  const ShapeInfo& info;
  ConfigKind kind;
  std::optional<std::size_t> missing;
  std::vector<std::size_t> positions;
  std::vector<std::optional<CellId>> faces;
  std::vector<std::optional<CellId>> edges;
  std::vector<BoundaryConfig>& out;

  void run(std::size_t i) {
    if (i == positions.size()) {
      fill_edges(0);
      return;
    }
    const auto p = positions[i];
    for (auto x : set.cells_of_shape(info.position_shapes[p])) {
      const auto saved = edges;
      bool ok = true;
      for (std::size_t s = 0; s < info.position_edges[p].size() && ok; ++s) {
        const auto e = info.position_edges[p][s];
        const auto v = set.face(x, s);
        if (edges[e] && *edges[e] != v) ok = false;
        edges[e] = v;
      }
      if (ok) {
        faces[p] = x;
        run(i + 1);
        faces[p].reset();
      }
      edges = saved;
    }
  }

  void fill_edges(std::size_t e) {
    while (e < edges.size() && edges[e]) ++e;
    if (e == edges.size()) {
      BoundaryConfig cfg{kind, info.shape, faces, {}, missing};
      for (auto v : edges) cfg.edges.push_back(*v);
      if (!config_error(set, cfg, true)) out.push_back(std::move(cfg));
      return;
    }
    for (auto x : set.cells_of_shape(info.edge_shapes[e])) {
      edges[e] = x;
      fill_edges(e + 1);
    }
    edges[e].reset();
  }
};

}  // namespace detail

/// All well-formed configurations of the given kind and dimension, over
/// shapes of size at most `shape_bound` (the set's own bound by default), in
/// canonical order.
inline std::vector<BoundaryConfig> enumerate_configs(const OpetopicSet& set, ConfigKind kind,
                                                     std::size_t dim,
                                                     std::optional<std::size_t> shape_bound = std::nullopt) {
  if (dim > set.max_dim()) throw Error(Errc::dim_out_of_range, "dimension " + std::to_string(dim));
  std::vector<BoundaryConfig> out;
  if (dim == 0) {
    if (kind == ConfigKind::frame) out.push_back(BoundaryConfig{kind, Opetope::point(), {}, {}, std::nullopt});
    return out;
  }
  for (const auto& shape : enumerate_opetopes(dim, shape_bound.value_or(set.shape_bound()))) {
    const auto& info = shape_info(shape);
    std::vector<std::optional<std::size_t>> missing_choices{std::nullopt};
    if (kind == ConfigKind::punctured_niche) {
      missing_choices.clear();
      for (std::size_t i = 0; i < info.arity; ++i) missing_choices.emplace_back(i);
    }
    for (const auto& missing : missing_choices) {
      std::vector<std::size_t> positions;
      for (std::size_t p = 0; p < info.arity; ++p)
        if (!missing || p != *missing) positions.push_back(p);
      if (kind == ConfigKind::frame) positions.push_back(info.arity);
      detail::ConfigEnumerator en{set,
                                  info,
                                  kind,
                                  missing,
                                  positions,
                                  std::vector<std::optional<CellId>>(info.arity + 1),
                                  std::vector<std::optional<CellId>>(info.edge_shapes.size()),
                                  out};
      en.run(0);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace opetope
