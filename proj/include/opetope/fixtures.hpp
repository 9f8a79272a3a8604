#pragma once

// Golden opetopic sets built from small categories.
//
// A category is turned into an opetopic set by taking objects as 0-cells and
// arrows as 1-cells, adding one 2-cell per 2-niche whose outface is the
// composite of the niche's path, and in each higher dimension one cell per
// niche whose implied outface frame has an occupant. A monoid is the
// one-object case.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/opetopic_set.hpp"

namespace opetope {

struct Category {
  struct Arrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::size_t> identities;                     // per object
  std::vector<std::vector<std::optional<std::size_t>>> then;  // then[f][g]: f followed by g

  static Category from_monoid(const std::vector<std::string>& elements,
                              const std::vector<std::vector<std::size_t>>& table, std::size_t unit) {
    Category c;
    c.objects = {"x"};
    for (const auto& e : elements) c.arrows.push_back({e, 0, 0});
    c.identities = {unit};
    c.then.assign(elements.size(), std::vector<std::optional<std::size_t>>(elements.size()));
    for (std::size_t a = 0; a < elements.size(); ++a)
      for (std::size_t b = 0; b < elements.size(); ++b) c.then[a][b] = table[a][b];
    return c;
  }
};

namespace detail {

inline OpetopicSet rebuild(const std::vector<CellSpec>& specs, std::size_t dim, std::size_t bound) {
  return OpetopicSet(dim, bound, specs);
}

/// Composite of the path read off a 2-niche: deepest node first, root last.
inline std::optional<std::size_t> path_composite(const Category& cat, const OpetopicSet& set,
                                                 const BoundaryConfig& niche,
                                                 const std::vector<std::size_t>& arrow_of_cell) {
  const auto& info = shape_info(niche.shape);
  const auto& body = niche.shape.operation().body();
  if (body.is_empty()) {
    const auto obj = set.name(niche.edges[info.root_edge]);
    for (std::size_t o = 0; o < cat.objects.size(); ++o)
      if (cat.objects[o] == obj) return cat.identities[o];
    return std::nullopt;
  }
  std::optional<std::size_t> acc;
  for (std::size_t v = body.node_count(); v-- > 0;) {
    const auto a = arrow_of_cell[*niche.faces[info.node_position[v]]];
    if (!acc) {
      acc = a;
    } else {
      acc = cat.then[*acc][a];
      if (!acc) return std::nullopt;
    }
  }
  return acc;
}

}  // namespace detail

/// Opetopic set of a category, up to `max_dim`, over shapes of size at most
/// `shape_bound`.
inline OpetopicSet category_set(const Category& cat, std::size_t max_dim = 3, std::size_t shape_bound = 4) {
  std::vector<CellSpec> specs;
  for (const auto& o : cat.objects) specs.push_back({o, "*", {}});
  if (max_dim >= 1)
    for (const auto& a : cat.arrows) specs.push_back({a.name, "1", {cat.objects[a.source], cat.objects[a.target]}});

  for (std::size_t d = 2; d <= max_dim; ++d) {
    const auto set = detail::rebuild(specs, d, shape_bound);
    std::vector<std::size_t> arrow_of_cell(set.size(), 0);
    for (std::size_t a = 0; a < cat.arrows.size(); ++a) arrow_of_cell[set.at(cat.arrows[a].name)] = a;
    std::size_t counter = 0;
    for (const auto& niche : enumerate_configs(set, ConfigKind::niche, d)) {
      const auto& info = shape_info(niche.shape);
      std::vector<std::string> faces;
      for (std::size_t i = 0; i < info.arity; ++i) faces.push_back(set.name(*niche.faces[i]));
      if (d == 2) {
        const auto c = detail::path_composite(cat, set, niche, arrow_of_cell);
        if (!c) continue;
        faces.push_back(cat.arrows[*c].name);
        specs.push_back({"c2_" + std::to_string(counter++), niche.shape.code(), std::move(faces)});
      } else {
        const auto out = info.outface_position();
        for (auto b : set.cells_of_shape(info.position_shapes[out])) {
          bool ok = true;
          for (std::size_t s = 0; s < info.position_edges[out].size() && ok; ++s)
            ok = set.face(b, s) == niche.edges[info.position_edges[out][s]];
          if (!ok) continue;
          auto f = faces;
          f.push_back(set.name(b));
          specs.push_back({"c" + std::to_string(d) + "_" + std::to_string(counter++), niche.shape.code(), std::move(f)});
        }
      }
    }
  }
  return OpetopicSet(max_dim, shape_bound, std::move(specs));
}

inline Category cyclic_monoid(std::size_t order) {
  const std::vector<std::string> names{"e", "g", "h", "i", "j", "k"};
  std::vector<std::string> elems(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(order));
  std::vector<std::vector<std::size_t>> table(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) table[a][b] = (a + b) % order;
  return Category::from_monoid(elems, table, 0);
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"point", "z2_monoid", "z3_monoid", "two_parallel_arrows",
                                              "broken_magma"};
  return names;
}

/// Code of the binary 2-shape whose input 0 is applied first.
inline const char* broken_magma_shape = "[(1,(1,_))|1,0|0]";

/// Z/3 with the filler of (g, g) in the shape above redirected from h to e.
/// Higher cells that no longer satisfy the incidence relations are dropped.
inline OpetopicSet broken_magma(std::size_t max_dim = 3, std::size_t shape_bound = 4) {
  auto specs = category_set(cyclic_monoid(3), max_dim, shape_bound).specs();
  for (auto& s : specs)
    if (s.shape == broken_magma_shape && s.faces == std::vector<std::string>{"g", "g", "h"}) s.faces[2] = "e";
  for (;;) {
    OpetopicSet set(max_dim, shape_bound, specs);
    const auto report = validate(set);
    if (report.ok()) return set;
    std::vector<CellSpec> kept;
    for (const auto& s : specs) {
      const auto tag = "cell '" + s.name + "': ";
      bool bad = false;
      for (const auto& v : report.violations) bad = bad || v.rfind(tag, 0) == 0;
      if (!bad) kept.push_back(s);
    }
    specs = std::move(kept);
  }
}

inline OpetopicSet make_fixture(const std::string& name, std::size_t max_dim = 3, std::size_t shape_bound = 4) {
  if (name == "point") {
    Category c;
    c.objects = {"x"};
    c.arrows = {{"id_x", 0, 0}};
    c.identities = {0};
    c.then = {{0}};
    return category_set(c, max_dim, shape_bound);
  }
  if (name == "z2_monoid") return category_set(cyclic_monoid(2), max_dim, shape_bound);
  if (name == "z3_monoid") return category_set(cyclic_monoid(3), max_dim, shape_bound);
  if (name == "two_parallel_arrows") {
    Category c;
    c.objects = {"a", "b"};
    c.arrows = {{"id_a", 0, 0}, {"id_b", 1, 1}, {"f", 0, 1}, {"g", 0, 1}};
    c.identities = {0, 1};
    c.then.assign(4, std::vector<std::optional<std::size_t>>(4));
    c.then[0][0] = 0;
    c.then[1][1] = 1;
    c.then[0][2] = 2;
    c.then[0][3] = 3;
    c.then[2][1] = 2;
    c.then[3][1] = 3;
    return category_set(c, max_dim, shape_bound);
  }
  if (name == "broken_magma") return broken_magma(max_dim, shape_bound);
  throw Error(Errc::unknown_fixture, "unknown fixture '" + name + "'");
}

}  // namespace opetope
