#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "opetope/fixtures.hpp"
#include "opetope/operad.hpp"
#include "opetope/opetopic_set.hpp"

namespace testutil {

using namespace opetope;

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20240917);
  return r;
}

inline std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng()); }

template <class T>
const T& pick_from(const std::vector<T>& v) {
  return v[pick(v.size())];
}

inline Permutation random_permutation(std::size_t k) {
  std::vector<std::size_t> im(k);
  for (std::size_t i = 0; i < k; ++i) im[i] = i;
  std::shuffle(im.begin(), im.end(), rng());
  return Permutation(im);
}

/// Operations of a tower level grouped by output type code.
inline std::map<std::string, std::vector<Operation>> by_output(std::size_t level, std::size_t bound) {
  std::map<std::string, std::vector<Operation>> out;
  for (const auto& f : tower_operations(level, bound)) out[f.output().code()].push_back(f);
  return out;
}

/// Random arguments for f drawn from `pool`; false if some input has none.
inline bool random_arguments(const Operation& f, const std::map<std::string, std::vector<Operation>>& pool,
                             std::vector<Operation>& gs) {
  gs.clear();
  for (const auto& t : f.inputs()) {
    auto it = pool.find(t.code());
    if (it == pool.end() || it->second.empty()) return false;
    gs.push_back(pick_from(it->second));
  }
  return true;
}

/// Removes the cells selected by `drop`, then repeatedly removes cells that
/// no longer validate (dangling or inconsistent faces).
inline OpetopicSet remove_cells(const OpetopicSet& set, const std::function<bool(const CellSpec&)>& drop) {
  std::vector<CellSpec> specs;
  for (const auto& s : set.specs())
    if (!drop(s)) specs.push_back(s);
  for (;;) {
    std::map<std::string, bool> present;
    for (const auto& s : specs) present[s.name] = true;
    std::vector<CellSpec> kept;
    bool changed = false;
    for (const auto& s : specs) {
      bool ok = true;
      for (const auto& f : s.faces) ok = ok && present.count(f);
      if (ok) kept.push_back(s);
      else changed = true;
    }
    specs = std::move(kept);
    if (changed) continue;
    OpetopicSet out(set.max_dim(), set.shape_bound(), specs);
    const auto report = validate(out);
    if (report.ok()) return out;
    std::vector<CellSpec> next;
    for (const auto& s : specs) {
      bool bad = false;
      for (const auto& v : report.violations) bad = bad || v.rfind("cell '" + s.name + "': ", 0) == 0;
      if (!bad) next.push_back(s);
    }
    specs = std::move(next);
  }
}

inline OpetopicSet add_cells(const OpetopicSet& set, const std::vector<CellSpec>& extra) {
  auto specs = set.specs();
  specs.insert(specs.end(), extra.begin(), extra.end());
  return OpetopicSet(set.max_dim(), set.shape_bound(), specs);
}

/// Discrete category on the given objects: only identity arrows.
inline Category discrete_category(const std::vector<std::string>& objects) {
  Category c;
  c.objects = objects;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    c.arrows.push_back({"id_" + objects[i], i, i});
    c.identities.push_back(i);
  }
  c.then.assign(objects.size(), std::vector<std::optional<std::size_t>>(objects.size()));
  for (std::size_t i = 0; i < objects.size(); ++i) c.then[i][i] = i;
  return c;
}

}  // namespace testutil
