#pragma once

// Naive opetope counter for dimensions <= 3, used as an oracle for the tower
// enumeration. It shares no code with operation.hpp / operad.hpp: trees are
// parent arrays over numbered nodes, generated exhaustively and deduplicated
// through a set of string keys.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "opetope/error.hpp"

namespace opetope {

namespace brute {

struct Label {
  std::string key;
  std::size_t arity = 0;
  std::size_t size = 0;
};

inline std::vector<std::vector<std::size_t>> permutations_of(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::string key_of(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += std::to_string(x) + ".";
  return s;
}

// Every tree with numbered nodes 0..t-1 over `labels`, with every leaf
// numbering, with t + sum(label sizes) <= bound. Edge types are unique in
// dimensions <= 3, so any node fits any slot. Adds keys to `out`.
inline void trees(const std::vector<Label>& labels, std::size_t bound,
                  std::optional<std::size_t> only_nodes, std::set<std::string>& out) {
  // empty tree on the (unique) edge type
  if (!only_nodes || *only_nodes == 0) out.insert("empty");
  for (std::size_t t = 1; t <= bound; ++t) {
    if (only_nodes && *only_nodes != t) continue;
    std::vector<std::size_t> lab(t, 0);
    for (;;) {
      std::size_t size = t, slots = 0;
      for (auto l : lab) {
        size += labels[l].size;
        slots += labels[l].arity;
      }
      if (size <= bound && slots + 1 >= t) {
        for (std::size_t root = 0; root < t; ++root) {
          // each non-root node picks a (parent, slot) among all slots
          std::vector<std::pair<std::size_t, std::size_t>> all_slots;
          for (std::size_t v = 0; v < t; ++v)
            for (std::size_t s = 0; s < labels[lab[v]].arity; ++s) all_slots.emplace_back(v, s);
          std::vector<std::size_t> pick(t, 0);
          for (;;) {
            std::vector<bool> used(all_slots.size(), false);
            bool ok = true;
            std::vector<std::size_t> parent(t, t);
            for (std::size_t v = 0; v < t && ok; ++v) {
              if (v == root) continue;
              if (all_slots.empty()) {
                ok = false;
                break;
              }
              if (used[pick[v]]) ok = false;
              used[pick[v]] = true;
              parent[v] = all_slots[pick[v]].first;
            }
            if (ok) {
              for (std::size_t v = 0; v < t && ok; ++v) {
                std::size_t x = v, steps = 0;
                while (x != root && steps <= t) {
                  x = parent[x];
                  ++steps;
                }
                if (x != root) ok = false;
              }
            }
            if (ok) {
              std::vector<std::size_t> free_slots;
              for (std::size_t i = 0; i < all_slots.size(); ++i)
                if (!used[i]) free_slots.push_back(i);
              std::string base = "r" + std::to_string(root) + ":";
              for (std::size_t v = 0; v < t; ++v)
                base += labels[lab[v]].key + "@" + (v == root ? std::string("-") : std::to_string(pick[v])) + ";";
              for (const auto& num : permutations_of(free_slots.size())) {
                std::string k = base + "|";
                for (std::size_t i = 0; i < free_slots.size(); ++i)
                  k += std::to_string(free_slots[i]) + "=" + std::to_string(num[i]) + ",";
                out.insert(k);
              }
            }
            // next pick vector over non-root nodes
            std::size_t v = 0;
            while (v < t) {
              if (v == root || all_slots.empty()) {
                ++v;
                continue;
              }
              if (++pick[v] < all_slots.size()) break;
              pick[v] = 0;
              ++v;
            }
            if (v == t) break;
          }
        }
      }
      std::size_t i = 0;
      while (i < t && ++lab[i] == labels.size()) lab[i++] = 0;
      if (i == t) break;
    }
  }
}

}  // namespace brute

/// Number of opetopes of dimension `dim` with size at most `node_bound`
/// (optionally only those with exactly `infaces` infaces), by brute force.
inline std::size_t brute_force_count(std::size_t dim, std::size_t node_bound,
                                     std::optional<std::size_t> infaces = std::nullopt) {
  if (dim > 3 || node_bound > 4)
    throw Error(Errc::bound_exceeded, "brute force is limited to dim <= 3 and node_bound <= 4");
  if (dim <= 1) return (!infaces || *infaces == (dim == 0 ? 0u : 1u)) ? 1 : 0;

  const std::vector<brute::Label> arrow{{"a", 1, 0}};
  if (dim == 2) {
    std::set<std::string> out;
    brute::trees(arrow, node_bound, infaces, out);
    return out.size();
  }
  // dim 3: labels are 2-opetopes, i.e. numbered chains
  std::set<std::string> chains;
  brute::trees(arrow, node_bound, std::nullopt, chains);
  std::vector<brute::Label> labels;
  for (const auto& c : chains) {
    const auto nodes = c == "empty" ? 0 : static_cast<std::size_t>(std::count(c.begin(), c.end(), ';'));
    labels.push_back({c, nodes, nodes});
  }
  std::set<std::string> out;
  brute::trees(labels, node_bound, infaces, out);
  return out.size();
}

}  // namespace opetope
