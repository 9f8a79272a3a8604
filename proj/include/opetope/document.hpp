#pragma once

// Versioned JSON documents: opetope lists, opetopic sets and verdicts.
//
// Every document is {"format_version": "1", "kind": ..., "payload": ...}.
// Output is deterministic: object keys are sorted and arrays follow the
// canonical orders of the library.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opetope/error.hpp"
#include "opetope/opetope.hpp"
#include "opetope/opetopic_set.hpp"
#include "opetope/universality.hpp"

namespace opetope {

using json = nlohmann::json;

inline constexpr const char* format_version = "1";

enum class DocKind { opetope_list, opetopic_set, verdict };

inline std::string doc_kind_name(DocKind k) {
  switch (k) {
    case DocKind::opetope_list: return "opetope_list";
    case DocKind::opetopic_set: return "opetopic_set";
    case DocKind::verdict: return "verdict";
  }
  return "?";
}

struct Document {
  DocKind kind = DocKind::opetope_list;
  json payload;

  friend bool operator==(const Document&, const Document&) = default;
};

inline std::string store(const Document& d) {
  json j;
  j["format_version"] = format_version;
  j["kind"] = doc_kind_name(d.kind);
  j["payload"] = d.payload;
  return j.dump(2) + "\n";
}

inline Document load(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  if (!j.is_object() || !j.contains("format_version") || !j.contains("kind") || !j.contains("payload"))
    throw Error(Errc::parse_error, "document needs format_version, kind and payload");
  if (!j["format_version"].is_string() || j["format_version"] != format_version)
    throw Error(Errc::unknown_format_version, "unsupported format_version " + j["format_version"].dump());
  const auto kind = j["kind"].is_string() ? j["kind"].get<std::string>() : std::string();
  for (auto k : {DocKind::opetope_list, DocKind::opetopic_set, DocKind::verdict})
    if (doc_kind_name(k) == kind) return Document{k, j["payload"]};
  throw Error(Errc::parse_error, "unknown document kind " + j["kind"].dump());
}

inline Document load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load(ss.str());
}

inline void store_file(const Document& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write " + path);
  out << store(d);
}

// ---------------------------------------------------------------------------
// Metatrees as nested arrays.
//
//   type       := "*" | operation
//   operation  := "1" | {"tree": tree, "node_order": [int]}
//   tree       := {"empty": type} | {"nodes": [{"label": operation, "children": [int|null]}],
//                                    "leaf_order": [int]}

json operation_json(const Operation& op);

inline json type_json(const Type& t) { return t.level == 0 ? json("*") : operation_json(t.op); }

inline json operation_json(const Operation& op) {
  if (op.level() == 0) return "1";
  const auto& body = op.body();
  json tree;
  if (body.is_empty()) {
    tree["empty"] = type_json(body.edge_type());
  } else {
    tree["nodes"] = json::array();
    for (const auto& n : body.nodes()) {
      json kids = json::array();
      for (auto c : n.child) kids.push_back(c == leaf_slot ? json(nullptr) : json(c));
      tree["nodes"].push_back({{"label", operation_json(n.label)}, {"children", kids}});
    }
    tree["leaf_order"] = std::vector<std::size_t>(body.leaf_order().begin(), body.leaf_order().end());
  }
  return {{"tree", tree}, {"node_order", std::vector<std::size_t>(op.node_order().begin(), op.node_order().end())}};
}

Operation operation_from_json(const json& j, std::size_t level);

inline Type type_from_json(const json& j, std::size_t level) {
  if (level == 0) {
    if (j != "*") throw Error(Errc::parse_error, "expected the point");
    return Type::point();
  }
  return Type::of(operation_from_json(j, level - 1));
}

inline Operation operation_from_json(const json& j, std::size_t level) {
  try {
    if (level == 0) {
      if (j != "1") throw Error(Errc::parse_error, "expected the unit operation");
      return unit_operation();
    }
    const auto& tree = j.at("tree");
    auto node_order = j.at("node_order").get<std::vector<std::size_t>>();
    if (tree.contains("empty")) return make_operation(CompTree::empty(type_from_json(tree["empty"], level - 1)), node_order);
    std::vector<TreeNode> nodes;
    for (const auto& n : tree.at("nodes")) {
      TreeNode t{operation_from_json(n.at("label"), level - 1), {}};
      for (const auto& c : n.at("children")) t.child.push_back(c.is_null() ? leaf_slot : c.get<std::size_t>());
      nodes.push_back(std::move(t));
    }
    return make_operation(CompTree(level - 1, std::move(nodes), tree.at("leaf_order").get<std::vector<std::size_t>>()),
                          std::move(node_order));
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

inline json opetope_json(const Opetope& o) {
  return {{"code", o.code()},
          {"dim", o.dim()},
          {"infaces", o.inface_count()},
          {"size", o.size()},
          {"metatree", type_json(o.type())}};
}

inline Opetope opetope_from_json(const json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    Opetope o(type_from_json(j.at("metatree"), dim));
    if (j.contains("code") && j["code"] != o.code()) throw Error(Errc::parse_error, "code does not match metatree");
    return o;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

inline Document opetope_list_document(std::size_t dim, std::size_t node_bound, const std::vector<Opetope>& ops) {
  json counts = json::object();
  for (const auto& [k, n] : count_by_infaces(ops)) counts[std::to_string(k)] = n;
  json list = json::array();
  for (const auto& o : ops) list.push_back(opetope_json(o));
  return Document{DocKind::opetope_list,
                  {{"dim", dim}, {"node_bound", node_bound}, {"total", ops.size()}, {"counts", counts}, {"opetopes", list}}};
}

inline std::vector<Opetope> opetopes_from_document(const Document& d) {
  if (d.kind != DocKind::opetope_list) throw Error(Errc::parse_error, "not an opetope_list document");
  std::vector<Opetope> out;
  try {
    for (const auto& o : d.payload.at("opetopes")) out.push_back(opetope_from_json(o));
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Opetopic sets.

inline Document set_document(const OpetopicSet& set) {
  json cells = json::array();
  for (const auto& s : set.specs()) cells.push_back({{"name", s.name}, {"shape", s.shape}, {"faces", s.faces}});
  return Document{DocKind::opetopic_set,
                  {{"max_dim", set.max_dim()}, {"shape_bound", set.shape_bound()}, {"cells", cells}}};
}

inline OpetopicSet set_from_document(const Document& d) {
  if (d.kind != DocKind::opetopic_set) throw Error(Errc::parse_error, "not an opetopic_set document");
  try {
    std::vector<CellSpec> specs;
    for (const auto& c : d.payload.at("cells"))
      specs.push_back({c.at("name").get<std::string>(), c.at("shape").get<std::string>(),
                       c.at("faces").get<std::vector<std::string>>()});
    return OpetopicSet(d.payload.at("max_dim").get<std::size_t>(), d.payload.at("shape_bound").get<std::size_t>(),
                       std::move(specs));
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

// ---------------------------------------------------------------------------
// Verdicts.

inline json niche_json(const OpetopicSet& set, const NicheStatus& st) {
  auto names = [&](const std::vector<CellId>& ids) {
    std::vector<std::string> v;
    for (auto c : ids) v.push_back(set.name(c));
    return v;
  };
  std::vector<std::string> infaces;
  for (std::size_t i = 0; i + 1 < st.niche.faces.size(); ++i) infaces.push_back(set.name(*st.niche.faces[i]));
  std::vector<CellId> comps;
  for (auto x : st.universal_occupants) comps.push_back(set.face(x, st.niche.faces.size() - 1));
  std::sort(comps.begin(), comps.end());
  comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
  return {{"description", st.description},
          {"dim", st.niche.shape.dim()},
          {"shape", st.niche.shape.code()},
          {"infaces", infaces},
          {"edges", names(st.niche.edges)},
          {"occupants", names(st.occupants)},
          {"universal_occupants", names(st.universal_occupants)},
          {"composites", names(comps)},
          {"infaces_universal", st.infaces_universal},
          {"condition_1", st.has_universal},
          {"condition_2", st.composites_ok},
          {"failure", st.failure}};
}

inline Document verdict_document(const OpetopicSet& set, const CategoryVerdict& v) {
  json niches = json::array();
  for (const auto& st : v.niches) niches.push_back(niche_json(set, st));
  json first = nullptr;
  if (v.first_failure) first = niche_json(set, v.niches[*v.first_failure]);
  return Document{DocKind::verdict,
                  {{"pass", v.value},
                   {"n", v.n},
                   {"shape_bound", v.shape_bound},
                   {"niche_dims", {1, v.n + 1}},
                   {"condition_2_rule", condition_two_rule},
                   {"max_call_dim", v.max_call_dim},
                   {"first_failure", first},
                   {"niches", niches}}};
}

}  // namespace opetope
