#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/operad.hpp"
#include "opetope/operation.hpp"

namespace opetope {

/// An n-dimensional opetope: a type of I^{n+}. Dimension 0 is the point, and
/// for n >= 1 the opetope is an operation of I^{(n-1)+} whose infaces are its
/// input types and whose outface is its output type.
class Opetope {
 public:
  Opetope() = default;
  explicit Opetope(Type t) : type_(std::move(t)) {}

  static Opetope point() { return Opetope(Type::point()); }
  static Opetope arrow() { return Opetope(Type::of(unit_operation())); }
  /// The opetope whose defining operation is `op`.
  static Opetope of(const Operation& op) { return Opetope(Type::of(op)); }

  std::size_t dim() const noexcept { return type_.level; }
  const Type& type() const noexcept { return type_; }
  /// Defining operation of I^{(dim-1)+}; throws for the point.
  const Operation& operation() const {
    if (dim() == 0) throw Error(Errc::zero_dimensional, "the point has no defining operation");
    return type_.op;
  }
  std::string code() const { return type_.code(); }
  std::size_t size() const { return type_.size(); }
  std::size_t inface_count() const { return dim() == 0 ? 0 : type_.op.arity(); }

  std::vector<Opetope> infaces() const {
    std::vector<Opetope> out;
    for (const auto& t : operation().inputs()) out.emplace_back(t);
    return out;
  }
  Opetope outface() const { return Opetope(operation().output()); }

  friend bool operator==(const Opetope& a, const Opetope& b) { return a.type_ == b.type_; }
  friend bool operator<(const Opetope& a, const Opetope& b) { return a.type_ < b.type_; }

 private:
  Type type_;
};

/// Canonical code of an opetope: equal codes iff equal opetopes. The point is
/// "*", the arrow "1"; higher opetopes serialize their defining operation.
inline std::string canonical_code(const Opetope& o) { return o.code(); }

inline Type as_type(const Opetope& o) { return o.type(); }
inline Opetope from_type(const Type& t) { return Opetope(t); }

inline Opetope opetope_from_code(std::string_view code) { return Opetope(parse_type(code)); }

struct Faces {
  std::vector<Opetope> infaces;
  Opetope outface;
};

inline Faces faces(const Opetope& o) {
  if (o.dim() == 0) throw Error(Errc::zero_dimensional, "faces of the point");
  return Faces{o.infaces(), o.outface()};
}

/// All opetopes of dimension `dim` whose size is at most `node_bound`, in
/// canonical order. Size counts the nodes of every tree in the nested
/// (metatree) description; dimensions 0 and 1 ignore the bound.
inline std::vector<Opetope> enumerate_opetopes(std::size_t dim, std::size_t node_bound) {
  std::vector<Opetope> out;
  for (const auto& t : tower_types(dim, node_bound)) out.emplace_back(t);
  return out;
}

/// Counts of the enumeration keyed by inface count.
inline std::map<std::size_t, std::size_t> count_by_infaces(const std::vector<Opetope>& ops) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& o : ops) ++out[o.inface_count()];
  return out;
}

/// Identity opetope on a lower shape: one inface, equal to the outface.
inline Opetope identity_opetope(const Opetope& face) { return Opetope::of(identity(face.type())); }

}  // namespace opetope
