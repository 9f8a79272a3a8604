#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opetope {

enum class Errc {
  arity_mismatch,
  type_mismatch,
  degree_mismatch,
  not_a_permutation,
  ill_typed,
  composite_mismatch,
  no_such_node,
  unsupported_operad,
  carrier_mismatch,
  zero_dimensional,
  bound_exceeded,
  parse_error,
  dim_out_of_range,
  malformed_config,
  unknown_cell,
  dimension_overflow,
  invalid_set,
  insufficient_dimension,
  unknown_fixture,
  unknown_format_version,
};

inline std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::type_mismatch: return "TypeMismatch";
    case Errc::degree_mismatch: return "DegreeMismatch";
    case Errc::not_a_permutation: return "NotAPermutation";
    case Errc::ill_typed: return "IllTyped";
    case Errc::composite_mismatch: return "CompositeMismatch";
    case Errc::no_such_node: return "NoSuchNode";
    case Errc::unsupported_operad: return "UnsupportedOperad";
    case Errc::carrier_mismatch: return "CarrierMismatch";
    case Errc::zero_dimensional: return "ZeroDimensional";
    case Errc::bound_exceeded: return "BoundExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::dim_out_of_range: return "DimOutOfRange";
    case Errc::malformed_config: return "MalformedConfig";
    case Errc::unknown_cell: return "UnknownCell";
    case Errc::dimension_overflow: return "DimensionOverflow";
    case Errc::invalid_set: return "InvalidSet";
    case Errc::insufficient_dimension: return "InsufficientDimension";
    case Errc::unknown_fixture: return "UnknownFixture";
    case Errc::unknown_format_version: return "UnknownFormatVersion";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace opetope
