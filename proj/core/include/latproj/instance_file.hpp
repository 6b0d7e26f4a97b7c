#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "latproj/errors.hpp"
#include "latproj/lattice_order.hpp"

namespace latproj {

/// On-disk description of an ordered inner-product space:
///
///   {"dimension": n, "gram": [[...], ...], "order_basis": [[...], ...],
///    "description": "..."}
///
/// Matrices are row-major arrays of rows. order_basis and description are optional;
/// a missing order_basis means the coordinate order.
struct InstanceFile {
  int dimension = 0;
  Matrix gram;
  std::optional<Matrix> order_basis;
  std::string description;
};

/// Malformed instance text. The message names the line/column or the offending field.
class InstanceFormatError : public InputError {
 public:
  using InputError::InputError;
};

InstanceFile parse_instance(std::string_view text);
InstanceFile read_instance(const std::filesystem::path& path);
std::string to_json(const InstanceFile& instance);

/// Validates the matrices; throws InputError / ConditioningError like the constructors.
OrderedSpace make_ordered_space(const InstanceFile& instance);
InstanceFile to_instance(const OrderedSpace& ospace, std::string description = {});

/// SHA-256 (hex) of the canonical serialization of dimension, gram and order_basis.
std::string instance_digest(const OrderedSpace& ospace);

}  // namespace latproj
