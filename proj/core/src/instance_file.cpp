#include "latproj/instance_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include <json.hpp>


namespace latproj {

using nlohmann::json;

namespace {

Matrix read_matrix(const json& doc, const char* field, int dim) {
  const json& rows = doc.at(field);
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw InstanceFormatError(std::string("field '") + field + "': expected an array of " +
                              std::to_string(dim) + " rows");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw InstanceFormatError(std::string("field '") + field + "' row " + std::to_string(i) +
                                ": expected " + std::to_string(dim) + " entries");
    }
    for (int j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        throw InstanceFormatError(std::string("field '") + field + "' entry [" +
                                  std::to_string(i) + "][" + std::to_string(j) +
                                  "]: expected a number");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceFormatError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceFormatError("instance must be a JSON object");

  InstanceFile instance;
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer()) {
    throw InstanceFormatError("field 'dimension': expected an integer");
  }
  instance.dimension = doc["dimension"].get<int>();
  if (instance.dimension < 1 || instance.dimension > kMaxDimension) {
    throw InstanceFormatError("field 'dimension': must be in [1, " +
                              std::to_string(kMaxDimension) + "]");
  }
  if (!doc.contains("gram")) throw InstanceFormatError("field 'gram': missing");
  instance.gram = read_matrix(doc, "gram", instance.dimension);
  if (doc.contains("order_basis") && !doc["order_basis"].is_null()) {
    instance.order_basis = read_matrix(doc, "order_basis", instance.dimension);
  }
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) {
      throw InstanceFormatError("field 'description': expected a string");
    }
    instance.description = doc["description"].get<std::string>();
  }
  return instance;
}

InstanceFile read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_instance(text.str());
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(path.string() + ": " + e.what());
  }
}

std::string to_json(const InstanceFile& instance) {
  json doc;
  doc["dimension"] = instance.dimension;
  doc["gram"] = matrix_json(instance.gram);
  if (instance.order_basis) doc["order_basis"] = matrix_json(*instance.order_basis);
  if (!instance.description.empty()) doc["description"] = instance.description;
  return doc.dump(2);
}

OrderedSpace make_ordered_space(const InstanceFile& instance) {
  const int n = instance.dimension;
  InnerProductSpace space(instance.gram);
  if (space.dim() != n) throw DimensionError("gram does not match dimension");
  OrderBasis order = instance.order_basis ? OrderBasis(*instance.order_basis)
                                          : OrderBasis::coordinate(n);
  return OrderedSpace(std::move(space), std::move(order));
}

InstanceFile to_instance(const OrderedSpace& ospace, std::string description) {
  InstanceFile instance;
  instance.dimension = ospace.dim();
  instance.gram = ospace.space().gram();
  instance.order_basis = ospace.order().basis();
  instance.description = std::move(description);
  return instance;
}

std::string instance_digest(const OrderedSpace& ospace) {
  json doc;
  doc["dimension"] = ospace.dim();
  doc["gram"] = matrix_json(ospace.space().gram());
  doc["order_basis"] = matrix_json(ospace.order().basis());
  const std::string canonical = doc.dump();

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw InternalError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

}  // namespace latproj
