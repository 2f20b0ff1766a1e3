#pragma once

// {"n": int, "repr": "values"|"coeffs", "data": [2^n reals]} in mask order.

#include <string>
#include <variant>

#include <json.hpp>

#include "tailspace/hypercube.hpp"

namespace tailspace {

using Json = nlohmann::json;
using DenseObject = std::variant<BooleanFunction, Spectrum>;

Json to_json(const BooleanFunction& f);
Json to_json(const Spectrum& s);

// Throws DomainError for malformed documents, CapacityError for n > n_max.
DenseObject dense_from_json(const Json& doc);
DenseObject parse_dense(const std::string& text);

BooleanFunction function_from_json(const Json& doc);
Spectrum spectrum_from_json(const Json& doc);

}  // namespace tailspace
