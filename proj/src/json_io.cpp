#include "tailspace/json_io.hpp"

#include <cmath>

#include "tailspace/errors.hpp"

namespace tailspace {

namespace {

Json dense_doc(int n, const char* repr, std::span<const double> data) {
  Json doc;
  doc["n"] = n;
  doc["repr"] = repr;
  doc["data"] = Json::array();
  for (double v : data) doc["data"].push_back(v);
  return doc;
}

}  // namespace

Json to_json(const BooleanFunction& f) { return dense_doc(f.n(), "values", f.values()); }

Json to_json(const Spectrum& s) { return dense_doc(s.n(), "coeffs", s.coeffs()); }

DenseObject dense_from_json(const Json& doc) {
  if (!doc.is_object()) throw DomainError("expected a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw DomainError("missing integer field \"n\"");
  }
  if (!doc.contains("repr") || !doc["repr"].is_string()) {
    throw DomainError("missing string field \"repr\"");
  }
  if (!doc.contains("data") || !doc["data"].is_array()) {
    throw DomainError("missing array field \"data\"");
  }
  const auto n64 = doc["n"].get<std::int64_t>();
  if (n64 < 1) throw DomainError("\"n\" must be positive");
  if (n64 > capacity()) throw CapacityError(static_cast<int>(std::min<std::int64_t>(n64, 1 << 20)), capacity());
  const int n = static_cast<int>(n64);
  const auto& arr = doc["data"];
  std::vector<double> data;
  data.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw DomainError("\"data\" entries must be numbers");
    data.push_back(v.get<double>());
  }
  const std::string repr = doc["repr"].get<std::string>();
  if (repr == "values") return BooleanFunction(n, std::move(data));
  if (repr == "coeffs") return Spectrum(n, std::move(data));
  throw DomainError("\"repr\" must be \"values\" or \"coeffs\"");
}

DenseObject parse_dense(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
  return dense_from_json(doc);
}

BooleanFunction function_from_json(const Json& doc) {
  auto obj = dense_from_json(doc);
  if (auto* f = std::get_if<BooleanFunction>(&obj)) return *f;
  return inverse_fwht(std::get<Spectrum>(obj));
}

Spectrum spectrum_from_json(const Json& doc) {
  auto obj = dense_from_json(doc);
  if (auto* s = std::get_if<Spectrum>(&obj)) return *s;
  return fwht(std::get<BooleanFunction>(obj));
}

}  // namespace tailspace
