#pragma once

#include <json.hpp>

#include <string>

#include "iforms/error.hpp"
#include "iforms/formspace.hpp"
#include "iforms/lie.hpp"

namespace iforms::jsonio {

using Json = nlohmann::ordered_json;

// Rational values are serialized as strings ("p/q" or "p"); JSON numbers
// cannot hold arbitrary-precision rationals exactly.

inline Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(iforms::to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const QuadricSystem& q) {
  Json j;
  j["dim"] = q.dimension();
  Json list = Json::array();
  for (const auto& e : q.entries()) {
    Json entry;
    entry["label"]["form_indices"] =
        Json::array({e.label.form_indices[0], e.label.form_indices[1], e.label.form_indices[2]});
    entry["label"]["monomial"] = e.label.monomial;
    entry["matrix"] = to_json(e.matrix);
    list.push_back(std::move(entry));
  }
  j["quadrics"] = std::move(list);
  return j;
}

inline Json to_json(const CurveParam& c) {
  Json j;
  j["degree"] = c.degree();
  Json comps = Json::array();
  for (const auto& f : c.components()) {
    Json coeffs = Json::array();
    for (const auto& x : f.coeffs()) coeffs.push_back(iforms::to_string(x));
    comps.push_back(std::move(coeffs));
  }
  j["components"] = std::move(comps);
  return j;
}

inline Rational rational_from_json(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return Rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw DomainError("invalid rational literal '" + v.get<std::string>() + "'");
    }
  }
  throw DomainError("rational values must be integers or 'p/q' strings");
}

/// Structure constants from JSON:
///   { "dim": m, "brackets": [ { "i": 1, "j": 2, "coeffs": ["-1", 0, ...] } ] }
/// with 1-based indices and omitted brackets meaning zero.
inline LieAlgebra lie_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim"))
    throw DomainError("Lie algebra JSON must be an object with a 'dim' field");
  const int dim = j.at("dim").get<int>();
  std::vector<LieAlgebra::Bracket> brackets;
  if (j.contains("brackets")) {
    for (const auto& b : j.at("brackets")) {
      LieAlgebra::Bracket out;
      out.i = b.at("i").get<int>() - 1;
      out.j = b.at("j").get<int>() - 1;
      for (const auto& c : b.at("coeffs")) out.coeffs.push_back(rational_from_json(c));
      brackets.push_back(std::move(out));
    }
  }
  return LieAlgebra(dim, brackets);
}

} // namespace iforms::jsonio
