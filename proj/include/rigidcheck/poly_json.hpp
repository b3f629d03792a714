#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigidcheck/poly.hpp"

namespace rigidcheck {

using json = nlohmann::json;

inline Field parse_field(const json& j) {
  if (j.is_string() && j.get<std::string>() == "Q") return Field::rationals();
  if (j.is_object() && j.contains("Fp") && j.at("Fp").is_number_unsigned())
    return Field::prime(j.at("Fp").get<std::uint64_t>());
  throw InputError("field 'field': expected \"Q\" or {\"Fp\": p}");
}

inline json field_to_json(const Field& f) {
  if (f.is_rational()) return "Q";
  return json{{"Fp", f.characteristic()}};
}

inline FieldElem parse_coeff(const Field& field, const json& c, const std::string& where) {
  try {
    if (c.is_string()) return field.parse(c.get<std::string>());
    if (c.is_number_integer()) return field.parse(c.dump());
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected an integer or an \"a/b\" string");
}

/// Terms array against a known ring.
inline SparsePoly parse_terms(const Field& field, std::size_t nvars, const json& terms, const std::string& where) {
  if (!terms.is_array()) throw InputError(where + ": expected an array of terms");
  std::vector<Term> out;
  std::set<std::vector<unsigned>> seen;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const json& t = terms[k];
    std::string here = where + "[" + std::to_string(k) + "]";
    if (!t.is_object() || !t.contains("c") || !t.contains("e"))
      throw InputError(here + ": term needs fields 'c' and 'e'");
    const json& e = t.at("e");
    if (!e.is_array() || e.size() != nvars)
      throw InputError(here + ".e: exponent vector must have length nvars = " + std::to_string(nvars));
    std::vector<unsigned> exps;
    for (const auto& x : e) {
      if (!x.is_number_unsigned()) throw InputError(here + ".e: exponents must be non-negative integers");
      exps.push_back(x.get<unsigned>());
    }
    if (!seen.insert(exps).second) throw InputError(here + ".e: duplicate exponent vector");
    FieldElem c = parse_coeff(field, t.at("c"), here + ".c");
    if (!c.is_zero()) out.push_back({Monomial::from_exponents(exps), std::move(c)});
  }
  return SparsePoly::from_terms(field, nvars, std::move(out));
}

inline std::size_t parse_nvars(const json& j) {
  if (!j.contains("nvars") || !j.at("nvars").is_number_unsigned())
    throw InputError("field 'nvars': expected a non-negative integer");
  auto n = j.at("nvars").get<std::size_t>();
  if (n > kMaxVars) throw InputError("field 'nvars': at most 32 variables are supported");
  return n;
}

inline SparsePoly poly_from_json(const json& j) {
  if (!j.is_object()) throw InputError("polynomial: expected a JSON object");
  std::size_t nvars = parse_nvars(j);
  if (!j.contains("field")) throw InputError("field 'field': missing");
  Field field = parse_field(j.at("field"));
  if (!j.contains("terms")) throw InputError("field 'terms': missing");
  return parse_terms(field, nvars, j.at("terms"), "terms");
}

inline json terms_to_json(const SparsePoly& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    std::vector<unsigned> e(t.mono.exp.begin(), t.mono.exp.begin() + static_cast<long>(f.nvars()));
    terms.push_back({{"c", t.coeff.to_string()}, {"e", e}});
  }
  return terms;
}

inline json poly_to_json(const SparsePoly& f) {
  return {{"nvars", f.nvars()}, {"field", field_to_json(f.field())}, {"terms", terms_to_json(f)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace rigidcheck
