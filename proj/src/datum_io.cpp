#include "hopfcoh/datum_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hopfcoh {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("datum file: " + what);
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field \"") + name + "\"");
  return *it;
}

long as_long(const json& j, const char* where) {
  if (!j.is_number_integer()) fail(std::string(where) + " must be an integer");
  return j.get<long>();
}

std::vector<long> long_vector(const json& j, const char* where) {
  if (!j.is_array()) fail(std::string(where) + " must be an array");
  std::vector<long> v;
  for (const auto& e : j) v.push_back(as_long(e, where));
  return v;
}

std::vector<int> int_vector(const json& j, const char* where) {
  std::vector<int> v;
  for (long x : long_vector(j, where)) v.push_back(static_cast<int>(x));
  return v;
}

ScalarLiteral::Term term_from_json(const json& j) {
  ScalarLiteral::Term t;
  if (j.is_string()) {
    t.coeff = parse_rational(j.get<std::string>());
    return t;
  }
  if (j.is_object()) {
    t.zeta_order = as_long(field(j, "zeta_order"), "zeta_order");
    t.power = as_long(field(j, "power"), "power");
    if (t.zeta_order < 1) fail("zeta_order must be positive");
    auto it = j.find("coeff");
    if (it != j.end()) t.coeff = parse_rational(it->get<std::string>());
    return t;
  }
  fail("scalar term must be a rational string or a zeta term object");
}

json term_to_json(const ScalarLiteral::Term& t) {
  if (t.zeta_order == 1 || t.power == 0) {
    return json(rational_to_string(t.coeff));
  }
  return json{{"zeta_order", t.zeta_order},
              {"power", t.power},
              {"coeff", rational_to_string(t.coeff)}};
}

}  // namespace

ScalarLiteral literal_from_json(const json& j) {
  ScalarLiteral lit;
  if (j.is_array()) {
    for (const auto& e : j) lit.terms.push_back(term_from_json(e));
  } else {
    lit.terms.push_back(term_from_json(j));
  }
  return lit;
}

json literal_to_json(const ScalarLiteral& lit) {
  if (lit.terms.empty()) return json("0");
  if (lit.terms.size() == 1) return term_to_json(lit.terms[0]);
  json arr = json::array();
  for (const auto& t : lit.terms) arr.push_back(term_to_json(t));
  return arr;
}

CartanDatum datum_from_json(const json& j) {
  if (!j.is_object()) fail("top level must be an object");
  CartanDatum d;
  const json& grp = field(j, "group");
  d.invariant_factors =
      long_vector(field(grp, "invariant_factors"), "invariant_factors");
  d.theta = static_cast<int>(as_long(field(j, "theta"), "theta"));

  const json& cart = field(j, "cartan");
  if (!cart.is_array()) fail("cartan must be an array of rows");
  for (size_t i = 0; i < cart.size(); ++i) {
    d.cartan.push_back(int_vector(cart[i], "cartan row"));
  }

  const json& gj = field(j, "g");
  if (!gj.is_array()) fail("g must be an array of exponent vectors");
  for (const auto& row : gj) d.g_exponents.push_back(long_vector(row, "g"));

  const json& cj = field(j, "chi");
  if (!cj.is_array()) fail("chi must be an array of exponent vectors");
  for (const auto& row : cj) d.chi_exponents.push_back(long_vector(row, "chi"));

  if (auto it = j.find("lambda"); it != j.end()) {
    if (!it->is_array()) fail("lambda must be an array");
    for (const auto& entry : *it) {
      int i1 = static_cast<int>(as_long(field(entry, "i"), "lambda i"));
      int j1 = static_cast<int>(as_long(field(entry, "j"), "lambda j"));
      if (i1 < 1 || j1 < 1) fail("lambda indices are 1-based");
      ScalarLiteral v = literal_from_json(field(entry, "value"));
      if (!v.literally_zero()) d.lambda[{i1 - 1, j1 - 1}] = std::move(v);
    }
  }

  if (auto it = j.find("mu"); it != j.end()) {
    if (!it->is_array()) fail("mu must be an array");
    for (const auto& entry : *it) {
      std::vector<int> root = int_vector(field(entry, "root"), "mu root");
      ScalarLiteral v = literal_from_json(field(entry, "value"));
      if (!v.literally_zero()) d.mu[std::move(root)] = std::move(v);
    }
  }
  return d;
}

json datum_to_json(const CartanDatum& d) {
  json j;
  j["group"] = json{{"invariant_factors", d.invariant_factors}};
  j["theta"] = d.theta;
  j["cartan"] = d.cartan;
  j["g"] = d.g_exponents;
  j["chi"] = d.chi_exponents;
  json lam = json::array();
  for (const auto& [ij, v] : d.lambda) {
    lam.push_back(json{{"i", ij.first + 1},
                       {"j", ij.second + 1},
                       {"value", literal_to_json(v)}});
  }
  if (!lam.empty()) j["lambda"] = std::move(lam);
  json mu = json::array();
  for (const auto& [root, v] : d.mu) {
    mu.push_back(json{{"root", root}, {"value", literal_to_json(v)}});
  }
  if (!mu.empty()) j["mu"] = std::move(mu);
  return j;
}

CartanDatum datum_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path + ": " + e.what());
  }
  return datum_from_json(j);
}

void datum_to_file(const CartanDatum& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot open " + path + " for writing");
  out << datum_to_json(d).dump(2) << "\n";
}

}  // namespace hopfcoh
