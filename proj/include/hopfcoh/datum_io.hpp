#pragma once

// JSON serialization of Cartan data.  Layout:
//   {"group": {"invariant_factors": [d1, ...]},
//    "theta": t,
//    "cartan": [[...], ...],
//    "g":   [[exponents per group generator], ...]   (one row per vertex),
//    "chi": [[exponents per group generator], ...],
//    "lambda": [{"i": 1-based, "j": 1-based, "value": <scalar>}, ...],
//    "mu": [{"root": [coefficients over simple roots], "value": <scalar>}]}
// A <scalar> is a rational string "p/q", an object
// {"zeta_order": e, "power": k, "coeff": "p/q"}, or an array of either
// (meaning their sum).  Vertex indices are 1-based in files and converted
// to the 0-based internal convention.

#include <string>

#include "hopfcoh/datum.hpp"
#include "json.hpp"

namespace hopfcoh {

ScalarLiteral literal_from_json(const nlohmann::json& j);
nlohmann::json literal_to_json(const ScalarLiteral& lit);

CartanDatum datum_from_json(const nlohmann::json& j);
nlohmann::json datum_to_json(const CartanDatum& d);

// Throws std::runtime_error with a descriptive message on I/O, syntax or
// shape errors.
CartanDatum datum_from_file(const std::string& path);
void datum_to_file(const CartanDatum& d, const std::string& path);

}  // namespace hopfcoh
