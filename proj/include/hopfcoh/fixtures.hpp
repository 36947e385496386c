#pragma once

// The standard small data used across tests and the built-in check suite:
//   taft3 : Gamma = Z_3,    one vertex,  chi(g) = zeta_3,          N = 3
//   t9    : Gamma = Z_9,    one vertex,  chi(g) = zeta_9^3,        N = 3
//   ql2   : Gamma = Z_5,    two A1 vertices, g_1 = g_2 = g,
//           chi_1(g) = zeta_5, chi_2(g) = zeta_5^4,                N = 5
//   a2f   : Gamma = Z_7^2,  one A2 pair, chi_1 = (q, q^-1),
//           chi_2 = (1, q) with q = zeta_7,                        N = 7
// ql2 optionally carries the linking scalar lambda_12 and t9 the
// root-vector scalar mu; both default to zero (the graded case).

#include "hopfcoh/datum.hpp"

namespace hopfcoh {

CartanDatum taft3_datum();
CartanDatum t9_datum(const ScalarLiteral& mu = ScalarLiteral::zero());
CartanDatum ql2_datum(const ScalarLiteral& lambda12 = ScalarLiteral::zero());
CartanDatum a2f_datum();

// builds or aborts; convenience for tests that require valid data
std::unique_ptr<DatumContext> build_or_throw(const CartanDatum& d);

}  // namespace hopfcoh
