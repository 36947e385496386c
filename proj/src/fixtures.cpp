#include "hopfcoh/fixtures.hpp"

#include <stdexcept>

namespace hopfcoh {

CartanDatum taft3_datum() {
  CartanDatum d;
  d.invariant_factors = {3};
  d.theta = 1;
  d.cartan = {{2}};
  d.g_exponents = {{1}};
  d.chi_exponents = {{1}};
  return d;
}

CartanDatum t9_datum(const ScalarLiteral& mu) {
  CartanDatum d;
  d.invariant_factors = {9};
  d.theta = 1;
  d.cartan = {{2}};
  d.g_exponents = {{1}};
  d.chi_exponents = {{3}};
  if (!mu.literally_zero()) d.mu[{1}] = mu;
  return d;
}

CartanDatum ql2_datum(const ScalarLiteral& lambda12) {
  CartanDatum d;
  d.invariant_factors = {5};
  d.theta = 2;
  d.cartan = {{2, 0}, {0, 2}};
  d.g_exponents = {{1}, {1}};
  d.chi_exponents = {{1}, {4}};
  if (!lambda12.literally_zero()) d.lambda[{0, 1}] = lambda12;
  return d;
}

CartanDatum a2f_datum() {
  CartanDatum d;
  d.invariant_factors = {7, 7};
  d.theta = 2;
  d.cartan = {{2, -1}, {-1, 2}};
  d.g_exponents = {{1, 0}, {0, 1}};
  d.chi_exponents = {{1, 6}, {0, 1}};
  return d;
}

std::unique_ptr<DatumContext> build_or_throw(const CartanDatum& d) {
  ValidationReport rep;
  auto ctx = DatumContext::build(d, rep);
  if (!ctx) {
    std::string msg = "fixture datum failed validation:";
    for (const auto& e : rep.errors) msg += "\n  " + e;
    throw std::runtime_error(msg);
  }
  return ctx;
}

}  // namespace hopfcoh
