#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>

#include "doctest.h"
#include "hopfcoh/datum_io.hpp"
#include "hopfcoh/fixtures.hpp"

using namespace hopfcoh;

namespace {

std::string fixture(const char* name) {
  return std::string(HOPFCOH_FIXTURE_DIR) + "/" + name;
}

long literal_field_order(const ScalarLiteral& a, const ScalarLiteral& b) {
  long e = 1;
  for (const auto& t : a.terms) e = std::lcm(e, t.zeta_order);
  for (const auto& t : b.terms) e = std::lcm(e, t.zeta_order);
  return e;
}

bool literal_eq(const ScalarLiteral& a, const ScalarLiteral& b) {
  CycloField F(literal_field_order(a, b));
  return a.resolve(F) == b.resolve(F);
}

void check_same_datum(const CartanDatum& a, const CartanDatum& b) {
  CHECK(a.invariant_factors == b.invariant_factors);
  CHECK(a.theta == b.theta);
  CHECK(a.cartan == b.cartan);
  CHECK(a.g_exponents == b.g_exponents);
  CHECK(a.chi_exponents == b.chi_exponents);
  REQUIRE(a.lambda.size() == b.lambda.size());
  for (const auto& [ij, v] : a.lambda) {
    auto it = b.lambda.find(ij);
    REQUIRE(it != b.lambda.end());
    CHECK(literal_eq(v, it->second));
  }
  REQUIRE(a.mu.size() == b.mu.size());
  for (const auto& [root, v] : a.mu) {
    auto it = b.mu.find(root);
    REQUIRE(it != b.mu.end());
    CHECK(literal_eq(v, it->second));
  }
}

}  // namespace

TEST_CASE("fixture files parse to the built-in data") {
  check_same_datum(datum_from_file(fixture("taft3.json")), taft3_datum());
  check_same_datum(datum_from_file(fixture("t9.json")), t9_datum());
  check_same_datum(datum_from_file(fixture("t9_root.json")),
                   t9_datum(ScalarLiteral::rational(Rational(1))));
  check_same_datum(datum_from_file(fixture("ql2.json")), ql2_datum());
  check_same_datum(datum_from_file(fixture("ql2_linked.json")),
                   ql2_datum(ScalarLiteral::rational(Rational(1))));
  check_same_datum(datum_from_file(fixture("a2f.json")), a2f_datum());
}

TEST_CASE("fixture files pass validation and wire deformation scalars") {
  auto ctx = build_or_throw(datum_from_file(fixture("ql2_linked.json")));
  CHECK(ctx->lambda_ij(0, 1) == ctx->field().one());
  // lambda_21 = -chi_1(g_2) * lambda_12 = -zeta_5
  CHECK(ctx->lambda_ji(0, 1) == -ctx->field().zeta());

  auto t9 = build_or_throw(datum_from_file(fixture("t9_root.json")));
  auto u = t9->u_alpha_simple(0);
  REQUIRE(u.size() == 2);
  CHECK(u.at(t9->group().identity()) == t9->field().one());
}

TEST_CASE("scalar literal forms") {
  CycloField F(5);
  CHECK(literal_from_json(nlohmann::json("2/3")).resolve(F) ==
        F.rational(frac(2, 3)));
  auto one_term = nlohmann::json{
      {"zeta_order", 5}, {"power", 2}, {"coeff", "-1/2"}};
  CHECK(literal_from_json(one_term).resolve(F) ==
        F.zeta_power(2) * F.rational(frac(-1, 2)));
  // missing coeff defaults to 1
  auto bare = nlohmann::json{{"zeta_order", 5}, {"power", 3}};
  CHECK(literal_from_json(bare).resolve(F) == F.zeta_power(3));
  // arrays are sums
  auto sum = nlohmann::json::array({"1/2", one_term});
  CHECK(literal_from_json(sum).resolve(F) ==
        F.rational(frac(1, 2)) + F.zeta_power(2) * F.rational(frac(-1, 2)));
}

TEST_CASE("json round trip preserves every fixture") {
  for (const CartanDatum& d :
       {taft3_datum(), t9_datum(ScalarLiteral::rational(Rational(1))),
        ql2_datum(ScalarLiteral::rational(frac(-2, 7))), a2f_datum()}) {
    check_same_datum(datum_from_json(datum_to_json(d)), d);
  }
  // a zeta-valued linking scalar survives the trip
  ScalarLiteral z;
  z.terms.push_back({5, 3, frac(2, 3)});
  CartanDatum d = ql2_datum(z);
  check_same_datum(datum_from_json(datum_to_json(d)), d);
}

TEST_CASE("malformed inputs raise descriptive errors") {
  using nlohmann::json;
  CHECK_THROWS_WITH_AS(datum_from_json(json::array()),
                       doctest::Contains("top level"), std::runtime_error);
  json no_theta = json::parse(R"({"group": {"invariant_factors": [3]}})");
  CHECK_THROWS_WITH_AS(datum_from_json(no_theta), doctest::Contains("theta"),
                       std::runtime_error);
  json bad_zero = json::parse(
      R"({"group": {"invariant_factors": [3]}, "theta": 1,
          "cartan": [[2]], "g": [[1]], "chi": [[1]],
          "lambda": [{"i": 0, "j": 1, "value": "1"}]})");
  CHECK_THROWS_WITH_AS(datum_from_json(bad_zero), doctest::Contains("1-based"),
                       std::runtime_error);
  CHECK_THROWS_AS(literal_from_json(nlohmann::json("1/0")),
                  std::invalid_argument);
  CHECK_THROWS_AS(datum_from_file(fixture("does_not_exist.json")),
                  std::runtime_error);
}
