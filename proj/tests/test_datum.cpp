#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfcoh/fixtures.hpp"

using namespace hopfcoh;

static bool has_error_containing(const ValidationReport& r, const std::string& s) {
  for (const auto& e : r.errors)
    if (e.find(s) != std::string::npos) return true;
  return false;
}

TEST_CASE("taft3 validates with a single root of order 3") {
  ValidationReport rep;
  auto ctx = DatumContext::build(taft3_datum(), rep);
  REQUIRE(ctx);
  CHECK(ctx->roots().size() == 1);
  const Root& a = ctx->roots()[0];
  CHECK(a.simple);
  CHECK(a.N == 3);
  CHECK(a.height == 1);
  CHECK(a.g == ctx->group().index_of({1}));
  CHECK(!rep.warnings.empty());  // |Gamma| = 3 trips the small-prime advisories
}

TEST_CASE("t9 validates; root-vector scalar accepted") {
  ValidationReport rep;
  auto ctx = DatumContext::build(t9_datum(ScalarLiteral::rational(Rational(1))), rep);
  REQUIRE(ctx);
  CHECK(ctx->roots()[0].N == 3);
  CHECK(!ctx->roots()[0].mu.is_zero());
  auto u = ctx->u_alpha_simple(0);
  REQUIRE(u.size() == 2);
  CHECK(u[ctx->group().identity()] == ctx->field().one());
  CHECK(u[ctx->group().index_of({3})] == -ctx->field().one());
}

TEST_CASE("taft3 rejects mu since g^3 = 1") {
  auto d = taft3_datum();
  d.mu[{1}] = ScalarLiteral::rational(Rational(1));
  ValidationReport rep;
  CHECK(DatumContext::build(d, rep) == nullptr);
  CHECK(has_error_containing(rep, "g_alpha^{N_alpha} = 1"));
}

TEST_CASE("ql2 validates; derived linking scalar") {
  ValidationReport rep;
  auto ctx = DatumContext::build(ql2_datum(ScalarLiteral::rational(Rational(1))), rep);
  REQUIRE(ctx);
  CHECK(ctx->roots().size() == 2);
  CHECK(ctx->roots()[0].N == 5);
  CHECK(ctx->roots()[1].N == 5);
  CHECK(!ctx->connected(0, 1));
  const CycloField& F = ctx->field();
  CHECK(F.order() == 5);
  CHECK(ctx->lambda_ij(0, 1) == F.one());
  // lambda_21 = -chi_1(g_2) lambda_12 = -zeta_5
  CHECK(ctx->lambda_ji(0, 1) == -F.zeta());
  // braiding values
  CHECK(ctx->braiding(0, 1) == F.zeta_power(4));  // chi_2(g_1)
  CHECK(ctx->braiding(1, 0) == F.zeta());         // chi_1(g_2)
}

TEST_CASE("ql2 with chi_2 = zeta^3 fails the compatibility condition") {
  auto d = ql2_datum();
  d.chi_exponents[1] = {3};
  ValidationReport rep;
  CHECK(DatumContext::build(d, rep) == nullptr);
  CHECK(has_error_containing(rep, "Cartan compatibility fails at (1,2)"));
}

TEST_CASE("a2f validates with convex root order") {
  ValidationReport rep;
  auto ctx = DatumContext::build(a2f_datum(), rep);
  REQUIRE(ctx);
  REQUIRE(ctx->roots().size() == 3);
  CHECK(ctx->roots()[0].coeffs == std::vector<int>{1, 0});
  CHECK(ctx->roots()[1].coeffs == std::vector<int>{1, 1});
  CHECK(ctx->roots()[2].coeffs == std::vector<int>{0, 1});
  CHECK(ctx->roots()[1].height == 2);
  for (const auto& r : ctx->roots()) CHECK(r.N == 7);
  const auto& G = ctx->group();
  CHECK(ctx->roots()[1].g == G.index_of({1, 1}));
  CHECK(ctx->connected(0, 1));
  // middle root character is chi_1 chi_2
  CHECK(ctx->roots()[1].chi == G.char_mul(ctx->chi(0), ctx->chi(1)));
}

TEST_CASE("linking inside a component is rejected") {
  auto d = a2f_datum();
  d.lambda[{0, 1}] = ScalarLiteral::rational(Rational(1));
  ValidationReport rep;
  CHECK(DatumContext::build(d, rep) == nullptr);
  CHECK(has_error_containing(rep, "links vertices inside one component"));
}

TEST_CASE("linking requires chi_i chi_j trivial") {
  CartanDatum d;
  d.invariant_factors = {5, 5};
  d.theta = 2;
  d.cartan = {{2, 0}, {0, 2}};
  d.g_exponents = {{1, 0}, {0, 1}};
  d.chi_exponents = {{1, 0}, {0, 1}};
  d.lambda[{0, 1}] = ScalarLiteral::rational(Rational(1));
  ValidationReport rep;
  CHECK(DatumContext::build(d, rep) == nullptr);
  CHECK(has_error_containing(rep, "not the trivial character"));
}

TEST_CASE("character order conditions") {
  CartanDatum even;
  even.invariant_factors = {4};
  even.theta = 1;
  even.cartan = {{2}};
  even.g_exponents = {{1}};
  even.chi_exponents = {{1}};
  ValidationReport rep;
  CHECK(DatumContext::build(even, rep) == nullptr);
  CHECK(has_error_containing(rep, "must be odd"));

  CartanDatum triv = taft3_datum();
  triv.chi_exponents = {{0}};
  CHECK(DatumContext::build(triv, rep) == nullptr);
  CHECK(has_error_containing(rep, "must differ from 1"));
}

TEST_CASE("unsupported diagrams are rejected") {
  CartanDatum b2 = a2f_datum();
  b2.cartan = {{2, -2}, {-1, 2}};
  ValidationReport rep;
  CHECK(DatumContext::build(b2, rep) == nullptr);
  CHECK(has_error_containing(rep, "below -1"));

  CartanDatum asym = a2f_datum();
  asym.cartan = {{2, 0}, {-1, 2}};
  CHECK(DatumContext::build(asym, rep) == nullptr);
  CHECK(has_error_containing(rep, "vanish together"));

  CartanDatum a3;
  a3.invariant_factors = {7, 7, 7};
  a3.theta = 3;
  a3.cartan = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  a3.g_exponents = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  a3.chi_exponents = {{1, 6, 0}, {0, 1, 6}, {0, 0, 1}};
  CHECK(DatumContext::build(a3, rep) == nullptr);
  CHECK(has_error_containing(rep, "component of size 3"));
}

TEST_CASE("mu on a non-simple root is rejected") {
  auto d = a2f_datum();
  d.mu[{1, 1}] = ScalarLiteral::rational(Rational(1));
  ValidationReport rep;
  CHECK(DatumContext::build(d, rep) == nullptr);
  CHECK(has_error_containing(rep, "non-simple root"));
}

TEST_CASE("mu on both simple roots of an A2 component is rejected") {
  CartanDatum d;
  d.invariant_factors = {49, 49};
  d.theta = 2;
  d.cartan = {{2, -1}, {-1, 2}};
  d.g_exponents = {{1, 0}, {0, 1}};
  d.chi_exponents = {{7, 0}, {42, 7}};
  ValidationReport rep;
  REQUIRE(DatumContext::build(d, rep) != nullptr);  // base datum is valid
  d.mu[{1, 0}] = ScalarLiteral::rational(Rational(1));
  REQUIRE(DatumContext::build(d, rep) != nullptr);  // single mu is fine
  d.mu[{0, 1}] = ScalarLiteral::rational(Rational(1));
  CHECK(DatumContext::build(d, rep) == nullptr);
  CHECK(has_error_containing(rep, "both simple roots"));
}

TEST_CASE("trivial-product characters only occur on disconnected pairs") {
  for (auto d : {taft3_datum(), t9_datum(), ql2_datum(), a2f_datum()}) {
    auto ctx = build_or_throw(d);
    const auto& G = ctx->group();
    for (int i = 0; i < ctx->theta(); ++i)
      for (int j = i + 1; j < ctx->theta(); ++j)
        if (G.char_is_trivial(G.char_mul(ctx->chi(i), ctx->chi(j))))
          CHECK(!ctx->connected(i, j));
  }
}

TEST_CASE("scalar literals resolve with mixed zeta orders") {
  ScalarLiteral lit;
  lit.terms.push_back({5, 1, Rational(-1)});  // -zeta_5
  auto d = ql2_datum(lit);
  auto ctx = build_or_throw(d);
  CHECK(ctx->field().order() == 5);
  CHECK(ctx->lambda_ij(0, 1) == -ctx->field().zeta());

  // a literal of larger order forces a bigger field: lcm(9, 3) = 9
  ScalarLiteral mu;
  mu.terms.push_back({9, 3, Rational(2)});  // 2 zeta_9^3
  auto t = t9_datum(mu);
  auto ctx9 = build_or_throw(t);
  CHECK(ctx9->field().order() == 9);
  CHECK(ctx9->roots()[0].mu == ctx9->field().rational(Rational(2)) *
                                   ctx9->field().zeta_power(3));
}
