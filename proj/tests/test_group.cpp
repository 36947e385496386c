#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfcoh/group.hpp"

using namespace hopfcoh;

TEST_CASE("cyclic group arithmetic") {
  AbelianGroup G({9});
  CHECK(G.size() == 9);
  CHECK(G.exponent() == 9);
  GroupIndex g3 = G.index_of({3}), g6 = G.index_of({6});
  CHECK(G.mul(g3, g6) == G.identity());
  CHECK(G.inv(G.index_of({2})) == G.index_of({7}));
  CHECK(G.pow(G.index_of({2}), 5) == G.index_of({10 % 9}));
  CHECK(G.element_order(g3) == 3);
  CHECK(G.element_order(G.identity()) == 1);
}

TEST_CASE("product group indexing round-trips") {
  AbelianGroup G({3, 9});
  CHECK(G.size() == 27);
  CHECK(G.exponent() == 9);
  for (GroupIndex i = 0; i < 27; ++i) CHECK(G.index_of(G.coords_of(i)) == i);
  // first factor most significant
  CHECK(G.index_of({1, 0}) == 9);
  CHECK(G.index_of({0, 1}) == 1);
  CHECK(G.mul(G.index_of({2, 8}), G.index_of({1, 1})) == G.index_of({0, 0}));
}

TEST_CASE("characters and pairings") {
  AbelianGroup G({9});
  CycloField F(9);
  Character chi = G.reduce_character({3});  // chi(g) = zeta_9^3
  CHECK(G.char_eval(F, chi, G.index_of({1})) == F.zeta_power(3));
  CHECK(G.char_eval(F, chi, G.index_of({2})) == F.zeta_power(6));
  CHECK(G.char_order(chi) == 3);
  CHECK(G.pairing_order(chi, G.index_of({1})) == 3);
  CHECK(G.pairing_order(chi, G.index_of({3})) == 1);

  // multiplicativity chi(ab) = chi(a)chi(b) over all pairs
  for (GroupIndex a = 0; a < 9; ++a)
    for (GroupIndex b = 0; b < 9; ++b)
      CHECK(G.char_eval(F, chi, G.mul(a, b)) ==
            G.char_eval(F, chi, a) * G.char_eval(F, chi, b));

  Character chi2 = G.char_pow(chi, 2);
  CHECK(G.char_mul(chi, chi) == chi2);
  CHECK(G.char_is_trivial(G.char_mul(chi, G.char_inv(chi))));
}

TEST_CASE("pairing in a product group inside a larger field") {
  AbelianGroup G({7, 7});
  CycloField F(7);
  Character chi = G.reduce_character({1, 6});  // (q, q^-1)
  GroupIndex h2 = G.index_of({0, 1});
  CHECK(G.char_eval(F, chi, h2) == F.zeta_power(6));
  CHECK(G.pairing_order(chi, h2) == 7);
  // values of any character to the exponent power are 1
  for (GroupIndex a = 0; a < 49; ++a)
    CHECK(G.char_eval(F, chi, a).pow(G.exponent()) == F.one());
}
