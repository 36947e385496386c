#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "hopfcoh/linalg.hpp"

using namespace hopfcoh;

namespace {

Scalar rnd_scalar(const CycloField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  std::uniform_int_distribution<long> pw(0, F.order() - 1);
  return F.zeta_power(pw(rng)) * F.rational(frac(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("dense rank and kernel over Q(zeta_3)") {
  CycloField F(3);
  // rows: (1, z, 0), (z^2, 1, 0) = z^2 * row0, (0, 0, 1)
  DenseMatrix m(3, 3, F);
  m.at(0, 0) = F.one();
  m.at(0, 1) = F.zeta();
  m.at(1, 0) = F.zeta_power(2);
  m.at(1, 1) = F.one();
  m.at(2, 2) = F.one();
  CHECK(m.rank() == 2);
  auto ker = m.kernel_basis();
  REQUIRE(ker.size() == 1);
  for (size_t i = 0; i < 3; ++i) {
    Scalar acc = F.zero();
    for (size_t j = 0; j < 3; ++j) acc = acc + m.at(i, j) * ker[0][j];
    CHECK(acc.is_zero());
  }
}

TEST_CASE("dense solve: consistent and inconsistent systems") {
  CycloField F(5);
  DenseMatrix m(2, 2, F);
  m.at(0, 0) = F.one();
  m.at(0, 1) = F.zeta();
  m.at(1, 0) = F.zeta();
  m.at(1, 1) = F.zeta_power(2);  // second row = zeta * first: rank 1
  std::vector<Scalar> b{F.zeta_power(3), F.zeta_power(4)};
  auto x = m.solve(b);
  REQUIRE(x.has_value());
  CHECK(m.at(0, 0) * (*x)[0] + m.at(0, 1) * (*x)[1] == b[0]);
  CHECK(m.at(1, 0) * (*x)[0] + m.at(1, 1) * (*x)[1] == b[1]);

  std::vector<Scalar> bad{F.one(), F.one()};  // not in the column span
  CHECK(!m.solve(bad).has_value());
}

TEST_CASE("dense inverse round-trip on random matrices") {
  CycloField F(9);
  std::mt19937_64 rng(20260815);
  int invertible_seen = 0;
  for (int trial = 0; trial < 8; ++trial) {
    DenseMatrix m(4, 4, F);
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 0; j < 4; ++j) m.at(i, j) = rnd_scalar(F, rng);
    auto inv = m.inverse();
    if (!inv.has_value()) continue;
    ++invertible_seen;
    for (size_t i = 0; i < 4; ++i) {
      for (size_t j = 0; j < 4; ++j) {
        Scalar acc = F.zero();
        for (size_t k = 0; k < 4; ++k) acc = acc + m.at(i, k) * inv->at(k, j);
        if (i == j) {
          CHECK(acc == F.one());
        } else {
          CHECK(acc.is_zero());
        }
      }
    }
  }
  CHECK(invertible_seen >= 6);  // random matrices are almost surely invertible
  DenseMatrix sing(2, 2, F);
  sing.at(0, 0) = F.one();
  sing.at(1, 0) = F.one();
  CHECK(!sing.inverse().has_value());
}

TEST_CASE("sparse echelon rank agrees with dense on random sparse matrices") {
  CycloField F(7);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int trial = 0; trial < 6; ++trial) {
    const size_t R = 12, C = 9;
    DenseMatrix m(R, C, F);
    SparseEchelon ech;
    for (size_t i = 0; i < R; ++i) {
      SparseVec row;
      for (size_t j = 0; j < C; ++j) {
        if (coin(rng) == 0) {
          Scalar s = rnd_scalar(F, rng);
          m.at(i, j) = s;
          if (!s.is_zero()) row.emplace(static_cast<uint32_t>(j), s);
        }
      }
      ech.insert(std::move(row));
    }
    CHECK(ech.rank() == m.rank());
  }
}

TEST_CASE("sparse echelon combination tracking expresses members exactly") {
  CycloField F(5);
  std::mt19937_64 rng(99);
  std::vector<SparseVec> originals;
  SparseEchelon ech(true);
  for (int i = 0; i < 10; ++i) {
    SparseVec row;
    std::uniform_int_distribution<int> col(0, 7);
    for (int k = 0; k < 3; ++k) {
      uint32_t c = static_cast<uint32_t>(col(rng));
      Scalar s = rnd_scalar(F, rng);
      if (!s.is_zero()) {
        auto it = row.find(c);
        if (it == row.end())
          row.emplace(c, s);
        else
          it->second = it->second + s;
      }
    }
    originals.push_back(row);
    ech.insert(row);
  }
  // A fresh random combination of the originals must reduce to zero with a
  // combination that reproduces it exactly.
  SparseVec target;
  std::vector<Scalar> coeffs;
  for (size_t k = 0; k < originals.size(); ++k) {
    Scalar c = rnd_scalar(F, rng);
    coeffs.push_back(c);
    sparse_add(target, originals[k], c);
  }
  auto [residual, comb] = ech.reduce(target);
  CHECK(residual.empty());
  SparseVec rebuilt;
  for (const auto& [tag, c] : comb) sparse_add(rebuilt, originals[tag], c);
  CHECK(rebuilt == target);

  // Something outside the span must leave a residual.
  SparseVec outside;
  outside.emplace(100u, F.one());
  auto [res2, comb2] = ech.reduce(outside);
  CHECK(!res2.empty());
}

TEST_CASE("sparse reduce keeps residual clear of pivot columns") {
  CycloField F(3);
  SparseEchelon ech;
  SparseVec r1{{2u, F.one()}, {5u, F.zeta()}};
  SparseVec r2{{4u, F.one()}, {5u, F.one()}};
  ech.insert(r1);
  ech.insert(r2);
  // v leads at a pivotless column but has reducible tail entries.
  SparseVec v{{1u, F.one()}, {2u, F.zeta()}, {4u, F.one()}};
  auto [residual, comb] = ech.reduce(v);
  CHECK(!residual.empty());
  CHECK(residual.count(2u) == 0);
  CHECK(residual.count(4u) == 0);
  CHECK(residual.count(1u) == 1);
}
