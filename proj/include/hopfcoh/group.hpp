#pragma once

// Finite abelian groups presented by invariant factors (d_1, ..., d_m),
// each d_i >= 2.  Elements are flat indices 0..size-1 in mixed radix with
// the first factor most significant; index 0 is the identity.  Characters
// are exponent vectors c with chi(gen_i) = zeta_{d_i}^{c_i}; their values
// live in any cyclotomic field whose order is divisible by exp(Gamma).

#include <cstdint>
#include <string>
#include <vector>

#include "hopfcoh/scalar.hpp"

namespace hopfcoh {

using GroupIndex = uint32_t;
using Character = std::vector<long>;  // reduced mod d_i componentwise

class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<long> invariant_factors);

  const std::vector<long>& factors() const { return factors_; }
  long size() const { return size_; }
  long exponent() const { return exponent_; }  // lcm of the factors

  GroupIndex identity() const { return 0; }
  GroupIndex index_of(const std::vector<long>& coords) const;
  std::vector<long> coords_of(GroupIndex g) const;
  GroupIndex mul(GroupIndex a, GroupIndex b) const;
  GroupIndex inv(GroupIndex a) const;
  GroupIndex pow(GroupIndex a, long n) const;
  long element_order(GroupIndex a) const;

  Character reduce_character(const std::vector<long>& c) const;
  Character char_mul(const Character& a, const Character& b) const;
  Character char_inv(const Character& a) const;
  Character char_pow(const Character& a, long n) const;
  bool char_is_trivial(const Character& a) const;
  long char_order(const Character& a) const;

  // exponent m with chi(g) = zeta_e^m, for any e divisible by exponent()
  long pairing_exponent(const Character& chi, GroupIndex g, long e) const;
  Scalar char_eval(const CycloField& F, const Character& chi, GroupIndex g) const;
  // order of the root of unity chi(g)
  long pairing_order(const Character& chi, GroupIndex g) const;

  std::string element_to_string(GroupIndex g) const;

 private:
  std::vector<long> factors_;
  std::vector<long> strides_;
  long size_ = 1;
  long exponent_ = 1;
};

}  // namespace hopfcoh
