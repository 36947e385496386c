#include "hopfcoh/group.hpp"

#include <numeric>
#include <stdexcept>

namespace hopfcoh {

namespace {
long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

AbelianGroup::AbelianGroup(std::vector<long> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  for (long d : factors_) {
    if (d < 2) throw std::invalid_argument("invariant factors must be >= 2");
    size_ *= d;
    exponent_ = std::lcm(exponent_, d);
  }
  strides_.assign(factors_.size(), 1);
  for (size_t i = factors_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * factors_[i];
}

GroupIndex AbelianGroup::index_of(const std::vector<long>& coords) const {
  if (coords.size() != factors_.size())
    throw std::invalid_argument("wrong coordinate length for group element");
  long idx = 0;
  for (size_t i = 0; i < coords.size(); ++i)
    idx += mod(coords[i], factors_[i]) * strides_[i];
  return static_cast<GroupIndex>(idx);
}

std::vector<long> AbelianGroup::coords_of(GroupIndex g) const {
  std::vector<long> c(factors_.size());
  long rest = g;
  for (size_t i = 0; i < factors_.size(); ++i) {
    c[i] = rest / strides_[i];
    rest %= strides_[i];
  }
  return c;
}

GroupIndex AbelianGroup::mul(GroupIndex a, GroupIndex b) const {
  auto ca = coords_of(a), cb = coords_of(b);
  for (size_t i = 0; i < ca.size(); ++i) ca[i] = mod(ca[i] + cb[i], factors_[i]);
  return index_of(ca);
}

GroupIndex AbelianGroup::inv(GroupIndex a) const {
  auto c = coords_of(a);
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod(-c[i], factors_[i]);
  return index_of(c);
}

GroupIndex AbelianGroup::pow(GroupIndex a, long n) const {
  auto c = coords_of(a);
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = mod(c[i] % factors_[i] * mod(n, factors_[i]), factors_[i]);
  return index_of(c);
}

long AbelianGroup::element_order(GroupIndex a) const {
  auto c = coords_of(a);
  long ord = 1;
  for (size_t i = 0; i < c.size(); ++i)
    ord = std::lcm(ord, factors_[i] / std::gcd(factors_[i], c[i]));
  return ord;
}

Character AbelianGroup::reduce_character(const std::vector<long>& c) const {
  if (c.size() != factors_.size())
    throw std::invalid_argument("wrong coordinate length for character");
  Character r(c.size());
  for (size_t i = 0; i < c.size(); ++i) r[i] = mod(c[i], factors_[i]);
  return r;
}

Character AbelianGroup::char_mul(const Character& a, const Character& b) const {
  Character r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], factors_[i]);
  return r;
}

Character AbelianGroup::char_inv(const Character& a) const {
  Character r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(-a[i], factors_[i]);
  return r;
}

Character AbelianGroup::char_pow(const Character& a, long n) const {
  Character r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = mod(a[i] * mod(n, factors_[i]), factors_[i]);
  return r;
}

bool AbelianGroup::char_is_trivial(const Character& a) const {
  for (long x : a)
    if (x != 0) return false;
  return true;
}

long AbelianGroup::char_order(const Character& a) const {
  long ord = 1;
  for (size_t i = 0; i < a.size(); ++i)
    ord = std::lcm(ord, factors_[i] / std::gcd(factors_[i], a[i]));
  return ord;
}

long AbelianGroup::pairing_exponent(const Character& chi, GroupIndex g, long e) const {
  if (e % exponent_ != 0)
    throw std::invalid_argument("field order not divisible by group exponent");
  auto k = coords_of(g);
  long m = 0;
  for (size_t i = 0; i < k.size(); ++i)
    m = mod(m + (e / factors_[i]) % e * (chi[i] % e) % e * (k[i] % e), e);
  return m;
}

Scalar AbelianGroup::char_eval(const CycloField& F, const Character& chi,
                               GroupIndex g) const {
  return F.zeta_power(pairing_exponent(chi, g, F.order()));
}

long AbelianGroup::pairing_order(const Character& chi, GroupIndex g) const {
  const long e = exponent_;
  const long m = pairing_exponent(chi, g, e);
  return e / std::gcd(e, m);
}

std::string AbelianGroup::element_to_string(GroupIndex g) const {
  auto c = coords_of(g);
  std::string out = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c[i]);
  }
  return out + ")";
}

}  // namespace hopfcoh
