#pragma once

// Exact scalars: elements of the cyclotomic field Q(zeta_e), represented as
// polynomials in zeta of degree < phi(e) over GMP rationals, reduced modulo
// the e-th cyclotomic polynomial.  All arithmetic is exact; equality is
// literal equality of reduced coordinate vectors.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hopfcoh {

using Rational = mpq_class;

// Accepts "p", "-p", "p/q" with arbitrary-precision integers.
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& q);

// mpq_class(num, den) does not canonicalize; GMP arithmetic requires
// canonical operands, so always build fractions through this helper.
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Dense polynomials over Q; coefficient of x^i at index i.  Trailing zero
// coefficients are trimmed so that degree == size()-1 for nonzero polys.
using Poly = std::vector<Rational>;

Poly poly_mul(const Poly& a, const Poly& b);
// Division with remainder; requires b nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
// Monic polynomial whose roots are the primitive e-th roots of unity.
Poly cyclotomic_polynomial(int e);

class CycloField;

class Scalar {
 public:
  Scalar() : field_(nullptr) {}  // the field-less zero

  const CycloField* field() const { return field_; }
  bool is_zero() const;
  bool is_rational() const;   // lies in Q (zero included)
  Rational rational_part() const;  // requires is_rational()

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a *= b.inverse(); }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;     // requires nonzero
  Scalar pow(long n) const;   // negative n allowed for nonzero scalars

  // Deterministic text form, e.g. "0", "5/3", "z", "1 - 2*z^3".
  std::string to_string() const;

 private:
  friend class CycloField;
  const CycloField* field_;
  std::vector<Rational> c_;  // length phi(e) when field_ != nullptr
};

class CycloField {
 public:
  explicit CycloField(int e);
  CycloField(const CycloField&) = delete;
  CycloField& operator=(const CycloField&) = delete;

  int order() const { return e_; }    // e
  int degree() const { return phi_; } // phi(e), dimension over Q

  Scalar zero() const;
  Scalar one() const { return rational(1); }
  Scalar rational(const Rational& q) const;
  Scalar zeta() const { return zeta_power(1); }
  Scalar zeta_power(long j) const;          // zeta_e^j, any integer j
  Scalar root_of_unity(long n, long j) const;  // zeta_n^j; requires n | e

  // Smallest m >= 1 with s^m == 1, or 0 if s is not a root of unity.
  long root_order(const Scalar& s) const;

 private:
  friend class Scalar;
  int e_;
  int phi_;
  Poly phi_poly_;                           // cyclotomic polynomial
  std::vector<std::vector<Rational>> red_;  // x^(phi+k) mod Phi_e, k=0..phi-2
  std::vector<std::vector<Rational>> zeta_pow_;  // zeta^j, j=0..e-1

  std::vector<Rational> reduce(std::vector<Rational> v) const;  // len 2phi-1
  Scalar make(std::vector<Rational> coeffs) const;
};

}  // namespace hopfcoh
