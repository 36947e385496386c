#include "hopfcoh/scalar.hpp"

#include <numeric>
#include <stdexcept>

namespace hopfcoh {

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void throw_if_mixed(const CycloField* a, const CycloField* b) {
  if (a && b && a != b) throw std::logic_error("scalars from different fields");
}

}  // namespace

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string den = s.substr(slash + 1);
    if (den.empty() || den == "0" || den == "-0")
      throw std::invalid_argument("zero denominator in rational: " + s);
  }
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.empty()) throw std::invalid_argument("polynomial division by zero");
  Poly rem = a, quot;
  trim(rem);
  if (rem.size() >= b.size()) quot.assign(rem.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (rem.size() >= b.size()) {
    const size_t shift = rem.size() - b.size();
    Rational t = rem.back() / lead;
    quot[shift] = t;
    for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= t * b[i];
    trim(rem);  // at least the top coefficient cancels
  }
  trim(quot);
  return {quot, rem};
}

Poly cyclotomic_polynomial(int e) {
  if (e < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
  Poly num(e + 1, Rational(0));
  num[0] = -1;
  num[e] = 1;
  for (int d = 1; d < e; ++d) {
    if (e % d != 0) continue;
    auto [q, r] = poly_divmod(num, cyclotomic_polynomial(d));
    if (!r.empty()) throw std::logic_error("cyclotomic division not exact");
    num = std::move(q);
  }
  return num;
}

CycloField::CycloField(int e) : e_(e) {
  phi_poly_ = cyclotomic_polynomial(e);
  phi_ = static_cast<int>(phi_poly_.size()) - 1;
  // x^phi == -(low-degree part of Phi_e); iterate to fill x^(phi+k).
  std::vector<Rational> xphi(phi_, Rational(0));
  for (int i = 0; i < phi_; ++i) xphi[i] = -phi_poly_[i];
  red_.reserve(phi_ > 0 ? phi_ - 1 : 0);
  std::vector<Rational> cur = xphi;
  for (int k = 0; k + 1 < phi_; ++k) {
    red_.push_back(cur);
    // multiply by x modulo Phi_e
    std::vector<Rational> nxt(phi_, Rational(0));
    for (int i = 0; i + 1 < phi_; ++i) nxt[i + 1] = cur[i];
    const Rational top = cur[phi_ - 1];
    if (top != 0)
      for (int i = 0; i < phi_; ++i) nxt[i] += top * xphi[i];
    cur = std::move(nxt);
  }
  zeta_pow_.reserve(e_);
  std::vector<Rational> zj(phi_, Rational(0));
  zj[0] = 1;
  for (int j = 0; j < e_; ++j) {
    zeta_pow_.push_back(zj);
    std::vector<Rational> nxt(phi_, Rational(0));
    for (int i = 0; i + 1 < phi_; ++i) nxt[i + 1] = zj[i];
    const Rational top = zj[phi_ - 1];
    if (top != 0)
      for (int i = 0; i < phi_; ++i) nxt[i] += top * xphi[i];
    zj = std::move(nxt);
  }
}

std::vector<Rational> CycloField::reduce(std::vector<Rational> v) const {
  for (size_t k = v.size(); k-- > static_cast<size_t>(phi_);) {
    if (v[k] == 0) continue;
    const auto& row = red_[k - phi_];
    for (int i = 0; i < phi_; ++i) v[i] += v[k] * row[i];
    v[k] = 0;
  }
  v.resize(phi_);
  return v;
}

Scalar CycloField::make(std::vector<Rational> coeffs) const {
  Scalar s;
  s.field_ = this;
  s.c_ = std::move(coeffs);
  return s;
}

Scalar CycloField::zero() const { return make(std::vector<Rational>(phi_, Rational(0))); }

Scalar CycloField::rational(const Rational& q) const {
  std::vector<Rational> c(phi_, Rational(0));
  c[0] = q;
  c[0].canonicalize();  // defends against mpq_class(num, den) callers
  return make(std::move(c));
}

Scalar CycloField::zeta_power(long j) const {
  long jm = j % e_;
  if (jm < 0) jm += e_;
  return make(zeta_pow_[jm]);
}

Scalar CycloField::root_of_unity(long n, long j) const {
  if (n < 1 || e_ % n != 0)
    throw std::invalid_argument("root order does not divide field order");
  long jm = j % n;
  if (jm < 0) jm += n;
  return zeta_power((e_ / n) * jm);
}

long CycloField::root_order(const Scalar& s) const {
  for (int j = 0; j < e_; ++j)
    if (s.c_ == zeta_pow_[j]) return e_ / std::gcd(static_cast<long>(e_), static_cast<long>(j));
  return 0;
}

bool Scalar::is_zero() const {
  if (!field_) return true;
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  if (!field_) return true;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Scalar::rational_part() const {
  if (!is_rational()) throw std::logic_error("scalar is not rational");
  return field_ ? c_[0] : Rational(0);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  throw_if_mixed(field_, o.field_);
  if (!o.field_) return *this;
  if (!field_) return *this = o;
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  throw_if_mixed(field_, o.field_);
  if (!o.field_) return *this;
  if (!field_) return *this = -o;
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  throw_if_mixed(field_, o.field_);
  if (!field_) return *this;          // zero stays zero
  if (!o.field_) return *this = Scalar();
  const int phi = field_->degree();
  std::vector<Rational> buf(2 * phi - 1, Rational(0));
  for (int i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < phi; ++j)
      if (o.c_[j] != 0) buf[i + j] += c_[i] * o.c_[j];
  }
  c_ = field_->reduce(std::move(buf));
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  throw_if_mixed(field_, o.field_);
  if (!field_ || !o.field_) return is_zero() && o.is_zero();
  return c_ == o.c_;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  // extended Euclid in Q[x]: find t with t * this == gcd (a nonzero constant)
  Poly r0 = field_->phi_poly_, r1 = c_;
  trim(r1);
  Poly t0, t1 = {Rational(1)};
  while (!r1.empty()) {
    auto [q, rem] = poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly tq = poly_mul(q, t1);
    Poly tn = t0;
    if (tn.size() < tq.size()) tn.resize(tq.size(), Rational(0));
    for (size_t i = 0; i < tq.size(); ++i) tn[i] -= tq[i];
    trim(tn);
    t0 = std::move(t1);
    t1 = std::move(tn);
  }
  if (r0.size() != 1)
    throw std::logic_error("cyclotomic polynomial not coprime to scalar");
  auto [q, rem] = poly_divmod(t0, field_->phi_poly_);
  (void)q;
  rem.resize(field_->degree(), Rational(0));
  for (auto& x : rem) x /= r0[0];
  Scalar out;
  out.field_ = field_;
  out.c_ = std::move(rem);
  return out;
}

Scalar Scalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  if (!field_) {
    if (n == 0) throw std::logic_error("0^0 of field-less zero");
    return Scalar();
  }
  Scalar base = *this, acc = field_->one();
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const bool neg = c_[i] < 0;
    Rational a = neg ? Rational(-c_[i]) : c_[i];
    std::string term;
    if (i == 0) {
      term = a.get_str();
    } else {
      std::string zpart = (i == 1) ? "z" : "z^" + std::to_string(i);
      term = (a == 1) ? zpart : a.get_str() + "*" + zpart;
    }
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace hopfcoh
