#include "hopfcoh/dual.hpp"

#include <mutex>

namespace hopfcoh {

DualAlgebra::DualAlgebra(const HopfAlgebra& H)
    : H_(&H), basis_(H.engine().basis()) {}

Element DualAlgebra::unit() const {
  // epsilon_B as a functional: 1 on every group element, 0 in positive degree
  Element out;
  const size_t p = H_->engine().num_roots();
  for (long g = 0; g < H_->group().size(); ++g) {
    add_term(out, BasisWord{std::vector<uint16_t>(p, 0),
                            static_cast<GroupIndex>(g)},
             field().one());
  }
  return out;
}

Scalar DualAlgebra::counit(const Element& x) const {
  // evaluation at 1_B
  const BasisWord unit_word{
      std::vector<uint16_t>(H_->engine().num_roots(), 0), 0};
  auto it = x.find(unit_word);
  return it == x.end() ? field().zero() : it->second;
}

Element DualAlgebra::multiply(const Element& x, const Element& y) const {
  Element out;
  for (const auto& c : basis_) {
    Tensor d = H_->comultiply(word_element(c, field().one()));
    Scalar s = field().zero();
    for (const auto& [tw, dc] : d) {
      auto ix = x.find(tw[0]);
      if (ix == x.end()) continue;
      auto iy = y.find(tw[1]);
      if (iy == y.end()) continue;
      s += dc * ix->second * iy->second;
    }
    if (!s.is_zero()) add_term(out, c, s);
  }
  return out;
}

void DualAlgebra::ensure_delta_x() const {
  {
    std::shared_lock lock(mutex_);
    if (delta_x_built_) return;
  }
  std::map<BasisWord, std::map<std::pair<BasisWord, BasisWord>, Scalar>> table;
  for (const auto& a : basis_) {
    for (const auto& b : basis_) {
      // Delta_X(y)(a (x) b) = y(b a): transpose of the opposite product
      Element p = H_->engine().multiply(word_element(b, field().one()),
                                        word_element(a, field().one()));
      for (const auto& [c, pc] : p) {
        table[c][{a, b}] = pc;
      }
    }
  }
  std::unique_lock lock(mutex_);
  if (!delta_x_built_) {
    delta_x_ = std::move(table);
    delta_x_built_ = true;
  }
}

std::map<std::pair<BasisWord, BasisWord>, Scalar> DualAlgebra::comultiply(
    const Element& x) const {
  ensure_delta_x();
  std::shared_lock lock(mutex_);
  std::map<std::pair<BasisWord, BasisWord>, Scalar> out;
  for (const auto& [c, xc] : x) {
    auto it = delta_x_.find(c);
    if (it == delta_x_.end()) continue;
    for (const auto& [ab, dc] : it->second) {
      auto [jt, inserted] = out.emplace(ab, dc * xc);
      if (!inserted) {
        jt->second += dc * xc;
        if (jt->second.is_zero()) out.erase(jt);
      }
    }
  }
  return out;
}

Element DualAlgebra::antipode(const Element& x) const {
  // S_X = (S_B^{-1})^*: coefficient at delta_v is x(S^{-1}(v))
  Element out;
  for (const auto& v : basis_) {
    Element sv = H_->antipode_inverse(word_element(v, field().one()));
    Scalar s = field().zero();
    for (const auto& [w, c] : sv) {
      auto it = x.find(w);
      if (it != x.end()) s += c * it->second;
    }
    if (!s.is_zero()) add_term(out, v, s);
  }
  return out;
}

Scalar DualAlgebra::pairing(const Element& x, const Element& a) const {
  Scalar s = field().zero();
  for (const auto& [w, c] : a) {
    auto it = x.find(w);
    if (it != x.end()) s += c * it->second;
  }
  return s;
}

Element DualAlgebra::act_left_on_dual(const Element& a,
                                      const Element& x) const {
  // <a -> x, v> = <x, v a>
  Element out;
  for (const auto& v : basis_) {
    Scalar s = pairing(x, H_->engine().multiply(word_element(v, field().one()), a));
    if (!s.is_zero()) add_term(out, v, s);
  }
  return out;
}

Element DualAlgebra::act_right_on_dual(const Element& x,
                                       const Element& a) const {
  // <x^a, v> = <x, a v>
  Element out;
  for (const auto& v : basis_) {
    Scalar s = pairing(x, H_->engine().multiply(a, word_element(v, field().one())));
    if (!s.is_zero()) add_term(out, v, s);
  }
  return out;
}

Element DualAlgebra::act_left_on_base(const Element& x,
                                      const Element& a) const {
  // x -> a = <x, a_2> a_1
  Element out;
  for (const auto& [tw, c] : H_->comultiply(a)) {
    auto it = x.find(tw[1]);
    if (it != x.end()) add_term(out, tw[0], c * it->second);
  }
  return out;
}

Element DualAlgebra::act_right_on_base(const Element& a,
                                       const Element& x) const {
  // a^x = <x, a_1> a_2
  Element out;
  for (const auto& [tw, c] : H_->comultiply(a)) {
    auto it = x.find(tw[0]);
    if (it != x.end()) add_term(out, tw[1], c * it->second);
  }
  return out;
}

void double_add_term(DoubleElement& acc, const DoubleWord& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

DrinfeldDouble::DrinfeldDouble(const DualAlgebra& X) : X_(&X) {}

size_t DrinfeldDouble::dim() const { return X_->dim() * X_->dim(); }

std::vector<DoubleWord> DrinfeldDouble::basis() const {
  std::vector<DoubleWord> out;
  out.reserve(dim());
  for (const auto& d : X_->base_basis()) {
    for (const auto& b : X_->base_basis()) out.emplace_back(d, b);
  }
  return out;
}

long DrinfeldDouble::degree(const DoubleWord& w) const {
  return base().engine().word_degree(w.second) + X_->degree(w.first);
}

DoubleElement DrinfeldDouble::unit() const {
  const BasisWord unit_word{
      std::vector<uint16_t>(base().engine().num_roots(), 0), 0};
  DoubleElement out;
  for (const auto& [d, c] : X_->unit()) double_add_term(out, {d, unit_word}, c);
  return out;
}

Scalar DrinfeldDouble::counit(const DoubleElement& u) const {
  Scalar s = field().zero();
  for (const auto& [w, c] : u) {
    Scalar ex = X_->counit(word_element(w.first, field().one()));
    if (ex.is_zero()) continue;
    s += c * ex * base().counit(word_element(w.second, field().one()));
  }
  return s;
}

const std::map<std::pair<BasisWord, BasisWord>, Scalar>&
DrinfeldDouble::flip_words(const BasisWord& a, const BasisWord& e) const {
  const std::pair<BasisWord, BasisWord> key{a, e};
  {
    std::shared_lock lock(mutex_);
    auto it = flip_memo_.find(key);
    if (it != flip_memo_.end()) return it->second;
  }
  const HopfAlgebra& H = base();
  std::map<std::pair<BasisWord, BasisWord>, Scalar> out;
  Tensor d3 = H.iterated_comultiply(word_element(a, field().one()), 3);
  for (const auto& [tw, c] : d3) {
    // middle functional v |-> delta_e(S^{-1}(a_3) v a_1)
    Element left = H.antipode_inverse(word_element(tw[2], field().one()));
    for (const auto& v : X_->base_basis()) {
      Element prod = H.engine().multiply(
          H.engine().multiply(left, word_element(v, field().one())),
          word_element(tw[0], field().one()));
      auto it = prod.find(e);
      if (it == prod.end()) continue;
      const Scalar coeff = c * it->second;
      auto [jt, inserted] = out.emplace(std::make_pair(v, tw[1]), coeff);
      if (!inserted) {
        jt->second += coeff;
        if (jt->second.is_zero()) out.erase(jt);
      }
    }
  }
  std::unique_lock lock(mutex_);
  return flip_memo_.emplace(key, std::move(out)).first->second;
}

DoubleElement DrinfeldDouble::multiply(const DoubleElement& u,
                                       const DoubleElement& v) const {
  DoubleElement out;
  for (const auto& [uw, uc] : u) {
    for (const auto& [vw, vc] : v) {
      // (delta_d bowtie a)(delta_e bowtie b):
      // flip a past delta_e, then multiply the X and B legs separately
      const auto& fw = flip_words(uw.second, vw.first);
      const Scalar c0 = uc * vc;
      for (const auto& [mid, mc] : fw) {
        Element xprod = X_->multiply(word_element(uw.first, field().one()),
                                     word_element(mid.first, field().one()));
        if (xprod.empty()) continue;
        Element bprod = base().engine().multiply(
            word_element(mid.second, field().one()),
            word_element(vw.second, field().one()));
        for (const auto& [xw, xc] : xprod) {
          for (const auto& [bw, bc] : bprod) {
            double_add_term(out, {xw, bw}, c0 * mc * xc * bc);
          }
        }
      }
    }
  }
  return out;
}

std::map<std::pair<DoubleWord, DoubleWord>, Scalar> DrinfeldDouble::comultiply(
    const DoubleElement& u) const {
  std::map<std::pair<DoubleWord, DoubleWord>, Scalar> out;
  for (const auto& [w, c] : u) {
    auto dx = X_->comultiply(word_element(w.first, field().one()));
    Tensor db = base().comultiply(word_element(w.second, field().one()));
    for (const auto& [xpair, xc] : dx) {
      for (const auto& [bpair, bc] : db) {
        const std::pair<DoubleWord, DoubleWord> key{
            {xpair.first, bpair[0]}, {xpair.second, bpair[1]}};
        const Scalar coeff = c * xc * bc;
        auto [it, inserted] = out.emplace(key, coeff);
        if (!inserted) {
          it->second += coeff;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  }
  return out;
}

DoubleElement DrinfeldDouble::embed_dual(const Element& x) const {
  const BasisWord unit_word{
      std::vector<uint16_t>(base().engine().num_roots(), 0), 0};
  DoubleElement out;
  for (const auto& [d, c] : x) double_add_term(out, {d, unit_word}, c);
  return out;
}

DoubleElement DrinfeldDouble::embed_base(const Element& b) const {
  DoubleElement out;
  for (const auto& [d, cx] : X_->unit()) {
    for (const auto& [w, c] : b) double_add_term(out, {d, w}, cx * c);
  }
  return out;
}

std::map<std::pair<BasisWord, BasisWord>, Scalar> DrinfeldDouble::flip(
    const Element& a, const Element& x) const {
  std::map<std::pair<BasisWord, BasisWord>, Scalar> out;
  for (const auto& [aw, ac] : a) {
    for (const auto& [xw, xc] : x) {
      for (const auto& [vw, c] : flip_words(aw, xw)) {
        const Scalar coeff = ac * xc * c;
        auto [it, inserted] = out.emplace(vw, coeff);
        if (!inserted) {
          it->second += coeff;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    }
  }
  return out;
}

}  // namespace hopfcoh
