#include "hopfcoh/hopf.hpp"

#include <mutex>
#include <stdexcept>

namespace hopfcoh {

void tensor_add_term(Tensor& acc, const TensorWord& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void tensor_axpy(Tensor& acc, const Tensor& x, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [w, xc] : x) tensor_add_term(acc, w, xc * c);
}

Element word_element(const BasisWord& w, const Scalar& c) {
  Element e;
  add_term(e, w, c);
  return e;
}

HopfAlgebra::HopfAlgebra(const DatumContext& ctx, EngineOptions opt)
    : eng_(ctx, opt) {
  if (!opt.with_group || !opt.bounded) {
    throw std::invalid_argument(
        "Hopf structure requires a bounded algebra with group part");
  }
  const size_t p = eng_.num_roots();
  const auto& roots = ctx.roots();
  letter_coproduct_.resize(p);
  letter_antipode_.resize(p);
  const BasisWord unit_word{std::vector<uint16_t>(p, 0), 0};
  // simple letters first: both structure maps are given on generators
  for (size_t r = 0; r < p; ++r) {
    if (!roots[r].simple) continue;
    BasisWord xw = unit_word, gw = unit_word;
    xw.exp[r] = 1;
    gw.grp = roots[r].g;
    Tensor cop;
    tensor_add_term(cop, {xw, unit_word}, field().one());
    tensor_add_term(cop, {gw, xw}, field().one());
    letter_coproduct_[r] = std::move(cop);
    letter_antipode_[r] = scaled(
        eng_.multiply(eng_.group_element(group().inv(roots[r].g)),
                      eng_.generator(r)),
        -field().one());
  }
  // the composite A2 letter inherits both maps from x_w = x_u x_v - Q x_v x_u
  for (size_t r = 0; r < p; ++r) {
    if (roots[r].simple) continue;
    const size_t u = r - 1, v = r + 1;
    const Scalar Q =
        ctx.braiding(roots[u].vertex, roots[v].vertex);  // chi_v(g_u)
    Tensor cop = tensor_multiply(letter_coproduct_[u], letter_coproduct_[v]);
    tensor_axpy(cop, tensor_multiply(letter_coproduct_[v],
                                     letter_coproduct_[u]),
                -Q);
    letter_coproduct_[r] = std::move(cop);
    Element anti = eng_.multiply(letter_antipode_[v], letter_antipode_[u]);
    axpy(anti, eng_.multiply(letter_antipode_[u], letter_antipode_[v]), -Q);
    letter_antipode_[r] = std::move(anti);
  }
}

Tensor HopfAlgebra::tensor_multiply(const Tensor& a, const Tensor& b) const {
  Tensor out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      if (wa.size() != wb.size()) {
        throw std::invalid_argument("tensor_multiply: slot count mismatch");
      }
      std::vector<std::pair<TensorWord, Scalar>> partial;
      partial.emplace_back(TensorWord{}, ca * cb);
      for (size_t k = 0; k < wa.size() && !partial.empty(); ++k) {
        Element p = eng_.multiply(word_element(wa[k], field().one()),
                                  word_element(wb[k], field().one()));
        std::vector<std::pair<TensorWord, Scalar>> next;
        for (auto& [tw, c] : partial) {
          for (const auto& [w, pc] : p) {
            TensorWord nw = tw;
            nw.push_back(w);
            next.emplace_back(std::move(nw), c * pc);
          }
        }
        partial = std::move(next);
      }
      for (auto& [tw, c] : partial) tensor_add_term(out, tw, c);
    }
  }
  return out;
}

Tensor HopfAlgebra::apply_delta_to_slot(const Tensor& t, size_t slot) const {
  Tensor out;
  for (const auto& [tw, c] : t) {
    Tensor d = comultiply(word_element(tw[slot], field().one()));
    for (const auto& [dw, dc] : d) {
      TensorWord nw;
      nw.reserve(tw.size() + 1);
      for (size_t k = 0; k < slot; ++k) nw.push_back(tw[k]);
      nw.push_back(dw[0]);
      nw.push_back(dw[1]);
      for (size_t k = slot + 1; k < tw.size(); ++k) nw.push_back(tw[k]);
      tensor_add_term(out, nw, c * dc);
    }
  }
  return out;
}

const Tensor& HopfAlgebra::word_coproduct(
    const std::vector<uint16_t>& exp) const {
  {
    std::shared_lock lock(mutex_);
    auto it = coproduct_memo_.find(exp);
    if (it != coproduct_memo_.end()) return it->second;
  }
  // extend the predecessor word by one letter so every exponent vector is
  // folded exactly once across the whole run
  size_t last = exp.size();
  for (size_t r = exp.size(); r-- > 0;) {
    if (exp[r] > 0) {
      last = r;
      break;
    }
  }
  Tensor acc;
  if (last == exp.size()) {
    const BasisWord unit_word{std::vector<uint16_t>(eng_.num_roots(), 0), 0};
    tensor_add_term(acc, {unit_word, unit_word}, field().one());
  } else {
    std::vector<uint16_t> prev = exp;
    --prev[last];
    acc = tensor_multiply(word_coproduct(prev), letter_coproduct_[last]);
  }
  std::unique_lock lock(mutex_);
  return coproduct_memo_.emplace(exp, std::move(acc)).first->second;
}

Tensor HopfAlgebra::comultiply(const Element& a) const {
  Tensor out;
  for (const auto& [w, c] : a) {
    const Tensor& base = word_coproduct(w.exp);
    if (w.grp == 0) {
      tensor_axpy(out, base, c);
      continue;
    }
    // Delta(word * gamma) = Delta(word) * (gamma (x) gamma); right
    // multiplication by a group element only shifts the group parts
    for (const auto& [tw, tc] : base) {
      TensorWord shifted = tw;
      shifted[0].grp = group().mul(shifted[0].grp, w.grp);
      shifted[1].grp = group().mul(shifted[1].grp, w.grp);
      tensor_add_term(out, shifted, tc * c);
    }
  }
  return out;
}

Tensor HopfAlgebra::iterated_comultiply(const Element& a, int n) const {
  if (n < 1) throw std::invalid_argument("iterated_comultiply: n must be >= 1");
  Tensor acc;
  for (const auto& [w, c] : a) tensor_add_term(acc, {w}, c);
  for (int k = 1; k < n; ++k) {
    acc = apply_delta_to_slot(acc, static_cast<size_t>(k) - 1);
  }
  return acc;
}

const Element& HopfAlgebra::word_antipode_exp(
    const std::vector<uint16_t>& exp) const {
  {
    std::shared_lock lock(mutex_);
    auto it = antipode_memo_.find(exp);
    if (it != antipode_memo_.end()) return it->second;
  }
  // S is an antimorphism: S(A x_r) = S(x_r) S(A), peeling the last letter
  size_t last = exp.size();
  for (size_t r = exp.size(); r-- > 0;) {
    if (exp[r] > 0) {
      last = r;
      break;
    }
  }
  Element acc;
  if (last == exp.size()) {
    acc = eng_.one();
  } else {
    std::vector<uint16_t> prev = exp;
    --prev[last];
    acc = eng_.multiply(letter_antipode_[last], word_antipode_exp(prev));
  }
  std::unique_lock lock(mutex_);
  return antipode_memo_.emplace(exp, std::move(acc)).first->second;
}

Element HopfAlgebra::word_antipode(const BasisWord& w) const {
  const Element& base = word_antipode_exp(w.exp);
  if (w.grp == 0) return base;
  // S(word * gamma) = gamma^{-1} S(word): push the inverse group element
  // from the left through each term's letters
  const GroupIndex gi = group().inv(w.grp);
  Element out;
  for (const auto& [bw, c] : base) {
    add_term(out, BasisWord{bw.exp, group().mul(gi, bw.grp)},
             c * eng_.chi_word_eval(bw, gi));
  }
  return out;
}

Element HopfAlgebra::antipode(const Element& a) const {
  Element out;
  for (const auto& [w, c] : a) axpy(out, word_antipode(w), c);
  return out;
}

void HopfAlgebra::ensure_antipode_inverse() const {
  {
    std::shared_lock lock(mutex_);
    if (antipode_inverse_matrix_) return;
  }
  std::vector<BasisWord> basis = eng_.basis();
  std::map<BasisWord, size_t> index;
  for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  DenseMatrix S(basis.size(), basis.size(), field());
  for (size_t j = 0; j < basis.size(); ++j) {
    for (const auto& [w, c] : word_antipode(basis[j])) {
      S.at(index.at(w), j) = c;
    }
  }
  auto inv = S.inverse();
  if (!inv) throw std::runtime_error("antipode is not invertible");
  std::unique_lock lock(mutex_);
  if (!antipode_inverse_matrix_) {
    basis_cache_ = std::move(basis);
    basis_index_ = std::move(index);
    antipode_inverse_matrix_ = std::make_unique<DenseMatrix>(std::move(*inv));
  }
}

Element HopfAlgebra::antipode_inverse(const Element& a) const {
  ensure_antipode_inverse();
  std::shared_lock lock(mutex_);
  Element out;
  for (const auto& [w, c] : a) {
    const size_t j = basis_index_.at(w);
    for (size_t i = 0; i < basis_cache_.size(); ++i) {
      const Scalar& m = antipode_inverse_matrix_->at(i, j);
      if (!m.is_zero()) add_term(out, basis_cache_[i], m * c);
    }
  }
  return out;
}

Element HopfAlgebra::group_integral() const {
  const Scalar inv_order =
      field().one() / field().rational(Rational(group().size()));
  Element out;
  for (long g = 0; g < group().size(); ++g) {
    add_term(out, BasisWord{std::vector<uint16_t>(eng_.num_roots(), 0),
                            static_cast<GroupIndex>(g)},
             inv_order);
  }
  return out;
}

std::vector<Element> HopfAlgebra::skew_primitives(GroupIndex g) const {
  const BasisWord unit_word{std::vector<uint16_t>(eng_.num_roots(), 0), 0};
  const BasisWord g_word{std::vector<uint16_t>(eng_.num_roots(), 0), g};
  std::vector<BasisWord> domain;
  for (const auto& w : eng_.basis()) {
    if (eng_.word_degree(w) > 0) domain.push_back(w);
  }
  std::map<TensorWord, size_t> coord;
  std::vector<std::map<size_t, Scalar>> cols(domain.size());
  for (size_t j = 0; j < domain.size(); ++j) {
    Tensor t = comultiply(word_element(domain[j], field().one()));
    tensor_add_term(t, {domain[j], unit_word}, -field().one());
    tensor_add_term(t, {g_word, domain[j]}, -field().one());
    for (const auto& [tw, c] : t) {
      auto [it, ignored] = coord.emplace(tw, coord.size());
      cols[j][it->second] = c;
    }
  }
  DenseMatrix M(coord.size(), domain.size(), field());
  for (size_t j = 0; j < domain.size(); ++j) {
    for (const auto& [i, c] : cols[j]) M.at(i, j) = c;
  }
  std::vector<Element> out;
  for (const auto& k : M.kernel_basis()) {
    Element e;
    for (size_t j = 0; j < domain.size(); ++j) {
      if (!k[j].is_zero()) add_term(e, domain[j], k[j]);
    }
    out.push_back(std::move(e));
  }
  return out;
}

bool HopfAlgebra::check_comultiplicative(const BasisWord& a,
                                         const BasisWord& b) const {
  Element prod = eng_.multiply(word_element(a, field().one()),
                               word_element(b, field().one()));
  Tensor lhs = comultiply(prod);
  Tensor rhs = tensor_multiply(comultiply(word_element(a, field().one())),
                               comultiply(word_element(b, field().one())));
  return lhs == rhs;
}

bool HopfAlgebra::check_coassociative(const BasisWord& a) const {
  Tensor d = comultiply(word_element(a, field().one()));
  return apply_delta_to_slot(d, 0) == apply_delta_to_slot(d, 1);
}

bool HopfAlgebra::check_counit_laws(const BasisWord& a) const {
  Tensor d = comultiply(word_element(a, field().one()));
  Element left, right;
  for (const auto& [tw, c] : d) {
    add_term(right, tw[1], c * eng_.counit(word_element(tw[0], field().one())));
    add_term(left, tw[0], c * eng_.counit(word_element(tw[1], field().one())));
  }
  const Element self = word_element(a, field().one());
  return left == self && right == self;
}

bool HopfAlgebra::check_antipode_laws(const BasisWord& a) const {
  Tensor d = comultiply(word_element(a, field().one()));
  Element left, right;
  for (const auto& [tw, c] : d) {
    axpy(left,
         eng_.multiply(antipode(word_element(tw[0], field().one())),
                       word_element(tw[1], field().one())),
         c);
    axpy(right,
         eng_.multiply(word_element(tw[0], field().one()),
                       antipode(word_element(tw[1], field().one()))),
         c);
  }
  const Element target =
      eng_.from_scalar(eng_.counit(word_element(a, field().one())));
  return left == target && right == target;
}

}  // namespace hopfcoh
