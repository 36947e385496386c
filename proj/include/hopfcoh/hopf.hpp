#pragma once

// Hopf structure on the bounded algebras built by the rewrite engine:
// comultiplication, counit, antipode (and its inverse), the group-algebra
// integral, and skew-primitive spaces.  The comultiplication is the algebra
// morphism with Delta(gamma) = gamma (x) gamma and
// Delta(x_i) = x_i (x) 1 + g_i (x) x_i on simple root vectors; the composite
// root vector inherits its coproduct from the braided commutator that
// defines it.  The antipode is the algebra antimorphism with
// S(gamma) = gamma^{-1} and S(x_i) = -g_i^{-1} x_i.

#include <memory>
#include <shared_mutex>

#include "hopfcoh/engine.hpp"
#include "hopfcoh/linalg.hpp"

namespace hopfcoh {

// Sparse element of B^(tensor k): k-tuples of basis words with coefficients.
using TensorWord = std::vector<BasisWord>;
using Tensor = std::map<TensorWord, Scalar>;

void tensor_add_term(Tensor& acc, const TensorWord& w, const Scalar& c);
void tensor_axpy(Tensor& acc, const Tensor& x, const Scalar& c);

Element word_element(const BasisWord& w, const Scalar& c);

class HopfAlgebra {
 public:
  // Requires a bounded algebra with group part (with_group && bounded).
  HopfAlgebra(const DatumContext& ctx, EngineOptions opt);

  const Engine& engine() const { return eng_; }
  const DatumContext& ctx() const { return eng_.ctx(); }
  const CycloField& field() const { return eng_.field(); }
  const AbelianGroup& group() const { return eng_.group(); }

  // slot-wise product of two elements of B^(tensor k), same k
  Tensor tensor_multiply(const Tensor& a, const Tensor& b) const;
  // apply Delta to one slot of a tensor (k -> k+1 slots)
  Tensor apply_delta_to_slot(const Tensor& t, size_t slot) const;

  Tensor comultiply(const Element& a) const;                  // k = 2
  Tensor iterated_comultiply(const Element& a, int n) const;  // k = n >= 1
  Scalar counit(const Element& a) const { return eng_.counit(a); }
  Element antipode(const Element& a) const;
  Element antipode_inverse(const Element& a) const;  // by matrix inversion
  Element group_integral() const;  // |Gamma|^{-1} sum of group elements

  // basis of {v in positive degree : Delta v = v(x)1 + g(x)v}
  std::vector<Element> skew_primitives(GroupIndex g) const;

  // exact axiom checks, one basis tuple at a time
  bool check_comultiplicative(const BasisWord& a, const BasisWord& b) const;
  bool check_coassociative(const BasisWord& a) const;
  bool check_counit_laws(const BasisWord& a) const;
  bool check_antipode_laws(const BasisWord& a) const;

 private:
  Engine eng_;
  std::vector<Tensor> letter_coproduct_;   // Delta(x_r)
  std::vector<Element> letter_antipode_;   // S(x_r)

  mutable std::shared_mutex mutex_;
  mutable std::map<std::vector<uint16_t>, Tensor> coproduct_memo_;
  mutable std::map<std::vector<uint16_t>, Element> antipode_memo_;
  mutable std::unique_ptr<DenseMatrix> antipode_inverse_matrix_;
  mutable std::vector<BasisWord> basis_cache_;
  mutable std::map<BasisWord, size_t> basis_index_;

  const Tensor& word_coproduct(const std::vector<uint16_t>& exp) const;
  const Element& word_antipode_exp(const std::vector<uint16_t>& exp) const;
  Element word_antipode(const BasisWord& w) const;
  void ensure_antipode_inverse() const;
};

}  // namespace hopfcoh
