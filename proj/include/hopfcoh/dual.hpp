#pragma once

// The dual Hopf algebra X = (B^op)* and the Drinfeld double D(B) = X bowtie B.
//
// Elements of X are sparse coefficient maps against the dual basis
// {delta_w : w basis word of B}, reusing the Element container keyed by the
// basis word being dualized.  All structure constants are transposed from B:
//   product of X        = transpose of Delta_B        (fg)(a) = f(a_1)g(a_2)
//   coproduct of X      = transpose of op-multiplication   Delta(y)(a,b) = y(ba)
//   antipode of X       = precompose with S_B^{-1}
//   unit of X           = epsilon_B,  counit of X = evaluation at 1_B.
// X is nonpositively graded by deg(delta_w) = -deg(w).
//
// The double is X (x) B as a coalgebra with the mixed multiplication
//   (x bowtie a)(y bowtie b) = <y_1, a_1> <y_3, S^{-1}(a_3)> x y_2 bowtie a_2 b,
// where iterated coproducts of y in X evaluate as y_1(r)y_2(s)y_3(t) = y(tsr).

#include "hopfcoh/hopf.hpp"

namespace hopfcoh {

class DualAlgebra {
 public:
  explicit DualAlgebra(const HopfAlgebra& H);

  const HopfAlgebra& base() const { return *H_; }
  const CycloField& field() const { return H_->field(); }
  size_t dim() const { return basis_.size(); }
  const std::vector<BasisWord>& base_basis() const { return basis_; }
  long degree(const BasisWord& w) const {
    return -H_->engine().word_degree(w);
  }

  Element unit() const;
  Scalar counit(const Element& x) const;
  Element multiply(const Element& x, const Element& y) const;
  std::map<std::pair<BasisWord, BasisWord>, Scalar> comultiply(
      const Element& x) const;
  Element antipode(const Element& x) const;
  Scalar pairing(const Element& x, const Element& a) const;

  // the four module actions between X and B
  Element act_left_on_dual(const Element& a, const Element& x) const;   // a->x
  Element act_right_on_dual(const Element& x, const Element& a) const;  // x^a
  Element act_left_on_base(const Element& x, const Element& a) const;   // x->a
  Element act_right_on_base(const Element& a, const Element& x) const;  // a^x

 private:
  const HopfAlgebra* H_;
  std::vector<BasisWord> basis_;

  mutable std::shared_mutex mutex_;
  // Delta_X on dual basis words, built lazily from the full B-product table
  mutable bool delta_x_built_ = false;
  mutable std::map<BasisWord, std::map<std::pair<BasisWord, BasisWord>, Scalar>>
      delta_x_;

  void ensure_delta_x() const;
};

// basis element delta_d bowtie b of the double
using DoubleWord = std::pair<BasisWord, BasisWord>;
using DoubleElement = std::map<DoubleWord, Scalar>;

void double_add_term(DoubleElement& acc, const DoubleWord& w, const Scalar& c);

class DrinfeldDouble {
 public:
  explicit DrinfeldDouble(const DualAlgebra& X);

  const DualAlgebra& dual() const { return *X_; }
  const HopfAlgebra& base() const { return X_->base(); }
  const CycloField& field() const { return X_->field(); }
  size_t dim() const;  // (dim B)^2
  std::vector<DoubleWord> basis() const;
  long degree(const DoubleWord& w) const;  // deg(b) - deg(d)

  DoubleElement unit() const;  // 1_X bowtie 1_B
  Scalar counit(const DoubleElement& u) const;  // epsilon_X (x) epsilon_B
  DoubleElement multiply(const DoubleElement& u, const DoubleElement& v) const;
  // tensor coalgebra of X and B, componentwise
  std::map<std::pair<DoubleWord, DoubleWord>, Scalar> comultiply(
      const DoubleElement& u) const;

  DoubleElement embed_dual(const Element& x) const;  // x bowtie 1_B
  DoubleElement embed_base(const Element& b) const;  // 1_X bowtie b

  // braided flip c : B (x) X -> X (x) B,
  //   c(a, x) = <x_1, a_1> <x_3, S^{-1}(a_3)> x_2 (x) a_2
  std::map<std::pair<BasisWord, BasisWord>, Scalar> flip(
      const Element& a, const Element& x) const;

 private:
  const DualAlgebra* X_;

  mutable std::shared_mutex mutex_;
  // flip of (basis word a, dual basis word e), the kernel shared by
  // multiplication and the chain-map machinery
  mutable std::map<std::pair<BasisWord, BasisWord>,
                   std::map<std::pair<BasisWord, BasisWord>, Scalar>>
      flip_memo_;

  const std::map<std::pair<BasisWord, BasisWord>, Scalar>& flip_words(
      const BasisWord& a, const BasisWord& e) const;
};

}  // namespace hopfcoh
