#pragma once

// Bar-resolution cohomology with trivial coefficients for a finite
// dimensional graded augmented algebra presented by structure constants.
// The algebra is handed over as a basis with multiplication, counit and
// unit in basis coordinates plus an integer degree per basis element; the
// complex itself works in a derived basis of the augmentation ideal.
//
// The cochain differential is the transpose of the chain boundary sending
// (t_1,...,t_n) to the alternating sum of adjacent products, so
//   dim H^n_d = #(n-tuples of degree d) - rank del_{n+1,d} - rank del_{n,d}.
// Two structural shortcuts keep large sweeps feasible:
//  - a product whose degrees sum outside the ideal's degree support is zero
//    and is never expanded;
//  - when a generating set of the augmentation ideal ("atoms") is declared,
//    boundaries of tuples whose first entry is an atom already span the
//    whole boundary image, because
//      del(ab, t_1, ...) = del(a, b t_1, ...) - del(a, b, t_1, ...)
//    rewrites any first slot as combinations of shorter-first-slot
//    boundaries, terminating at the generators.

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "hopfcoh/linalg.hpp"
#include "hopfcoh/scalar.hpp"

namespace hopfcoh {

class AugmentedBasis {
 public:
  // multiply(i, j) returns b_i * b_j in full-basis coordinates
  using Mult = std::function<SparseVec(uint32_t, uint32_t)>;

  AugmentedBasis(const CycloField& F, std::vector<long> degrees,
                 std::vector<Scalar> counit, SparseVec unit, Mult multiply,
                 std::vector<uint32_t> atoms = {});

  const CycloField& field() const { return *F_; }
  size_t dim() const { return degrees_.size(); }
  size_t plus_dim() const { return plus_.size(); }
  long degree(uint32_t basis_index) const { return degrees_[basis_index]; }

  // basis of the augmentation ideal: p_i = b_i - counit(b_i) 1 for every
  // basis index except one distinguished index absorbed into the unit
  const std::vector<uint32_t>& plus_indices() const { return plus_; }
  std::vector<uint32_t> plus_of_degree(long d) const;
  long min_degree() const { return min_deg_; }  // over the ideal basis
  long max_degree() const { return max_deg_; }
  const std::vector<uint32_t>& atoms() const { return atoms_; }

  // rewrites a counit-kernel vector from full-basis coordinates to ideal
  // coordinates (keyed by the basis index of each p_i)
  SparseVec to_plus(const SparseVec& basis_coords) const;

  // p_i * p_j in ideal coordinates; memoized, and zero without expansion
  // when the degree sum falls outside the ideal's degree support
  const SparseVec& plus_mult(uint32_t i, uint32_t j) const;

 private:
  const CycloField* F_;
  std::vector<long> degrees_;
  std::vector<Scalar> counit_;
  SparseVec unit_;
  Mult mult_;
  std::vector<uint32_t> plus_;
  std::vector<uint32_t> atoms_;
  uint32_t absorbed_ = 0;  // basis index with nonzero unit coefficient
  long min_deg_ = 0, max_deg_ = 0;
  mutable std::mutex mu_;
  mutable std::map<uint64_t, SparseVec> memo_;
  static const SparseVec kZero;
};

class BarComplex {
 public:
  explicit BarComplex(const AugmentedBasis& A) : A_(&A) {}

  const AugmentedBasis& algebra() const { return *A_; }

  // n-tuples over the ideal basis with degrees summing to d, in
  // lexicographic basis-index order; the flat position is the tuple index
  const std::vector<std::vector<uint32_t>>& tuples(int n, long d) const;
  size_t tuple_count(int n, long d) const { return tuples(n, d).size(); }

  // boundary of one n-tuple of total degree d, over (n-1)-tuple indices:
  // sum_{k=1}^{n-1} (-1)^k (t_1, ..., t_k t_{k+1}, ..., t_n)
  SparseVec boundary(const std::vector<uint32_t>& tuple) const;

  // rank of the boundary restricted to n-tuples of total degree d; streams
  // only atom-led tuples when the algebra declares atoms (they span)
  size_t boundary_rank(int n, long d, bool first_slot_atoms = true) const;

  // degree-d slice of H^n of the algebra with trivial coefficients
  size_t cohomology_dim(int n, long d) const;

 private:
  const AugmentedBasis* A_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, long>, std::vector<std::vector<uint32_t>>>
      tuples_;
  mutable std::map<std::pair<int, long>, std::map<std::vector<uint32_t>, uint32_t>>
      index_;
  mutable std::map<std::tuple<int, long, bool>, size_t> rank_;

  const std::map<std::vector<uint32_t>, uint32_t>& tuple_index(int n,
                                                               long d) const;
};

}  // namespace hopfcoh
