#pragma once

// Degree-two Hochschild cohomology with trivial coefficients for the graded
// braided positive part R and its biproduct B = R # kGamma, exactly.
//
// Everything over R splits into (group element, character, degree) slices.
// Within a slice the degree-two cohomology is presented on pairs of basis
// words as  ker(multiplication) / im(middle-multiplication boundary);  a
// basis, membership coordinates, a splitting of multiplication, and the
// dictionary between slice functionals and two-cochains live here.  The
// biproduct side is reached through the group action: trivial-character
// slices survive, and invariant cochains extend by decorating each slot
// with the character values of the group parts to its left.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfcoh/augmented.hpp"
#include "hopfcoh/engine.hpp"
#include "hopfcoh/linalg.hpp"

namespace hopfcoh {

// ---- generic bar complex over an engine basis ------------------------------

struct WordBar {
  std::vector<BasisWord> words;  // full basis, engine order
  std::map<BasisWord, uint32_t> index;
  std::unique_ptr<AugmentedBasis> algebra;
  std::unique_ptr<BarComplex> bar;
};

// Works for the positive part (no group) and the biproduct alike; the
// declared generators are the root-vector letters plus, when a group part
// is present, the translated group elements gamma - 1.
WordBar make_word_bar(const Engine& E);

// ---- trigraded slice computation on the positive part ----------------------

struct Trigrade {
  GroupIndex g = 0;
  Character chi;
  long deg = 0;
  auto operator<=>(const Trigrade&) const = default;
};

struct SliceDims {
  size_t words = 0;      // basis words of the slice
  size_t pairs = 0;      // word pairs of the slice
  size_t mult_rank = 0;  // rank of multiplication pairs -> words
  size_t kernel = 0;     // pairs - mult_rank
  size_t image = 0;      // rank of the boundary from triples
  size_t h1 = 0;         // words - mult_rank
  size_t h2 = 0;         // kernel - image
  friend bool operator==(const SliceDims&, const SliceDims&) = default;
};

class RootCohomology {
 public:
  explicit RootCohomology(const Engine& R);  // graded, no group part

  const Engine& engine() const { return *R_; }
  const CycloField& field() const { return R_->field(); }
  long top_degree() const { return top_; }

  uint32_t word_count() const { return static_cast<uint32_t>(words_.size()); }
  const BasisWord& word(uint32_t id) const { return words_[id]; }
  uint32_t word_id(const BasisWord& w) const;
  const Trigrade& grade_of(uint32_t id) const { return grades_[id]; }
  Trigrade word_trigrade(const BasisWord& w) const;

  const std::vector<uint32_t>& words_of(const Trigrade& t) const;
  const std::vector<std::pair<uint32_t, uint32_t>>& pairs_of(
      const Trigrade& t) const;
  std::vector<Trigrade> word_grades() const;
  std::vector<Trigrade> pair_grades() const;

  struct Slice {
    Trigrade grade;
    std::vector<uint32_t> words;
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> pair_index;
    SliceDims dims;
    // basis of ker(mult)/im(boundary) over pair coordinates, and the
    // echelon (boundary rows first, then the accepted representatives)
    // used to express further cocycles over it
    std::vector<SparseVec> reps;
    SparseEchelon span{true};
    std::vector<size_t> rep_tags;
  };

  SliceDims dims(const Trigrade& t) const;       // cached, solver state dropped
  const Slice& slice(const Trigrade& t) const;   // cached with solver state
  // dimensions of every realized slice; fills the dims cache
  std::map<Trigrade, SliceDims> sweep(bool parallel = true) const;

  // coordinates of a multiplication-kernel vector over slice.reps modulo
  // boundaries; nullopt when v is not in ker(mult)
  std::optional<std::vector<Scalar>> class_coordinates(const Slice& s,
                                                       const SparseVec& v) const;

  // product of two basis words over word-id coordinates; zero without
  // expansion when the degree sum exceeds the top degree
  SparseVec word_product(uint32_t a, uint32_t b) const;

  // splitting phi of multiplication on the span of degree >= 2 basis words:
  // words with two or more root-vector factors peel their leading factor;
  // a single composite root vector gets a preimage solved in its slice
  struct PhiTerm {
    uint32_t a = 0, b = 0;
    Scalar c;
  };
  const std::vector<PhiTerm>& phi(uint32_t word_id) const;

 private:
  const Engine* R_;
  std::vector<BasisWord> words_;  // nonempty basis words
  std::map<BasisWord, uint32_t> index_;
  std::vector<Trigrade> grades_;
  std::vector<uint32_t> letters_;  // ids of the single root-vector words
  long top_ = 0;
  std::map<Trigrade, std::vector<uint32_t>> by_grade_;
  std::map<Trigrade, std::vector<std::pair<uint32_t, uint32_t>>> pairs_;

  mutable std::mutex mu_;
  mutable std::map<Trigrade, SliceDims> dims_;
  mutable std::map<Trigrade, std::unique_ptr<Slice>> slices_;
  mutable std::map<uint32_t, std::vector<PhiTerm>> phi_;

  std::unique_ptr<Slice> compute_slice(const Trigrade& t) const;
};

// ---- cochains on tuples of basis words --------------------------------------

struct Cochain {
  int arity = 2;
  std::map<std::vector<BasisWord>, Scalar> values;  // missing tuples are 0

  void set(std::vector<BasisWord> t, Scalar c);
  Scalar eval(const CycloField& F, const std::vector<BasisWord>& t) const;
  bool is_zero() const { return values.empty(); }
};

// total degree of the support; nullopt when empty or inhomogeneous
std::optional<long> cochain_degree(const Engine& E, const Cochain& f);

// bilinear evaluation of an arity-2 cochain on two elements
Scalar eval_on_elements(const Engine& E, const Cochain& f, const Element& a,
                        const Element& b);

// dual-basis one-cochain of a root-vector letter
Cochain letter_functional(const Engine& R, size_t root);

// (f cup g)(t) = f(front slots) g(back slots)
Cochain cup(const CycloField& F, const Cochain& f, const Cochain& g);

// linking two-cocycle of non-adjacent vertices vi < vj: supported on the
// single pair (x_j, x_i) with value 1
Cochain linking_cocycle(const Engine& R, int vi, int vj);

// root-power two-cocycle: value on (r, s) is the coefficient of the N-th
// power of the root vector in the product of the exponent-preserving lifts
// of r and s inside the unbounded cover; throws std::invalid_argument when
// the cover's truncation bound is below N * height(alpha)
Cochain root_power_cocycle(const RootCohomology& RC, const Engine& cover,
                           size_t alpha);

// diagonal group action (gamma . f)(r_1,...,r_n) = f(gamma^{-1} r_1, ...)
Cochain group_act(const Engine& R, const Cochain& f, GroupIndex gamma);
// the single eigenvalue when f is an eigenvector of gamma, else nullopt
std::optional<Scalar> action_eigenvalue(const Engine& R, const Cochain& f,
                                        GroupIndex gamma);
bool group_invariant(const Engine& R, const Cochain& f);

// value on biproduct basis words of the extension of an invariant cochain:
// each slot beyond the first picks up the character values, at the group
// parts to its left, of its positive part
Scalar transported_value(const Engine& B, const Cochain& f,
                         const std::vector<BasisWord>& tuple);
// materialized extension (small algebras)
Cochain transport_to_biproduct(const Engine& B, const Cochain& f);

// Checks the trivial-coefficient cocycle identity f(ab, c) = f(a, bc) for
// the extension of an invariant homogeneous arity-2 cochain, over plus
// parts of the biproduct basis with the middle slot running through the
// generators (sufficient by associativity) and the total degree pinned to
// the cochain's.  max_triples > 0 subsamples the triple stream evenly.
// Returns a description of the first violating triple, if any.
std::optional<std::string> biproduct_cocycle_violation(const Engine& B,
                                                       const Cochain& f,
                                                       size_t max_triples = 0);

// ---- the degree-two basis of the biproduct ----------------------------------

struct H2Class {
  enum class Kind { RootPower, Linking };
  Kind kind = Kind::RootPower;
  size_t root = 0;     // root index (RootPower)
  int vi = -1, vj = -1;  // vertex pair (Linking)
  Trigrade grade;      // slice on the positive part (trivial character)
  Cochain on_R;
  std::string label;
};

// All predicted degree-two classes of the biproduct: root-power cocycles
// whose N-th power character is trivial plus linking cocycles of
// non-adjacent vertex pairs with trivial product character.  Verified
// square against the slice computation: every trivial-character slice must
// carry exactly as many candidates as its dimension, with independent
// induced functionals; throws std::runtime_error on any mismatch.
std::vector<H2Class> biproduct_h2_basis(const RootCohomology& RC,
                                        const Engine& cover);

// coboundary-killing witnesses
Scalar root_power_witness(const Engine& R, const Cochain& f, size_t alpha);
Scalar linking_witness(const Engine& R, const Cochain& f, int vi, int vj);

// ---- slice functionals <-> two-cochains -------------------------------------

// two-cochain of a slice functional: values g(class(a (x) b - phi(ab)))
Cochain functional_cochain(const RootCohomology& RC,
                           const RootCohomology::Slice& s,
                           const std::vector<Scalar>& g);

// functional induced on the slice by a two-cocycle: its values on the reps
std::vector<Scalar> induced_functional(const RootCohomology& RC,
                                       const RootCohomology::Slice& s,
                                       const Cochain& f);

}  // namespace hopfcoh
