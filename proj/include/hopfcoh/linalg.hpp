#pragma once

// Exact linear algebra over a cyclotomic field.  Two tools:
//  - DenseMatrix: Gauss-Jordan for small systems (kernel bases, inverses).
//  - SparseEchelon: incremental row reduction for large sparse rank and
//    membership/solve queries; rows stream in, memory is O(rank).
// Both are deterministic: pivots are always the smallest column index.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hopfcoh/scalar.hpp"

namespace hopfcoh {

using SparseVec = std::map<uint32_t, Scalar>;  // index -> nonzero coefficient

void sparse_add(SparseVec& a, const SparseVec& b, const Scalar& coeff);

class DenseMatrix {
 public:
  DenseMatrix(size_t rows, size_t cols, const CycloField& F);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  Scalar& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

  size_t rank() const;
  // basis of the right kernel {x : Ax = 0}
  std::vector<std::vector<Scalar>> kernel_basis() const;
  // one solution of Ax = b if consistent
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;
  std::optional<DenseMatrix> inverse() const;  // square only

 private:
  size_t r_, c_;
  const CycloField* F_;
  std::vector<Scalar> a_;
  // returns pivot column per eliminated row of the echelonized copy
  static std::vector<size_t> rref(DenseMatrix& m);
};

class SparseEchelon {
 public:
  // When tracking is on, each inserted row gets tag index = insertion count,
  // and membership queries report combinations over those tags.
  explicit SparseEchelon(bool track_combinations = false)
      : track_(track_combinations) {}

  // Reduces the row against the current pivots and absorbs any remainder.
  // Returns true if the row increased the rank.
  bool insert(SparseVec row);
  size_t rank() const { return rows_.size(); }
  size_t inserted() const { return n_inserted_; }

  // Reduces v against the pivots: returns the residual and, if tracking,
  // the tag-combination c with v = sum c_k row_k + residual.
  std::pair<SparseVec, SparseVec> reduce(SparseVec v) const;

 private:
  struct Row {
    SparseVec v;    // normalized: leading coefficient 1 at pivot
    SparseVec aug;  // combination of original rows producing v
  };
  bool track_;
  size_t n_inserted_ = 0;
  std::map<uint32_t, Row> rows_;  // pivot column -> row
};

// Streaming column-space solver.  Columns live over a registry of component
// ids (semantic keys packed into 64 bits by the caller); each column is
// probed against an incremental echelon as it arrives, so kernel vectors
// come out as dependency combinations and membership queries solve
//   sum_c x_c col_c = b
// with a certificate component when b is unreachable.  Disjoint column
// supports never meet during reduction, so independent blocks of a system
// stay independent without explicit bookkeeping.
class ColumnSystem {
 public:
  explicit ColumnSystem(const CycloField& F) : F_(&F) {}

  // dense id for a component key (allocated on first use)
  uint32_t component(uint64_t key);
  std::optional<uint32_t> find_component(uint64_t key) const;
  size_t components() const { return comp_ids_.size(); }

  void add_column(SparseVec col);  // entries keyed by component ids
  size_t columns() const { return n_cols_; }

  size_t rank() const { return ech_.rank(); }
  // basis of {x : sum_c x_c col_c = 0}, vectors keyed by column index
  const std::vector<SparseVec>& kernel() const { return kernel_; }
  // one solution of sum_c x_c col_c = b; on failure returns nullopt and,
  // when bad is given, stores an unreachable component id there
  std::optional<SparseVec> solve(const SparseVec& b,
                                 uint32_t* bad = nullptr) const;

 private:
  const CycloField* F_;
  std::map<uint64_t, uint32_t> comp_ids_;
  size_t n_cols_ = 0;
  SparseEchelon ech_{true};
  std::vector<SparseVec> kernel_;
};

}  // namespace hopfcoh
