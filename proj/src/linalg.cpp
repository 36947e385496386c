#include "hopfcoh/linalg.hpp"

#include <stdexcept>

namespace hopfcoh {

void sparse_add(SparseVec& a, const SparseVec& b, const Scalar& coeff) {
  if (coeff.is_zero()) return;
  for (const auto& [idx, val] : b) {
    auto it = a.find(idx);
    if (it == a.end()) {
      Scalar s = val * coeff;
      if (!s.is_zero()) a.emplace(idx, std::move(s));
    } else {
      it->second = it->second + val * coeff;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

DenseMatrix::DenseMatrix(size_t rows, size_t cols, const CycloField& F)
    : r_(rows), c_(cols), F_(&F), a_(rows * cols, F.zero()) {}

std::vector<size_t> DenseMatrix::rref(DenseMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.c_ && row < m.r_; ++col) {
    size_t sel = m.r_;
    for (size_t i = row; i < m.r_; ++i) {
      if (!m.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel == m.r_) continue;
    if (sel != row) {
      for (size_t j = 0; j < m.c_; ++j) std::swap(m.at(sel, j), m.at(row, j));
    }
    Scalar inv = m.at(row, col).inverse();
    for (size_t j = col; j < m.c_; ++j) m.at(row, j) = m.at(row, j) * inv;
    for (size_t i = 0; i < m.r_; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (size_t j = col; j < m.c_; ++j) {
        m.at(i, j) = m.at(i, j) - f * m.at(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t DenseMatrix::rank() const {
  DenseMatrix m = *this;
  return rref(m).size();
}

std::vector<std::vector<Scalar>> DenseMatrix::kernel_basis() const {
  DenseMatrix m = *this;
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(c_, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (size_t free = 0; free < c_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(c_, F_->zero());
    v[free] = F_->one();
    for (size_t k = 0; k < pivots.size(); ++k) {
      v[pivots[k]] = -m.at(k, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> DenseMatrix::solve(
    const std::vector<Scalar>& b) const {
  if (b.size() != r_) throw std::invalid_argument("solve: size mismatch");
  DenseMatrix m(r_, c_ + 1, *F_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    m.at(i, c_) = b[i];
  }
  std::vector<size_t> pivots = rref(m);
  if (!pivots.empty() && pivots.back() == c_) return std::nullopt;
  std::vector<Scalar> x(c_, F_->zero());
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m.at(k, c_);
  return x;
}

std::optional<DenseMatrix> DenseMatrix::inverse() const {
  if (r_ != c_) throw std::invalid_argument("inverse: matrix not square");
  DenseMatrix m(r_, 2 * c_, *F_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j) m.at(i, j) = at(i, j);
    m.at(i, c_ + i) = F_->one();
  }
  std::vector<size_t> pivots = rref(m);
  if (pivots.size() != r_ || pivots.back() != r_ - 1) return std::nullopt;
  DenseMatrix inv(r_, c_, *F_);
  for (size_t i = 0; i < r_; ++i) {
    for (size_t j = 0; j < c_; ++j) inv.at(i, j) = m.at(i, c_ + j);
  }
  return inv;
}

std::pair<SparseVec, SparseVec> SparseEchelon::reduce(SparseVec v) const {
  SparseVec comb;
  while (!v.empty()) {
    auto lead = v.begin();
    auto it = rows_.find(lead->first);
    if (it == rows_.end()) {
      // Leading column has no pivot; eliminate nothing further at or below
      // it.  Columns are visited in increasing order, so later pivots cannot
      // touch earlier residual entries -- but they can touch later ones.
      // Walk forward over the remaining entries instead of stopping.
      bool hit = false;
      for (auto jt = std::next(lead); jt != v.end(); ++jt) {
        auto kt = rows_.find(jt->first);
        if (kt != rows_.end()) {
          Scalar f = jt->second;
          if (track_) sparse_add(comb, kt->second.aug, f);
          sparse_add(v, kt->second.v, -f);
          hit = true;
          break;
        }
      }
      if (!hit) break;
    } else {
      Scalar f = lead->second;
      if (track_) sparse_add(comb, it->second.aug, f);
      sparse_add(v, it->second.v, -f);
    }
  }
  return {std::move(v), std::move(comb)};
}

bool SparseEchelon::insert(SparseVec row) {
  size_t tag = n_inserted_++;
  auto [residual, comb] = reduce(std::move(row));
  if (residual.empty()) return false;
  auto lead = residual.begin();
  Scalar inv = lead->second.inverse();
  SparseVec norm;
  for (const auto& [idx, val] : residual) norm.emplace(idx, val * inv);
  SparseVec aug;
  if (track_) {
    // residual = original - comb . rows, so original = residual + comb . rows
    // normalized row = inv * original - inv * comb . rows
    aug.emplace(static_cast<uint32_t>(tag), inv);
    for (const auto& [k, c] : comb) {
      Scalar s = -(inv * c);
      if (!s.is_zero()) aug.emplace(k, std::move(s));
    }
  }
  uint32_t pivot = norm.begin()->first;
  rows_.emplace(pivot, Row{std::move(norm), std::move(aug)});
  return true;
}

uint32_t ColumnSystem::component(uint64_t key) {
  auto it = comp_ids_.find(key);
  if (it != comp_ids_.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(comp_ids_.size());
  comp_ids_.emplace(key, id);
  return id;
}

std::optional<uint32_t> ColumnSystem::find_component(uint64_t key) const {
  auto it = comp_ids_.find(key);
  if (it == comp_ids_.end()) return std::nullopt;
  return it->second;
}

void ColumnSystem::add_column(SparseVec col) {
  uint32_t tag = static_cast<uint32_t>(n_cols_++);
  auto [residual, comb] = ech_.reduce(col);
  if (residual.empty()) {
    // dependency: col = sum comb_k col_k, so col - sum ... = 0
    SparseVec k;
    for (const auto& [t, s] : comb) {
      Scalar neg = -s;
      if (!neg.is_zero()) k.emplace(t, std::move(neg));
    }
    k[tag] = F_->one();
    kernel_.push_back(std::move(k));
  } else {
    ech_.insert(std::move(col));
  }
}

std::optional<SparseVec> ColumnSystem::solve(const SparseVec& b,
                                             uint32_t* bad) const {
  auto [residual, comb] = ech_.reduce(b);
  if (!residual.empty()) {
    if (bad) *bad = residual.begin()->first;
    return std::nullopt;
  }
  return comb;
}

}  // namespace hopfcoh
