#include "hopfcoh/augmented.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopfcoh {

const SparseVec AugmentedBasis::kZero = {};

AugmentedBasis::AugmentedBasis(const CycloField& F, std::vector<long> degrees,
                               std::vector<Scalar> counit, SparseVec unit,
                               Mult multiply, std::vector<uint32_t> atoms)
    : F_(&F),
      degrees_(std::move(degrees)),
      counit_(std::move(counit)),
      unit_(std::move(unit)),
      mult_(std::move(multiply)),
      atoms_(std::move(atoms)) {
  if (counit_.size() != degrees_.size()) {
    throw std::invalid_argument("AugmentedBasis: counit size mismatch");
  }
  bool found = false;
  for (const auto& [i, c] : unit_) {
    if (!c.is_zero()) {
      absorbed_ = i;
      found = true;
      break;
    }
  }
  if (!found) throw std::invalid_argument("AugmentedBasis: zero unit");
  bool first = true;
  for (uint32_t i = 0; i < degrees_.size(); ++i) {
    if (i == absorbed_) continue;
    plus_.push_back(i);
    if (first || degrees_[i] < min_deg_) min_deg_ = degrees_[i];
    if (first || degrees_[i] > max_deg_) max_deg_ = degrees_[i];
    first = false;
  }
  for (uint32_t a : atoms_) {
    if (a == absorbed_) {
      throw std::invalid_argument("AugmentedBasis: atom outside the ideal");
    }
  }
}

std::vector<uint32_t> AugmentedBasis::plus_of_degree(long d) const {
  std::vector<uint32_t> out;
  for (uint32_t i : plus_) {
    if (degrees_[i] == d) out.push_back(i);
  }
  return out;
}

SparseVec AugmentedBasis::to_plus(const SparseVec& v) const {
  // With u the unit vector and i0 the absorbed index, v = sum a_j p_j has
  // v_{i0} = -(sum a_j counit_j) u_{i0}, and a_j = v_j + s u_j elsewhere,
  // where s = -v_{i0} / u_{i0}.
  Scalar s = F_->zero();
  auto it = v.find(absorbed_);
  if (it != v.end()) {
    s = F_->zero() - it->second / unit_.at(absorbed_);
  }
  SparseVec out;
  for (const auto& [j, c] : v) {
    if (j != absorbed_) out[j] = c;
  }
  if (!s.is_zero()) {
    for (const auto& [j, u] : unit_) {
      if (j == absorbed_) continue;
      Scalar c = s * u;
      auto jt = out.find(j);
      if (jt == out.end()) {
        if (!c.is_zero()) out.emplace(j, std::move(c));
      } else {
        jt->second = jt->second + c;
        if (jt->second.is_zero()) out.erase(jt);
      }
    }
  }
  return out;
}

const SparseVec& AugmentedBasis::plus_mult(uint32_t i, uint32_t j) const {
  long d = degrees_[i] + degrees_[j];
  if (d < min_deg_ || d > max_deg_) return kZero;  // no ideal basis there
  uint64_t key = (static_cast<uint64_t>(i) << 32) | j;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  // p_i p_j = b_i b_j - eps_j b_i - eps_i b_j + eps_i eps_j 1
  SparseVec full = mult_(i, j);
  auto add = [&](uint32_t k, const Scalar& c) {
    auto it = full.find(k);
    if (it == full.end()) {
      if (!c.is_zero()) full.emplace(k, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) full.erase(it);
    }
  };
  const Scalar& ei = counit_[i];
  const Scalar& ej = counit_[j];
  if (!ej.is_zero()) add(i, F_->zero() - ej);
  if (!ei.is_zero()) add(j, F_->zero() - ei);
  if (!ei.is_zero() && !ej.is_zero()) {
    Scalar c = ei * ej;
    for (const auto& [k, u] : unit_) add(k, c * u);
  }
  SparseVec reduced = to_plus(full);
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(key, std::move(reduced)).first->second;
}

const std::vector<std::vector<uint32_t>>& BarComplex::tuples(int n,
                                                             long d) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(n, d);
  auto it = tuples_.find(key);
  if (it != tuples_.end()) return it->second;

  std::vector<std::vector<uint32_t>> out;
  if (n == 0) {
    if (d == 0) out.push_back({});
  } else {
    std::vector<uint32_t> cur;
    const long lo = A_->min_degree(), hi = A_->max_degree();
    auto rec = [&](auto&& self, int slots, long rem) -> void {
      if (slots == 0) {
        if (rem == 0) out.push_back(cur);
        return;
      }
      if (rem < static_cast<long>(slots) * lo ||
          rem > static_cast<long>(slots) * hi) {
        return;
      }
      for (uint32_t i : A_->plus_indices()) {
        cur.push_back(i);
        self(self, slots - 1, rem - A_->degree(i));
        cur.pop_back();
      }
    };
    rec(rec, n, d);
  }
  return tuples_.emplace(key, std::move(out)).first->second;
}

const std::map<std::vector<uint32_t>, uint32_t>& BarComplex::tuple_index(
    int n, long d) const {
  const auto& ts = tuples(n, d);
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(n, d);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  std::map<std::vector<uint32_t>, uint32_t> idx;
  for (uint32_t k = 0; k < ts.size(); ++k) idx.emplace(ts[k], k);
  return index_.emplace(key, std::move(idx)).first->second;
}

SparseVec BarComplex::boundary(const std::vector<uint32_t>& t) const {
  const int n = static_cast<int>(t.size());
  long d = 0;
  for (uint32_t i : t) d += A_->degree(i);
  const auto& idx = tuple_index(n - 1, d);
  const CycloField& F = A_->field();
  SparseVec out;
  std::vector<uint32_t> face(t.begin(), t.end());
  face.pop_back();
  for (int k = 1; k < n; ++k) {
    const SparseVec& prod = A_->plus_mult(t[k - 1], t[k]);
    if (prod.empty()) continue;
    // face = (t_1, ..., t_{k-1}, *, t_{k+2}, ..., t_n)
    for (int s = 0; s < k - 1; ++s) face[s] = t[s];
    for (int s = k; s + 1 < n; ++s) face[s] = t[s + 1];
    const bool negate = (k % 2) != 0;
    for (const auto& [u, c] : prod) {
      face[k - 1] = u;
      auto it = idx.find(face);
      if (it == idx.end()) {
        throw std::logic_error("BarComplex: face tuple outside the slice");
      }
      Scalar term = negate ? F.zero() - c : c;
      auto jt = out.find(it->second);
      if (jt == out.end()) {
        if (!term.is_zero()) out.emplace(it->second, std::move(term));
      } else {
        jt->second = jt->second + term;
        if (jt->second.is_zero()) out.erase(jt);
      }
    }
  }
  return out;
}

size_t BarComplex::boundary_rank(int n, long d, bool first_slot_atoms) const {
  if (n <= 1) return 0;
  const bool atoms = first_slot_atoms && !A_->atoms().empty();
  const auto key = std::make_tuple(n, d, atoms);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rank_.find(key);
    if (it != rank_.end()) return it->second;
  }
  tuple_index(n - 1, d);  // build outside the echelon loop
  SparseEchelon ech;
  std::vector<uint32_t> t(static_cast<size_t>(n));
  if (atoms) {
    for (uint32_t a : A_->atoms()) {
      t[0] = a;
      for (const auto& rest : tuples(n - 1, d - A_->degree(a))) {
        std::copy(rest.begin(), rest.end(), t.begin() + 1);
        ech.insert(boundary(t));
      }
    }
  } else {
    for (const auto& full : tuples(n, d)) ech.insert(boundary(full));
  }
  std::lock_guard<std::mutex> lock(mu_);
  rank_[key] = ech.rank();
  return ech.rank();
}

size_t BarComplex::cohomology_dim(int n, long d) const {
  size_t cochains = tuple_count(n, d);
  size_t image = boundary_rank(n + 1, d);
  size_t killed = boundary_rank(n, d);
  return cochains - image - killed;
}

}  // namespace hopfcoh
