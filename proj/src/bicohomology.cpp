#include "hopfcoh/bicohomology.hpp"

#include <sstream>
#include <stdexcept>

// Core of the pair complex: the plus-basis model of the biproduct, the
// three cocycle identities, coboundaries of one-cochains, and the two
// connecting maps.  The solvers live in bicohomology_solve.cpp.

namespace hopfcoh {

// ---- BialgebraData ----------------------------------------------------------

BialgebraData::BialgebraData(const HopfAlgebra& H) : H_(&H) {
  const Engine& E = H.engine();
  const EngineOptions& o = E.options();
  if (!o.with_group || !o.bounded || o.use_lambda || o.use_mu) {
    throw std::invalid_argument("BialgebraData: graded biproduct required");
  }
  words_ = E.basis();
  for (uint32_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);

  BasisWord unit;
  unit.exp.assign(E.num_roots(), 0);
  unit.grp = 0;
  unit_ = index_.at(unit);

  std::vector<long> degrees(words_.size());
  std::vector<Scalar> counit(words_.size());
  std::vector<uint32_t> atoms;
  chi_.reserve(words_.size());
  for (uint32_t i = 0; i < words_.size(); ++i) {
    degrees[i] = E.word_degree(words_[i]);
    counit[i] = E.counit(word_element(words_[i], field().one()));
    chi_.push_back(E.word_character(words_[i]));
    if (i != unit_ && degrees[i] == 0) atoms.push_back(i);
  }
  SparseVec unit_vec{{unit_, field().one()}};
  aug_ = std::make_unique<AugmentedBasis>(
      field(), std::move(degrees), std::move(counit), std::move(unit_vec),
      [this](uint32_t i, uint32_t j) {
        Element e =
            engine().multiply(word_element(words_[i], field().one()),
                              word_element(words_[j], field().one()));
        SparseVec out;
        for (const auto& [w, c] : e) out.emplace(index_.at(w), c);
        return out;
      },
      atoms);
}

uint32_t BialgebraData::word_index(const BasisWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) {
    throw std::invalid_argument("BialgebraData: unknown basis word");
  }
  return it->second;
}

uint32_t BialgebraData::atom_index(GroupIndex g) const {
  BasisWord w;
  w.exp.assign(engine().num_roots(), 0);
  w.grp = g;
  return word_index(w);
}

bool BialgebraData::is_atom(uint32_t i) const {
  return i != unit_ && aug_->degree(i) == 0;
}

bool BialgebraData::is_pure(uint32_t i) const {
  return words_[i].grp == 0 && aug_->degree(i) > 0;
}

GroupIndex BialgebraData::grade(uint32_t i) const { return words_[i].grp; }

GroupIndex BialgebraData::full_grade(uint32_t i) const {
  return engine().word_group(words_[i]);
}

Scalar BialgebraData::chi_eval(uint32_t i, GroupIndex gamma) const {
  return group().char_eval(field(), chi_[i], gamma);
}

uint32_t BialgebraData::pure_index(const std::vector<uint16_t>& exp) const {
  BasisWord w;
  w.exp = exp;
  w.grp = 0;
  return word_index(w);
}

std::optional<uint32_t> BialgebraData::shifted(uint32_t u, GroupIndex d) const {
  BasisWord w = words_[u];
  w.grp = group().mul(w.grp, d);
  auto it = index_.find(w);
  if (it == index_.end() || it->second == unit_) return std::nullopt;
  return it->second;
}

SparseVec BialgebraData::pmul(uint32_t i, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [u, c] : v) sparse_add(out, aug_->plus_mult(i, u), c);
  return out;
}

SparseVec BialgebraData::pmul(const SparseVec& v, uint32_t j) const {
  SparseVec out;
  for (const auto& [u, c] : v) sparse_add(out, aug_->plus_mult(u, j), c);
  return out;
}

const PairVec& BialgebraData::rc(uint32_t i) const {
  if (rc_.empty()) rc_.resize(words_.size());
  if (rc_done_.empty()) rc_done_.resize(words_.size(), false);
  if (!rc_done_[i]) {
    Tensor T = H_->comultiply(word_element(words_[i], field().one()));
    PairVec out;
    for (const auto& [tw, c] : T) {
      uint32_t a = index_.at(tw[0]);
      uint32_t b = index_.at(tw[1]);
      if (a == unit_ || b == unit_) continue;
      out.emplace(PairKey{a, b}, c);
    }
    rc_[i] = std::move(out);
    rc_done_[i] = true;
  }
  return rc_[i];
}

SparseVec BialgebraData::to_plus(const Element& e) const {
  SparseVec full;
  for (const auto& [w, c] : e) full.emplace(index_.at(w), c);
  return aug_->to_plus(full);
}

Element BialgebraData::from_plus(const SparseVec& v) const {
  Element out;
  for (const auto& [i, c] : v) {
    add_term(out, words_[i], c);
    // p_i = b_i - counit(b_i) 1
    if (is_atom(i)) add_term(out, words_[unit_], -c);
  }
  return out;
}

// ---- pair operations --------------------------------------------------------

void pair_axpy(CocyclePair& acc, const CocyclePair& x, const Scalar& c) {
  if (c.is_zero()) return;
  if (acc.is_zero()) acc.degree = x.degree;
  if (!x.is_zero() && acc.degree != x.degree) {
    throw std::invalid_argument("pair_axpy: degree mismatch");
  }
  for (const auto& [k, v] : x.f) {
    SparseVec& tgt = acc.f[k];
    sparse_add(tgt, v, c);
    if (tgt.empty()) acc.f.erase(k);
  }
  for (const auto& [i, pv] : x.g) {
    PairVec& tgt = acc.g[i];
    for (const auto& [legs, s] : pv) {
      auto it = tgt.find(legs);
      if (it == tgt.end()) {
        Scalar t = c * s;
        if (!t.is_zero()) tgt.emplace(legs, std::move(t));
      } else {
        it->second += c * s;
        if (it->second.is_zero()) tgt.erase(it);
      }
    }
    if (tgt.empty()) acc.g.erase(i);
  }
}

namespace {

void pairvec_add(PairVec& acc, uint32_t a, uint32_t b, const Scalar& c) {
  if (c.is_zero()) return;
  PairKey k{a, b};
  auto it = acc.find(k);
  if (it == acc.end()) {
    acc.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

const SparseVec* fval(const CocyclePair& p, uint32_t a, uint32_t b) {
  auto it = p.f.find(PairKey{a, b});
  return it == p.f.end() ? nullptr : &it->second;
}

const PairVec* gval(const CocyclePair& p, uint32_t i) {
  auto it = p.g.find(i);
  return it == p.g.end() ? nullptr : &it->second;
}

}  // namespace

bool pair_is_trivial(const BialgebraData& BD, const CocyclePair& p) {
  for (const auto& [k, v] : p.f) {
    if (v.empty()) continue;
    if (BD.is_atom(k.first) || BD.is_atom(k.second)) return false;
  }
  for (const auto& [i, pv] : p.g) {
    for (const auto& [legs, c] : pv) {
      if (c.is_zero()) continue;
      if (BD.is_atom(legs.first) || BD.is_atom(legs.second)) return false;
    }
  }
  return true;
}

// ---- cocycle identities -----------------------------------------------------

std::optional<PairViolation> check_pair(const BialgebraData& BD,
                                        const CocyclePair& p) {
  const AugmentedBasis& A = BD.augmented();
  const std::vector<uint32_t>& plus = BD.plus();
  const long top = A.max_degree();

  // multiplication identity on triples
  for (uint32_t i : plus) {
    const long di = A.degree(i);
    for (uint32_t j : plus) {
      const long dij = di + A.degree(j);
      const SparseVec& mij = A.plus_mult(i, j);
      const SparseVec* fij = fval(p, i, j);
      for (uint32_t k : plus) {
        const long vd = dij + A.degree(k) + p.degree;
        if (vd < 0 || vd > top) continue;
        SparseVec E;
        if (const SparseVec* v = fval(p, j, k)) {
          for (const auto& [u, c] : *v) sparse_add(E, A.plus_mult(i, u), c);
        }
        for (const auto& [m, q] : mij) {
          if (const SparseVec* v = fval(p, m, k)) sparse_add(E, *v, -q);
        }
        for (const auto& [m, q] : A.plus_mult(j, k)) {
          if (const SparseVec* v = fval(p, i, m)) sparse_add(E, *v, q);
        }
        if (fij) {
          for (const auto& [u, c] : *fij) {
            sparse_add(E, A.plus_mult(u, k), -c);
          }
        }
        if (!E.empty()) {
          return PairViolation{"multiplication", {i, j, k}};
        }
      }
    }
  }

  // comultiplication identity per input
  for (uint32_t i : plus) {
    std::map<std::array<uint32_t, 3>, Scalar> E;
    auto add3 = [&](uint32_t a, uint32_t b, uint32_t c, const Scalar& s) {
      if (s.is_zero()) return;
      std::array<uint32_t, 3> k{a, b, c};
      auto it = E.find(k);
      if (it == E.end()) {
        E.emplace(k, s);
      } else {
        it->second += s;
        if (it->second.is_zero()) E.erase(it);
      }
    };
    for (const auto& [legs, c] : BD.rc(i)) {
      if (const PairVec* gv = gval(p, legs.second)) {
        for (const auto& [st, cg] : *gv) {
          add3(legs.first, st.first, st.second, c * cg);
        }
      }
      if (const PairVec* gu = gval(p, legs.first)) {
        for (const auto& [st, cg] : *gu) {
          add3(st.first, st.second, legs.second, -(c * cg));
        }
      }
    }
    if (const PairVec* gi = gval(p, i)) {
      for (const auto& [st, cg] : *gi) {
        for (const auto& [ab, cr] : BD.rc(st.second)) {
          add3(st.first, ab.first, ab.second, cg * cr);
        }
        for (const auto& [ab, cr] : BD.rc(st.first)) {
          add3(ab.first, ab.second, st.second, -(cg * cr));
        }
      }
    }
    if (!E.empty()) {
      return PairViolation{"comultiplication", {i}};
    }
  }

  // compatibility identity on pairs
  for (uint32_t i : plus) {
    const PairVec& rci = BD.rc(i);
    const PairVec* gi = gval(p, i);
    for (uint32_t j : plus) {
      const PairVec& rcj = BD.rc(j);
      PairVec E;
      // Delta-side terms of f
      for (const auto& [st, cj] : rcj) {
        if (const SparseVec* v = fval(p, i, st.first)) {
          for (const auto& [w, cw] : *v) {
            pairvec_add(E, w, st.second, cj * cw);
          }
        }
        if (const SparseVec* v = fval(p, i, st.second)) {
          for (const auto& [w, cw] : *v) {
            pairvec_add(E, st.first, w, cj * cw);
          }
        }
      }
      for (const auto& [uv, ci] : rci) {
        if (const SparseVec* v = fval(p, uv.first, j)) {
          for (const auto& [w, cw] : *v) {
            pairvec_add(E, w, uv.second, ci * cw);
          }
        }
        if (const SparseVec* v = fval(p, uv.second, j)) {
          for (const auto& [w, cw] : *v) {
            pairvec_add(E, uv.first, w, ci * cw);
          }
        }
        for (const auto& [st, cj] : rcj) {
          const Scalar cc = ci * cj;
          if (const SparseVec* v = fval(p, uv.first, st.first)) {
            for (const auto& [w, cw] : *v) {
              for (const auto& [m, cm] :
                   A.plus_mult(uv.second, st.second)) {
                pairvec_add(E, w, m, cc * cw * cm);
              }
            }
          }
          if (const SparseVec* v = fval(p, uv.second, st.second)) {
            for (const auto& [w, cw] : *v) {
              for (const auto& [m, cm] : A.plus_mult(uv.first, st.first)) {
                pairvec_add(E, m, w, cc * cw * cm);
              }
            }
          }
        }
      }
      if (const SparseVec* v = fval(p, i, j)) {
        for (const auto& [w, cw] : *v) {
          for (const auto& [ab, cr] : BD.rc(w)) {
            pairvec_add(E, ab.first, ab.second, -(cw * cr));
          }
        }
      }
      // multiplication-side terms of g
      if (const PairVec* gj = gval(p, j)) {
        for (const auto& [st, cg] : *gj) {
          for (const auto& [m, cm] : A.plus_mult(i, st.first)) {
            pairvec_add(E, m, st.second, cg * cm);
          }
          for (const auto& [m, cm] : A.plus_mult(i, st.second)) {
            pairvec_add(E, st.first, m, cg * cm);
          }
          for (const auto& [uv, ci] : rci) {
            const Scalar cc = ci * cg;
            for (const auto& [m1, c1] : A.plus_mult(uv.first, st.first)) {
              for (const auto& [m2, c2] :
                   A.plus_mult(uv.second, st.second)) {
                pairvec_add(E, m1, m2, cc * c1 * c2);
              }
            }
          }
        }
      }
      for (const auto& [m, q] : A.plus_mult(i, j)) {
        if (const PairVec* gm = gval(p, m)) {
          for (const auto& [st, cg] : *gm) {
            pairvec_add(E, st.first, st.second, -(q * cg));
          }
        }
      }
      if (gi) {
        for (const auto& [st, cg] : *gi) {
          for (const auto& [m, cm] : A.plus_mult(st.first, j)) {
            pairvec_add(E, m, st.second, cg * cm);
          }
          for (const auto& [m, cm] : A.plus_mult(st.second, j)) {
            pairvec_add(E, st.first, m, cg * cm);
          }
          for (const auto& [uv, cj] : rcj) {
            const Scalar cc = cg * cj;
            for (const auto& [m1, c1] : A.plus_mult(st.first, uv.first)) {
              for (const auto& [m2, c2] :
                   A.plus_mult(st.second, uv.second)) {
                pairvec_add(E, m1, m2, cc * c1 * c2);
              }
            }
          }
        }
      }
      if (!E.empty()) {
        return PairViolation{"compatibility", {i, j}};
      }
    }
  }
  return std::nullopt;
}

// ---- coboundary of a one-cochain --------------------------------------------

CocyclePair coboundary_pair(const BialgebraData& BD, const OneCochain& h,
                            long degree) {
  const AugmentedBasis& A = BD.augmented();
  for (const auto& [i, v] : h) {
    for (const auto& [w, c] : v) {
      if (c.is_zero()) continue;
      if (A.degree(w) != A.degree(i) + degree) {
        throw std::invalid_argument(
            "coboundary_pair: inhomogeneous one-cochain");
      }
    }
  }
  CocyclePair out;
  out.degree = degree;
  const std::vector<uint32_t>& plus = BD.plus();
  auto hv = [&](uint32_t i) -> const SparseVec* {
    auto it = h.find(i);
    return it == h.end() ? nullptr : &it->second;
  };
  for (uint32_t i : plus) {
    const SparseVec* hi = hv(i);
    for (uint32_t j : plus) {
      SparseVec F;
      if (const SparseVec* hj = hv(j)) {
        for (const auto& [u, c] : *hj) sparse_add(F, A.plus_mult(i, u), c);
      }
      for (const auto& [m, q] : A.plus_mult(i, j)) {
        if (const SparseVec* hm = hv(m)) sparse_add(F, *hm, -q);
      }
      if (hi) {
        for (const auto& [u, c] : *hi) sparse_add(F, A.plus_mult(u, j), c);
      }
      if (!F.empty()) out.f.emplace(PairKey{i, j}, std::move(F));
    }
  }
  for (uint32_t i : plus) {
    PairVec G;
    if (const SparseVec* hi = hv(i)) {
      for (const auto& [w, cw] : *hi) {
        for (const auto& [ab, cr] : BD.rc(w)) {
          pairvec_add(G, ab.first, ab.second, cw * cr);
        }
      }
    }
    for (const auto& [uv, c] : BD.rc(i)) {
      if (const SparseVec* hb = hv(uv.second)) {
        for (const auto& [w, cw] : *hb) {
          pairvec_add(G, uv.first, w, -(c * cw));
        }
      }
      if (const SparseVec* ha = hv(uv.first)) {
        for (const auto& [w, cw] : *ha) {
          pairvec_add(G, w, uv.second, -(c * cw));
        }
      }
    }
    if (!G.empty()) out.g.emplace(i, std::move(G));
  }
  return out;
}

// ---- connecting maps --------------------------------------------------------

CocyclePair delta_B(const BialgebraData& BD, const Cochain& f) {
  if (f.arity != 2) {
    throw std::invalid_argument("delta_B: arity-2 cochain required");
  }
  auto d = cochain_degree(BD.engine(), f);
  if (!d) {
    throw std::invalid_argument("delta_B: homogeneous nonzero cochain required");
  }
  const CycloField& F = BD.field();
  const HopfAlgebra& H = BD.hopf();
  const Engine& E = BD.engine();
  CocyclePair out;
  out.degree = -*d;

  std::vector<Tensor> delta(BD.dim());
  for (uint32_t i = 0; i < BD.dim(); ++i) {
    delta[i] = H.comultiply(word_element(BD.word(i), F.one()));
  }
  std::vector<BasisWord> tuple(2);
  for (uint32_t i : BD.plus()) {
    for (uint32_t j : BD.plus()) {
      SparseVec acc;
      for (const auto& [ta, ca] : delta[i]) {
        for (const auto& [tb, cb] : delta[j]) {
          tuple[0] = ta[0];
          tuple[1] = tb[0];
          Scalar v1 = f.eval(F, tuple);
          if (!v1.is_zero()) {
            Element prod = E.multiply(word_element(ta[1], F.one()),
                                      word_element(tb[1], F.one()));
            sparse_add(acc, BD.to_plus(prod), ca * cb * v1);
          }
          tuple[0] = ta[1];
          tuple[1] = tb[1];
          Scalar v2 = f.eval(F, tuple);
          if (!v2.is_zero()) {
            Element prod = E.multiply(word_element(ta[0], F.one()),
                                      word_element(tb[0], F.one()));
            sparse_add(acc, BD.to_plus(prod), -(ca * cb * v2));
          }
        }
      }
      if (!acc.empty()) out.f.emplace(PairKey{i, j}, std::move(acc));
    }
  }
  return out;
}

CocyclePair delta_X(const BialgebraData& BD, const Tensor& g) {
  const CycloField& F = BD.field();
  const HopfAlgebra& H = BD.hopf();
  std::optional<long> deg;
  for (const auto& [tw, c] : g) {
    if (c.is_zero()) continue;
    long d = BD.engine().word_degree(tw[0]) + BD.engine().word_degree(tw[1]);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      throw std::invalid_argument("delta_X: homogeneous tensor required");
    }
  }
  if (!deg) throw std::invalid_argument("delta_X: zero tensor");
  CocyclePair out;
  out.degree = *deg;
  for (uint32_t i : BD.plus()) {
    Tensor Dw = H.comultiply(word_element(BD.word(i), F.one()));
    Tensor A = H.tensor_multiply(Dw, g);
    Tensor B = H.tensor_multiply(g, Dw);
    PairVec G;
    auto fold = [&](const Tensor& t, bool negate) {
      for (const auto& [tw, c] : t) {
        uint32_t a = BD.word_index(tw[0]);
        uint32_t b = BD.word_index(tw[1]);
        if (a == BD.unit_index() || b == BD.unit_index()) continue;
        pairvec_add(G, a, b, negate ? -c : c);
      }
    };
    fold(A, false);
    fold(B, true);
    if (!G.empty()) out.g.emplace(i, std::move(G));
  }
  return out;
}

}  // namespace hopfcoh
