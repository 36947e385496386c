#include "hopfcoh/hochschild.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hopfcoh/parallel.hpp"

namespace hopfcoh {

namespace {

BasisWord letter_word(const Engine& E, size_t root) {
  BasisWord w;
  w.exp.assign(E.num_roots(), 0);
  w.exp[root] = 1;
  return w;
}

BasisWord power_word(const Engine& E, size_t root, long n) {
  BasisWord w;
  w.exp.assign(E.num_roots(), 0);
  w.exp[root] = static_cast<uint16_t>(n);
  return w;
}

bool is_unit_word(const BasisWord& w) {
  for (uint16_t a : w.exp) {
    if (a) return false;
  }
  return true;
}

Element word_as_element(const CycloField& F, const BasisWord& w) {
  Element e;
  e.emplace(w, F.one());
  return e;
}

// index of the simple root sitting at a vertex
size_t simple_root_at(const Engine& E, int vertex) {
  const auto& roots = E.ctx().roots();
  for (size_t r = 0; r < roots.size(); ++r) {
    if (roots[r].simple && roots[r].vertex == vertex) return r;
  }
  throw std::invalid_argument("no simple root at vertex " +
                              std::to_string(vertex));
}

}  // namespace

// ---- generic bar complex ----------------------------------------------------

WordBar make_word_bar(const Engine& E) {
  struct Holder {
    const Engine* E;
    std::vector<BasisWord> words;
    std::map<BasisWord, uint32_t> index;
  };
  auto h = std::make_shared<Holder>();
  h->E = &E;
  h->words = E.basis();
  for (uint32_t i = 0; i < h->words.size(); ++i) h->index.emplace(h->words[i], i);

  const CycloField& F = E.field();
  std::vector<long> degrees;
  std::vector<Scalar> counit;
  degrees.reserve(h->words.size());
  counit.reserve(h->words.size());
  SparseVec unit;
  std::vector<uint32_t> atoms;
  for (uint32_t i = 0; i < h->words.size(); ++i) {
    const BasisWord& w = h->words[i];
    degrees.push_back(E.word_degree(w));
    counit.push_back(is_unit_word(w) ? F.one() : F.zero());
    if (is_unit_word(w) && w.grp == E.group().identity()) unit[i] = F.one();
    long total = 0;
    for (uint16_t a : w.exp) total += a;
    const bool letter = total == 1 && w.grp == E.group().identity();
    const bool group_atom = total == 0 && w.grp != E.group().identity();
    if (letter || group_atom) atoms.push_back(i);
  }

  auto mult = [h](uint32_t i, uint32_t j) {
    const CycloField& F = h->E->field();
    Element prod = h->E->multiply(word_as_element(F, h->words[i]),
                                  word_as_element(F, h->words[j]));
    SparseVec out;
    for (const auto& [w, c] : prod) out.emplace(h->index.at(w), c);
    return out;
  };

  WordBar wb;
  wb.words = h->words;
  wb.index = h->index;
  wb.algebra = std::make_unique<AugmentedBasis>(
      F, std::move(degrees), std::move(counit), std::move(unit),
      std::move(mult), std::move(atoms));
  wb.bar = std::make_unique<BarComplex>(*wb.algebra);
  return wb;
}

// ---- trigraded slice computation ---------------------------------------------

RootCohomology::RootCohomology(const Engine& R) : R_(&R) {
  if (R.options().with_group) {
    throw std::invalid_argument(
        "RootCohomology expects the positive part without group algebra");
  }
  for (const BasisWord& w : R.basis()) {
    if (is_unit_word(w)) continue;
    uint32_t id = static_cast<uint32_t>(words_.size());
    words_.push_back(w);
    index_.emplace(w, id);
    grades_.push_back(word_trigrade(w));
    top_ = std::max(top_, grades_.back().deg);
    long total = 0;
    for (uint16_t a : w.exp) total += a;
    if (total == 1) letters_.push_back(id);
    by_grade_[grades_.back()].push_back(id);
  }
  const AbelianGroup& G = R.group();
  for (uint32_t a = 0; a < words_.size(); ++a) {
    for (uint32_t b = 0; b < words_.size(); ++b) {
      Trigrade t{G.mul(grades_[a].g, grades_[b].g),
                 G.char_mul(grades_[a].chi, grades_[b].chi),
                 grades_[a].deg + grades_[b].deg};
      pairs_[t].emplace_back(a, b);
    }
  }
}

uint32_t RootCohomology::word_id(const BasisWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) {
    throw std::invalid_argument("word_id: not a nonempty basis word");
  }
  return it->second;
}

Trigrade RootCohomology::word_trigrade(const BasisWord& w) const {
  return {R_->word_group(w), R_->word_character(w), R_->word_degree(w)};
}

const std::vector<uint32_t>& RootCohomology::words_of(const Trigrade& t) const {
  static const std::vector<uint32_t> empty;
  auto it = by_grade_.find(t);
  return it == by_grade_.end() ? empty : it->second;
}

const std::vector<std::pair<uint32_t, uint32_t>>& RootCohomology::pairs_of(
    const Trigrade& t) const {
  static const std::vector<std::pair<uint32_t, uint32_t>> empty;
  auto it = pairs_.find(t);
  return it == pairs_.end() ? empty : it->second;
}

std::vector<Trigrade> RootCohomology::word_grades() const {
  std::vector<Trigrade> out;
  out.reserve(by_grade_.size());
  for (const auto& [t, ids] : by_grade_) out.push_back(t);
  return out;
}

std::vector<Trigrade> RootCohomology::pair_grades() const {
  std::vector<Trigrade> out;
  out.reserve(pairs_.size());
  for (const auto& [t, ps] : pairs_) out.push_back(t);
  return out;
}

SparseVec RootCohomology::word_product(uint32_t a, uint32_t b) const {
  if (grades_[a].deg + grades_[b].deg > top_) return {};  // graded, so zero
  const Element& prod = R_->pair_product(words_[a].exp, words_[b].exp);
  SparseVec out;
  for (const auto& [w, c] : prod) out.emplace(index_.at(w), c);
  return out;
}

std::unique_ptr<RootCohomology::Slice> RootCohomology::compute_slice(
    const Trigrade& t) const {
  auto s = std::make_unique<Slice>();
  s->grade = t;
  s->words = words_of(t);
  s->pairs = pairs_of(t);
  for (uint32_t k = 0; k < s->pairs.size(); ++k) {
    s->pair_index.emplace(s->pairs[k], k);
  }

  std::map<uint32_t, uint32_t> target;  // word id -> local row
  for (uint32_t k = 0; k < s->words.size(); ++k) target.emplace(s->words[k], k);

  const CycloField& F = field();

  // kernel of multiplication on the pair slice
  SparseEchelon mult(true);
  std::vector<uint32_t> pivot_pair;  // echelon tag -> pair index
  std::vector<SparseVec> kernel;
  for (uint32_t k = 0; k < s->pairs.size(); ++k) {
    SparseVec prod = word_product(s->pairs[k].first, s->pairs[k].second);
    SparseVec local;
    for (const auto& [id, c] : prod) local.emplace(target.at(id), c);
    auto [residual, comb] = mult.reduce(local);
    if (residual.empty()) {
      SparseVec kv;
      kv.emplace(k, F.one());
      for (const auto& [tag, c] : comb) {
        Scalar neg = F.zero() - c;
        if (!neg.is_zero()) kv.emplace(pivot_pair[tag], std::move(neg));
      }
      kernel.push_back(std::move(kv));
    } else {
      mult.insert(std::move(local));
      pivot_pair.push_back(k);
    }
  }

  // boundary image: triples led by a root-vector letter in the first slot
  const AbelianGroup& G = R_->group();
  for (uint32_t lx : letters_) {
    const Trigrade& gx = grades_[lx];
    if (gx.deg + 2 > t.deg) continue;
    for (uint32_t v = 0; v < words_.size(); ++v) {
      const Trigrade& gv = grades_[v];
      Trigrade rem{G.mul(t.g, G.inv(G.mul(gx.g, gv.g))),
                   G.char_mul(t.chi, G.char_inv(G.char_mul(gx.chi, gv.chi))),
                   t.deg - gx.deg - gv.deg};
      if (rem.deg < 1) continue;
      auto it = by_grade_.find(rem);
      if (it == by_grade_.end()) continue;
      SparseVec xv = word_product(lx, v);
      for (uint32_t w : it->second) {
        // (x v) (x) w - x (x) (v w)
        SparseVec row;
        for (const auto& [u, c] : xv) {
          row[s->pair_index.at({u, w})] = c;
        }
        SparseVec vw = word_product(v, w);
        for (const auto& [u, c] : vw) {
          uint32_t col = s->pair_index.at({lx, u});
          auto jt = row.find(col);
          if (jt == row.end()) {
            Scalar neg = F.zero() - c;
            if (!neg.is_zero()) row.emplace(col, std::move(neg));
          } else {
            jt->second = jt->second - c;
            if (jt->second.is_zero()) row.erase(jt);
          }
        }
        s->span.insert(std::move(row));
      }
    }
  }
  const size_t image = s->span.rank();

  // representatives: kernel vectors that are independent modulo the image
  for (SparseVec& kv : kernel) {
    auto [residual, comb] = s->span.reduce(kv);
    if (residual.empty()) continue;
    s->span.insert(kv);
    s->rep_tags.push_back(s->span.inserted() - 1);
    s->reps.push_back(std::move(kv));
  }

  s->dims.words = s->words.size();
  s->dims.pairs = s->pairs.size();
  s->dims.mult_rank = mult.rank();
  s->dims.kernel = kernel.size();
  s->dims.image = image;
  s->dims.h1 = s->words.size() - mult.rank();
  s->dims.h2 = s->reps.size();
  if (s->dims.kernel != s->dims.pairs - s->dims.mult_rank ||
      s->dims.h2 != s->dims.kernel - s->dims.image) {
    throw std::logic_error("slice dimension bookkeeping is inconsistent");
  }
  return s;
}

SliceDims RootCohomology::dims(const Trigrade& t) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = dims_.find(t);
    if (it != dims_.end()) return it->second;
  }
  auto s = compute_slice(t);
  std::lock_guard<std::mutex> lock(mu_);
  return dims_.emplace(t, s->dims).first->second;
}

const RootCohomology::Slice& RootCohomology::slice(const Trigrade& t) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = slices_.find(t);
    if (it != slices_.end()) return *it->second;
  }
  auto s = compute_slice(t);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = slices_.emplace(t, std::move(s));
  dims_.insert_or_assign(t, it->second->dims);
  return *it->second;
}

std::map<Trigrade, SliceDims> RootCohomology::sweep(bool parallel) const {
  std::vector<Trigrade> grades;
  {
    std::map<Trigrade, bool> all;
    for (const auto& [t, ids] : by_grade_) all.emplace(t, true);
    for (const auto& [t, ps] : pairs_) all.emplace(t, true);
    grades.reserve(all.size());
    for (const auto& [t, unused] : all) grades.push_back(t);
  }
  if (parallel) {
    parallel_for(grades.size(), [&](size_t k) { (void)dims(grades[k]); });
  }
  std::map<Trigrade, SliceDims> out;
  for (const Trigrade& t : grades) out.emplace(t, dims(t));
  return out;
}

std::optional<std::vector<Scalar>> RootCohomology::class_coordinates(
    const Slice& s, const SparseVec& v) const {
  auto [residual, comb] = s.span.reduce(v);
  if (!residual.empty()) return std::nullopt;
  std::vector<Scalar> coords;
  coords.reserve(s.rep_tags.size());
  for (size_t tag : s.rep_tags) {
    auto it = comb.find(static_cast<uint32_t>(tag));
    coords.push_back(it == comb.end() ? field().zero() : it->second);
  }
  return coords;
}

const std::vector<RootCohomology::PhiTerm>& RootCohomology::phi(
    uint32_t word_id) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = phi_.find(word_id);
    if (it != phi_.end()) return it->second;
  }
  const BasisWord& w = words_[word_id];
  const Trigrade& t = grades_[word_id];
  if (t.deg < 2) {
    throw std::invalid_argument("phi: word outside the ideal square");
  }
  long total = 0;
  for (uint16_t a : w.exp) total += a;
  std::vector<PhiTerm> terms;
  if (total >= 2) {
    size_t lead = 0;
    while (!w.exp[lead]) ++lead;
    BasisWord rest = w;
    rest.exp[lead] -= 1;
    terms.push_back(
        {index_.at(letter_word(*R_, lead)), index_.at(rest), field().one()});
  } else {
    // single composite root vector: solve mult(T) = w inside its slice
    const Slice& s = slice(t);
    DenseMatrix A(s.words.size(), s.pairs.size(), field());
    std::map<uint32_t, uint32_t> target;
    for (uint32_t k = 0; k < s.words.size(); ++k) target.emplace(s.words[k], k);
    for (uint32_t k = 0; k < s.pairs.size(); ++k) {
      SparseVec prod = word_product(s.pairs[k].first, s.pairs[k].second);
      for (const auto& [id, c] : prod) A.at(target.at(id), k) = c;
    }
    std::vector<Scalar> rhs(s.words.size(), field().zero());
    rhs[target.at(word_id)] = field().one();
    auto sol = A.solve(rhs);
    if (!sol) {
      throw std::logic_error("phi: composite root vector is not a product");
    }
    for (uint32_t k = 0; k < s.pairs.size(); ++k) {
      if (!(*sol)[k].is_zero()) {
        terms.push_back({s.pairs[k].first, s.pairs[k].second, (*sol)[k]});
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return phi_.emplace(word_id, std::move(terms)).first->second;
}

// ---- cochains ---------------------------------------------------------------

void Cochain::set(std::vector<BasisWord> t, Scalar c) {
  if (static_cast<int>(t.size()) != arity) {
    throw std::invalid_argument("Cochain::set: wrong tuple length");
  }
  if (c.is_zero()) {
    values.erase(t);
  } else {
    values.insert_or_assign(std::move(t), std::move(c));
  }
}

Scalar Cochain::eval(const CycloField& F,
                     const std::vector<BasisWord>& t) const {
  auto it = values.find(t);
  return it == values.end() ? F.zero() : it->second;
}

std::optional<long> cochain_degree(const Engine& E, const Cochain& f) {
  std::optional<long> deg;
  for (const auto& [t, c] : f.values) {
    long d = 0;
    for (const BasisWord& w : t) d += E.word_degree(w);
    if (!deg) {
      deg = d;
    } else if (*deg != d) {
      return std::nullopt;
    }
  }
  return deg;
}

Scalar eval_on_elements(const Engine& E, const Cochain& f, const Element& a,
                        const Element& b) {
  if (f.arity != 2) {
    throw std::invalid_argument("eval_on_elements: arity-2 cochain expected");
  }
  const CycloField& F = E.field();
  Scalar acc = F.zero();
  std::vector<BasisWord> key(2);
  for (const auto& [wa, ca] : a) {
    key[0] = wa;
    for (const auto& [wb, cb] : b) {
      key[1] = wb;
      const Scalar v = f.eval(F, key);
      if (!v.is_zero()) acc = acc + ca * cb * v;
    }
  }
  return acc;
}

Cochain letter_functional(const Engine& R, size_t root) {
  Cochain f;
  f.arity = 1;
  f.set({letter_word(R, root)}, R.field().one());
  return f;
}

Cochain cup(const CycloField& F, const Cochain& f, const Cochain& g) {
  Cochain out;
  out.arity = f.arity + g.arity;
  for (const auto& [tf, cf] : f.values) {
    for (const auto& [tg, cg] : g.values) {
      std::vector<BasisWord> t = tf;
      t.insert(t.end(), tg.begin(), tg.end());
      Scalar c = cf * cg + out.eval(F, t);
      out.set(std::move(t), std::move(c));
    }
  }
  return out;
}

Cochain linking_cocycle(const Engine& R, int vi, int vj) {
  if (vi >= vj) {
    throw std::invalid_argument("linking_cocycle: need vi < vj");
  }
  if (R.ctx().cartan()[vi][vj] != 0) {
    throw std::invalid_argument("linking_cocycle: vertices are adjacent");
  }
  size_t ri = simple_root_at(R, vi);
  size_t rj = simple_root_at(R, vj);
  Cochain f;
  f.set({letter_word(R, rj), letter_word(R, ri)}, R.field().one());
  return f;
}

Cochain root_power_cocycle(const RootCohomology& RC, const Engine& cover,
                           size_t alpha) {
  const Engine& R = RC.engine();
  if (cover.options().bounded || cover.options().with_group) {
    throw std::invalid_argument(
        "root_power_cocycle: the cover must be the unbounded positive part");
  }
  const long N = R.root_order(alpha);
  const long need = N * R.height(alpha);
  if (cover.truncation() < need) {
    throw std::invalid_argument(
        "root_power_cocycle: truncation bound " +
        std::to_string(cover.truncation()) + " is below N * height = " +
        std::to_string(need));
  }
  const auto& root = R.ctx().roots()[alpha];
  const AbelianGroup& G = R.group();
  Trigrade t{G.pow(root.g, N), G.char_pow(root.chi, N), need};
  const BasisWord power = power_word(R, alpha, N);
  Cochain f;
  for (const auto& [a, b] : RC.pairs_of(t)) {
    const Element& prod = cover.pair_product(RC.word(a).exp, RC.word(b).exp);
    auto it = prod.find(power);
    if (it != prod.end() && !it->second.is_zero()) {
      f.set({RC.word(a), RC.word(b)}, it->second);
    }
  }
  return f;
}

Cochain group_act(const Engine& R, const Cochain& f, GroupIndex gamma) {
  const CycloField& F = R.field();
  Cochain out;
  out.arity = f.arity;
  for (const auto& [t, c] : f.values) {
    Scalar chi = F.one();
    for (const BasisWord& w : t) chi = chi * R.chi_word_eval(w, gamma);
    out.set(t, c / chi);
  }
  return out;
}

std::optional<Scalar> action_eigenvalue(const Engine& R, const Cochain& f,
                                        GroupIndex gamma) {
  const CycloField& F = R.field();
  std::optional<Scalar> eig;
  for (const auto& [t, c] : f.values) {
    Scalar chi = F.one();
    for (const BasisWord& w : t) chi = chi * R.chi_word_eval(w, gamma);
    Scalar lambda = F.one() / chi;
    if (!eig) {
      eig = lambda;
    } else if (!(*eig - lambda).is_zero()) {
      return std::nullopt;
    }
  }
  if (!eig) eig = F.one();  // the zero cochain
  return eig;
}

bool group_invariant(const Engine& R, const Cochain& f) {
  const AbelianGroup& G = R.group();
  for (size_t k = 0; k < G.factors().size(); ++k) {
    std::vector<long> coords(G.factors().size(), 0);
    coords[k] = 1;
    auto eig = action_eigenvalue(R, f, G.index_of(coords));
    if (!eig || !(*eig - R.field().one()).is_zero()) return false;
  }
  return true;
}

Scalar transported_value(const Engine& B, const Cochain& f,
                         const std::vector<BasisWord>& tuple) {
  if (static_cast<int>(tuple.size()) != f.arity) {
    throw std::invalid_argument("transported_value: wrong tuple length");
  }
  const CycloField& F = B.field();
  const AbelianGroup& G = B.group();
  std::vector<BasisWord> positive(tuple.size());
  Scalar factor = F.one();
  GroupIndex prefix = G.identity();
  for (size_t k = 0; k < tuple.size(); ++k) {
    positive[k] = {tuple[k].exp, G.identity()};
    if (k > 0) {
      prefix = G.mul(prefix, tuple[k - 1].grp);
      if (prefix != G.identity()) {
        factor = factor * B.chi_word_eval(positive[k], prefix);
      }
    }
  }
  Scalar base = f.eval(F, positive);
  if (base.is_zero()) return base;
  return factor * base;
}

Cochain transport_to_biproduct(const Engine& B, const Cochain& f) {
  if (!B.options().with_group) {
    throw std::invalid_argument("transport_to_biproduct: no group part");
  }
  const size_t n = B.group().size();
  Cochain out;
  out.arity = f.arity;
  std::vector<GroupIndex> grps(static_cast<size_t>(f.arity),
                               B.group().identity());
  auto rec = [&](auto&& self, const std::vector<BasisWord>& base,
                 size_t slot) -> void {
    if (slot == grps.size()) {
      std::vector<BasisWord> t(base.size());
      for (size_t k = 0; k < base.size(); ++k) t[k] = {base[k].exp, grps[k]};
      Scalar v = transported_value(B, f, t);
      if (!v.is_zero()) out.set(std::move(t), std::move(v));
      return;
    }
    for (GroupIndex g = 0; g < n; ++g) {
      grps[slot] = g;
      self(self, base, slot + 1);
    }
  };
  for (const auto& [t, c] : f.values) rec(rec, t, 0);
  return out;
}

std::optional<std::string> biproduct_cocycle_violation(const Engine& B,
                                                       const Cochain& f,
                                                       size_t max_triples) {
  if (!B.options().with_group) {
    throw std::invalid_argument("biproduct_cocycle_violation: no group part");
  }
  auto deg = cochain_degree(B, f);
  if (!deg) {
    throw std::invalid_argument(
        "biproduct_cocycle_violation: homogeneous cochain expected");
  }
  const CycloField& F = B.field();
  const AbelianGroup& G = B.group();

  // plus parts of the basis, bucketed by degree
  struct Plus {
    BasisWord w;
    bool group_atom = false;  // gamma - 1 rather than a bare word
  };
  std::map<long, std::vector<Plus>> by_degree;
  std::vector<Plus> atoms;
  for (const BasisWord& w : B.basis()) {
    const bool unit_exp = is_unit_word(w);
    if (unit_exp && w.grp == G.identity()) continue;
    Plus p{w, unit_exp};
    by_degree[B.word_degree(w)].push_back(p);
    long total = 0;
    for (uint16_t a : w.exp) total += a;
    if (unit_exp || (total == 1 && w.grp == G.identity())) atoms.push_back(p);
  }
  const BasisWord unit{std::vector<uint16_t>(B.num_roots(), 0), G.identity()};
  auto as_element = [&](const Plus& p) {
    Element e = word_as_element(F, p.w);
    if (p.group_atom) add_term(e, unit, F.zero() - F.one());
    return e;
  };
  auto eval2 = [&](const Element& x, const Element& y) {
    Scalar acc = F.zero();
    std::vector<BasisWord> key(2);
    for (const auto& [wx, cx] : x) {
      key[0] = wx;
      for (const auto& [wy, cy] : y) {
        key[1] = wy;
        Scalar v = transported_value(B, f, key);
        if (!v.is_zero()) acc = acc + cx * cy * v;
      }
    }
    return acc;
  };

  // two passes: count matching triples, then evaluate an even subsample
  size_t total = 0;
  for (const auto& [da, as] : by_degree) {
    for (const Plus& q : atoms) {
      long dc = *deg - da - B.word_degree(q.w);
      auto it = by_degree.find(dc);
      if (it != by_degree.end()) total += as.size() * it->second.size();
    }
  }
  const size_t stride =
      (max_triples && total > max_triples) ? (total + max_triples - 1) / max_triples
                                           : 1;
  size_t position = 0;
  for (const auto& [da, as] : by_degree) {
    for (const Plus& pa : as) {
      for (const Plus& q : atoms) {
        long dc = *deg - da - B.word_degree(q.w);
        auto it = by_degree.find(dc);
        if (it == by_degree.end()) continue;
        const size_t block = it->second.size();
        // first selected position inside [position, position + block)
        size_t next = ((position + stride - 1) / stride) * stride;
        if (next >= position + block) {
          position += block;
          continue;
        }
        const Element ea = as_element(pa);
        const Element eq = as_element(q);
        const Element left = B.multiply(ea, eq);
        for (size_t p = next; p < position + block; p += stride) {
          const Plus& pc = it->second[p - position];
          const Element ec = as_element(pc);
          Scalar lhs = eval2(left, ec);
          Scalar rhs = eval2(ea, B.multiply(eq, ec));
          if (!(lhs - rhs).is_zero()) {
            std::ostringstream os;
            os << "cocycle identity fails on (" << B.word_to_string(pa.w)
               << (pa.group_atom ? " - 1" : "") << ", "
               << B.word_to_string(q.w) << (q.group_atom ? " - 1" : "") << ", "
               << B.word_to_string(pc.w) << (pc.group_atom ? " - 1" : "")
               << ")";
            return os.str();
          }
        }
        position += block;
      }
    }
  }
  return std::nullopt;
}

// ---- the degree-two basis of the biproduct -----------------------------------

Scalar root_power_witness(const Engine& R, const Cochain& f, size_t alpha) {
  const long N = R.root_order(alpha);
  return f.eval(R.field(),
                {letter_word(R, alpha), power_word(R, alpha, N - 1)});
}

Scalar linking_witness(const Engine& R, const Cochain& f, int vi, int vj) {
  size_t ri = simple_root_at(R, vi);
  size_t rj = simple_root_at(R, vj);
  // commutation scalar c with x_j x_i = c x_i x_j
  Element prod = R.nf_letters({static_cast<int>(rj), static_cast<int>(ri)},
                              R.group().identity(), R.field().one());
  BasisWord xixj;
  xixj.exp.assign(R.num_roots(), 0);
  xixj.exp[ri] = 1;
  xixj.exp[rj] = 1;
  auto it = prod.find(xixj);
  if (it == prod.end() || prod.size() != 1) {
    throw std::invalid_argument(
        "linking_witness: vertices do not simply commute");
  }
  const Scalar& c = it->second;
  const CycloField& F = R.field();
  return f.eval(F, {letter_word(R, rj), letter_word(R, ri)}) -
         c * f.eval(F, {letter_word(R, ri), letter_word(R, rj)});
}

std::vector<H2Class> biproduct_h2_basis(const RootCohomology& RC,
                                        const Engine& cover) {
  const Engine& R = RC.engine();
  const AbelianGroup& G = R.group();
  const CycloField& F = R.field();

  std::vector<H2Class> classes;
  for (size_t r = 0; r < R.num_roots(); ++r) {
    const auto& root = R.ctx().roots()[r];
    Character chiN = G.char_pow(root.chi, root.N);
    if (!G.char_is_trivial(chiN)) continue;
    H2Class c;
    c.kind = H2Class::Kind::RootPower;
    c.root = r;
    c.grade = {G.pow(root.g, root.N), chiN, root.N * root.height};
    c.on_R = root_power_cocycle(RC, cover, r);
    c.label = "root-power[" + std::to_string(r) + "]";
    classes.push_back(std::move(c));
  }
  const int theta = R.ctx().theta();
  for (int i = 0; i < theta; ++i) {
    for (int j = i + 1; j < theta; ++j) {
      if (R.ctx().cartan()[i][j] != 0) continue;
      Character prod = G.char_mul(R.ctx().chi(i), R.ctx().chi(j));
      if (!G.char_is_trivial(prod)) continue;
      H2Class c;
      c.kind = H2Class::Kind::Linking;
      c.vi = i;
      c.vj = j;
      c.grade = {G.mul(R.ctx().g(i), R.ctx().g(j)), prod, 2};
      c.on_R = linking_cocycle(R, i, j);
      c.label = "linking[" + std::to_string(j) + "," + std::to_string(i) + "]";
      classes.push_back(std::move(c));
    }
  }

  std::map<Trigrade, std::vector<const H2Class*>> by_slice;
  for (const H2Class& c : classes) by_slice[c.grade].push_back(&c);

  // every trivial-character slice must carry exactly as many candidates as
  // its dimension, and their induced functionals must be independent
  auto all = RC.sweep();
  for (const auto& [t, d] : all) {
    if (!G.char_is_trivial(t.chi)) continue;
    auto it = by_slice.find(t);
    const size_t candidates = it == by_slice.end() ? 0 : it->second.size();
    if (d.h2 != candidates) {
      throw std::runtime_error(
          "degree-two class count mismatch in an invariant slice: computed " +
          std::to_string(d.h2) + ", predicted " + std::to_string(candidates) +
          " (degree " + std::to_string(t.deg) + ")");
    }
    if (candidates == 0) continue;
    const auto& s = RC.slice(t);
    DenseMatrix m(candidates, d.h2, F);
    for (size_t row = 0; row < candidates; ++row) {
      auto coords = induced_functional(RC, s, it->second[row]->on_R);
      for (size_t col = 0; col < d.h2; ++col) m.at(row, col) = coords[col];
    }
    if (m.rank() != candidates) {
      throw std::runtime_error(
          "predicted degree-two classes are dependent in a slice of degree " +
          std::to_string(t.deg));
    }
  }
  return classes;
}

// ---- slice functionals <-> two-cochains ---------------------------------------

Cochain functional_cochain(const RootCohomology& RC,
                           const RootCohomology::Slice& s,
                           const std::vector<Scalar>& g) {
  if (g.size() != s.reps.size()) {
    throw std::invalid_argument("functional_cochain: wrong functional size");
  }
  const CycloField& F = RC.field();
  Cochain out;
  for (uint32_t k = 0; k < s.pairs.size(); ++k) {
    // class of a (x) b - phi(ab), a multiplication-kernel vector
    SparseVec v;
    v.emplace(k, F.one());
    SparseVec prod = RC.word_product(s.pairs[k].first, s.pairs[k].second);
    for (const auto& [u, cu] : prod) {
      for (const auto& term : RC.phi(u)) {
        uint32_t col = s.pair_index.at({term.a, term.b});
        Scalar c = cu * term.c;
        auto jt = v.find(col);
        if (jt == v.end()) {
          Scalar neg = F.zero() - c;
          if (!neg.is_zero()) v.emplace(col, std::move(neg));
        } else {
          jt->second = jt->second - c;
          if (jt->second.is_zero()) v.erase(jt);
        }
      }
    }
    auto coords = RC.class_coordinates(s, v);
    if (!coords) {
      throw std::logic_error("functional_cochain: vector is not a cocycle");
    }
    Scalar value = F.zero();
    for (size_t i = 0; i < g.size(); ++i) value = value + (*coords)[i] * g[i];
    if (!value.is_zero()) {
      out.set({RC.word(s.pairs[k].first), RC.word(s.pairs[k].second)},
              std::move(value));
    }
  }
  return out;
}

std::vector<Scalar> induced_functional(const RootCohomology& RC,
                                       const RootCohomology::Slice& s,
                                       const Cochain& f) {
  const CycloField& F = RC.field();
  std::vector<Scalar> out;
  out.reserve(s.reps.size());
  for (const SparseVec& rep : s.reps) {
    Scalar acc = F.zero();
    for (const auto& [k, c] : rep) {
      Scalar v = f.eval(F, {RC.word(s.pairs[k].first), RC.word(s.pairs[k].second)});
      if (!v.is_zero()) acc = acc + c * v;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace hopfcoh
