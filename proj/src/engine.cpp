#include "hopfcoh/engine.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hopfcoh {

namespace {
constexpr size_t kStepCap = 10'000'000;  // guards against a broken rule set
}

void add_term(Element& acc, const BasisWord& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void axpy(Element& acc, const Element& x, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [w, v] : x) add_term(acc, w, v * c);
}

Element scaled(const Element& x, const Scalar& c) {
  Element r;
  axpy(r, x, c);
  return r;
}

Engine::Engine(const DatumContext& ctx, EngineOptions opt)
    : ctx_(&ctx), opt_(opt) {
  if (!opt_.with_group) {
    // lambda and mu corrections live in the group algebra
    opt_.use_lambda = false;
    opt_.use_mu = false;
  }
  const auto& roots = ctx_->roots();
  p_ = roots.size();
  N_.resize(p_);
  height_.resize(p_);
  letter_g_.resize(p_);
  letter_chi_.resize(p_);
  simple_.resize(p_);
  vertex_.resize(p_);
  comp_.resize(p_);
  long max_full = 0;
  for (size_t r = 0; r < p_; ++r) {
    N_[r] = roots[r].N;
    height_[r] = roots[r].height;
    letter_g_[r] = roots[r].g;
    letter_chi_[r] = roots[r].chi;
    simple_[r] = roots[r].simple;
    vertex_[r] = roots[r].vertex;
    comp_[r] = roots[r].component;
    max_full = std::max(max_full, N_[r] * height_[r]);
  }
  if (!opt_.bounded) {
    truncation_ = opt_.truncation > 0 ? opt_.truncation : 2 * max_full;
  }
  exchange_.assign(p_ * p_, {});
  has_exchange_.assign(p_ * p_, false);
  build_cross_simple_rules();
  build_a2_rules();
  build_power_rules();
  if (opt_.bounded) {
    size_t dim = 1;
    for (size_t r = 0; r < p_; ++r) dim *= static_cast<size_t>(N_[r]);
    if (opt_.with_group) dim *= static_cast<size_t>(group().size());
    dimension_ = dim;
  }
}

Scalar Engine::chi_letter_eval(int r, GroupIndex g) const {
  return group().char_eval(field(), letter_chi_[r], g);
}

const Engine::Rule* Engine::find_exchange(int hi, int lo) const {
  size_t idx = static_cast<size_t>(hi) * p_ + static_cast<size_t>(lo);
  return has_exchange_[idx] ? &exchange_[idx] : nullptr;
}

void Engine::build_cross_simple_rules() {
  for (size_t hi = 0; hi < p_; ++hi) {
    for (size_t lo = 0; lo < hi; ++lo) {
      if (!simple_[hi] || !simple_[lo] || comp_[hi] == comp_[lo]) continue;
      int iv = vertex_[lo], jv = vertex_[hi];
      // x_hi x_lo = chi_lo(g_hi) x_lo x_hi + lambda (1 - g_lo g_hi)
      Rule rule;
      rule.push_back({{static_cast<int>(lo), static_cast<int>(hi)},
                      0,
                      ctx_->braiding(jv, iv)});
      if (opt_.use_lambda) {
        Scalar lam = (jv < iv) ? ctx_->lambda_ij(jv, iv)
                               : ctx_->lambda_ji(iv, jv);
        if (!lam.is_zero()) {
          rule.push_back({{}, group().identity(), lam});
          rule.push_back({{}, group().mul(letter_g_[hi], letter_g_[lo]),
                          -lam});
        }
      }
      exchange_[hi * p_ + lo] = std::move(rule);
      has_exchange_[hi * p_ + lo] = true;
    }
  }
}

void Engine::build_a2_rules() {
  int a2 = -1;
  const auto& comps = ctx_->components();
  for (size_t c = 0; c < comps.size(); ++c) {
    if (comps[c].is_a2) a2 = static_cast<int>(c);
  }
  if (a2 < 0) return;
  std::vector<int> letters;
  for (size_t r = 0; r < p_; ++r) {
    if (comp_[r] == a2) letters.push_back(static_cast<int>(r));
  }
  if (letters.size() != 3 || !simple_[letters[0]] || simple_[letters[1]] ||
      !simple_[letters[2]]) {
    throw std::logic_error("A2 component does not have shape (x_u, x_w, x_v)");
  }
  const int u = letters[0], w = letters[1], v = letters[2];
  const int uu = vertex_[u], vv = vertex_[v];
  const Scalar Q = ctx_->braiding(uu, vv);   // chi_v(g_u)
  const Scalar s = ctx_->braiding(uu, uu);   // chi_u(g_u)
  const Scalar P = ctx_->braiding(vv, uu);   // chi_u(g_v)
  const Scalar t = ctx_->braiding(vv, vv);   // chi_v(g_v)
  const Scalar Qi = Q.inverse();

  // Orient the braided commutator x_w = x_u x_v - Q x_v x_u:
  //   x_v x_u -> Q^{-1} x_u x_v - Q^{-1} x_w
  size_t r0_idx = static_cast<size_t>(v) * p_ + static_cast<size_t>(u);
  exchange_[r0_idx] = {{{u, v}, 0, Qi}, {{w}, 0, -Qi}};
  has_exchange_[r0_idx] = true;

  auto derive_from_serre = [&](std::vector<FreeTerm> serre, int shi, int slo,
                               const char* which) {
    // Partially normalize the Serre element, leaving the pair being derived
    // opaque; the result must be supported on exactly the stuck word
    // (shi, slo) and its straightened form (slo, shi).
    FreeElement f = partial_nf(std::move(serre), {{shi, slo}});
    FreeKey normal_key{{slo, shi}, 0};
    FreeKey stuck_key{{shi, slo}, 0};
    Scalar A, B;
    for (const auto& [key, c] : f) {
      if (key == normal_key) {
        A = c;
      } else if (key == stuck_key) {
        B = c;
      } else if (!c.is_zero()) {
        throw std::logic_error(std::string("Serre derivation (") + which +
                               ") produced an unexpected word");
      }
    }
    if (A.is_zero() || B.is_zero()) {
      throw std::logic_error(std::string("Serre derivation (") + which +
                             ") degenerated");
    }
    size_t idx = static_cast<size_t>(shi) * p_ + static_cast<size_t>(slo);
    exchange_[idx] = {{{slo, shi}, 0, -(A / B)}};
    has_exchange_[idx] = true;
  };

  const Scalar one = field().one();
  // (ad_c x_u)^2 (x_v) = x_u^2 x_v - Q(1+s) x_u x_v x_u + s Q^2 x_v x_u^2
  derive_from_serre({{{u, u, v}, 0, one},
                     {{u, v, u}, 0, -(Q * (one + s))},
                     {{v, u, u}, 0, s * Q * Q}},
                    w, u, "upper");
  // (ad_c x_v)^2 (x_u) = x_v^2 x_u - P(1+t) x_v x_u x_v + t P^2 x_u x_v^2
  derive_from_serre({{{v, v, u}, 0, one},
                     {{v, u, v}, 0, -(P * (one + t))},
                     {{u, v, v}, 0, t * P * P}},
                    v, w, "lower");

  // Exchange rules between the composite letter w and other components.
  for (size_t y = 0; y < p_; ++y) {
    if (comp_[y] == a2) continue;
    int yl = static_cast<int>(y);
    size_t idx = yl > w ? y * p_ + static_cast<size_t>(w)
                        : static_cast<size_t>(w) * p_ + y;
    exchange_[idx] = derive_w_cross_rule(w, yl, yl < w, u, v);
    has_exchange_[idx] = true;
  }
}

Engine::Rule Engine::derive_w_cross_rule(int w, int y, bool w_is_high, int u,
                                         int v) const {
  const Scalar Q = ctx_->braiding(vertex_[u], vertex_[v]);
  const Scalar one = field().one();
  // Expand x_w = x_u x_v - Q x_v x_u on the appropriate side of x_y and
  // push x_y through with the simple-simple rules only (all pairs among the
  // A2 letters stay opaque), then recognize the commutator pattern.
  std::vector<FreeTerm> start;
  std::vector<int> uv_word, vu_word, rhs_leading;
  if (w_is_high) {  // LHS x_w x_y
    start = {{{u, v, y}, 0, one}, {{v, u, y}, 0, -Q}};
    uv_word = {y, u, v};
    vu_word = {y, v, u};
    rhs_leading = {y, w};
  } else {  // LHS x_y x_w
    start = {{{y, u, v}, 0, one}, {{y, v, u}, 0, -Q}};
    uv_word = {u, v, y};
    vu_word = {v, u, y};
    rhs_leading = {w, y};
  }
  FreeElement f =
      partial_nf(std::move(start), {{w, u}, {v, u}, {v, w}});
  FreeKey uv_key{uv_word, 0}, vu_key{vu_word, 0};
  auto it_uv = f.find(uv_key);
  auto it_vu = f.find(vu_key);
  if (it_uv == f.end() || it_vu == f.end()) {
    throw std::logic_error("composite-letter exchange: pattern missing");
  }
  Scalar A = it_uv->second;
  if (!(it_vu->second == -(A * Q))) {
    throw std::logic_error(
        "composite-letter exchange: commutator pattern did not close");
  }
  f.erase(uv_key);
  f.erase(vu_key);
  Rule rule;
  rule.push_back({rhs_leading, 0, A});
  for (const auto& [key, c] : f) {
    if (key.first.size() >= 3) {
      throw std::logic_error(
          "composite-letter exchange: unexpected high-degree tail");
    }
    rule.push_back({key.first, key.second, c});
  }
  return rule;
}

void Engine::build_power_rules() {
  power_.assign(p_, {});
  if (!opt_.bounded || !opt_.use_mu) return;  // x_r^{N_r} -> 0
  for (size_t r = 0; r < p_; ++r) {
    if (!simple_[r]) {
      // With root-vector scalars restricted to simple roots, the inductive
      // constant for the composite root vanishes identically: every term of
      // the recursion carries a factor mu_beta or u^beta of a simple root
      // beta with mu_beta = 0 on the other vertex.
      continue;
    }
    for (const auto& [g, c] : ctx_->u_alpha_simple(static_cast<int>(r))) {
      if (!c.is_zero()) power_[r].push_back({{}, g, c});
    }
  }
}

std::vector<Engine::Position> Engine::applicable_positions(
    const FreeTerm& t, bool partial) const {
  std::vector<Position> out;
  const auto& l = t.l;
  for (size_t k = 0; k + 1 < l.size(); ++k) {
    if (l[k] > l[k + 1]) {
      if (find_exchange(l[k], l[k + 1]) != nullptr) {
        out.push_back({0, static_cast<int>(k)});
      } else if (!partial) {
        throw std::logic_error("no exchange rule for a descending pair");
      }
    }
  }
  if (opt_.bounded && !partial) {
    for (size_t k = 0; k < l.size(); ++k) {
      long n = N_[l[k]];
      if (k + static_cast<size_t>(n) > l.size()) continue;
      bool run = true;
      for (long m = 1; m < n; ++m) {
        if (l[k + static_cast<size_t>(m)] != l[k]) {
          run = false;
          break;
        }
      }
      if (run) out.push_back({1, static_cast<int>(k)});
    }
    std::sort(out.begin(), out.end(), [](const Position& a, const Position& b) {
      return a.pos != b.pos ? a.pos < b.pos : a.kind < b.kind;
    });
  }
  return out;
}

void Engine::apply_rule(const FreeTerm& t, Position pos,
                        std::vector<FreeTerm>& out) const {
  const auto& l = t.l;
  size_t k = static_cast<size_t>(pos.pos);
  const Rule* rule;
  size_t consumed;
  if (pos.kind == 0) {
    rule = find_exchange(l[k], l[k + 1]);
    consumed = 2;
  } else {
    rule = &power_[l[k]];
    consumed = static_cast<size_t>(N_[l[k]]);
  }
  for (const RuleTerm& rt : *rule) {
    FreeTerm nt;
    nt.l.reserve(l.size() - consumed + rt.letters.size());
    nt.l.insert(nt.l.end(), l.begin(), l.begin() + static_cast<long>(k));
    nt.l.insert(nt.l.end(), rt.letters.begin(), rt.letters.end());
    nt.l.insert(nt.l.end(), l.begin() + static_cast<long>(k + consumed),
                l.end());
    Scalar c = t.c * rt.coeff;
    GroupIndex g = t.grp;
    if (rt.grp != group().identity()) {
      // commute the rule's group element right through the tail letters
      for (size_t m = k + consumed; m < l.size(); ++m) {
        c = c * chi_letter_eval(l[m], rt.grp);
      }
      g = group().mul(rt.grp, g);
    }
    if (!c.is_zero()) {
      nt.grp = g;
      nt.c = std::move(c);
      out.push_back(std::move(nt));
    }
  }
}

Element Engine::rewrite(FreeTerm start, int strategy, uint64_t seed) const {
  Element result;
  std::vector<FreeTerm> stack;
  stack.push_back(std::move(start));
  std::mt19937_64 rng(seed);
  size_t steps = 0;
  while (!stack.empty()) {
    if (++steps > kStepCap) {
      throw std::logic_error("rewrite step cap exceeded: rule system broken");
    }
    FreeTerm t = std::move(stack.back());
    stack.pop_back();
    if (t.c.is_zero()) continue;
    auto positions = applicable_positions(t, false);
    if (positions.empty()) {
      BasisWord word;
      word.exp.assign(p_, 0);
      for (int letter : t.l) word.exp[static_cast<size_t>(letter)] += 1;
      word.grp = t.grp;
      add_term(result, word, t.c);
      continue;
    }
    Position chosen;
    if (strategy == 0) {
      chosen = positions.front();
    } else if (strategy == 1) {
      chosen = positions.back();
    } else {
      chosen = positions[std::uniform_int_distribution<size_t>(
          0, positions.size() - 1)(rng)];
    }
    apply_rule(t, chosen, stack);
  }
  return result;
}

Engine::FreeElement Engine::partial_nf(
    std::vector<FreeTerm> work,
    const std::vector<std::pair<int, int>>& opaque) const {
  auto is_opaque = [&](int hi, int lo) {
    for (const auto& [h, l] : opaque) {
      if (h == hi && l == lo) return true;
    }
    return false;
  };
  FreeElement result;
  size_t steps = 0;
  while (!work.empty()) {
    if (++steps > kStepCap) {
      throw std::logic_error("partial rewrite step cap exceeded");
    }
    FreeTerm t = std::move(work.back());
    work.pop_back();
    if (t.c.is_zero()) continue;
    int found = -1;
    for (size_t k = 0; k + 1 < t.l.size(); ++k) {
      if (t.l[k] > t.l[k + 1] && !is_opaque(t.l[k], t.l[k + 1]) &&
          find_exchange(t.l[k], t.l[k + 1]) != nullptr) {
        found = static_cast<int>(k);
        break;
      }
    }
    if (found < 0) {
      FreeKey key{t.l, t.grp};
      auto it = result.find(key);
      if (it == result.end()) {
        result.emplace(std::move(key), t.c);
      } else {
        it->second = it->second + t.c;
        if (it->second.is_zero()) result.erase(it);
      }
      continue;
    }
    apply_rule(t, {0, found}, work);
  }
  return result;
}

Element Engine::one() const {
  Element e;
  BasisWord w;
  w.exp.assign(p_, 0);
  e.emplace(std::move(w), field().one());
  return e;
}

Element Engine::from_scalar(const Scalar& c) const { return scaled(one(), c); }

Element Engine::generator(size_t root_index) const {
  if (root_index >= p_) throw std::invalid_argument("generator: bad root");
  Element e;
  BasisWord w;
  w.exp.assign(p_, 0);
  w.exp[root_index] = 1;
  e.emplace(std::move(w), field().one());
  return e;
}

Element Engine::group_element(GroupIndex g) const {
  if (!opt_.with_group && g != group().identity()) {
    throw std::invalid_argument("group_element: algebra has no group part");
  }
  Element e;
  BasisWord w;
  w.exp.assign(p_, 0);
  w.grp = g;
  e.emplace(std::move(w), field().one());
  return e;
}

Element Engine::nf_letters(const std::vector<int>& letters, GroupIndex grp,
                           const Scalar& coeff) const {
  long deg = 0;
  for (int l : letters) {
    if (l < 0 || static_cast<size_t>(l) >= p_) {
      throw std::invalid_argument("nf_letters: letter out of range");
    }
    deg += height_[static_cast<size_t>(l)];
  }
  if (!opt_.bounded && deg > truncation_) {
    throw TruncationExceeded("word degree " + std::to_string(deg) +
                             " exceeds truncation bound " +
                             std::to_string(truncation_));
  }
  if (grp != group().identity() && !opt_.with_group) {
    throw std::invalid_argument("nf_letters: algebra has no group part");
  }
  if (coeff.is_zero()) return {};
  return rewrite({letters, grp, coeff}, 0, 0);
}

const Element& Engine::pair_product(const std::vector<uint16_t>& ea,
                                    const std::vector<uint16_t>& eb) const {
  std::pair<std::vector<uint16_t>, std::vector<uint16_t>> key{ea, eb};
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  size_t total_a = 0, total_b = 0;
  for (uint16_t e : ea) total_a += e;
  for (uint16_t e : eb) total_b += e;

  Element product;
  if (total_a > 0 && total_b > 1) {
    // peel the last letter of b and extend the memoized prefix product:
    // a * b = (a * b') * x_j, with the group twist x_j picks up moving past
    // group parts created by bounded power or linking rules
    size_t last = p_;
    while (eb[--last] == 0) {
    }
    std::vector<uint16_t> prefix_exp = eb;
    --prefix_exp[last];
    std::vector<uint16_t> letter_exp(p_, 0);
    letter_exp[last] = 1;
    const BasisWord letter{letter_exp, group().identity()};
    const Element& prefix = pair_product(ea, prefix_exp);
    for (const auto& [w, c] : prefix) {
      const Element& step = pair_product(w.exp, letter_exp);
      Scalar factor = c;
      if (w.grp != group().identity()) {
        factor = factor * chi_word_eval(letter, w.grp);
      }
      for (const auto& [u, cu] : step) {
        add_term(product, {u.exp, group().mul(u.grp, w.grp)}, cu * factor);
      }
    }
  } else {
    std::vector<int> letters;
    for (size_t r = 0; r < p_; ++r) {
      letters.insert(letters.end(), ea[r], static_cast<int>(r));
    }
    for (size_t r = 0; r < p_; ++r) {
      letters.insert(letters.end(), eb[r], static_cast<int>(r));
    }
    product = nf_letters(letters, group().identity(), field().one());
  }
  std::unique_lock lock(memo_mutex_);
  return memo_.emplace(std::move(key), std::move(product)).first->second;
}

Element Engine::multiply(const Element& a, const Element& b) const {
  auto check = [&](const Element& e) {
    if (e.empty()) return;
    const BasisWord& w = e.begin()->first;
    if (w.exp.size() != p_ || (!opt_.with_group && w.grp != 0)) {
      throw std::invalid_argument("multiply: element from a different algebra");
    }
  };
  check(a);
  check(b);
  Element result;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      const Element& base = pair_product(wa.exp, wb.exp);
      Scalar factor = ca * cb;
      if (wa.grp != group().identity()) {
        factor = factor * chi_word_eval(wb, wa.grp);
      }
      GroupIndex shift = group().mul(wa.grp, wb.grp);
      for (const auto& [w, c] : base) {
        add_term(result, {w.exp, group().mul(w.grp, shift)}, c * factor);
      }
    }
  }
  return result;
}

long Engine::word_degree(const BasisWord& w) const {
  long d = 0;
  for (size_t r = 0; r < p_; ++r) d += height_[r] * w.exp[r];
  return d;
}

bool Engine::is_homogeneous(const Element& e, long* degree_out) const {
  bool first = true;
  long deg = 0;
  for (const auto& [w, c] : e) {
    long d = word_degree(w);
    if (first) {
      deg = d;
      first = false;
    } else if (d != deg) {
      return false;
    }
  }
  if (degree_out) *degree_out = first ? 0 : deg;
  return true;
}

GroupIndex Engine::word_group(const BasisWord& w) const {
  GroupIndex g = w.grp;
  for (size_t r = 0; r < p_; ++r) {
    if (w.exp[r]) g = group().mul(g, group().pow(letter_g_[r], w.exp[r]));
  }
  return g;
}

Character Engine::word_character(const BasisWord& w) const {
  Character chi = group().reduce_character(
      std::vector<long>(group().factors().size(), 0));
  for (size_t r = 0; r < p_; ++r) {
    if (w.exp[r]) {
      chi = group().char_mul(chi, group().char_pow(letter_chi_[r], w.exp[r]));
    }
  }
  return chi;
}

Scalar Engine::chi_word_eval(const BasisWord& w, GroupIndex g) const {
  Scalar c = field().one();
  for (size_t r = 0; r < p_; ++r) {
    if (w.exp[r]) {
      c = c * group().char_eval(field(),
                                group().char_pow(letter_chi_[r], w.exp[r]), g);
    }
  }
  return c;
}

Scalar Engine::counit(const Element& e) const {
  Scalar acc = field().zero();
  for (const auto& [w, c] : e) {
    bool unit_word = true;
    for (uint16_t a : w.exp) {
      if (a) {
        unit_word = false;
        break;
      }
    }
    if (unit_word) acc = acc + c;
  }
  return acc;
}

std::vector<BasisWord> Engine::basis() const {
  if (!opt_.bounded) {
    throw std::logic_error("basis(): unbounded algebra");
  }
  std::vector<BasisWord> out;
  out.reserve(dimension_);
  std::vector<uint16_t> exp(p_, 0);
  long n_grp = opt_.with_group ? group().size() : 1;
  while (true) {
    for (long g = 0; g < n_grp; ++g) {
      out.push_back({exp, static_cast<GroupIndex>(g)});
    }
    // lexicographic odometer: last digit fastest
    size_t r = p_;
    while (r > 0) {
      --r;
      if (exp[r] + 1 < N_[r]) {
        exp[r] += 1;
        std::fill(exp.begin() + static_cast<long>(r) + 1, exp.end(), 0);
        break;
      }
      if (r == 0) return out;
    }
    if (p_ == 0) return out;
  }
}

std::vector<BasisWord> Engine::basis_of_degree(long d) const {
  std::vector<BasisWord> out;
  std::vector<uint16_t> exp(p_, 0);
  long n_grp = opt_.with_group ? group().size() : 1;
  auto rec = [&](auto&& self, size_t r, long remaining) -> void {
    if (r == p_) {
      if (remaining == 0) {
        for (long g = 0; g < n_grp; ++g) {
          out.push_back({exp, static_cast<GroupIndex>(g)});
        }
      }
      return;
    }
    long max_a = remaining / height_[r];
    if (opt_.bounded) max_a = std::min(max_a, N_[r] - 1);
    for (long a = 0; a <= max_a; ++a) {
      exp[r] = static_cast<uint16_t>(a);
      self(self, r + 1, remaining - a * height_[r]);
    }
    exp[r] = 0;
  };
  if (d >= 0) rec(rec, 0, d);
  return out;
}

size_t Engine::dimension() const {
  if (!opt_.bounded) throw std::logic_error("dimension(): unbounded algebra");
  return dimension_;
}

ConfluenceReport Engine::confluence_check(long degree_bound,
                                          int num_strategies) const {
  ConfluenceReport report;
  std::vector<BasisWord> words;
  for (long d = 0; d <= degree_bound; ++d) {
    // group parts only contribute a common scalar prefactor computed before
    // any rewriting, so identity group parts cover all cases
    std::vector<uint16_t> exp(p_, 0);
    auto rec = [&](auto&& self, size_t r, long remaining) -> void {
      if (r == p_) {
        if (remaining == 0) words.push_back({exp, 0});
        return;
      }
      long max_a = remaining / height_[r];
      if (opt_.bounded) max_a = std::min(max_a, N_[r] - 1);
      for (long a = 0; a <= max_a; ++a) {
        exp[r] = static_cast<uint16_t>(a);
        self(self, r + 1, remaining - a * height_[r]);
      }
      exp[r] = 0;
    };
    rec(rec, 0, d);
  }
  for (const BasisWord& uw : words) {
    for (const BasisWord& vw : words) {
      if (word_degree(uw) + word_degree(vw) > degree_bound) continue;
      std::vector<int> letters;
      for (size_t r = 0; r < p_; ++r) {
        letters.insert(letters.end(), uw.exp[r], static_cast<int>(r));
      }
      for (size_t r = 0; r < p_; ++r) {
        letters.insert(letters.end(), vw.exp[r], static_cast<int>(r));
      }
      Element reference =
          rewrite({letters, 0, field().one()}, 0, 0);
      ++report.pairs_checked;
      for (int s = 1; s < num_strategies; ++s) {
        Element other = rewrite({letters, 0, field().one()}, s,
                                0x9e3779b97f4a7c15ull * (s + 1) +
                                    report.pairs_checked);
        if (other != reference) {
          report.confluent = false;
          report.divergence = "product " + word_to_string(uw) + " * " +
                              word_to_string(vw) + " diverges under strategy " +
                              std::to_string(s);
          return report;
        }
      }
    }
  }
  return report;
}

void Engine::scale_rule_for_fault_injection(size_t hi, size_t lo,
                                            const Scalar& factor) {
  size_t idx = hi * p_ + lo;
  if (hi >= p_ || lo >= hi || !has_exchange_[idx]) {
    throw std::invalid_argument("no exchange rule at this pair");
  }
  for (RuleTerm& t : exchange_[idx]) t.coeff = t.coeff * factor;
  std::unique_lock lock(memo_mutex_);
  memo_.clear();
}

std::string Engine::word_to_string(const BasisWord& w) const {
  std::ostringstream os;
  bool any = false;
  const auto& roots = ctx_->roots();
  for (size_t r = 0; r < p_; ++r) {
    if (!w.exp[r]) continue;
    if (any) os << ".";
    any = true;
    os << "x";
    for (size_t j = 0; j < roots[r].coeffs.size(); ++j) {
      for (int m = 0; m < roots[r].coeffs[j]; ++m) os << (j + 1);
    }
    if (w.exp[r] > 1) os << "^" << w.exp[r];
  }
  if (w.grp != group().identity()) {
    if (any) os << ".";
    any = true;
    os << group().element_to_string(w.grp);
  }
  if (!any) os << "1";
  return os.str();
}

std::string Engine::to_string(const Element& e) const {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*" << word_to_string(w);
  }
  return os.str();
}

}  // namespace hopfcoh
