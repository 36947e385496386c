#include "hopfcoh/datum.hpp"

#include <algorithm>
#include <stdexcept>
#include <numeric>

namespace hopfcoh {

namespace {

std::string vertex_pair(int i, int j) {  // 1-based in messages
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string root_name(const std::vector<int>& coeffs) {
  std::string s = "[";
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coeffs[i]);
  }
  return s + "]";
}

}  // namespace

Scalar ScalarLiteral::resolve(const CycloField& F) const {
  Scalar s = F.zero();
  for (const auto& t : terms)
    s += F.rational(t.coeff) * F.root_of_unity(t.zeta_order, t.power);
  return s;
}

bool ScalarLiteral::literally_zero() const {
  for (const auto& t : terms)
    if (t.coeff != 0) return false;
  return true;
}

std::unique_ptr<DatumContext> DatumContext::build(const CartanDatum& d,
                                                  ValidationReport& report) {
  report = ValidationReport{};
  auto err = [&](std::string m) { report.errors.push_back(std::move(m)); };
  auto warn = [&](std::string m) { report.warnings.push_back(std::move(m)); };

  // ---- structural checks ----
  if (d.theta < 1) {
    err("theta must be >= 1");
    return nullptr;
  }
  const int th = d.theta;
  if (static_cast<int>(d.cartan.size()) != th) {
    err("cartan matrix must have theta rows");
    return nullptr;
  }
  for (int i = 0; i < th; ++i)
    if (static_cast<int>(d.cartan[i].size()) != th) {
      err("cartan matrix row " + std::to_string(i + 1) + " has wrong length");
      return nullptr;
    }
  if (static_cast<int>(d.g_exponents.size()) != th ||
      static_cast<int>(d.chi_exponents.size()) != th) {
    err("g and chi must each have theta entries");
    return nullptr;
  }
  for (long f : d.invariant_factors)
    if (f < 2) {
      err("invariant factors must be >= 2");
      return nullptr;
    }
  if (d.invariant_factors.empty()) {
    err("group must be nontrivial");
    return nullptr;
  }

  auto ctx = std::unique_ptr<DatumContext>(new DatumContext());
  ctx->group_ = std::make_unique<AbelianGroup>(d.invariant_factors);
  const AbelianGroup& G = *ctx->group_;
  ctx->theta_ = th;
  ctx->cartan_ = d.cartan;

  // field order: lcm of the group exponent and every literal's zeta orders
  long e = G.exponent();
  auto absorb = [&](const ScalarLiteral& lit) {
    for (const auto& t : lit.terms) {
      if (t.zeta_order < 1) {
        err("zeta_order in scalar literal must be >= 1");
        continue;
      }
      e = std::lcm(e, t.zeta_order);
    }
  };
  for (const auto& [k, v] : d.lambda) absorb(v);
  for (const auto& [k, v] : d.mu) absorb(v);
  if (!report.errors.empty()) return nullptr;
  ctx->field_ = std::make_unique<CycloField>(e);
  const CycloField& F = *ctx->field_;

  for (int i = 0; i < th; ++i) {
    if (d.g_exponents[i].size() != d.invariant_factors.size() ||
        d.chi_exponents[i].size() != d.invariant_factors.size()) {
      err("g/chi exponent vector for vertex " + std::to_string(i + 1) +
          " has wrong length");
      return nullptr;
    }
    ctx->g_.push_back(G.index_of(d.g_exponents[i]));
    ctx->chi_.push_back(G.reduce_character(d.chi_exponents[i]));
  }

  // ---- Cartan matrix shape ----
  for (int i = 0; i < th; ++i) {
    if (d.cartan[i][i] != 2) err("cartan diagonal entry at vertex " +
                                 std::to_string(i + 1) + " must be 2");
    for (int j = 0; j < th; ++j) {
      if (i == j) continue;
      const int a = d.cartan[i][j];
      if (a > 0) err("cartan entry " + vertex_pair(i, j) + " must be <= 0");
      if ((a == 0) != (d.cartan[j][i] == 0))
        err("cartan entries " + vertex_pair(i, j) + " must vanish together");
      if (a < -1)
        err("unsupported diagram: cartan entry " + vertex_pair(i, j) +
            " below -1 (only A1 and A2 blocks are supported)");
    }
  }
  if (!report.errors.empty()) return nullptr;

  // ---- components ----
  std::vector<int> comp(th, -1);
  int ncomp = 0;
  for (int i = 0; i < th; ++i) {
    if (comp[i] != -1) continue;
    // flood fill
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < th; ++w)
        if (w != v && d.cartan[v][w] != 0 && comp[w] == -1) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }
  std::vector<Component> comps(ncomp);
  for (int i = 0; i < th; ++i) comps[comp[i]].vertices.push_back(i);
  int n_a2 = 0;
  for (auto& c : comps) {
    std::sort(c.vertices.begin(), c.vertices.end());
    if (c.vertices.size() == 1) continue;
    if (c.vertices.size() == 2) {
      c.is_a2 = true;
      ++n_a2;
      int u = c.vertices[0], v = c.vertices[1];
      if (d.cartan[u][v] != -1 || d.cartan[v][u] != -1)
        err("unsupported diagram: component {" + std::to_string(u + 1) + "," +
            std::to_string(v + 1) + "} is not of type A2");
    } else {
      err("unsupported diagram: component of size " +
          std::to_string(c.vertices.size()) + " (only A1 and A2 supported)");
    }
  }
  if (n_a2 > 1) err("unsupported diagram: more than one A2 component");
  if (!report.errors.empty()) return nullptr;
  // order components by smallest vertex and renumber accordingly
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    return a.vertices[0] < b.vertices[0];
  });
  ctx->component_of_.assign(th, -1);
  for (size_t ci = 0; ci < comps.size(); ++ci)
    for (int v : comps[ci].vertices) ctx->component_of_[v] = static_cast<int>(ci);
  ctx->components_ = comps;

  // ---- character conditions ----
  for (int i = 0; i < th; ++i) {
    const long qo = G.pairing_order(ctx->chi_[i], ctx->g_[i]);
    if (qo == 1)
      err("chi_" + std::to_string(i + 1) + "(g_" + std::to_string(i + 1) +
          ") must differ from 1");
    else if (qo % 2 == 0)
      err("order of chi_" + std::to_string(i + 1) + "(g_" +
          std::to_string(i + 1) + ") must be odd (got " + std::to_string(qo) +
          ")");
  }
  // Cartan condition chi_j(g_i) chi_i(g_j) = chi_i(g_i)^{a_ij}
  for (int i = 0; i < th; ++i)
    for (int j = 0; j < th; ++j) {
      if (i == j) continue;
      const long lhs = (G.pairing_exponent(ctx->chi_[j], ctx->g_[i], e) +
                        G.pairing_exponent(ctx->chi_[i], ctx->g_[j], e)) % e;
      long rhs = (G.pairing_exponent(ctx->chi_[i], ctx->g_[i], e) %
                  e) * (((d.cartan[i][j] % e) + e) % e) % e;
      if (lhs != rhs % e)
        err("Cartan compatibility fails at " + vertex_pair(i, j));
    }
  if (!report.errors.empty()) return nullptr;

  // ---- positive roots in convex order ----
  for (const auto& c : comps) {
    const int ci = static_cast<int>(&c - comps.data());
    auto push_root = [&](std::vector<int> coeffs, bool simple, int vertex) {
      Root r;
      r.coeffs = std::move(coeffs);
      r.component = ci;
      r.simple = simple;
      r.vertex = vertex;
      r.height = std::accumulate(r.coeffs.begin(), r.coeffs.end(), 0L);
      GroupIndex ga = G.identity();
      Character ca = G.reduce_character(std::vector<long>(d.invariant_factors.size(), 0));
      for (int t = 0; t < th; ++t)
        for (int rep = 0; rep < r.coeffs[t]; ++rep) {
          ga = G.mul(ga, ctx->g_[t]);
          ca = G.char_mul(ca, ctx->chi_[t]);
        }
      r.g = ga;
      r.chi = ca;
      r.N = G.pairing_order(r.chi, r.g);
      r.mu = F.zero();
      ctx->roots_.push_back(std::move(r));
    };
    if (!c.is_a2) {
      std::vector<int> e1(th, 0);
      e1[c.vertices[0]] = 1;
      push_root(std::move(e1), true, c.vertices[0]);
    } else {
      const int u = c.vertices[0], v = c.vertices[1];
      std::vector<int> eu(th, 0), euv(th, 0), ev(th, 0);
      eu[u] = 1;
      euv[u] = 1;
      euv[v] = 1;
      ev[v] = 1;
      push_root(std::move(eu), true, u);
      push_root(std::move(euv), false, -1);
      push_root(std::move(ev), true, v);
    }
  }
  // N_alpha constant on components, and equals the simple-vertex orders
  for (const auto& c : comps) {
    long n0 = -1;
    for (const auto& r : ctx->roots_) {
      if (r.component != static_cast<int>(&c - comps.data())) continue;
      if (n0 == -1) n0 = r.N;
      if (r.N != n0)
        err("truncation order not constant on component containing root " +
            root_name(r.coeffs));
    }
  }
  if (!report.errors.empty()) return nullptr;

  // ---- linking scalars ----
  for (const auto& [key, lit] : d.lambda) {
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= th || j >= th || i >= j) {
      err("lambda key " + vertex_pair(i, j) + " must satisfy 1 <= i < j <= theta");
      continue;
    }
    Scalar val = lit.resolve(F);
    if (ctx->component_of_[i] == ctx->component_of_[j]) {
      if (!val.is_zero()) {
        err("lambda at " + vertex_pair(i, j) +
            " links vertices inside one component");
        continue;
      }
      continue;  // zero entry on a linked pair is harmless
    }
    if (!val.is_zero()) {
      if (G.mul(ctx->g_[i], ctx->g_[j]) == G.identity())
        err("lambda at " + vertex_pair(i, j) + " must vanish: g_i g_j = 1");
      else if (!G.char_is_trivial(G.char_mul(ctx->chi_[i], ctx->chi_[j])))
        err("lambda at " + vertex_pair(i, j) +
            " must vanish: chi_i chi_j is not the trivial character");
    }
    ctx->lambda_[{i, j}] = val;
  }

  // ---- root-vector scalars ----
  for (const auto& [key, lit] : d.mu) {
    if (static_cast<int>(key.size()) != th) {
      err("mu root key " + root_name(key) + " has wrong length");
      continue;
    }
    auto it = std::find_if(ctx->roots_.begin(), ctx->roots_.end(),
                           [&](const Root& r) { return r.coeffs == key; });
    if (it == ctx->roots_.end()) {
      err("mu key " + root_name(key) + " is not a positive root");
      continue;
    }
    Scalar val = lit.resolve(F);
    if (!it->simple) {
      if (!val.is_zero()) {
        err("mu at non-simple root " + root_name(key) +
            " is unsupported (requires coproduct deformation scalars)");
        continue;
      }
      continue;
    }
    if (!val.is_zero()) {
      if (G.pow(it->g, it->N) == G.identity())
        err("mu at root " + root_name(key) +
            " must vanish: g_alpha^{N_alpha} = 1");
      else if (!G.char_is_trivial(G.char_pow(it->chi, it->N)))
        err("mu at root " + root_name(key) +
            " must vanish: chi_alpha^{N_alpha} is not the trivial character");
    }
    it->mu = val;
  }
  // both simple roots of an A2 component carrying nonzero mu would require
  // the coproduct scalars of the non-simple root vector relation
  for (size_t ci = 0; ci < ctx->components_.size(); ++ci) {
    if (!ctx->components_[ci].is_a2) continue;
    int nonzero = 0;
    for (const auto& r : ctx->roots_)
      if (r.simple && r.component == static_cast<int>(ci) && !r.mu.is_zero())
        ++nonzero;
    if (nonzero == 2)
      err("mu nonzero on both simple roots of an A2 component is unsupported");
  }
  if (!report.errors.empty()) return nullptr;

  // ---- advisory warnings (theorem hypotheses, never hard errors) ----
  const long order = G.size();
  bool div23 = (order % 2 == 0) || (order % 3 == 0);
  bool small_prime = div23 || (order % 5 == 0) || (order % 7 == 0);
  if (div23)
    warn("group order divisible by 2 or 3: closed-form surjectivity "
         "hypotheses are verified computationally instead");
  if (small_prime)
    warn("group order divisible by a prime below 11: closed-form "
         "cohomology-basis predictions are cross-checked computationally");
  for (int i = 0; i < th; ++i)
    for (int j = i + 1; j < th; ++j)
      if (G.char_is_trivial(G.char_mul(ctx->chi_[i], ctx->chi_[j])) &&
          ctx->component_of_[i] == ctx->component_of_[j])
        warn("chi_i chi_j trivial on connected pair " + vertex_pair(i, j) +
             ": outside the expected range of valid data");

  ctx->report_ = report;
  return ctx;
}

long DatumContext::braiding_exponent(int i, int j) const {
  return group_->pairing_exponent(chi_[j], g_[i], field_->order());
}

Scalar DatumContext::braiding(int i, int j) const {
  return field_->zeta_power(braiding_exponent(i, j));
}

Scalar DatumContext::lambda_ij(int i, int j) const {
  auto it = lambda_.find({i, j});
  return it == lambda_.end() ? field_->zero() : it->second;
}

Scalar DatumContext::lambda_ji(int i, int j) const {
  return -braiding(j, i) * lambda_ij(i, j);
}

std::map<GroupIndex, Scalar> DatumContext::u_alpha_simple(int root_index) const {
  const Root& r = roots_.at(root_index);
  if (!r.simple) throw std::invalid_argument("u_alpha requested for non-simple root");
  std::map<GroupIndex, Scalar> out;
  if (r.mu.is_zero()) return out;
  const GroupIndex gN = group_->pow(r.g, r.N);
  out[group_->identity()] += r.mu;
  out[gN] -= r.mu;
  if (out[group_->identity()].is_zero()) out.clear();  // gN == identity
  return out;
}

bool DatumContext::connected(int i, int j) const {
  return component_of_[i] == component_of_[j];
}

}  // namespace hopfcoh
