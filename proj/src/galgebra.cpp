#include "qcyc/galgebra.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qcyc {

namespace {
[[noreturn]] void fail(const std::string& m) { throw std::runtime_error("galgebra: " + m); }
}

FibVec fib_normalize(FibVec v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FibVec out;
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, c);
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  return out;
}

FibVec fib_scale(const FibVec& v, const Rat& c) {
  FibVec r;
  if (c == 0) return r;
  for (const auto& [i, x] : v) r.emplace_back(i, c * x);
  return r;
}

FibVec fib_add(const FibVec& a, const FibVec& b) {
  FibVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return fib_normalize(std::move(r));
}

bool fib_equal(const FibVec& a, const FibVec& b) {
  return fib_normalize(a) == fib_normalize(b);
}

FibVec fib_apply(const QMat& m, const FibVec& v) {
  FibVec r;
  for (int i = 0; i < m.rows; ++i) {
    Rat acc(0);
    for (const auto& [j, c] : v) acc += m.at(i, j) * c;
    if (acc != 0) r.emplace_back(i, acc);
  }
  return r;
}

FibVec GAlgebra::mul_basis(int x, int i, int j) const {
  auto key = std::make_tuple(x, i, j);
  auto it = cache_->find(key);
  if (it != cache_->end()) return it->second;
  FibVec v = fib_normalize(mulfn(x, i, j));
  cache_->emplace(key, v);
  return v;
}

FibVec GAlgebra::mul_vec(int x, const FibVec& a, const FibVec& b) const {
  FibVec acc;
  for (const auto& [i, c] : a)
    for (const auto& [j, d] : b) {
      FibVec p = mul_basis(x, i, j);
      for (auto& [k, e] : p) acc.emplace_back(k, c * d * e);
    }
  return fib_normalize(std::move(acc));
}

void GAlgebra::validate() const {
  const Groupoid& g = *mod.G;
  mod.validate();
  for (int x = 0; x < g.num_units(); ++x) {
    int d = mod.fdim[x];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          FibVec l = mul_vec(x, mul_basis(x, i, j), FibVec{{k, 1}});
          FibVec r = mul_vec(x, FibVec{{i, 1}}, mul_basis(x, j, k));
          if (!fib_equal(l, r)) fail("associativity fails in " + name);
        }
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    int xs = g.src(a), xt = g.tgt(a);
    for (int i = 0; i < mod.fdim[xs]; ++i)
      for (int j = 0; j < mod.fdim[xs]; ++j) {
        FibVec l = fib_apply(mod.rho[a], mul_basis(xs, i, j));
        FibVec r = mul_vec(xt, fib_apply(mod.rho[a], {{i, 1}}),
                           fib_apply(mod.rho[a], {{j, 1}}));
        if (!fib_equal(l, r)) fail("product not equivariant in " + name);
      }
  }
  if (one) {
    for (int x = 0; x < g.num_units(); ++x)
      for (int i = 0; i < mod.fdim[x]; ++i) {
        if (!fib_equal(mul_vec(x, (*one)[x], {{i, 1}}), {{i, 1}}) ||
            !fib_equal(mul_vec(x, {{i, 1}}, (*one)[x]), {{i, 1}}))
          fail("declared unit is not a unit in " + name);
      }
  }
  if (sep) {
    for (int x = 0; x < g.num_units(); ++x) {
      // multiplication: sum c * u v = 1
      FibVec m;
      for (const auto& [i, j, c] : (*sep)[x])
        for (auto& [k, e] : mul_basis(x, i, j)) m.emplace_back(k, c * e);
      if (!one || !fib_equal(fib_normalize(std::move(m)), (*one)[x]))
        fail("separability idempotent does not multiply to 1 in " + name);
      // centrality a.e = e.a checked on basis elements of the fiber
      for (int b = 0; b < mod.fdim[x]; ++b) {
        std::map<std::pair<int, int>, Rat> lhs, rhs;
        for (const auto& [i, j, c] : (*sep)[x]) {
          for (auto& [k, e] : mul_basis(x, b, i)) lhs[{k, j}] += c * e;
          for (auto& [k, e] : mul_basis(x, j, b)) rhs[{i, k}] += c * e;
        }
        for (auto it = lhs.begin(); it != lhs.end();)
          it = (it->second == 0) ? lhs.erase(it) : std::next(it);
        for (auto it = rhs.begin(); it != rhs.end();)
          it = (it->second == 0) ? rhs.erase(it) : std::next(it);
        if (lhs != rhs) fail("separability idempotent not central in " + name);
      }
    }
  }
}

void EquivariantPairing::validate() const {
  mod.validate();
  const Groupoid& g = *mod.G;
  for (int a = 0; a < g.num_arrows(); ++a) {
    int xs = g.src(a), xt = g.tgt(a);
    // h(rho e, rho f) at r = h(e, f) at s
    const QMat& r = mod.rho[a];
    for (int i = 0; i < mod.fdim[xs]; ++i)
      for (int j = 0; j < mod.fdim[xs]; ++j) {
        Rat acc(0);
        for (int k = 0; k < mod.fdim[xt]; ++k)
          for (int l = 0; l < mod.fdim[xt]; ++l)
            if (r.at(k, i) != 0 && r.at(l, j) != 0)
              acc += r.at(k, i) * gram[xt].at(k, l) * r.at(l, j);
        if (acc != gram[xs].at(i, j)) fail("pairing not equivariant");
      }
  }
}

Rat EquivariantPairing::eval(int x, const FibVec& e, const FibVec& f) const {
  Rat acc(0);
  for (const auto& [i, c] : e)
    for (const auto& [j, d] : f) acc += c * d * gram[x].at(i, j);
  return acc;
}

GAlgebra trivial_algebra(const Groupoid& g) {
  GAlgebra a;
  a.mod = GModule::trivial(g);
  a.mulfn = [](int, int, int) { return FibVec{{0, 1}}; };
  a.one = std::vector<FibVec>(g.num_units(), FibVec{{0, 1}});
  a.sep = std::vector<std::vector<std::tuple<int, int, Rat>>>(
      g.num_units(), {{0, 0, Rat(1)}});
  a.name = "trivial";
  return a;
}

void GSpace::validate(const Groupoid& g) const {
  if (anchor.size() != points.size()) fail("gspace: anchor not total");
  if ((int)act.size() != g.num_arrows()) fail("gspace: action table shape");
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int p = 0; p < (int)points.size(); ++p) {
      bool anchored = (anchor[p] == g.src(a));
      if (anchored != (act[a][p] >= 0)) fail("gspace: action domain mismatch");
      if (anchored && anchor[act[a][p]] != g.tgt(a)) fail("gspace: anchor not equivariant");
    }
  for (int p = 0; p < (int)points.size(); ++p)
    if (act[g.unit_arrow(anchor[p])][p] != p) fail("gspace: unit acts nontrivially");
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b) {
      if (!g.composable(a, b)) continue;
      for (int p = 0; p < (int)points.size(); ++p)
        if (anchor[p] == g.src(b) && act[a][act[b][p]] != act[g.mul(a, b)][p])
          fail("gspace: action not multiplicative");
    }
}

GSpace unit_gspace(const Groupoid& g) {
  GSpace x;
  x.points.resize(g.num_units());
  x.anchor.resize(g.num_units());
  for (int u = 0; u < g.num_units(); ++u) {
    x.points[u] = g.unit_name(u);
    x.anchor[u] = u;
  }
  x.act.assign(g.num_arrows(), std::vector<int>(g.num_units(), -1));
  for (int a = 0; a < g.num_arrows(); ++a) x.act[a][g.src(a)] = g.tgt(a);
  return x;
}

GSpace loop_gspace(const Groupoid& g) {
  GSpace x;
  const auto& ls = g.loops();
  x.points.resize(ls.size());
  x.anchor.resize(ls.size());
  for (size_t i = 0; i < ls.size(); ++i) {
    x.points[i] = g.arrow(ls[i]).id;
    x.anchor[i] = g.tgt(ls[i]);
  }
  x.act.assign(g.num_arrows(), std::vector<int>((int)ls.size(), -1));
  for (int a = 0; a < g.num_arrows(); ++a)
    for (size_t i = 0; i < ls.size(); ++i)
      if (g.src(a) == g.tgt(ls[i])) x.act[a][i] = g.loop_pos(g.conj(a, (int)ls[i]));
  return x;
}

GAlgebra function_algebra(const Groupoid& g, const GSpace& x) {
  x.validate(g);
  GAlgebra alg;
  GModule m;
  m.G = &g;
  m.fdim.assign(g.num_units(), 0);
  // fiber basis of unit u = points anchored at u, in point order
  std::vector<std::vector<int>> fiber(g.num_units());
  std::vector<int> pos(x.points.size());
  for (int p = 0; p < (int)x.points.size(); ++p) {
    pos[p] = (int)fiber[x.anchor[p]].size();
    fiber[x.anchor[p]].push_back(p);
    m.fdim[x.anchor[p]]++;
  }
  m.rebuild_offsets();
  m.rho.resize(g.num_arrows());
  for (int a = 0; a < g.num_arrows(); ++a) {
    QMat r(m.fdim[g.tgt(a)], m.fdim[g.src(a)]);
    for (int j = 0; j < m.fdim[g.src(a)]; ++j)
      r.at(pos[x.act[a][fiber[g.src(a)][j]]], j) = 1;
    m.rho[a] = r;
  }
  m.names.resize(m.dim());
  for (int u = 0; u < g.num_units(); ++u)
    for (size_t j = 0; j < fiber[u].size(); ++j)
      m.names[m.foff[u] + j] = x.points[fiber[u][j]];
  alg.mod = m;
  alg.mulfn = [](int, int i, int j) {
    return (i == j) ? FibVec{{i, 1}} : FibVec{};
  };
  alg.one = std::vector<FibVec>(g.num_units());
  alg.sep = std::vector<std::vector<std::tuple<int, int, Rat>>>(g.num_units());
  for (int u = 0; u < g.num_units(); ++u)
    for (int j = 0; j < m.fdim[u]; ++j) {
      (*alg.one)[u].emplace_back(j, 1);
      (*alg.sep)[u].emplace_back(j, j, Rat(1));
    }
  alg.name = "functions";
  return alg;
}

GAlgebra og_algebra(const Groupoid& g) {
  GAlgebra a = function_algebra(g, loop_gspace(g));
  a.name = "og";
  return a;
}

EquivariantPairing regular_pairing(const Groupoid& g) {
  EquivariantPairing p;
  p.mod = GModule::regular(g);
  p.gram.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) p.gram[x] = QMat::identity(p.mod.fdim[x]);
  return p;
}

GAlgebra smoothing_algebra(const EquivariantPairing& h) {
  const Groupoid& g = *h.mod.G;
  GAlgebra a;
  a.mod = tensor_diagonal(h.mod, h.mod);
  auto hcopy = std::make_shared<EquivariantPairing>(h);
  std::vector<int> edim = h.mod.fdim;
  a.mulfn = [hcopy, edim](int x, int i, int j) -> FibVec {
    int d = edim[x];
    int i1 = i / d, i2 = i % d, j1 = j / d, j2 = j % d;
    Rat c = hcopy->gram[x].at(i2, j1);
    if (c == 0) return {};
    return {{i1 * d + j2, c}};
  };
  // dual bases from the Gram matrix give the unit and a separability idempotent
  bool ok = true;
  std::vector<QMat> graminv(g.num_units());
  for (int x = 0; x < g.num_units() && ok; ++x) {
    auto inv = h.gram[x].inverse();
    if (!inv)
      ok = false;
    else
      graminv[x] = *inv;
  }
  if (ok) {
    a.one = std::vector<FibVec>(g.num_units());
    a.sep = std::vector<std::vector<std::tuple<int, int, Rat>>>(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) {
      int d = h.mod.fdim[x];
      for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k)
          if (graminv[x].at(m, k) != 0)
            (*a.one)[x].emplace_back(m * d + k, graminv[x].at(m, k));
      (*a.one)[x] = fib_normalize((*a.one)[x]);
      // e = sum_m (u_m (x) v_0) (x) (u_0 (x) v_m)
      for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k)
          for (int k2 = 0; k2 < d; ++k2) {
            Rat c = graminv[x].at(0, k) * graminv[x].at(m, k2);
            if (c != 0) (*a.sep)[x].emplace_back(m * d + k, k2, c);
          }
    }
  }
  a.name = "smoothing";
  return a;
}

GAlgebra kg_algebra(const Groupoid& g) {
  GAlgebra a = smoothing_algebra(regular_pairing(g));
  a.name = "kg";
  return a;
}

GAlgebra tensor_product_algebra(const GAlgebra& a, const GAlgebra& b) {
  const Groupoid& g = *a.mod.G;
  GAlgebra t;
  t.mod = tensor_diagonal(a.mod, b.mod);
  auto ac = std::make_shared<GAlgebra>(a);
  auto bc = std::make_shared<GAlgebra>(b);
  std::vector<int> bdim = b.mod.fdim;
  t.mulfn = [ac, bc, bdim](int x, int i, int j) -> FibVec {
    int d = bdim[x];
    FibVec pa = ac->mul_basis(x, i / d, j / d);
    FibVec pb = bc->mul_basis(x, i % d, j % d);
    FibVec out;
    for (const auto& [k, c] : pa)
      for (const auto& [l, e] : pb) out.emplace_back(k * d + l, c * e);
    return out;
  };
  if (a.one && b.one) {
    t.one = std::vector<FibVec>(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) {
      int d = bdim[x];
      for (const auto& [k, c] : (*a.one)[x])
        for (const auto& [l, e] : (*b.one)[x]) (*t.one)[x].emplace_back(k * d + l, c * e);
      (*t.one)[x] = fib_normalize((*t.one)[x]);
    }
  }
  if (a.sep && b.sep) {
    t.sep = std::vector<std::vector<std::tuple<int, int, Rat>>>(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) {
      int d = bdim[x];
      for (const auto& [iu, iv, c] : (*a.sep)[x])
        for (const auto& [ju, jv, e] : (*b.sep)[x])
          (*t.sep)[x].emplace_back(iu * d + ju, iv * d + jv, c * e);
    }
  }
  t.name = a.name + "(x)" + b.name;
  return t;
}

GAlgebra unitarise(const GAlgebra& a) {
  const Groupoid& g = *a.mod.G;
  GAlgebra u;
  u.mod.G = a.mod.G;
  u.mod.fdim.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) u.mod.fdim[x] = a.mod.fdim[x] + 1;
  u.mod.rebuild_offsets();
  u.mod.rho.resize(g.num_arrows());
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    const QMat& r0 = a.mod.rho[ar];
    QMat r(r0.rows + 1, r0.cols + 1);
    for (int i = 0; i < r0.rows; ++i)
      for (int j = 0; j < r0.cols; ++j) r.at(i, j) = r0.at(i, j);
    r.at(r0.rows, r0.cols) = 1;
    u.mod.rho[ar] = r;
  }
  auto ac = std::make_shared<GAlgebra>(a);
  std::vector<int> adim = a.mod.fdim;
  u.mulfn = [ac, adim](int x, int i, int j) -> FibVec {
    int d = adim[x];
    if (i == d && j == d) return {{d, 1}};
    if (i == d) return {{j, 1}};
    if (j == d) return {{i, 1}};
    return ac->mul_basis(x, i, j);
  };
  u.one = std::vector<FibVec>(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) (*u.one)[x] = {{a.mod.fdim[x], 1}};
  u.name = a.name + "+";
  return u;
}

int CrossedProduct::orbit_fiber_of_unit(int x) const { return G->orbit_of(x); }

FibVec CrossedProduct::embed_a(int x, const FibVec& a) const {
  // a in A_x -> a (x) delta_x over the orbit fiber
  FibVec out;
  int ua = G->unit_arrow(x);
  for (const auto& [i, c] : a) out.emplace_back(index.at({ua, i}), c);
  return fib_normalize(std::move(out));
}

CrossedProduct crossed_product(const GAlgebra& a) {
  const Groupoid& g = *a.mod.G;
  CrossedProduct cp;
  cp.G = &g;
  GroupoidData qd;
  for (const auto& orb : g.orbits()) qd.units.push_back(g.unit_name(orb[0]));
  cp.quotient = std::make_shared<Groupoid>(Groupoid::validate(qd));

  // basis per quotient unit: arrows ordered, then fiber index at r(alpha)
  int nq = cp.quotient->num_units();
  std::vector<int> fdim(nq, 0);
  std::vector<std::vector<std::pair<int, int>>> local(nq);
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    int o = g.orbit_of(g.tgt(ar));
    for (int i = 0; i < a.mod.fdim[g.tgt(ar)]; ++i) local[o].emplace_back(ar, i);
  }
  for (int o = 0; o < nq; ++o) {
    fdim[o] = (int)local[o].size();
    for (int k = 0; k < fdim[o]; ++k) {
      cp.index[local[o][k]] = k;  // local index within the quotient fiber
      cp.basis.push_back(local[o][k]);
    }
  }
  GModule m;
  m.G = cp.quotient.get();
  m.fdim = fdim;
  m.rebuild_offsets();
  m.rho.resize(cp.quotient->num_arrows());
  for (int ar = 0; ar < cp.quotient->num_arrows(); ++ar)
    m.rho[ar] = QMat::identity(fdim[cp.quotient->src(ar)]);

  GAlgebra alg;
  alg.mod = m;
  auto ac = std::make_shared<GAlgebra>(a);
  auto locc = std::make_shared<std::vector<std::vector<std::pair<int, int>>>>(local);
  auto idxc = std::make_shared<std::map<std::pair<int, int>, int>>(cp.index);
  const Groupoid* gp = &g;
  alg.mulfn = [ac, locc, idxc, gp](int o, int p, int q) -> FibVec {
    auto [al, i] = (*locc)[o][p];
    auto [ga, j] = (*locc)[o][q];
    if (!gp->composable(al, ga)) return {};
    // (a (x) d_al)(b (x) d_ga) = a . rho(al) b (x) d_{al ga}
    FibVec tb = fib_apply(ac->mod.rho[al], {{j, 1}});
    FibVec prod = ac->mul_vec(gp->tgt(al), {{i, 1}}, tb);
    int res = gp->mul(al, ga);
    FibVec out;
    for (const auto& [k, c] : prod) out.emplace_back(idxc->at({res, k}), c);
    return out;
  };
  if (a.one) {
    alg.one = std::vector<FibVec>(nq);
    for (int o = 0; o < nq; ++o) {
      for (int x : g.orbits()[o]) {
        int ua = g.unit_arrow(x);
        for (const auto& [k, c] : (*a.one)[x]) (*alg.one)[o].emplace_back(cp.index.at({ua, k}), c);
      }
      (*alg.one)[o] = fib_normalize((*alg.one)[o]);
    }
  }
  if (a.sep && a.one) {
    // E = sum_alpha w_alpha sum_i (rho_alpha(u_i) x d_alpha) (x) (v_i x d_{alpha^{-1}})
    alg.sep = std::vector<std::vector<std::tuple<int, int, Rat>>>(nq);
    for (int ar = 0; ar < g.num_arrows(); ++ar) {
      int xs = g.src(ar), xt = g.tgt(ar);
      int o = g.orbit_of(xt);
      Rat w(1, (long)g.arrows_into(xs).size());
      for (const auto& [iu, iv, c] : (*a.sep)[xs]) {
        FibVec tu = fib_apply(a.mod.rho[ar], {{iu, 1}});
        for (const auto& [k, e] : tu)
          (*alg.sep)[o].emplace_back(cp.index.at({ar, k}), cp.index.at({g.inv(ar), iv}),
                                     w * c * e);
      }
    }
  }
  alg.name = a.name + "|xG";
  cp.alg = alg;
  return cp;
}

std::vector<QMat> integrate_covariant(const CrossedProduct& cp, const CovariantPair& cv) {
  const Groupoid& g = *cp.G;
  // psi(a (x) d_alpha) = phi(a) pi(alpha)
  std::vector<QMat> psi(cp.basis.size());
  for (size_t k = 0; k < cp.basis.size(); ++k) {
    auto [ar, i] = cp.basis[k];
    psi[k] = QMat::mul(cv.phi[g.tgt(ar)][i], cv.pi[ar]);
  }
  return psi;
}

void AYDModule::rebuild_offsets() {
  foff.assign(fdim.size(), 0);
  for (size_t i = 1; i < fdim.size(); ++i) foff[i] = foff[i - 1] + fdim[i - 1];
}

const SpMat& AYDModule::action(int a, int l) const {
  auto it = act.find({a, l});
  if (it == act.end()) fail("ayd: missing action block");
  return it->second;
}

void AYDModule::validate() const {
  const Groupoid& g = *G;
  const auto& ls = g.loops();
  for (size_t l = 0; l < ls.size(); ++l) {
    int base = g.tgt(ls[l]);
    for (int a = 0; a < g.num_arrows(); ++a) {
      if (g.src(a) != base) continue;
      int lc = g.loop_pos(g.conj(a, ls[l]));
      const SpMat& m = action(a, (int)l);
      if (m.cols != fdim[l] || m.rows != fdim[lc]) fail("ayd: block shape");
    }
    if (!action(g.unit_arrow(base), (int)l).equals(SpMat::identity(fdim[l])))
      fail("ayd: unit arrow acts nontrivially");
  }
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b) {
      if (!g.composable(a, b)) continue;
      for (size_t l = 0; l < ls.size(); ++l) {
        if (g.src(b) != g.tgt(ls[l])) continue;
        int lb = g.loop_pos(g.conj(b, ls[l]));
        if (!SpMat::mul(action(a, lb), action(b, (int)l))
                 .equals(action(g.mul(a, b), (int)l)))
          fail("ayd: action not multiplicative");
      }
    }
}

SpMat AYDModule::canonical_T() const {
  const Groupoid& g = *G;
  SpMat t(dim(), dim());
  const auto& ls = g.loops();
  for (size_t l = 0; l < ls.size(); ++l) {
    const SpMat& blk = action(g.inv(ls[l]), (int)l);
    // conj(inv(l), l) = l, so the block is an endomorphism of grade l
    for (int j = 0; j < fdim[l]; ++j)
      for (const auto& [i, c] : blk.col[j]) t.col[foff[l] + j][foff[l] + i] = c;
  }
  return t;
}

AYDModule og_ayd(const Groupoid& g) {
  AYDModule m;
  m.G = &g;
  m.fdim.assign(g.loops().size(), 1);
  m.rebuild_offsets();
  const auto& ls = g.loops();
  for (size_t l = 0; l < ls.size(); ++l)
    for (int a = 0; a < g.num_arrows(); ++a) {
      if (g.src(a) != g.tgt(ls[l])) continue;
      SpMat blk(1, 1);
      blk.col[0][0] = 1;
      m.act[{a, (int)l}] = blk;
    }
  return m;
}

AGModule ag_module(const Groupoid& g) {
  AGModule ag;
  const auto& ls = g.loops();
  AYDModule m;
  m.G = &g;
  m.fdim.resize(ls.size());
  for (size_t l = 0; l < ls.size(); ++l) {
    int base = g.tgt(ls[l]);
    for (int al : g.arrows_into(base)) {
      ag.index[{(int)l, al}] = (int)ag.basis.size() - 0;  // fixed below
      ag.basis.emplace_back((int)l, al);
    }
    m.fdim[l] = (int)g.arrows_into(base).size();
  }
  m.rebuild_offsets();
  // local index of (l, alpha) within grade l = position of alpha in arrows_into(base)
  ag.index.clear();
  {
    std::vector<int> cnt(ls.size(), 0);
    for (size_t k = 0; k < ag.basis.size(); ++k) {
      auto [l, al] = ag.basis[k];
      ag.index[{l, al}] = cnt[l]++;
    }
  }
  for (size_t l = 0; l < ls.size(); ++l) {
    int base = g.tgt(ls[l]);
    for (int a = 0; a < g.num_arrows(); ++a) {
      if (g.src(a) != base) continue;
      int lc = g.loop_pos(g.conj(a, ls[l]));
      SpMat blk(m.fdim[lc], m.fdim[l]);
      const auto& in = g.arrows_into(base);
      for (size_t j = 0; j < in.size(); ++j) {
        int moved = g.mul(a, in[j]);
        blk.col[j][ag.index.at({lc, moved})] = 1;
      }
      m.act[{a, (int)l}] = blk;
    }
  }
  ag.ayd = m;
  return ag;
}

std::vector<SpMat> ayd_homs(const AYDModule& p, const AYDModule& q) {
  const Groupoid& g = *p.G;
  const auto& ls = g.loops();
  // unknowns: per loop l, block (i,j) with i < q.fdim[l], j < p.fdim[l]
  std::vector<int> uoff(ls.size() + 1, 0);
  for (size_t l = 0; l < ls.size(); ++l) uoff[l + 1] = uoff[l] + q.fdim[l] * p.fdim[l];
  int nun = uoff[ls.size()];
  auto idx = [&](int l, int i, int j) { return uoff[l] + i * p.fdim[l] + j; };

  std::vector<SpVec> cols(nun);
  int nrows = 0;
  for (size_t l = 0; l < ls.size(); ++l) {
    int base = g.tgt(ls[l]);
    for (int a = 0; a < g.num_arrows(); ++a) {
      if (g.src(a) != base || g.is_unit_arrow(a)) continue;
      int lc = g.loop_pos(g.conj(a, ls[l]));
      const SpMat& pa = p.action(a, (int)l);
      const SpMat& qa = q.action(a, (int)l);
      // phi_{lc} pa - qa phi_l = 0, entry (i < q.fdim[lc], j < p.fdim[l])
      for (int i = 0; i < q.fdim[lc]; ++i)
        for (int j = 0; j < p.fdim[l]; ++j) {
          int row = nrows++;
          for (const auto& [k, c] : pa.col[j]) {
            auto& slot = cols[idx(lc, i, k)][row];
            slot += c;
            if (slot == 0) cols[idx(lc, i, k)].erase(row);
          }
          for (int k = 0; k < q.fdim[l]; ++k) {
            auto it = qa.col[k].find(i);
            if (it == qa.col[k].end()) continue;
            auto& slot = cols[idx((int)l, k, j)][row];
            slot -= it->second;
            if (slot == 0) cols[idx((int)l, k, j)].erase(row);
          }
        }
    }
  }
  auto ker = kernel_of_columns(nun, [&](int j) { return cols[j]; });
  std::vector<SpMat> out;
  for (auto& kv : ker.kernel) {
    SpMat phi(q.dim(), p.dim());
    Rat lead = kv.begin()->second;
    for (const auto& [u, c] : kv) {
      int l = 0;
      while (uoff[l + 1] <= u) ++l;
      int loc = u - uoff[l];
      phi.col[p.foff[l] + loc % p.fdim[l]][q.foff[l] + loc / p.fdim[l]] = c / lead;
    }
    out.push_back(std::move(phi));
  }
  return out;
}

bool ayd_commutes(const AYDModule& p, const AYDModule& q, const SpMat& phi) {
  const Groupoid& g = *p.G;
  const auto& ls = g.loops();
  // extract diagonal blocks and test commutation; also require grade-diagonal
  for (size_t l = 0; l < ls.size(); ++l)
    for (int j = 0; j < p.fdim[l]; ++j)
      for (const auto& [i, c] : phi.col[p.foff[l] + j])
        if (i < q.foff[l] || i >= q.foff[l] + q.fdim[l]) return false;
  for (size_t l = 0; l < ls.size(); ++l) {
    int base = g.tgt(ls[l]);
    for (int a = 0; a < g.num_arrows(); ++a) {
      if (g.src(a) != base) continue;
      int lc = g.loop_pos(g.conj(a, ls[l]));
      const SpMat& pa = p.action(a, (int)l);
      const SpMat& qa = q.action(a, (int)l);
      for (int j = 0; j < p.fdim[l]; ++j) {
        SpVec lhs, rhs;
        for (const auto& [k, c] : pa.col[j])
          for (const auto& [i, e] : phi.col[p.foff[lc] + k]) lhs[i - q.foff[lc]] += c * e;
        for (const auto& [k, c] : phi.col[p.foff[l] + j]) {
          for (const auto& [i, e] : qa.col[k - q.foff[l]]) rhs[i] += c * e;
        }
        for (auto it = lhs.begin(); it != lhs.end();)
          it = it->second == 0 ? lhs.erase(it) : std::next(it);
        for (auto it = rhs.begin(); it != rhs.end();)
          it = it->second == 0 ? rhs.erase(it) : std::next(it);
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

LocalizedAlgebra localize_algebra(const GAlgebra& a, int orbit) {
  const Groupoid& g = *a.mod.G;
  int x = g.orbits()[orbit][0];
  GroupoidData gd;
  gd.units.push_back(g.unit_name(x));
  for (int ar : g.isotropy(x))
    if (!g.is_unit_arrow(ar)) gd.arrows.push_back({g.arrow(ar).id, 0, 0});
  for (int ar : g.isotropy(x))
    for (int br : g.isotropy(x))
      gd.mul.push_back({g.arrow(ar).id, g.arrow(br).id, g.arrow(g.mul(ar, br)).id});
  LocalizedAlgebra loc;
  loc.group = std::make_shared<Groupoid>(Groupoid::validate(gd));
  GAlgebra la;
  la.mod.G = loc.group.get();
  la.mod.fdim = {a.mod.fdim[x]};
  la.mod.rebuild_offsets();
  la.mod.rho.resize(loc.group->num_arrows());
  for (int ar = 0; ar < loc.group->num_arrows(); ++ar)
    la.mod.rho[ar] = a.mod.rho[g.arrow_index(loc.group->arrow(ar).id)];
  auto ac = std::make_shared<GAlgebra>(a);
  la.mulfn = [ac, x](int, int i, int j) { return ac->mul_basis(x, i, j); };
  if (a.one) la.one = std::vector<FibVec>{(*a.one)[x]};
  if (a.sep) la.sep = std::vector<std::vector<std::tuple<int, int, Rat>>>{(*a.sep)[x]};
  la.name = a.name + "@" + g.unit_name(x);
  loc.alg = la;
  return loc;
}

}  // namespace qcyc
