#include "qcyc/gmodule.hpp"

#include <cassert>
#include <stdexcept>

namespace qcyc {

namespace {
[[noreturn]] void fail(const std::string& m) { throw std::runtime_error("gmodule: " + m); }
}

int GModule::unit_of(int gidx) const {
  for (int x = (int)foff.size() - 1; x >= 0; --x)
    if (gidx >= foff[x]) return x;
  fail("bad global index");
}

void GModule::rebuild_offsets() {
  foff.assign(fdim.size(), 0);
  for (size_t i = 1; i < fdim.size(); ++i) foff[i] = foff[i - 1] + fdim[i - 1];
}

void GModule::validate() const {
  const Groupoid& g = *G;
  if ((int)fdim.size() != g.num_units() || (int)rho.size() != g.num_arrows())
    fail("shape mismatch");
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (rho[a].rows != fdim[g.tgt(a)] || rho[a].cols != fdim[g.src(a)])
      fail("rho(" + g.arrow(a).id + ") has wrong shape");
  }
  for (int x = 0; x < g.num_units(); ++x)
    if (!rho[g.unit_arrow(x)].is_identity()) fail("rho(unit) != id at " + g.unit_name(x));
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b) {
      if (!g.composable(a, b)) continue;
      if (!QMat::mul(rho[a], rho[b]).equals(rho[g.mul(a, b)]))
        fail("rho not multiplicative at " + g.arrow(a).id + "," + g.arrow(b).id);
    }
  for (int a = 0; a < g.num_arrows(); ++a)
    if (!QMat::mul(rho[a], rho[g.inv(a)]).is_identity())
      fail("rho(" + g.arrow(a).id + ") not invertible by rho(inverse)");
}

GModule GModule::trivial(const Groupoid& g) {
  GModule m;
  m.G = &g;
  m.fdim.assign(g.num_units(), 1);
  m.rebuild_offsets();
  m.rho.assign(g.num_arrows(), QMat::identity(1));
  return m;
}

int GModule::regular_pos(const Groupoid& g, int a) {
  const auto& in = g.arrows_into(g.tgt(a));
  for (size_t i = 0; i < in.size(); ++i)
    if (in[i] == a) return (int)i;
  fail("arrow not found in its own range fiber");
}

GModule GModule::regular(const Groupoid& g) {
  GModule m;
  m.G = &g;
  m.fdim.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) m.fdim[x] = (int)g.arrows_into(x).size();
  m.rebuild_offsets();
  m.rho.resize(g.num_arrows());
  for (int a = 0; a < g.num_arrows(); ++a) {
    QMat r(m.fdim[g.tgt(a)], m.fdim[g.src(a)]);
    const auto& in = g.arrows_into(g.src(a));
    for (size_t j = 0; j < in.size(); ++j)
      r.at(regular_pos(g, g.mul(a, in[j])), (int)j) = 1;
    m.rho[a] = r;
  }
  m.names.resize(m.dim());
  for (int x = 0; x < g.num_units(); ++x) {
    const auto& in = g.arrows_into(x);
    for (size_t j = 0; j < in.size(); ++j) m.names[m.foff[x] + j] = g.arrow(in[j]).id;
  }
  return m;
}

GModule tensor_diagonal(const GModule& m, const GModule& n) {
  assert(m.G == n.G);
  const Groupoid& g = *m.G;
  GModule t;
  t.G = m.G;
  t.fdim.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) t.fdim[x] = m.fdim[x] * n.fdim[x];
  t.rebuild_offsets();
  t.rho.resize(g.num_arrows());
  for (int a = 0; a < g.num_arrows(); ++a) {
    int rs = t.fdim[g.tgt(a)], cs = t.fdim[g.src(a)];
    QMat r(rs, cs);
    const QMat& rm = m.rho[a];
    const QMat& rn = n.rho[a];
    for (int i = 0; i < rm.rows; ++i)
      for (int j = 0; j < rm.cols; ++j) {
        if (rm.at(i, j) == 0) continue;
        for (int k = 0; k < rn.rows; ++k)
          for (int l = 0; l < rn.cols; ++l)
            if (rn.at(k, l) != 0)
              r.at(i * rn.rows + k, j * rn.cols + l) = rm.at(i, j) * rn.at(k, l);
      }
    t.rho[a] = r;
  }
  return t;
}

std::vector<Rat> bisection_action(const GModule& m, const Bisection& u,
                                  const std::vector<Rat>& vec) {
  const Groupoid& g = *m.G;
  std::vector<Rat> out(m.dim(), Rat(0));
  for (int a : u.arrows) {
    int xs = g.src(a), xt = g.tgt(a);
    std::vector<Rat> slice(vec.begin() + m.foff[xs], vec.begin() + m.foff[xs] + m.fdim[xs]);
    auto img = m.rho[a].apply(slice);
    for (int i = 0; i < m.fdim[xt]; ++i) out[m.foff[xt] + i] += img[i];
  }
  return out;
}

std::vector<std::vector<QMat>> equivariant_homs(const GModule& m, const GModule& n) {
  assert(m.G == n.G);
  const Groupoid& g = *m.G;
  // unknowns: phi_x(i,j) = entry (i,j) of block at unit x (rows: N, cols: M)
  std::vector<int> uoff(g.num_units() + 1, 0);
  for (int x = 0; x < g.num_units(); ++x)
    uoff[x + 1] = uoff[x] + n.fdim[x] * m.fdim[x];
  int nun = uoff[g.num_units()];
  auto idx = [&](int x, int i, int j) { return uoff[x] + i * m.fdim[x] + j; };

  // constraints: phi_{r} rho_M(a) - rho_N(a) phi_{s} = 0, entry (i,j)
  std::vector<SpVec> rows;
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (g.is_unit_arrow(a)) continue;
    int xs = g.src(a), xt = g.tgt(a);
    for (int i = 0; i < n.fdim[xt]; ++i)
      for (int j = 0; j < m.fdim[xs]; ++j) {
        SpVec row;
        for (int k = 0; k < m.fdim[xt]; ++k)
          if (m.rho[a].at(k, j) != 0) {
            auto& c = row[idx(xt, i, k)];
            c += m.rho[a].at(k, j);
            if (c == 0) row.erase(idx(xt, i, k));
          }
        for (int k = 0; k < n.fdim[xs]; ++k)
          if (n.rho[a].at(i, k) != 0) {
            auto& c = row[idx(xs, k, j)];
            c -= n.rho[a].at(i, k);
            if (c == 0) row.erase(idx(xs, k, j));
          }
        if (!row.empty()) rows.push_back(std::move(row));
      }
  }
  // column-major transpose: unknown j -> its column over constraint indices
  std::vector<SpVec> cols(nun);
  for (size_t r = 0; r < rows.size(); ++r)
    for (const auto& [j, c] : rows[r]) cols[j][(int)r] = c;
  auto ker = kernel_of_columns(nun, [&](int j) { return cols[j]; });
  std::vector<std::vector<QMat>> basis;
  for (auto& kv : ker.kernel) {
    std::vector<QMat> blocks(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) blocks[x] = QMat(n.fdim[x], m.fdim[x]);
    Rat lead(0);
    for (const auto& [u, c] : kv)
      if (lead == 0) lead = c;
    for (const auto& [u, c] : kv) {
      int x = 0;
      while (uoff[x + 1] <= u) ++x;
      int loc = u - uoff[x];
      blocks[x].at(loc / m.fdim[x], loc % m.fdim[x]) = c / lead;
    }
    basis.push_back(std::move(blocks));
  }
  return basis;
}

bool is_equivariant(const GModule& m, const GModule& n, const std::vector<QMat>& phi) {
  const Groupoid& g = *m.G;
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (!QMat::mul(phi[g.tgt(a)], m.rho[a]).equals(QMat::mul(n.rho[a], phi[g.src(a)])))
      return false;
  }
  return true;
}

void ComoduleMap::validate() const {
  const Groupoid& g = *G;
  if ((int)blocks.size() != g.num_arrows()) fail("comodule: block count mismatch");
  for (int a = 0; a < g.num_arrows(); ++a)
    if (blocks[a].rows != fdim[g.src(a)] || blocks[a].cols != fdim[g.tgt(a)])
      fail("comodule: block shape at " + g.arrow(a).id);
  // C_c(G)-linearity is structural (one block per arrow). Coaction identity
  // d0*(T) d2*(T) = d1*(T): on composable (alpha, beta), T_beta T_alpha = T_{alpha beta}.
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b) {
      if (!g.composable(a, b)) continue;
      if (!QMat::mul(blocks[b], blocks[a]).equals(blocks[g.mul(a, b)]))
        fail("comodule: coaction identity fails at " + g.arrow(a).id + "," + g.arrow(b).id);
    }
  for (int a = 0; a < g.num_arrows(); ++a)
    if (!blocks[a].inverse()) fail("comodule: block not invertible at " + g.arrow(a).id);
}

ComoduleMap module_to_comodule(const GModule& m) {
  const Groupoid& g = *m.G;
  ComoduleMap c;
  c.G = m.G;
  c.fdim = m.fdim;
  c.blocks.resize(g.num_arrows());
  // T_M(delta_alpha (x) v) = delta_alpha (x) rho(alpha^{-1}) v
  for (int a = 0; a < g.num_arrows(); ++a) c.blocks[a] = m.rho[g.inv(a)];
  return c;
}

GModule comodule_to_module(const ComoduleMap& c) {
  c.validate();
  const Groupoid& g = *c.G;
  GModule m;
  m.G = c.G;
  m.fdim = c.fdim;
  m.rebuild_offsets();
  m.rho.resize(g.num_arrows());
  // mu_M = (lambda (x) id) T^{-1} q_M on the singleton bisection {alpha}
  // recovers rho(alpha) = T_alpha^{-1}.
  for (int a = 0; a < g.num_arrows(); ++a) {
    auto inv = c.blocks[a].inverse();
    if (!inv) fail("comodule: block not invertible");
    m.rho[a] = *inv;
  }
  m.validate();
  return m;
}

GModule random_module(const Groupoid& g, std::mt19937& rng, int extra_rank) {
  // Base: regular module (+ extra trivial rank), then conjugate per unit.
  GModule base = GModule::regular(g);
  GModule triv = GModule::trivial(g);
  for (int k = 0; k < extra_rank; ++k) {
    // direct sum with the trivial module
    GModule sum;
    sum.G = &g;
    sum.fdim.resize(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) sum.fdim[x] = base.fdim[x] + 1;
    sum.rebuild_offsets();
    sum.rho.resize(g.num_arrows());
    for (int a = 0; a < g.num_arrows(); ++a) {
      QMat r(sum.fdim[g.tgt(a)], sum.fdim[g.src(a)]);
      for (int i = 0; i < base.rho[a].rows; ++i)
        for (int j = 0; j < base.rho[a].cols; ++j) r.at(i, j) = base.rho[a].at(i, j);
      r.at(base.fdim[g.tgt(a)], base.fdim[g.src(a)]) = 1;
      sum.rho[a] = r;
    }
    base = sum;
  }
  // random unimodular change of basis per unit (products of elementary ops)
  std::vector<QMat> s(g.num_units()), sinv(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) {
    int d = base.fdim[x];
    QMat m = QMat::identity(d);
    std::uniform_int_distribution<int> pick(0, d - 1), coef(-2, 2);
    for (int t = 0; t < 2 * d; ++t) {
      int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      Rat c(coef(rng));
      for (int k = 0; k < d; ++k) m.at(i, k) += c * m.at(j, k);
    }
    s[x] = m;
    sinv[x] = *m.inverse();
  }
  GModule out = base;
  for (int a = 0; a < g.num_arrows(); ++a)
    out.rho[a] = QMat::mul(s[g.tgt(a)], QMat::mul(base.rho[a], sinv[g.src(a)]));
  out.names.clear();
  return out;
}

}  // namespace qcyc
