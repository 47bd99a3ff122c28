#include "qcyc/homalg.hpp"

#include <stdexcept>

namespace qcyc {

namespace {
[[noreturn]] void fail(const std::string& m) { throw std::runtime_error("homalg: " + m); }

SpVec flatten_pair(const SpMat& a, const SpMat& b) {
  SpVec v;
  long off = (long)a.rows * a.cols;
  for (int j = 0; j < a.cols; ++j)
    for (const auto& [i, c] : a.col[j]) v[i * a.cols + j] = c;
  for (int j = 0; j < b.cols; ++j)
    for (const auto& [i, c] : b.col[j]) v[(int)off + i * b.cols + j] = c;
  return v;
}
}  // namespace

bool paracomplex_check(const Paracomplex& p, std::string* why) {
  SpMat te = p.even.canonical_T();
  SpMat to = p.odd.canonical_T();
  SpMat sq_e = SpMat::mul(p.d1, p.d0);
  SpMat want_e = SpMat::add(SpMat::identity(p.even.dim()), Rat(-1), te);
  if (!sq_e.equals(want_e)) {
    if (why) *why = "d1 d0 != id - T on even part";
    return false;
  }
  SpMat sq_o = SpMat::mul(p.d0, p.d1);
  SpMat want_o = SpMat::add(SpMat::identity(p.odd.dim()), Rat(-1), to);
  if (!sq_o.equals(want_o)) {
    if (why) *why = "d0 d1 != id - T on odd part";
    return false;
  }
  return true;
}

Paracomplex trivial_paracomplex(const Groupoid& g) {
  Paracomplex p;
  p.even = og_ayd(g);
  p.odd.G = &g;
  p.odd.fdim.assign(g.loops().size(), 0);
  p.odd.rebuild_offsets();
  const auto& ls = g.loops();
  for (size_t l = 0; l < ls.size(); ++l)
    for (int a = 0; a < g.num_arrows(); ++a)
      if (g.src(a) == g.tgt(ls[l])) p.odd.act[{a, (int)l}] = SpMat(0, 0);
  p.d0 = SpMat(0, p.even.dim());
  p.d1 = SpMat(p.even.dim(), 0);
  return p;
}

HodgeComplex::HodgeComplex(const Groupoid& g, const GAlgebra& a, int n)
    : g_(&g), fc_(g, a), n_(n) {
  if (n < 1) fail("hodge level must be >= 1");
  build();
}

void HodgeComplex::build() {
  const Groupoid& g = *g_;
  int nl = fc_.num_loops();
  bimage_.resize(nl);
  toppos_.resize(nl);
  for (int l = 0; l < nl; ++l) {
    for (const FMono& m : fc_.basis(l, n_)) {
      int id = (int)toppos_[l].size();
      toppos_[l].emplace(m, id);
    }
    for (const FMono& m : fc_.basis(l, n_ + 1)) {
      SpVec v;
      for (const auto& [mm, c] : fc_.b(m)) v[toppos_[l].at(mm)] = c;
      bimage_[l].add(std::move(v));
    }
  }
  for (int p = 0; p < 2; ++p) {
    reps_[p].assign(nl, {});
    pos_[p].assign(nl, {});
    loff_[p].assign(nl + 1, 0);
    for (int l = 0; l < nl; ++l) {
      for (int j = p; j <= n_; j += 2) {
        if (j < n_) {
          for (const FMono& m : fc_.basis(l, j)) {
            pos_[p][l].emplace(m, (int)reps_[p][l].size());
            reps_[p][l].push_back(m);
          }
        } else {
          const auto& piv = bimage_[l].rows();
          for (const FMono& m : fc_.basis(l, n_)) {
            if (piv.count(toppos_[l].at(m))) continue;
            pos_[p][l].emplace(m, (int)reps_[p][l].size());
            reps_[p][l].push_back(m);
          }
        }
      }
      loff_[p][l + 1] = loff_[p][l] + (int)reps_[p][l].size();
    }
  }
  for (int p = 0; p < 2; ++p) {
    AYDModule& mod = (p == 0) ? p_.even : p_.odd;
    mod.G = g_;
    mod.fdim.resize(nl);
    for (int l = 0; l < nl; ++l) mod.fdim[l] = (int)reps_[p][l].size();
    mod.rebuild_offsets();
    for (int l = 0; l < nl; ++l) {
      int la = g.loops()[l];
      int base = g.tgt(la);
      for (int ar = 0; ar < g.num_arrows(); ++ar) {
        if (g.src(ar) != base) continue;
        int lc = g.loop_pos(g.conj(ar, la));
        SpMat blk((int)reps_[p][lc].size(), (int)reps_[p][l].size());
        const QMat& rho = fc_.algebra().mod.rho[ar];
        for (size_t j = 0; j < reps_[p][l].size(); ++j) {
          FVec img = form_transport(rho, lc, reps_[p][l][j]);
          for (const auto& [gi, c] : coords(p, img)) blk.col[j][gi - loff_[p][lc]] = c;
        }
        mod.act[{ar, l}] = std::move(blk);
      }
    }
  }
  // boundary B + b; at top degree B is truncated away
  auto bound = [&](int p) {
    SpMat m(loff_[1 - p].back(), loff_[p].back());
    for (int l = 0; l < nl; ++l)
      for (size_t j = 0; j < reps_[p][l].size(); ++j) {
        const FMono& rep = reps_[p][l][j];
        FVec img = fc_.b(rep);
        if (rep.deg < n_) fv_axpy(img, Rat(1), fc_.B(rep));
        m.col[loff_[p][l] + j] = coords(1 - p, img);
      }
    return m;
  };
  p_.d0 = bound(0);
  p_.d1 = bound(1);
}

long HodgeComplex::dim(int parity) const { return loff_[parity].back(); }

FMono HodgeComplex::rep(int parity, int idx) const {
  int l = 0;
  while (loff_[parity][l + 1] <= idx) ++l;
  return reps_[parity][l][idx - loff_[parity][l]];
}

SpVec HodgeComplex::coords(int parity, const FVec& v) const {
  SpVec out;
  // top-degree components reduced per loop first
  std::map<int, SpVec> top;
  for (const auto& [m, c] : v) {
    if ((int)m.deg > n_) fail("coords: degree above level");
    if ((m.deg % 2) != parity) fail("coords: parity mismatch");
    if ((int)m.deg == n_)
      top[(int)m.loop][toppos_[m.loop].at(m)] += c;
    else
      out[loff_[parity][m.loop] + pos_[parity][m.loop].at(m)] += c;
  }
  for (auto& [l, tv] : top) {
    SpVec red = bimage_[l].reduce(std::move(tv));
    for (const auto& [ti, c] : red) {
      // recover the monomial with this top index
      // toppos_ is insertion-ordered over fc_.basis(l, n_): rebuild lazily
      for (const auto& [m, id] : toppos_[l])
        if (id == ti) {
          out[loff_[parity][l] + pos_[parity][l].at(m)] += c;
          break;
        }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

Paracomplex x_complex(const Groupoid& g, const GAlgebra& a) {
  return HodgeComplex(g, a, 1).para();
}

std::optional<SpVec> HomComplex::even_coords(const SpMat& f, const SpMat& g) const {
  return even_span.express(flatten_pair(f, g));
}
std::optional<SpVec> HomComplex::odd_coords(const SpMat& u, const SpMat& v) const {
  return odd_span.express(flatten_pair(u, v));
}

HomComplex hom_paracomplex(const Paracomplex& p, const Paracomplex& q) {
  HomComplex h;
  h.ee = ayd_homs(p.even, q.even);
  h.oo = ayd_homs(p.odd, q.odd);
  h.eo = ayd_homs(p.even, q.odd);
  h.oe = ayd_homs(p.odd, q.even);
  SpMat zee(q.even.dim(), p.even.dim()), zoo(q.odd.dim(), p.odd.dim());
  SpMat zeo(q.odd.dim(), p.even.dim()), zoe(q.even.dim(), p.odd.dim());
  {
    int tag = 0;
    for (const auto& f : h.ee) h.even_span.add(flatten_pair(f, zoo), tag++);
    for (const auto& g : h.oo) h.even_span.add(flatten_pair(zee, g), tag++);
    tag = 0;
    for (const auto& u : h.eo) h.odd_span.add(flatten_pair(u, zoe), tag++);
    for (const auto& v : h.oe) h.odd_span.add(flatten_pair(zeo, v), tag++);
  }
  h.deven = SpMat((int)h.odd_dim(), (int)h.even_dim());
  for (long k = 0; k < h.even_dim(); ++k) {
    const SpMat& f = (k < (long)h.ee.size()) ? h.ee[k] : zee;
    const SpMat& g = (k < (long)h.ee.size()) ? zoo : h.oo[k - h.ee.size()];
    SpMat u = SpMat::add(SpMat::mul(g, p.d0), Rat(-1), SpMat::mul(q.d0, f));
    SpMat v = SpMat::add(SpMat::mul(f, p.d1), Rat(-1), SpMat::mul(q.d1, g));
    auto c = h.odd_coords(u, v);
    if (!c) fail("hom differential leaves the carrier");
    h.deven.col[k] = *c;
  }
  h.dodd = SpMat((int)h.even_dim(), (int)h.odd_dim());
  for (long k = 0; k < h.odd_dim(); ++k) {
    const SpMat& u = (k < (long)h.eo.size()) ? h.eo[k] : zeo;
    const SpMat& v = (k < (long)h.eo.size()) ? zoe : h.oe[k - h.eo.size()];
    SpMat fe = SpMat::add(SpMat::mul(v, p.d0), Rat(1), SpMat::mul(q.d1, u));
    SpMat fo = SpMat::add(SpMat::mul(u, p.d1), Rat(1), SpMat::mul(q.d0, v));
    auto c = h.even_coords(fe, fo);
    if (!c) fail("hom differential leaves the carrier");
    h.dodd.col[k] = *c;
  }
  if (!SpMat::mul(h.dodd, h.deven).is_zero() || !SpMat::mul(h.deven, h.dodd).is_zero())
    fail("hom complex differential does not square to zero");
  return h;
}

DSquareWitness dsquare_pair(const Paracomplex& p, const Paracomplex& q, const SpMat& f,
                            const SpMat& g) {
  DSquareWitness w;
  SpMat u = SpMat::add(SpMat::mul(g, p.d0), Rat(-1), SpMat::mul(q.d0, f));
  SpMat v = SpMat::add(SpMat::mul(f, p.d1), Rat(-1), SpMat::mul(q.d1, g));
  w.dsq_e = SpMat::add(SpMat::mul(v, p.d0), Rat(1), SpMat::mul(q.d1, u));
  w.dsq_o = SpMat::add(SpMat::mul(u, p.d1), Rat(1), SpMat::mul(q.d0, v));
  w.comm_e = SpMat::add(SpMat::mul(q.even.canonical_T(), f), Rat(-1),
                        SpMat::mul(f, p.even.canonical_T()));
  w.comm_o = SpMat::add(SpMat::mul(q.odd.canonical_T(), g), Rat(-1),
                        SpMat::mul(g, p.odd.canonical_T()));
  w.identity_holds = w.dsq_e.equals(w.comm_e) && w.dsq_o.equals(w.comm_o);
  w.nonzero = !w.comm_e.is_zero() || !w.comm_o.is_zero();
  return w;
}

HomologyReport homology(const HomComplex& h) {
  HomologyReport r;
  int re = rank_of_columns((int)h.even_dim(), [&](int j) { return h.deven.col[j]; });
  int ro = rank_of_columns((int)h.odd_dim(), [&](int j) { return h.dodd.col[j]; });
  r.even_rank = h.even_dim() - re - ro;
  r.odd_rank = h.odd_dim() - ro - re;
  r.level = 1;
  return r;
}

HomologyReport hp_quasifree(const GAlgebra& a, const GAlgebra& b, bool verify_certs) {
  if (verify_certs) {
    if (!quasifree_certificate(a)) fail("source algebra is not quasifree; use hp_level");
    if (!quasifree_certificate(b)) fail("target algebra is not quasifree; use hp_level");
  }
  const Groupoid& g = *a.mod.G;
  Paracomplex xa = x_complex(g, a);
  Paracomplex xb = x_complex(g, b);
  HomologyReport r = homology(hom_paracomplex(xa, xb));
  r.reduction = "quasifree";
  r.level = 1;
  return r;
}

std::vector<HomologyReport> hp_level(const GAlgebra& a, const GAlgebra& b, int level) {
  const Groupoid& g = *a.mod.G;
  std::vector<HomologyReport> out;
  for (int m = 1; m <= level; ++m) {
    HodgeComplex ta(g, a, m), tb(g, b, m);
    HomologyReport r = homology(hom_paracomplex(ta.para(), tb.para()));
    r.level = m;
    r.reduction = "level";
    r.stabilized = !out.empty() && out.back().even_rank == r.even_rank &&
                   out.back().odd_rank == r.odd_rank;
    out.push_back(r);
  }
  return out;
}

PolyMap poly_const(const std::vector<QMat>& f) {
  PolyMap p;
  for (const auto& m : f) p.coeff.push_back({m});
  return p;
}

std::vector<QMat> poly_eval(const PolyMap& p, const Rat& t) {
  std::vector<QMat> out;
  for (const auto& powers : p.coeff) {
    QMat m = powers[0];
    Rat tk(1);
    for (size_t k = 1; k < powers.size(); ++k) {
      tk *= t;
      for (size_t e = 0; e < m.a.size(); ++e) m.a[e] += tk * powers[k].a[e];
    }
    out.push_back(m);
  }
  return out;
}

XChainMap x_map(const HodgeComplex& xa, const HodgeComplex& xb, const std::vector<QMat>& f) {
  const Groupoid& g = xa.calc().groupoid();
  XChainMap xm;
  for (int p = 0; p < 2; ++p) {
    SpMat m((int)xb.dim(p), (int)xa.dim(p));
    for (long j = 0; j < xa.dim(p); ++j) {
      FMono rep = xa.rep(p, (int)j);
      int base = g.tgt(g.loops()[rep.loop]);
      m.col[j] = xb.coords(p, form_transport(f[base], (int)rep.loop, rep));
    }
    if (p == 0)
      xm.even = std::move(m);
    else
      xm.odd = std::move(m);
  }
  return xm;
}

bool is_boundary_class(const HomComplex& h, const SpMat& fe, const SpMat& fo) {
  auto c = h.even_coords(fe, fo);
  if (!c) return false;
  std::vector<SpVec> rows((size_t)h.even_dim());
  std::vector<Rat> rhs((size_t)h.even_dim(), Rat(0));
  for (int j = 0; j < (int)h.odd_dim(); ++j)
    for (const auto& [i, v] : h.dodd.col[j]) rows[i][j] = v;
  for (const auto& [i, v] : *c) rhs[i] = v;
  return linear_solve((int)h.odd_dim(), rows, rhs).has_value();
}

namespace {

using PolyFib = std::vector<FibVec>;   // fiber element with polynomial coefficients
using PolyForm = std::vector<FVec>;    // fiber form with polynomial coefficients

PolyFib poly_column(const PolyMap& p, int x, int i) {
  PolyFib out;
  for (const auto& m : p.coeff[x]) {
    FibVec v;
    for (int r = 0; r < m.rows; ++r)
      if (m.at(r, i) != 0) v.emplace_back(r, m.at(r, i));
    out.push_back(std::move(v));
  }
  return out;
}

PolyFib poly_derivative(const PolyFib& p) {
  PolyFib out;
  for (size_t k = 1; k < p.size(); ++k) out.push_back(fib_scale(p[k], Rat((long)k)));
  if (out.empty()) out.push_back({});
  return out;
}

PolyForm to_forms(int unit, const PolyFib& p) {
  PolyForm out;
  for (const auto& v : p) {
    FVec f;
    for (const auto& [i, c] : v) {
      FMono m;
      m.loop = (uint32_t)unit;
      m.a0 = (uint16_t)i;
      f.emplace(m, c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

PolyForm poly_form_mul(const FiberForms& ff, const PolyForm& a, const PolyForm& b) {
  PolyForm out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) fv_axpy(out[i + j], Rat(1), ff.mul(a[i], b[j]));
  return out;
}

FVec poly_integrate(const PolyForm& p) {
  FVec out;
  for (size_t k = 0; k < p.size(); ++k) fv_axpy(out, Rat(1) / Rat((long)(k + 1)), p[k]);
  return out;
}

}  // namespace

CartanReport cartan_homotopy_check(const GAlgebra& a, const GAlgebra& b, const PolyMap& phi,
                                   const ConnectionCertificate* cert) {
  const Groupoid& g = *a.mod.G;
  CartanReport rep;
  FiberForms ffb(b);

  // Phi_t is an algebra homomorphism identically in t
  rep.homomorphism = true;
  for (int x = 0; x < g.num_units() && rep.homomorphism; ++x)
    for (int i = 0; i < a.mod.fdim[x] && rep.homomorphism; ++i)
      for (int j = 0; j < a.mod.fdim[x] && rep.homomorphism; ++j) {
        PolyFib pi = poly_column(phi, x, i), pj = poly_column(phi, x, j);
        PolyFib prod(pi.size() + pj.size() - 1);
        for (size_t s = 0; s < pi.size(); ++s)
          for (size_t t = 0; t < pj.size(); ++t)
            prod[s + t] = fib_add(prod[s + t], b.mul_vec(x, pi[s], pj[t]));
        PolyFib want(prod.size());
        for (const auto& [k, c] : a.mul_basis(x, i, j)) {
          PolyFib pk = poly_column(phi, x, k);
          for (size_t s = 0; s < pk.size(); ++s) want[s] = fib_add(want[s], fib_scale(pk[s], c));
        }
        for (size_t s = 0; s < prod.size(); ++s)
          if (!fib_equal(prod[s], s < want.size() ? want[s] : FibVec{}))
            rep.homomorphism = false;
      }
  // equivariance per t-power
  rep.equivariant = true;
  size_t maxpow = 0;
  for (const auto& c : phi.coeff) maxpow = std::max(maxpow, c.size());
  for (size_t k = 0; k < maxpow && rep.equivariant; ++k) {
    std::vector<QMat> fk(g.num_units());
    for (int x = 0; x < g.num_units(); ++x)
      fk[x] = (k < phi.coeff[x].size()) ? phi.coeff[x][k]
                                        : QMat(b.mod.fdim[x], a.mod.fdim[x]);
    if (!is_equivariant_map(a.mod, b.mod, fk)) rep.equivariant = false;
  }
  if (!rep.homomorphism || !rep.equivariant) return rep;

  HodgeComplex theta(g, a, 2);
  HodgeComplex xa(g, a, 1);
  HodgeComplex xb(g, b, 1);
  XChainMap f0 = x_map(xa, xb, poly_eval(phi, Rat(0)));
  XChainMap f1 = x_map(xa, xb, poly_eval(phi, Rat(1)));

  // eta(<a0> da1 ... dan) = int_0^1 Phi(a0) Phi'(a1) dPhi(a2) ... dPhi(an) dt
  auto eta = [&](const FMono& m) -> FVec {
    if (m.deg == 0) return {};
    int x = g.tgt(g.loops()[m.loop]);
    PolyForm acc = to_forms(x, poly_derivative(poly_column(phi, x, m.tail[0])));
    if (m.a0 != FUNIT)
      acc = poly_form_mul(ffb, to_forms(x, poly_column(phi, x, (int)m.a0)), acc);
    for (int s = 1; s < m.deg; ++s) {
      PolyForm dphi;
      for (auto& f : to_forms(x, poly_column(phi, x, m.tail[s]))) dphi.push_back(ffb.d(f));
      acc = poly_form_mul(ffb, acc, dphi);
    }
    FVec out = poly_integrate(acc);
    // relocate to the loop of m
    FVec rel;
    for (const auto& [mm, c] : out) {
      FMono r = mm;
      r.loop = m.loop;
      rel.emplace(r, c);
    }
    return rel;
  };
  SpMat He((int)xb.dim(1), (int)theta.dim(0));  // theta even -> X(B) odd
  SpMat Ho((int)xb.dim(0), (int)theta.dim(1));  // theta odd -> X(B) even
  for (long j = 0; j < theta.dim(0); ++j) {
    FMono m = theta.rep(0, (int)j);
    if (m.deg == 2) He.col[j] = xb.coords(1, eta(m));
  }
  for (long j = 0; j < theta.dim(1); ++j) Ho.col[j] = xb.coords(0, eta(theta.rep(1, (int)j)));

  // xi_2: theta^2 -> X(A)
  SpMat Xe((int)xa.dim(0), (int)theta.dim(0));
  SpMat Xo((int)xa.dim(1), (int)theta.dim(1));
  for (long j = 0; j < theta.dim(0); ++j) {
    FMono m = theta.rep(0, (int)j);
    if (m.deg == 0) Xe.col[j] = xa.coords(0, FVec{{m, Rat(1)}});
  }
  for (long j = 0; j < theta.dim(1); ++j)
    Xo.col[j] = xa.coords(1, FVec{{theta.rep(1, (int)j), Rat(1)}});

  SpMat diff_e = SpMat::add(SpMat::mul(f1.even, Xe), Rat(-1), SpMat::mul(f0.even, Xe));
  SpMat diff_o = SpMat::add(SpMat::mul(f1.odd, Xo), Rat(-1), SpMat::mul(f0.odd, Xo));
  SpMat rhs_e = SpMat::add(SpMat::mul(xb.para().d1, He), Rat(1),
                           SpMat::mul(Ho, theta.para().d0));
  SpMat rhs_o = SpMat::add(SpMat::mul(xb.para().d0, Ho), Rat(1),
                           SpMat::mul(He, theta.para().d1));
  rep.homotopy_identity = diff_e.equals(rhs_e) && diff_o.equals(rhs_o);

  if (cert) {
    // nabla on theta^2: <a0> da1 -> a0 . phi(a1), zero elsewhere
    SpMat N((int)theta.dim(0), (int)theta.dim(1));
    FiberForms ffa(a);
    for (long j = 0; j < theta.dim(1); ++j) {
      FMono m = theta.rep(1, (int)j);
      int x = g.tgt(g.loops()[m.loop]);
      FVec val;
      for (const auto& [mm, c] : cert->phi[x][m.tail[0]]) {
        FMono r = mm;
        r.loop = m.loop;
        val.emplace(r, c);
      }
      if (m.a0 != FUNIT) {
        FVec moved;
        for (const auto& [mm, c] : val) {
          FMono r = mm;
          for (const auto& [k, e] : (mm.a0 == FUNIT)
                                        ? FibVec{{(int)m.a0, Rat(1)}}
                                        : a.mul_basis(x, (int)m.a0, (int)mm.a0)) {
            r.a0 = (uint16_t)k;
            fv_axpy(moved, c * e, FVec{{r, Rat(1)}});
          }
        }
        val = std::move(moved);
      }
      N.col[j] = theta.coords(0, val);
    }
    // inclusion X(A) -> theta^2
    SpMat Ie((int)theta.dim(0), (int)xa.dim(0));
    SpMat Io((int)theta.dim(1), (int)xa.dim(1));
    for (long j = 0; j < xa.dim(0); ++j)
      Ie.col[j] = theta.coords(0, FVec{{xa.rep(0, (int)j), Rat(1)}});
    for (long j = 0; j < xa.dim(1); ++j)
      Io.col[j] = theta.coords(1, FVec{{xa.rep(1, (int)j), Rat(1)}});
    SpMat nu_e = SpMat::add(Ie, Rat(-1), SpMat::mul(N, SpMat::mul(theta.para().d0, Ie)));
    SpMat nu_o = SpMat::add(Io, Rat(-1), SpMat::mul(theta.para().d0, SpMat::mul(N, Io)));
    bool left = SpMat::mul(Xe, nu_e).equals(SpMat::identity((int)xa.dim(0))) &&
                SpMat::mul(Xo, nu_o).equals(SpMat::identity((int)xa.dim(1)));
    SpMat want_e = SpMat::add(SpMat::identity((int)theta.dim(0)), Rat(-1),
                              SpMat::mul(N, theta.para().d0));
    SpMat want_o = SpMat::add(SpMat::identity((int)theta.dim(1)), Rat(-1),
                              SpMat::mul(theta.para().d0, N));
    bool right = SpMat::mul(nu_e, Xe).equals(want_e) && SpMat::mul(nu_o, Xo).equals(want_o);
    rep.nu_identities = left && right;
  }

  HomComplex hom = hom_paracomplex(xa.para(), xb.para());
  SpMat de = SpMat::add(f1.even, Rat(-1), f0.even);
  SpMat dd = SpMat::add(f1.odd, Rat(-1), f0.odd);
  rep.classes_equal = is_boundary_class(hom, de, dd);
  return rep;
}

namespace {

// Homology classes of one parity of a HomComplex, with coordinates.
struct HClasses {
  Echelon bnd;
  SpanSolver classes;
  std::vector<SpVec> cycle_basis;
  long rank = 0;
  void build(const SpMat& outgoing, const SpMat& incoming) {
    for (const auto& c : incoming.col) {
      SpVec v = c;
      bnd.add(std::move(v));
    }
    auto ker = kernel_of_columns(outgoing.cols, [&](int j) { return outgoing.col[j]; });
    int tag = 0;
    for (auto& v : ker.kernel) {
      SpVec r = bnd.reduce(v);
      if (classes.add(r, tag)) {
        cycle_basis.push_back(v);
        tag++;
      }
    }
    rank = tag;
  }
  std::optional<SpVec> coords(const SpVec& v) const { return classes.express(bnd.reduce(v)); }
};

// Post-composition with the chain map (me, mo) on one parity of the carrier
// of Hom(O, -), expressed in the target Hom basis.
SpMat post_compose(const Paracomplex& o, const HomComplex& src, const HomComplex& tgt,
                   const SpMat& me, const SpMat& mo, bool odd_par) {
  const auto& eb = odd_par ? src.eo : src.ee;  // maps out of o.even
  const auto& ob = odd_par ? src.oe : src.oo;  // maps out of o.odd
  const SpMat& mfirst = odd_par ? mo : me;     // post-composition on eb images
  const SpMat& msecond = odd_par ? me : mo;    // post-composition on ob images
  long n = odd_par ? src.odd_dim() : src.even_dim();
  long m = odd_par ? tgt.odd_dim() : tgt.even_dim();
  SpMat out((int)m, (int)n);
  for (long j = 0; j < n; ++j) {
    SpMat bu(mfirst.rows, o.even.dim()), bv(msecond.rows, o.odd.dim());
    if (j < (long)eb.size())
      bu = SpMat::mul(mfirst, eb[j]);
    else
      bv = SpMat::mul(msecond, ob[j - eb.size()]);
    auto c = odd_par ? tgt.odd_coords(bu, bv) : tgt.even_coords(bu, bv);
    if (!c) fail("induced hom map leaves the carrier");
    out.col[j] = *c;
  }
  return out;
}

}  // namespace

bool induces_identity_on_homology(const Groupoid& g, const Paracomplex& x, const SpMat& fe,
                                  const SpMat& fo) {
  Paracomplex o = trivial_paracomplex(g);
  HomComplex h = hom_paracomplex(o, x);
  for (int par = 0; par < 2; ++par) {
    HClasses hc;
    if (par == 0)
      hc.build(h.deven, h.dodd);
    else
      hc.build(h.dodd, h.deven);
    SpMat m = post_compose(o, h, h, fe, fo, par == 1);
    for (const auto& cyc : hc.cycle_basis) {
      SpVec img = m.apply(cyc);
      SpVec diff = img;
      for (const auto& [i, c] : cyc) {
        diff[i] -= c;
        if (diff[i] == 0) diff.erase(i);
      }
      auto cc = hc.coords(diff);
      if (!cc || !cc->empty()) return false;
    }
  }
  return true;
}

bool SplitExtensionReport::all() const {
  if (!valid || !chain_maps || !decomposition) return false;
  for (bool b : exactness)
    if (!b) return false;
  return !exactness.empty();
}

SplitExtensionReport split_extension(const GAlgebra& k, const GAlgebra& e, const GAlgebra& q,
                                     const std::vector<QMat>& iota,
                                     const std::vector<QMat>& pi,
                                     const std::vector<QMat>& sigma, int level) {
  const Groupoid& g = *e.mod.G;
  SplitExtensionReport rep;
  bool pii_zero = true, pisig_id = true;
  for (int x = 0; x < g.num_units(); ++x) {
    QMat pi_iota = QMat::mul(pi[x], iota[x]);
    for (const auto& v : pi_iota.a)
      if (v != 0) pii_zero = false;
    if (!QMat::mul(pi[x], sigma[x]).is_identity()) pisig_id = false;
  }
  rep.valid = pii_zero && pisig_id && is_algebra_map(k, e, iota) &&
              is_algebra_map(e, q, pi) && is_algebra_map(q, e, sigma) &&
              is_equivariant_map(k.mod, e.mod, iota) && is_equivariant_map(e.mod, q.mod, pi) &&
              is_equivariant_map(q.mod, e.mod, sigma);
  if (!rep.valid) return rep;

  TruncatedTA te = truncated_tensor_algebra(e, level);
  TruncatedTA tq = truncated_tensor_algebra(q, level);
  // lift a fiber map to the truncated tensor algebras, slot by slot
  auto ta_lift = [&](const TruncatedTA& src, const TruncatedTA& tgt,
                     const std::vector<QMat>& f) {
    std::vector<QMat> out;
    for (int x = 0; x < g.num_units(); ++x) {
      QMat m((int)tgt.basis[x].size(), (int)src.basis[x].size());
      for (size_t j = 0; j < src.basis[x].size(); ++j)
        for (const auto& [mm, c] : form_transport(f[x], x, src.basis[x][j]))
          m.at(tgt.index[x].at(mm), (int)j) += c;
      out.push_back(std::move(m));
    }
    return out;
  };
  std::vector<QMat> tpi = ta_lift(te, tq, pi), tsig = ta_lift(tq, te, sigma);
  HodgeComplex xe(g, te.alg, 1), xq(g, tq.alg, 1);
  XChainMap xpi = x_map(xe, xq, tpi);
  XChainMap xsig = x_map(xq, xe, tsig);

  // chain maps: commute with the boundaries
  auto commutes = [&](const XChainMap& f, const HodgeComplex& s, const HodgeComplex& t) {
    return SpMat::mul(t.para().d0, f.even).equals(SpMat::mul(f.odd, s.para().d0)) &&
           SpMat::mul(t.para().d1, f.odd).equals(SpMat::mul(f.even, s.para().d1));
  };
  rep.chain_maps = commutes(xpi, xe, xq) && commutes(xsig, xq, xe);

  // X(Tpi) X(Tsigma) = id and the projector splits X(TE)
  SpMat pe = SpMat::mul(xsig.even, xpi.even);
  SpMat po = SpMat::mul(xsig.odd, xpi.odd);
  bool retraction = SpMat::mul(xpi.even, xsig.even).equals(SpMat::identity((int)xq.dim(0))) &&
                    SpMat::mul(xpi.odd, xsig.odd).equals(SpMat::identity((int)xq.dim(1)));
  bool idem = SpMat::mul(pe, pe).equals(pe) && SpMat::mul(po, po).equals(po);
  rep.decomposition = retraction && idem;

  // Hom(O_G[0], -) homology sequence 0 -> H(ker) -> H(XTE) -> H(XTQ) -> 0
  Paracomplex o = trivial_paracomplex(g);
  HomComplex he = hom_paracomplex(o, xe.para());
  HomComplex hq = hom_paracomplex(o, xq.para());
  // the kernel part of H(XTE) is realized as the image of H(id - P)
  // induced maps on Hom carriers: pi_* and (id-P)_*
  SpMat ide = SpMat::add(SpMat::identity((int)xe.dim(0)), Rat(-1), pe);
  SpMat ido = SpMat::add(SpMat::identity((int)xe.dim(1)), Rat(-1), po);
  SpMat pi_e = post_compose(o, he, hq, xpi.even, xpi.odd, false);
  SpMat pi_o = post_compose(o, he, hq, xpi.even, xpi.odd, true);
  SpMat ker_e = post_compose(o, he, he, ide, ido, false);
  SpMat ker_o = post_compose(o, he, he, ide, ido, true);

  for (int par = 0; par < 2; ++par) {
    HClasses HE, HQ;
    if (par == 0) {
      HE.build(he.deven, he.dodd);
      HQ.build(hq.deven, hq.dodd);
    } else {
      HE.build(he.dodd, he.deven);
      HQ.build(hq.dodd, hq.deven);
    }
    const SpMat& pim = par == 0 ? pi_e : pi_o;
    const SpMat& krm = par == 0 ? ker_e : ker_o;
    // induced matrices on homology
    auto induced = [&](const HClasses& src, const HClasses& tgt, const SpMat& m) {
      SpMat out((int)tgt.rank, (int)src.rank);
      for (size_t j = 0; j < src.cycle_basis.size(); ++j) {
        auto c = tgt.coords(m.apply(src.cycle_basis[j]));
        if (!c) fail("induced map is not well defined on homology");
        out.col[j] = *c;
      }
      return out;
    };
    SpMat hk = induced(HE, HE, krm);   // H(id-P): HE -> HE, image = kernel part
    SpMat hpi = induced(HE, HQ, pim);  // H(pi): HE -> HQ
    int rank_k = rank_of_columns(hk.cols, [&](int j) { return hk.col[j]; });
    int rank_pi = rank_of_columns(hpi.cols, [&](int j) { return hpi.col[j]; });
    // exactness: injection of the kernel part, middle, surjection
    bool left = SpMat::mul(hk, hk).equals(hk);  // projector on homology
    bool mid = (rank_k + rank_pi == HE.rank) && SpMat::mul(hpi, hk).is_zero();
    bool rightx = (rank_pi == HQ.rank);
    rep.exactness.push_back(left);
    rep.exactness.push_back(mid);
    rep.exactness.push_back(rightx);
  }
  return rep;
}

}  // namespace qcyc
