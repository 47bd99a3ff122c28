#include "qcyc/stability.hpp"

namespace qcyc {

Rat TwistedTrace::eval(int beta, int k) const { return eval_vec(beta, {{k, Rat(1)}}); }

Rat TwistedTrace::eval_vec(int beta, const FibVec& l) const {
  int x = G->src(beta);
  int d = h.mod.fdim[x];
  const QMat& r = h.mod.rho[G->inv(beta)];
  Rat out(0);
  for (const auto& [k, c] : l) {
    int i = k / d, j = k % d;
    // h(beta^{-1} e_j, e_i)
    FibVec tj = fib_apply(r, {{j, Rat(1)}});
    out += c * h.eval(x, tj, {{i, Rat(1)}});
  }
  return out;
}

bool TwistedTrace::trace_identity(int beta, const FibVec& l0, const FibVec& l1) const {
  int x = G->src(beta);
  int d = h.mod.fdim[x];
  auto prod = [&](const FibVec& a, const FibVec& b) {
    FibVec out;
    for (const auto& [p, c] : a)
      for (const auto& [q, e] : b) {
        Rat g = h.gram[x].at(p % d, q / d);
        if (g != 0) out.emplace_back((p / d) * d + (q % d), c * e * g);
      }
    return fib_normalize(out);
  };
  const QMat& r = h.mod.rho[G->inv(beta)];
  // chi_{U^-1} . L1: transport both tensor slots
  FibVec tl1;
  for (const auto& [k, c] : l1) {
    int i = k / d, j = k % d;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        Rat v = c * r.at(p, i) * r.at(q, j);
        if (v != 0) tl1.emplace_back(p * d + q, v);
      }
  }
  tl1 = fib_normalize(tl1);
  return eval_vec(beta, prod(l0, l1)) == eval_vec(beta, prod(tl1, l0));
}

TwistedTrace twisted_trace(const EquivariantPairing& h) {
  TwistedTrace t;
  t.G = h.mod.G;
  t.h = h;
  return t;
}

std::vector<QMat> equivariant_average(const GModule& e, const GModule& f,
                                      const std::vector<QMat>& phi) {
  const Groupoid& g = *e.G;
  std::vector<Rat> c = g.cutoff();
  std::vector<QMat> out;
  for (int x = 0; x < g.num_units(); ++x) {
    QMat m(f.fdim[x], e.fdim[x]);
    for (int ar : g.arrows_into(x)) {
      int s = g.src(ar);
      if (c[s] == 0) continue;
      QMat t = QMat::mul(f.rho[ar], QMat::mul(phi[s], e.rho[g.inv(ar)]));
      for (size_t k = 0; k < m.a.size(); ++k) m.a[k] += c[s] * t.a[k];
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<AdmissibilityCertificate> admissibility_certificate(const EquivariantPairing& h) {
  const Groupoid& g = *h.mod.G;
  GModule triv = GModule::trivial(g);
  int maxd = 0;
  for (int d : h.mod.fdim) maxd = std::max(maxd, d);
  auto extract = [&](const std::vector<QMat>& avg) -> std::optional<AdmissibilityCertificate> {
    AdmissibilityCertificate cert;
    for (int x = 0; x < g.num_units(); ++x) {
      FibVec w;
      for (int i = 0; i < h.mod.fdim[x]; ++i)
        if (avg[x].at(i, 0) != 0) w.emplace_back(i, avg[x].at(i, 0));
      Rat u = h.eval(x, w, w);
      if (u == 0) return std::nullopt;
      cert.w.push_back(std::move(w));
      cert.u.push_back(u);
    }
    return cert;
  };
  std::vector<QMat> total(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) total[x] = QMat(h.mod.fdim[x], 1);
  for (int j = 0; j < maxd; ++j) {
    std::vector<QMat> phi;
    for (int x = 0; x < g.num_units(); ++x) {
      QMat m(h.mod.fdim[x], 1);
      m.at(j % h.mod.fdim[x], 0) = Rat(1);
      phi.push_back(std::move(m));
    }
    std::vector<QMat> avg = equivariant_average(triv, h.mod, phi);
    for (int x = 0; x < g.num_units(); ++x)
      for (size_t k = 0; k < total[x].a.size(); ++k) total[x].a[k] += avg[x].a[k];
    if (auto c = extract(avg)) return c;
  }
  return extract(total);
}

XChainMap trace_chain_map(const GAlgebra& a, const EquivariantPairing& h,
                          const HodgeComplex& xak, const HodgeComplex& xa) {
  const Groupoid& g = *a.mod.G;
  TwistedTrace tt = twisted_trace(h);
  std::vector<int> kd(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) kd[x] = h.mod.fdim[x] * h.mod.fdim[x];
  XChainMap tr;
  tr.even = SpMat((int)xa.dim(0), (int)xak.dim(0));
  tr.odd = SpMat((int)xa.dim(1), (int)xak.dim(1));
  for (long idx = 0; idx < xak.dim(0); ++idx) {
    FMono m = xak.rep(0, (int)idx);
    int la = g.loops()[m.loop];
    int x = g.tgt(la);
    FMono out = m;
    out.a0 = (uint16_t)((int)m.a0 / kd[x]);
    Rat c = tt.eval(la, (int)m.a0 % kd[x]);
    if (c == 0) continue;
    SpVec col = xa.coords(0, FVec{{out, c}});
    tr.even.col[idx] = std::move(col);
  }
  for (long idx = 0; idx < xak.dim(1); ++idx) {
    FMono m = xak.rep(1, (int)idx);
    int la = g.loops()[m.loop];
    int x = g.tgt(la);
    int d = h.mod.fdim[x];
    int t1 = m.tail[0];
    FMono out = m;
    out.tail[0] = (uint8_t)(t1 / kd[x]);
    Rat c(0);
    if (m.a0 == FUNIT) {
      c = tt.eval(la, t1 % kd[x]);
    } else {
      out.a0 = (uint16_t)((int)m.a0 / kd[x]);
      int k0 = (int)m.a0 % kd[x], k1 = t1 % kd[x];
      // ttr(f (x) L0 L1), product in K(E)
      Rat gr = h.gram[x].at(k0 % d, k1 / d);
      if (gr != 0) c = gr * tt.eval(la, (k0 / d) * d + (k1 % d));
    }
    if (c == 0) continue;
    tr.odd.col[idx] = xa.coords(1, FVec{{out, c}});
  }
  return tr;
}

StabilityReport stability_check(const GAlgebra& a, const EquivariantPairing& h) {
  const Groupoid& g = *a.mod.G;
  StabilityReport rep;
  TwistedTrace tt = twisted_trace(h);
  rep.trace_property = true;
  for (int l : g.loops()) {
    int x = g.src(l);
    int kdim = h.mod.fdim[x] * h.mod.fdim[x];
    for (int k0 = 0; k0 < kdim && rep.trace_property; ++k0)
      for (int k1 = 0; k1 < kdim && rep.trace_property; ++k1)
        if (!tt.trace_identity(l, {{k0, Rat(1)}}, {{k1, Rat(1)}})) rep.trace_property = false;
  }
  auto cert = admissibility_certificate(h);
  rep.admissible = cert.has_value();
  if (!cert) return rep;

  GAlgebra ke = smoothing_algebra(h);
  GAlgebra ak = tensor_product_algebra(a, ke);
  std::vector<int> kd(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) kd[x] = h.mod.fdim[x] * h.mod.fdim[x];
  std::vector<QMat> iota(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) {
    int d = h.mod.fdim[x];
    iota[x] = QMat(a.mod.fdim[x] * kd[x], a.mod.fdim[x]);
    for (int i = 0; i < a.mod.fdim[x]; ++i)
      for (const auto& [p, cp] : cert->w[x])
        for (const auto& [q, cq] : cert->w[x])
          iota[x].at(i * kd[x] + p * d + q, i) = cp * cq / cert->u[x];
  }
  rep.algebra_map = is_algebra_map(a, ak, iota) && is_equivariant_map(a.mod, ak.mod, iota);

  HodgeComplex xa(g, a, 1), xak(g, ak, 1);
  XChainMap tr = trace_chain_map(a, h, xak, xa);
  XChainMap xi = x_map(xa, xak, iota);
  rep.chain_map =
      SpMat::mul(xa.para().d0, tr.even).equals(SpMat::mul(tr.odd, xak.para().d0)) &&
      SpMat::mul(xa.para().d1, tr.odd).equals(SpMat::mul(tr.even, xak.para().d1));
  rep.retraction = SpMat::mul(tr.even, xi.even).equals(SpMat::identity((int)xa.dim(0))) &&
                   SpMat::mul(tr.odd, xi.odd).equals(SpMat::identity((int)xa.dim(1)));
  rep.induces_id = induces_identity_on_homology(
      g, xak.para(), SpMat::mul(xi.even, tr.even), SpMat::mul(xi.odd, tr.odd));

  rep.hp_a = hp_quasifree(a, a);
  rep.hp_ak = hp_quasifree(ak, ak);
  rep.hp_a_ak = hp_quasifree(a, ak, false);
  rep.hp_ak_a = hp_quasifree(ak, a, false);
  rep.ranks_equal = rep.hp_a.even_rank == rep.hp_ak.even_rank &&
                    rep.hp_a.odd_rank == rep.hp_ak.odd_rank &&
                    rep.hp_a.even_rank == rep.hp_a_ak.even_rank &&
                    rep.hp_a.odd_rank == rep.hp_a_ak.odd_rank &&
                    rep.hp_a.even_rank == rep.hp_ak_a.even_rank &&
                    rep.hp_a.odd_rank == rep.hp_ak_a.odd_rank;
  return rep;
}

}  // namespace qcyc
