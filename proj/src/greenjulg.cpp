#include "qcyc/greenjulg.hpp"

#include <stdexcept>

namespace qcyc {

namespace {
[[noreturn]] void fail(const std::string& m) { throw std::runtime_error("greenjulg: " + m); }

int qrank(const QMat& m) {
  return rank_of_columns(m.cols, [&](int j) {
    SpVec v;
    for (int i = 0; i < m.rows; ++i)
      if (m.at(i, j) != 0) v[i] = m.at(i, j);
    return v;
  });
}
}  // namespace

OrbitLocalisation localise(const GModule& m, int orbit) {
  const Groupoid& g = *m.G;
  if (orbit < 0 || orbit >= (int)g.orbits().size()) fail("unknown orbit");
  OrbitLocalisation loc;
  loc.orbit = orbit;
  for (int x : g.orbits()[orbit])
    for (int i = 0; i < m.fdim[x]; ++i) loc.basis.push_back(m.foff[x] + i);
  return loc;
}

LocalToGlobalReport local_to_global(const GModule& m, const GModule& n,
                                    const std::vector<QMat>& phi) {
  const Groupoid& g = *m.G;
  LocalToGlobalReport rep;
  bool all_local = true;
  for (size_t o = 0; o < g.orbits().size(); ++o) {
    int dm = 0, dn = 0, rank = 0;
    for (int x : g.orbits()[o]) {
      dm += m.fdim[x];
      dn += n.fdim[x];
      rank += qrank(phi[x]);
    }
    bool iso = (dm == dn) && (rank == dm);
    rep.local_iso.push_back(iso);
    all_local = all_local && iso;
  }
  int dm = m.dim(), dn = n.dim(), rank = 0;
  for (int x = 0; x < g.num_units(); ++x) rank += qrank(phi[x]);
  rep.global_iso = (dm == dn) && (rank == dm);
  rep.equivalent = (rep.global_iso == all_local);
  return rep;
}

AGElement ag_right_translate(const Groupoid& g, const AGElement& f, int delta) {
  AGElement out;
  for (const auto& [key, c] : f) {
    auto [l, beta] = key;
    if (g.src(beta) != g.tgt(delta)) continue;
    out[{l, g.mul(beta, delta)}] += c;
  }
  return out;
}

SpMat kappa_average(const Groupoid& g, const AGModule& ag, const AGElement& f) {
  int nl = (int)g.loops().size();
  SpMat out((int)ag.ayd.dim(), nl);
  for (int ap = 0; ap < nl; ++ap) {
    int alpha = g.loops()[ap];
    int x = g.tgt(alpha);
    for (int gamma : g.arrows_into(x)) {
      int lc = g.conj(g.inv(gamma), alpha);  // gamma^{-1} alpha gamma
      for (const auto& [key, c] : f) {
        auto [l, beta] = key;
        if (g.loops()[l] != lc) continue;
        int tb = g.mul(gamma, beta);
        out.col[ap][ag.index.at({ap, tb})] += c;
      }
    }
  }
  // normalize away explicit zeros
  for (auto& col : out.col)
    for (auto it = col.begin(); it != col.end();)
      it = (it->second == 0) ? col.erase(it) : std::next(it);
  return out;
}

FVec gamma_raw(const GAlgebra& a, const CrossedProduct& cp, const FMono& m) {
  const Groupoid& g = *cp.G;
  const Groupoid& q = *cp.quotient;
  int z = q.tgt(q.loops()[m.loop]);
  auto decode = [&](int local) { return cp.basis[cp.alg.mod.foff[z] + local]; };
  // partial expansions: (monomial under construction, coefficient)
  std::vector<std::pair<FMono, Rat>> acc;
  int prefix = -1;  // product alpha_0 ... alpha_{j-1}
  FMono base;
  base.deg = m.deg;
  if (m.a0 == FUNIT) {
    base.a0 = FUNIT;
  } else {
    auto [al0, i0] = decode((int)m.a0);
    base.a0 = (uint16_t)i0;
    prefix = al0;
  }
  acc.emplace_back(base, Rat(1));
  for (int j = 0; j < m.deg; ++j) {
    auto [alj, ij] = decode(m.tail[j]);
    if (prefix == -1) {
      prefix = alj;
    } else {
      if (g.src(prefix) != g.tgt(alj)) return {};
      prefix = g.mul(prefix, alj);
    }
    // slot j becomes rho(alpha_0 ... alpha_{j-1}) a_j = rho(prefix alj^{-1}) a_j;
    // equivalently transport e_{ij} by the prefix ending before alpha_j.
    int pj = (j == 0 && m.a0 == FUNIT) ? g.unit_arrow(g.tgt(alj)) : -2;
    int trans = (pj == -2) ? g.mul(prefix, g.inv(alj)) : pj;
    const QMat& r = a.mod.rho[trans];
    std::vector<std::pair<FMono, Rat>> next;
    for (const auto& [pm, c] : acc)
      for (int k = 0; k < r.rows; ++k) {
        if (r.at(k, ij) == 0) continue;
        FMono nm = pm;
        nm.tail[j] = (uint8_t)k;
        next.emplace_back(nm, c * r.at(k, ij));
      }
    acc = std::move(next);
    if (acc.empty()) return {};
  }
  if (prefix == -1) prefix = g.unit_arrow(g.orbits()[z].front());
  if (g.src(prefix) != g.tgt(prefix)) return {};
  int lp = g.loop_pos(prefix);
  FVec out;
  for (auto& [pm, c] : acc) {
    pm.loop = (uint32_t)lp;
    fv_axpy(out, c, FVec{{pm, Rat(1)}});
  }
  return out;
}

FVec kappa_at(const GAlgebra& a, const FVec& f, int alpha) {
  const Groupoid& g = *a.mod.G;
  int x = g.tgt(alpha);
  int ap = g.loop_pos(alpha);
  FVec out;
  for (int gamma : g.arrows_into(x)) {
    int lc = g.conj(g.inv(gamma), alpha);
    int lcp = g.loop_pos(lc);
    for (const auto& [m, c] : f) {
      if ((int)m.loop != lcp) continue;
      fv_axpy(out, c, form_transport(a.mod.rho[gamma], ap, m));
    }
  }
  return out;
}

GammaReport gamma_check(const GAlgebra& a, int max_degree) {
  const Groupoid& g = *a.mod.G;
  CrossedProduct cp = crossed_product(a);
  const Groupoid& q = *cp.quotient;
  FormCalc fg(g, a);
  FormCalc fq(q, cp.alg);
  GammaReport rep;
  rep.averaged_b_ok = rep.averaged_d_ok = rep.averaged_B_ok = true;
  auto gamma_vec = [&](const FVec& v) {
    FVec out;
    for (const auto& [m, c] : v) fv_axpy(out, c, gamma_raw(a, cp, m));
    return out;
  };
  for (int ql = 0; ql < fq.num_loops(); ++ql)
    for (int n = 1; n <= max_degree; ++n)
      for (const FMono& m : fq.basis(ql, n)) {
        FVec gm = gamma_raw(a, cp, m);
        if (!fv_is_zero(fv_sub(fg.b(gm), gamma_vec(fq.b(m))))) rep.raw_b_fails = true;
        for (int la : g.loops()) {
          FVec lhs_b = fg.b(kappa_at(a, gm, la));
          FVec rhs_b = kappa_at(a, gamma_vec(fq.b(m)), la);
          if (!fv_is_zero(fv_sub(lhs_b, rhs_b))) rep.averaged_b_ok = false;
          if (!fv_is_zero(fv_sub(fg.d(kappa_at(a, gm, la)), kappa_at(a, gamma_vec(fq.d(m)), la))))
            rep.averaged_d_ok = false;
          if (!fv_is_zero(fv_sub(fg.B(kappa_at(a, gm, la)), kappa_at(a, gamma_vec(fq.B(m)), la))))
            rep.averaged_B_ok = false;
        }
      }
  return rep;
}

DecompositionReport discrete_decomposition(const GAlgebra& a, const GAlgebra& b) {
  const Groupoid& g = *a.mod.G;
  DecompositionReport rep;
  rep.global = hp_quasifree(a, b);
  long se = 0, so = 0;
  for (size_t o = 0; o < g.orbits().size(); ++o) {
    LocalizedAlgebra la = localize_algebra(a, (int)o);
    LocalizedAlgebra lb = localize_algebra(b, (int)o);
    if (lb.group->num_arrows() != la.group->num_arrows()) fail("localisation mismatch");
    lb.alg.mod.G = la.group.get();  // identical isotropy group, share the instance
    HomologyReport r = hp_quasifree(la.alg, lb.alg);
    se += r.even_rank;
    so += r.odd_rank;
    rep.per_orbit.push_back(r);
  }
  rep.equal = (se == rep.global.even_rank) && (so == rep.global.odd_rank);
  return rep;
}

GreenJulgReport green_julg_verify(const GAlgebra& a) {
  const Groupoid& g = *a.mod.G;
  GreenJulgReport rep;
  rep.lhs = hp_quasifree(trivial_algebra(g), a);
  CrossedProduct cp = crossed_product(a);
  rep.rhs = hp_quasifree(trivial_algebra(*cp.quotient), cp.alg);
  rep.equal = rep.lhs.even_rank == rep.rhs.even_rank && rep.lhs.odd_rank == rep.rhs.odd_rank;
  long le = 0, lo = 0, re = 0, ro = 0;
  bool orbitwise = true;
  for (size_t o = 0; o < g.orbits().size(); ++o) {
    LocalizedAlgebra la = localize_algebra(a, (int)o);
    HomologyReport lr = hp_quasifree(trivial_algebra(*la.group), la.alg);
    CrossedProduct lcp = crossed_product(la.alg);
    HomologyReport rr = hp_quasifree(trivial_algebra(*lcp.quotient), lcp.alg);
    orbitwise = orbitwise && lr.even_rank == rr.even_rank && lr.odd_rank == rr.odd_rank;
    le += lr.even_rank;
    lo += lr.odd_rank;
    re += rr.even_rank;
    ro += rr.odd_rank;
    rep.lhs_orbits.push_back(lr);
    rep.rhs_orbits.push_back(rr);
  }
  rep.orbit_sums_equal = orbitwise && le == rep.lhs.even_rank && lo == rep.lhs.odd_rank &&
                         re == rep.rhs.even_rank && ro == rep.rhs.odd_rank;
  return rep;
}

}  // namespace qcyc
