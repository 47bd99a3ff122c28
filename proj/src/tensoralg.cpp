#include "qcyc/tensoralg.hpp"

#include <stdexcept>

namespace qcyc {

FVec form_transport(const QMat& r, int target_unit, const FMono& m) {
  auto column = [&](int idx) {
    FibVec out;
    for (int i = 0; i < r.rows; ++i)
      if (r.at(i, idx) != 0) out.emplace_back(i, r.at(i, idx));
    return out;
  };
  std::vector<std::pair<FMono, Rat>> acc;
  FMono base = m;
  base.loop = (uint32_t)target_unit;
  acc.emplace_back(base, Rat(1));
  auto expand = [&](int slot) {
    std::vector<std::pair<FMono, Rat>> next;
    for (auto& [mm, cc] : acc)
      for (const auto& [k, c] : column(slot < 0 ? (int)m.a0 : (int)m.tail[slot])) {
        FMono t = mm;
        if (slot < 0)
          t.a0 = (uint16_t)k;
        else
          t.tail[slot] = (uint8_t)k;
        next.emplace_back(t, cc * c);
      }
    acc.swap(next);
  };
  if (m.a0 != FUNIT) expand(-1);
  for (int i = 0; i < m.deg; ++i) expand(i);
  FVec out;
  for (auto& [mm, cc] : acc) fv_axpy(out, cc, FVec{{mm, Rat(1)}});
  return out;
}

FVec form_transport(const QMat& r, int target_unit, const FVec& v) {
  FVec out;
  for (const auto& [m, c] : v) fv_axpy(out, c, form_transport(r, target_unit, m));
  return out;
}

namespace {
FVec truncate_deg(const FVec& v, int maxdeg) {
  FVec out;
  for (const auto& [m, c] : v)
    if (m.deg <= maxdeg) out.emplace(m, c);
  return out;
}
}  // namespace

FVec fedosov_mul(const FiberForms& ff, const FVec& w, const FVec& e, int maxdeg) {
  // omega o eta = omega eta - d omega d eta (even degrees only)
  FVec out = ff.mul(w, e);
  fv_axpy(out, Rat(-1), ff.mul(ff.d(w), ff.d(e)));
  return truncate_deg(out, maxdeg);
}

FibVec TruncatedTA::tau(int x, const FibVec& v) const {
  FibVec out;
  for (const auto& [i, c] : v)
    if (basis[x][i].deg == 0) out.emplace_back((int)basis[x][i].a0, c);
  return fib_normalize(std::move(out));
}

FibVec TruncatedTA::sigma(int x, const FibVec& a) const {
  FibVec out;
  for (const auto& [i, c] : a) {
    FMono m;
    m.loop = (uint32_t)x;
    m.a0 = (uint16_t)i;
    out.emplace_back(index[x].at(m), c);
  }
  return fib_normalize(std::move(out));
}

TruncatedTA truncated_tensor_algebra(const GAlgebra& a, int n) {
  if (n < 1) throw std::runtime_error("tensoralg: level must be >= 1");
  const Groupoid& g = *a.mod.G;
  TruncatedTA ta;
  ta.base = a;
  ta.level = n;
  int maxdeg = 2 * (n - 1);
  if (maxdeg > 8) throw std::runtime_error("tensoralg: level too large");
  ta.basis.resize(g.num_units());
  ta.index.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) {
    int d = a.mod.fdim[x];
    for (int deg = 0; deg <= maxdeg; deg += 2) {
      FMono m;
      m.loop = (uint32_t)x;
      m.deg = (uint8_t)deg;
      std::vector<int> heads;
      if (deg > 0) heads.push_back(FUNIT);
      for (int i = 0; i < d; ++i) heads.push_back(i);
      std::vector<int> odo(deg, 0);
      for (int h : heads) {
        m.a0 = (uint16_t)h;
        std::fill(odo.begin(), odo.end(), 0);
        while (true) {
          for (int i = 0; i < deg; ++i) m.tail[i] = (uint8_t)odo[i];
          ta.index[x][m] = (int)ta.basis[x].size();
          ta.basis[x].push_back(m);
          int i = deg - 1;
          while (i >= 0 && ++odo[i] == d) odo[i--] = 0;
          if (i < 0) break;
        }
      }
    }
  }
  GAlgebra t;
  t.mod.G = a.mod.G;
  t.mod.fdim.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) t.mod.fdim[x] = (int)ta.basis[x].size();
  t.mod.rebuild_offsets();
  t.mod.rho.resize(g.num_arrows());
  auto bas = std::make_shared<std::vector<std::vector<FMono>>>(ta.basis);
  auto idx = std::make_shared<std::vector<std::map<FMono, int>>>(ta.index);
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    int xs = g.src(ar), xt = g.tgt(ar);
    QMat r((int)ta.basis[xt].size(), (int)ta.basis[xs].size());
    for (size_t j = 0; j < ta.basis[xs].size(); ++j)
      for (const auto& [m, c] : form_transport(a.mod.rho[ar], xt, ta.basis[xs][j]))
        r.at(ta.index[xt].at(m), (int)j) = c;
    t.mod.rho[ar] = r;
  }
  auto ff = std::make_shared<FiberForms>(a);
  t.mulfn = [bas, idx, ff, maxdeg](int x, int i, int j) -> FibVec {
    FVec p = fedosov_mul(*ff, FVec{{(*bas)[x][i], Rat(1)}},
                         FVec{{(*bas)[x][j], Rat(1)}}, maxdeg);
    FibVec out;
    for (const auto& [m, c] : p) out.emplace_back((*idx)[x].at(m), c);
    return fib_normalize(std::move(out));
  };
  t.name = "T(" + a.name + ")/J^" + std::to_string(n);
  ta.alg = t;
  return ta;
}

Curvature curvature(const GAlgebra& a, const GAlgebra& b, const std::vector<QMat>& l,
                    int nilpotency_bound) {
  const Groupoid& g = *a.mod.G;
  Curvature cv;
  cv.omega.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) {
    int d = a.mod.fdim[x];
    cv.omega[x].assign(d, std::vector<FibVec>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        FibVec li = fib_apply(l[x], {{i, 1}});
        FibVec lj = fib_apply(l[x], {{j, 1}});
        FibVec w = fib_apply(l[x], a.mul_basis(x, i, j));
        w = fib_add(w, fib_scale(b.mul_vec(x, li, lj), Rat(-1)));
        if (!w.empty()) cv.is_zero = false;
        cv.omega[x][i][j] = w;
      }
  }
  // nilpotency of the two-sided ideal generated by the image, per unit
  cv.nilpotency = cv.is_zero ? 1 : -1;
  if (!cv.is_zero) {
    int worst = 1;
    for (int x = 0; x < g.num_units(); ++x) {
      int d = b.mod.fdim[x];
      // span of the ideal: saturate image under left/right multiplication
      Echelon ideal;
      std::vector<SpVec> gens;
      auto push = [&](const FibVec& v) {
        SpVec s;
        for (const auto& [k, c] : v) s[k] = c;
        if (!sp_is_zero(s) && ideal.contains(s) == false) {
          ideal.add(s);
          gens.push_back(s);
        }
      };
      for (auto& row : cv.omega[x])
        for (auto& w : row) push(w);
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        FibVec v;
        for (const auto& [k, c] : gens[gi]) v.emplace_back((int)k, c);
        for (int e = 0; e < d; ++e) {
          push(b.mul_vec(x, v, {{e, 1}}));
          push(b.mul_vec(x, {{e, 1}}, v));
        }
      }
      // powers of the ideal until zero
      std::vector<SpVec> pw = gens;
      int ord = 1;
      while (!pw.empty() && ord <= nilpotency_bound) {
        ord++;
        Echelon sp;
        std::vector<SpVec> next;
        for (const auto& u : pw)
          for (const auto& v : gens) {
            FibVec fu, fv;
            for (const auto& [k, c] : u) fu.emplace_back((int)k, c);
            for (const auto& [k, c] : v) fv.emplace_back((int)k, c);
            FibVec p = b.mul_vec(x, fu, fv);
            SpVec s;
            for (const auto& [k, c] : p) s[k] = c;
            if (!sp_is_zero(s) && !sp.contains(s)) {
              sp.add(s);
              next.push_back(s);
            }
          }
        pw.swap(next);
      }
      if (!pw.empty())
        worst = -1;
      else if (worst != -1)
        worst = std::max(worst, ord);
    }
    cv.nilpotency = worst;
  }
  return cv;
}

std::optional<std::vector<QMat>> lonilcur_extend(const TruncatedTA& ta, const GAlgebra& b,
                                                 const std::vector<QMat>& l) {
  const GAlgebra& a = ta.base;
  const Groupoid& g = *a.mod.G;
  Curvature cv = curvature(a, b, l);
  if (cv.nilpotency < 0 || cv.nilpotency > ta.level) return std::nullopt;
  std::vector<QMat> out(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) {
    QMat m(b.mod.fdim[x], (int)ta.basis[x].size());
    for (size_t j = 0; j < ta.basis[x].size(); ++j) {
      const FMono& mono = ta.basis[x][j];
      // [[l]](<a0> da1 ... da2k) = l+(a0) w(a1,a2) ... w(a2k-1,a2k)
      FibVec acc;
      bool have = false;
      if (mono.a0 != FUNIT) {
        acc = fib_apply(l[x], {{(int)mono.a0, 1}});
        have = true;
      }
      for (int p = 0; p < mono.deg; p += 2) {
        const FibVec& w = cv.omega[x][mono.tail[p]][mono.tail[p + 1]];
        acc = have ? b.mul_vec(x, acc, w) : w;
        have = true;
      }
      for (const auto& [k, c] : acc) m.at(k, (int)j) = c;
    }
    out[x] = m;
  }
  return out;
}

bool is_algebra_map(const GAlgebra& a, const GAlgebra& b, const std::vector<QMat>& f) {
  const Groupoid& g = *a.mod.G;
  for (int x = 0; x < g.num_units(); ++x)
    for (int i = 0; i < a.mod.fdim[x]; ++i)
      for (int j = 0; j < a.mod.fdim[x]; ++j) {
        FibVec lhs = fib_apply(f[x], a.mul_basis(x, i, j));
        FibVec rhs = b.mul_vec(x, fib_apply(f[x], {{i, 1}}), fib_apply(f[x], {{j, 1}}));
        if (!fib_equal(lhs, rhs)) return false;
      }
  return true;
}

bool is_equivariant_map(const GModule& m, const GModule& n, const std::vector<QMat>& f) {
  const Groupoid& g = *m.G;
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    if (!QMat::mul(f[g.tgt(ar)], m.rho[ar]).equals(QMat::mul(n.rho[ar], f[g.src(ar)])))
      return false;
  }
  return true;
}

namespace {

// phi(x) y as a linear operation on degree-2 monomials, and x phi(y).
FVec cert_rmul(const FiberForms& ff, const FVec& v, int bidx) {
  FVec out;
  for (const auto& [m, c] : v) fv_axpy(out, c, ff.mul_right(m, bidx));
  return out;
}

FVec cert_lmul(const GAlgebra& a, int x, int bidx, const FVec& v) {
  FVec out;
  for (const auto& [m, c] : v) {
    if (m.a0 == FUNIT) {
      FMono r = m;
      r.a0 = (uint16_t)bidx;
      fv_axpy(out, c, FVec{{r, Rat(1)}});
    } else {
      for (const auto& [k, e] : a.mul_basis(x, bidx, m.a0)) {
        FMono r = m;
        r.a0 = (uint16_t)k;
        fv_axpy(out, c * e, FVec{{r, Rat(1)}});
      }
    }
  }
  return out;
}

FMono dmono(int x, int i) {
  FMono m;
  m.loop = (uint32_t)x;
  m.a0 = (uint16_t)i;
  return m;
}

FVec dxdy(const FiberForms& ff, int x, int i, int j) {
  return ff.mul(ff.d(dmono(x, i)), ff.d(dmono(x, j)));
}

FVec cocycle_defect(const GAlgebra& a, const FiberForms& ff,
                    const std::vector<std::vector<FVec>>& phi, int x, int i, int j) {
  FVec lhs;
  for (const auto& [k, c] : a.mul_basis(x, i, j)) fv_axpy(lhs, c, phi[x][k]);
  fv_axpy(lhs, Rat(-1), cert_rmul(ff, phi[x][i], j));
  fv_axpy(lhs, Rat(-1), cert_lmul(a, x, i, phi[x][j]));
  fv_axpy(lhs, Rat(1), dxdy(ff, x, i, j));
  return lhs;
}

}  // namespace

bool check_certificate(const GAlgebra& a, const ConnectionCertificate& c) {
  const Groupoid& g = *a.mod.G;
  FiberForms ff(a);
  for (int x = 0; x < g.num_units(); ++x) {
    for (int i = 0; i < a.mod.fdim[x]; ++i)
      for (const auto& [m, _] : c.phi[x][i])
        if (m.deg != 2 || (int)m.loop != x) return false;
    for (int i = 0; i < a.mod.fdim[x]; ++i)
      for (int j = 0; j < a.mod.fdim[x]; ++j)
        if (!fv_is_zero(cocycle_defect(a, ff, c.phi, x, i, j))) return false;
  }
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    int xs = g.src(ar), xt = g.tgt(ar);
    for (int i = 0; i < a.mod.fdim[xs]; ++i) {
      FVec lhs;
      for (int k = 0; k < a.mod.fdim[xt]; ++k)
        if (a.mod.rho[ar].at(k, i) != 0) fv_axpy(lhs, a.mod.rho[ar].at(k, i), c.phi[xt][k]);
      FVec rhs = form_transport(a.mod.rho[ar], xt, c.phi[xs][i]);
      if (!fv_is_zero(fv_sub(lhs, rhs))) return false;
    }
  }
  return true;
}

std::optional<ConnectionCertificate> quasifree_certificate(const GAlgebra& a) {
  const Groupoid& g = *a.mod.G;
  FiberForms ff(a);

  if (a.sep && a.one) {
    // phi(x) = sum_i x du_i dv_i - d(x u_i) dv_i + x d1 d1, then average to
    // equivariance.  The d1 d1 term compensates for d of the internal unit
    // being nonzero in this calculus.
    ConnectionCertificate c;
    c.phi.resize(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) {
      FVec done;
      for (const auto& [i, e] : (*a.one)[x]) fv_axpy(done, e, ff.d(dmono(x, i)));
      FVec d1d1 = ff.mul(done, done);
      c.phi[x].resize(a.mod.fdim[x]);
      for (int b = 0; b < a.mod.fdim[x]; ++b) {
        FVec v;
        for (const auto& [iu, iv, w] : (*a.sep)[x]) {
          FVec term = ff.mul(ff.mul(FVec{{dmono(x, b), Rat(1)}}, ff.d(dmono(x, iu))),
                             ff.d(dmono(x, iv)));
          for (const auto& [k, e] : a.mul_basis(x, b, iu))
            fv_axpy(term, Rat(-1) * e, ff.mul(ff.d(dmono(x, k)), ff.d(dmono(x, iv))));
          fv_axpy(v, w, term);
        }
        fv_axpy(v, Rat(1), ff.mul(FVec{{dmono(x, b), Rat(1)}}, d1d1));
        c.phi[x][b] = v;
      }
    }
    // equivariant average; the cocycle equation is affine with the same
    // inhomogeneous term in every conjugate, so averaging preserves it
    std::vector<Rat> cutoff = g.cutoff();
    ConnectionCertificate avg;
    avg.phi.resize(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) {
      avg.phi[x].resize(a.mod.fdim[x]);
      for (int b = 0; b < a.mod.fdim[x]; ++b) {
        FVec acc;
        for (int ar : g.arrows_into(x)) {
          Rat w = cutoff[g.src(ar)];
          if (w == 0) continue;
          FVec inner;
          const QMat& back = a.mod.rho[g.inv(ar)];
          for (int k = 0; k < a.mod.fdim[g.src(ar)]; ++k)
            if (back.at(k, b) != 0) fv_axpy(inner, back.at(k, b), c.phi[g.src(ar)][k]);
          fv_axpy(acc, w, form_transport(a.mod.rho[ar], x, inner));
        }
        avg.phi[x][b] = acc;
      }
    }
    if (check_certificate(a, avg)) return avg;
    // fall through to the direct solve if the construction failed
  }

  // direct linear feasibility: unknowns = coordinates of phi per unit/basis
  // over the degree-2 monomial basis
  std::vector<std::vector<FMono>> mono(g.num_units());
  std::vector<std::map<FMono, int>> midx(g.num_units());
  std::vector<int> uoff(g.num_units() + 1, 0);
  for (int x = 0; x < g.num_units(); ++x) {
    int d = a.mod.fdim[x];
    FMono m;
    m.loop = (uint32_t)x;
    m.deg = 2;
    std::vector<int> heads{FUNIT};
    for (int i = 0; i < d; ++i) heads.push_back(i);
    for (int h : heads) {
      m.a0 = (uint16_t)h;
      for (int t0 = 0; t0 < d; ++t0)
        for (int t1 = 0; t1 < d; ++t1) {
          m.tail[0] = (uint8_t)t0;
          m.tail[1] = (uint8_t)t1;
          midx[x][m] = (int)mono[x].size();
          mono[x].push_back(m);
        }
    }
    uoff[x + 1] = uoff[x] + d * (int)mono[x].size();
  }
  auto var = [&](int x, int b, int k) { return uoff[x] + b * (int)mono[x].size() + k; };
  std::vector<SpVec> rows;
  std::vector<Rat> rhs;
  auto add_lin = [&](SpVec& row, int x, int b, const FVec& coef, const Rat& scale) {
    for (const auto& [m, c] : coef) row[var(x, b, midx[x].at(m))] += scale * c;
  };
  for (int x = 0; x < g.num_units(); ++x) {
    int d = a.mod.fdim[x];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        // per target monomial: phi(ij) - phi(i)j - i phi(j) = -didj
        // assemble symbolically: apply the linear ops to each unknown mono
        std::map<FMono, SpVec> sys;
        for (const auto& [k, c] : a.mul_basis(x, i, j))
          for (int t = 0; t < (int)mono[x].size(); ++t)
            sys[mono[x][t]][var(x, k, t)] += c;
        for (int t = 0; t < (int)mono[x].size(); ++t) {
          for (const auto& [m, c] : ff.mul_right(mono[x][t], j))
            sys[m][var(x, i, t)] -= c;
          for (const auto& [m, c] : cert_lmul(a, x, i, FVec{{mono[x][t], Rat(1)}}))
            sys[m][var(x, j, t)] -= c;
        }
        FVec constant = dxdy(ff, x, i, j);
        for (auto& [m, row] : sys) {
          auto it = constant.find(m);
          rows.push_back(row);
          rhs.push_back(it == constant.end() ? Rat(0) : Rat(-1) * it->second);
        }
        for (const auto& [m, c] : constant)
          if (!sys.count(m)) {
            rows.push_back(SpVec{});
            rhs.push_back(Rat(-1) * c);
          }
      }
  }
  for (int ar = 0; ar < g.num_arrows(); ++ar) {
    if (g.is_unit_arrow(ar)) continue;
    int xs = g.src(ar), xt = g.tgt(ar);
    for (int i = 0; i < a.mod.fdim[xs]; ++i) {
      std::map<FMono, SpVec> sys;
      for (int k = 0; k < a.mod.fdim[xt]; ++k)
        if (a.mod.rho[ar].at(k, i) != 0)
          for (int t = 0; t < (int)mono[xt].size(); ++t)
            sys[mono[xt][t]][var(xt, k, t)] += a.mod.rho[ar].at(k, i);
      for (int t = 0; t < (int)mono[xs].size(); ++t)
        for (const auto& [m, c] : form_transport(a.mod.rho[ar], xt, mono[xs][t]))
          sys[m][var(xs, i, t)] -= c;
      for (auto& [m, row] : sys) {
        rows.push_back(row);
        rhs.push_back(Rat(0));
      }
    }
  }
  auto sol = linear_solve(uoff[g.num_units()], rows, rhs);
  if (!sol) return std::nullopt;
  ConnectionCertificate c;
  c.phi.resize(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) {
    c.phi[x].resize(a.mod.fdim[x]);
    for (int b = 0; b < a.mod.fdim[x]; ++b) {
      FVec v;
      for (int t = 0; t < (int)mono[x].size(); ++t)
        if ((*sol)[var(x, b, t)] != 0) v.emplace(mono[x][t], (*sol)[var(x, b, t)]);
      c.phi[x][b] = v;
    }
  }
  if (!check_certificate(a, c)) throw std::runtime_error("tensoralg: solver certificate failed verification");
  return c;
}

}  // namespace qcyc
