#include "qcyc/forms.hpp"

#include <stdexcept>

namespace qcyc {

void fv_axpy(FVec& y, const Rat& c, const FVec& x) {
  if (c == 0) return;
  for (const auto& [m, v] : x) {
    auto it = y.find(m);
    if (it == y.end()) {
      y.emplace(m, c * v);
    } else {
      it->second += c * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

bool fv_is_zero(const FVec& v) {
  for (const auto& [m, c] : v)
    if (c != 0) return false;
  return true;
}

FVec fv_sub(const FVec& a, const FVec& b) {
  FVec r = a;
  fv_axpy(r, Rat(-1), b);
  return r;
}

FormCalc::FormCalc(const Groupoid& g, const GAlgebra& a) : g_(&g), a_(a) {
  for (int x = 0; x < g.num_units(); ++x)
    if (a.mod.fdim[x] > 254) throw std::runtime_error("forms: fiber too large");
}

std::vector<FMono> FormCalc::basis(int loop, int n) const {
  int d = fdim(loop);
  std::vector<FMono> out;
  FMono m;
  m.loop = (uint32_t)loop;
  m.deg = (uint8_t)n;
  std::vector<int> heads;
  if (n > 0) heads.push_back(FUNIT);
  for (int i = 0; i < d; ++i) heads.push_back(i);
  std::vector<int> odo(n, 0);
  for (int h : heads) {
    m.a0 = (uint16_t)h;
    std::fill(odo.begin(), odo.end(), 0);
    while (true) {
      for (int i = 0; i < n; ++i) m.tail[i] = (uint8_t)odo[i];
      out.push_back(m);
      int i = n - 1;
      while (i >= 0 && ++odo[i] == d) odo[i--] = 0;
      if (i < 0) break;
    }
  }
  return out;
}

long FormCalc::dim(int loop, int n) const {
  long d = fdim(loop);
  if (n == 0) return d;
  long p = 1;
  for (int i = 0; i < n; ++i) p *= d;
  return (d + 1) * p;
}

FibVec FormCalc::transport(const FMono& m, int idx) const {
  const QMat& r = a_.mod.rho[g_->inv(g_->loops()[m.loop])];
  FibVec out;
  for (int i = 0; i < r.rows; ++i)
    if (r.at(i, idx) != 0) out.emplace_back(i, r.at(i, idx));
  return out;
}

FVec FormCalc::d(const FMono& m) const {
  FVec out;
  if (m.a0 == FUNIT) return out;
  if (m.deg >= 8) throw std::runtime_error("forms: degree overflow");
  FMono r = m;
  for (int i = m.deg; i > 0; --i) r.tail[i] = r.tail[i - 1];
  r.tail[0] = (uint8_t)m.a0;
  r.a0 = FUNIT;
  r.deg = m.deg + 1;
  out.emplace(r, Rat(1));
  return out;
}

FVec FormCalc::b(const FMono& m) const {
  FVec out;
  int n = m.deg;
  if (n == 0) return out;
  int x = g_->tgt(g_->loops()[m.loop]);

  // <a0> a1 da2 ... dan
  {
    FMono r = m;
    r.deg = n - 1;
    for (int i = 0; i + 1 < n; ++i) r.tail[i] = m.tail[i + 1];
    r.tail[n - 1] = 0;
    if (m.a0 == FUNIT) {
      r.a0 = m.tail[0];
      fv_axpy(out, Rat(1), FVec{{r, Rat(1)}});
    } else {
      for (const auto& [k, c] : a_.mul_basis(x, m.a0, m.tail[0])) {
        r.a0 = (uint16_t)k;
        fv_axpy(out, c, FVec{{r, Rat(1)}});
      }
    }
  }
  // sum_j (-1)^j <a0> da1 ... d(aj a_{j+1}) ... dan
  for (int j = 1; j < n; ++j) {
    Rat sgn = (j % 2) ? Rat(-1) : Rat(1);
    for (const auto& [k, c] : a_.mul_basis(x, m.tail[j - 1], m.tail[j])) {
      FMono r = m;
      r.deg = n - 1;
      r.tail[j - 1] = (uint8_t)k;
      for (int i = j; i + 1 < n; ++i) r.tail[i] = m.tail[i + 1];
      r.tail[n - 1] = 0;
      fv_axpy(out, sgn * c, FVec{{r, Rat(1)}});
    }
  }
  // (-1)^n (rho(beta^{-1}) an) . <a0> da1 ... da_{n-1}
  {
    Rat sgn = (n % 2) ? Rat(-1) : Rat(1);
    for (const auto& [k, c] : transport(m, m.tail[n - 1])) {
      FMono r = m;
      r.deg = n - 1;
      r.tail[n - 1] = 0;
      if (m.a0 == FUNIT) {
        r.a0 = (uint16_t)k;
        fv_axpy(out, sgn * c, FVec{{r, Rat(1)}});
      } else {
        for (const auto& [k2, c2] : a_.mul_basis(x, k, m.a0)) {
          r.a0 = (uint16_t)k2;
          fv_axpy(out, sgn * c * c2, FVec{{r, Rat(1)}});
        }
      }
    }
  }
  return out;
}

FVec FormCalc::T(const FMono& m) const {
  // transport every tensor slot by rho(beta^{-1}); the adjoined unit is fixed
  std::vector<std::pair<FMono, Rat>> acc;
  FMono base = m;
  acc.emplace_back(base, Rat(1));
  auto expand = [&](int slot) {
    std::vector<std::pair<FMono, Rat>> next;
    for (auto& [mm, cc] : acc)
      for (const auto& [k, c] : transport(m, slot < 0 ? (int)m.a0 : (int)m.tail[slot])) {
        FMono r = mm;
        if (slot < 0)
          r.a0 = (uint16_t)k;
        else
          r.tail[slot] = (uint8_t)k;
        next.emplace_back(r, cc * c);
      }
    acc.swap(next);
  };
  if (m.a0 != FUNIT) expand(-1);
  for (int i = 0; i < m.deg; ++i) expand(i);
  FVec out;
  for (auto& [mm, cc] : acc) fv_axpy(out, cc, FVec{{mm, Rat(1)}});
  return out;
}

FVec FormCalc::kappa(const FMono& m) const {
  FVec out{{m, Rat(1)}};
  fv_axpy(out, Rat(-1), b(d(FVec{{m, Rat(1)}})));
  fv_axpy(out, Rat(-1), d(b(FVec{{m, Rat(1)}})));
  return out;
}

FVec FormCalc::B(const FMono& m) const {
  FVec v = d(m);
  FVec acc = v;
  for (int j = 1; j <= m.deg; ++j) {
    v = kappa(v);
    fv_axpy(acc, Rat(1), v);
  }
  return acc;
}

#define QCYC_LIFT(op)                      \
  FVec FormCalc::op(const FVec& v) const { \
    FVec out;                              \
    for (const auto& [m, c] : v) fv_axpy(out, c, op(m)); \
    return out;                            \
  }
QCYC_LIFT(d)
QCYC_LIFT(b)
QCYC_LIFT(T)
QCYC_LIFT(kappa)
QCYC_LIFT(B)
#undef QCYC_LIFT

FVec FiberForms::d(const FMono& m) const {
  FVec out;
  if (m.a0 == FUNIT) return out;
  if (m.deg >= 8) throw std::runtime_error("forms: degree overflow");
  FMono r = m;
  for (int i = m.deg; i > 0; --i) r.tail[i] = r.tail[i - 1];
  r.tail[0] = (uint8_t)m.a0;
  r.a0 = FUNIT;
  r.deg = m.deg + 1;
  out.emplace(r, Rat(1));
  return out;
}

FVec FiberForms::d(const FVec& v) const {
  FVec out;
  for (const auto& [m, c] : v) fv_axpy(out, c, d(m));
  return out;
}

FVec FiberForms::mul_right(const FMono& m, int bidx) const {
  int x = (int)m.loop;
  FVec out;
  if (m.deg == 0) {
    FMono r = m;
    if (m.a0 == FUNIT) {
      r.a0 = (uint16_t)bidx;
      out.emplace(r, Rat(1));
    } else {
      for (const auto& [k, c] : a_.mul_basis(x, m.a0, bidx)) {
        r.a0 = (uint16_t)k;
        fv_axpy(out, c, FVec{{r, Rat(1)}});
      }
    }
    return out;
  }
  int an = m.tail[m.deg - 1];
  // (w da) b = w d(ab) - (w a) db
  for (const auto& [k, c] : a_.mul_basis(x, an, bidx)) {
    FMono r = m;
    r.tail[m.deg - 1] = (uint8_t)k;
    fv_axpy(out, c, FVec{{r, Rat(1)}});
  }
  FMono w = m;
  w.deg = m.deg - 1;
  w.tail[m.deg - 1] = 0;
  for (const auto& [u, c] : mul_right(w, an)) {
    FMono r = u;
    r.tail[r.deg] = (uint8_t)bidx;
    r.deg++;
    fv_axpy(out, -c, FVec{{r, Rat(1)}});
  }
  return out;
}

FVec FiberForms::mul(const FMono& m, const FMono& n) const {
  if (m.loop != n.loop) throw std::runtime_error("forms: fiber mismatch");
  if (m.deg + n.deg > 8) throw std::runtime_error("forms: degree overflow");
  auto append_tail = [&](const FVec& v) {
    FVec out;
    for (const auto& [u, c] : v) {
      FMono r = u;
      for (int i = 0; i < n.deg; ++i) r.tail[r.deg + i] = n.tail[i];
      r.deg += n.deg;
      fv_axpy(out, c, FVec{{r, Rat(1)}});
    }
    return out;
  };
  if (n.a0 == FUNIT) return append_tail(FVec{{m, Rat(1)}});
  return append_tail(mul_right(m, n.a0));
}

FVec FiberForms::mul(const FVec& v, const FVec& w) const {
  FVec out;
  for (const auto& [m, c] : v)
    for (const auto& [n, e] : w) fv_axpy(out, c * e, mul(m, n));
  return out;
}

ParamixedReport paramixed_report(const Groupoid& g, const GAlgebra& a, int cap) {
  FormCalc fc(g, a);
  ParamixedReport rep;
  rep.max_degree = cap - 2;
  auto kpow = [&](FVec v, int k) {
    for (int i = 0; i < k; ++i) v = fc.kappa(v);
    return v;
  };
  auto record = [&](bool ok, int loop, int n, const std::string& what) {
    if (ok) return;
    rep.all_pass = false;
    if (rep.failures.size() < 32)
      rep.failures.push_back("loop " + g.arrow(g.loops()[loop]).id + " deg " +
                             std::to_string(n) + ": " + what);
  };
  for (int l = 0; l < fc.num_loops(); ++l) {
    for (int n = 0; n + 2 <= cap; ++n) {
      for (const FMono& m : fc.basis(l, n)) {
        rep.monomials_checked++;
        FVec one{{m, Rat(1)}};
        FVec dm = fc.d(m);
        FVec bm = fc.b(m);
        FVec Tm = fc.T(m);
        FVec Bm = fc.B(m);
        FVec kn = kpow(one, n);

        record(fv_is_zero(fc.b(bm)), l, n, "b^2 != 0");
        record(fv_is_zero(fc.B(Bm)), l, n, "B^2 != 0");
        // kappa^{n+1} d = T d
        record(fv_is_zero(fv_sub(kpow(dm, n + 1), fc.T(dm))), l, n,
               "kappa^{n+1} d != T d");
        // kappa^n = T + b kappa^n d
        {
          FVec rhs = Tm;
          fv_axpy(rhs, Rat(1), fc.b(kpow(dm, n)));
          record(fv_is_zero(fv_sub(kn, rhs)), l, n, "kappa^n != T + b kappa^n d");
        }
        // b kappa^n = b T
        record(fv_is_zero(fv_sub(fc.b(kn), fc.b(Tm))), l, n, "b kappa^n != b T");
        // kappa^{n+1} = (id - d b) T
        {
          FVec rhs = Tm;
          fv_axpy(rhs, Rat(-1), fc.d(fc.b(Tm)));
          record(fv_is_zero(fv_sub(fc.kappa(kn), rhs)), l, n,
                 "kappa^{n+1} != (id - db) T");
        }
        // (kappa^{n+1} - T)(kappa^n - T) = 0
        {
          FVec u = fv_sub(kn, Tm);
          record(fv_is_zero(fv_sub(kpow(u, n + 1), fc.T(u))), l, n,
                 "(kappa^{n+1}-T)(kappa^n-T) != 0");
        }
        // B b + b B = id - T
        {
          FVec lhs = fc.B(bm);
          fv_axpy(lhs, Rat(1), fc.b(Bm));
          FVec rhs = one;
          fv_axpy(rhs, Rat(-1), Tm);
          record(fv_is_zero(fv_sub(lhs, rhs)), l, n, "Bb + bB != id - T");
        }
        // T commutes with everything
        record(fv_is_zero(fv_sub(fc.T(dm), fc.d(Tm))), l, n, "Td != dT");
        record(fv_is_zero(fv_sub(fc.T(bm), fc.b(Tm))), l, n, "Tb != bT");
        record(fv_is_zero(fv_sub(fc.T(fc.kappa(m)), fc.kappa(Tm))), l, n,
               "T kappa != kappa T");
        record(fv_is_zero(fv_sub(fc.T(Bm), fc.B(Tm))), l, n, "TB != BT");
      }
    }
  }
  return rep;
}

}  // namespace qcyc
