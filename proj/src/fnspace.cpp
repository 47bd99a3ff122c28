#include "qcyc/fnspace.hpp"

#include <cassert>
#include <stdexcept>

namespace qcyc {

FinFn fn_add(const FinFn& f, const FinFn& g) {
  assert(f.size() == g.size());
  FinFn r(f.size());
  for (int i = 0; i < f.size(); ++i) r.v[i] = f.v[i] + g.v[i];
  return r;
}

FinFn fn_mul_pointwise(const FinFn& f, const FinFn& g) {
  assert(f.size() == g.size());
  FinFn r(f.size());
  for (int i = 0; i < f.size(); ++i) r.v[i] = f.v[i] * g.v[i];
  return r;
}

FinFn fn_indicator(int n, const std::vector<int>& support) {
  FinFn r(n);
  for (int i : support) r.v[i] = 1;
  return r;
}

FinFn pullback(const std::vector<int>& phi, const FinFn& f) {
  FinFn r((int)phi.size());
  for (size_t x = 0; x < phi.size(); ++x) {
    if (phi[x] < 0 || phi[x] >= f.size()) throw std::runtime_error("pullback: map not total");
    r.v[x] = f.v[phi[x]];
  }
  return r;
}

FinFn integrate(const Groupoid& g, const FinFn& f) {
  assert(f.size() == g.num_arrows());
  FinFn r(g.num_units());
  for (int x = 0; x < g.num_units(); ++x)
    for (int a : g.arrows_into(x)) r.v[x] += f.v[a];
  return r;
}

FinFn convolve(const Groupoid& g, const FinFn& f, const FinFn& h) {
  assert(f.size() == g.num_arrows() && h.size() == g.num_arrows());
  FinFn r(g.num_arrows());
  for (int a = 0; a < g.num_arrows(); ++a) {
    Rat acc(0);
    for (int b : g.arrows_into(g.tgt(a))) {
      // beta^{-1} alpha
      int rest = g.mul(g.inv(b), a);
      acc += f.v[b] * h.v[rest];
    }
    r.v[a] = acc;
  }
  return r;
}

FinFn fn_bisection(const Groupoid& g, const Bisection& u) {
  return fn_indicator(g.num_arrows(), u.arrows);
}

std::vector<std::pair<int, int>> fibre_product(const std::vector<int>& p,
                                               const std::vector<int>& q) {
  std::vector<std::pair<int, int>> r;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j)
      if (p[i] == q[j]) r.emplace_back((int)i, (int)j);
  return r;
}

FinFn balanced_tensor(const FinFn& f, const FinFn& g, const std::vector<int>& p,
                      const std::vector<int>& q) {
  auto base = fibre_product(p, q);
  FinFn r((int)base.size());
  for (size_t k = 0; k < base.size(); ++k) r.v[k] = f.v[base[k].first] * g.v[base[k].second];
  return r;
}

}  // namespace qcyc
