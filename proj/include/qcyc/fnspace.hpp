#pragma once
#include <vector>

#include "qcyc/groupoid.hpp"
#include "qcyc/linalg.hpp"

namespace qcyc {

// Function on a finite ordered base, dense exact values.
struct FinFn {
  std::vector<Rat> v;

  explicit FinFn(int n = 0) : v(n, Rat(0)) {}
  int size() const { return (int)v.size(); }
  bool operator==(const FinFn& o) const { return v == o.v; }
};

FinFn fn_add(const FinFn& f, const FinFn& g);
FinFn fn_mul_pointwise(const FinFn& f, const FinFn& g);
FinFn fn_indicator(int n, const std::vector<int>& support);

// (phi^* f)(x) = f(phi(x)) for a total map phi: X -> Y given by indices.
FinFn pullback(const std::vector<int>& phi, const FinFn& f);

// lambda(f)(x) = sum over arrows with range x.
FinFn integrate(const Groupoid& g, const FinFn& f);

// Convolution on C_c(G): (f*g)(alpha) = sum_{beta in G^{r(alpha)}} f(beta) g(beta^{-1} alpha).
FinFn convolve(const Groupoid& g, const FinFn& f, const FinFn& h);

// chi_U for a bisection (function on arrows).
FinFn fn_bisection(const Groupoid& g, const Bisection& u);

// Fibre product X x_{p,q} Y = {(i,j) : p(i)=q(j)}, lexicographic order.
std::vector<std::pair<int, int>> fibre_product(const std::vector<int>& p,
                                               const std::vector<int>& q);

// (f (x) g)(x,y) = f(x) g(y) realized on the fibre product base.
FinFn balanced_tensor(const FinFn& f, const FinFn& g, const std::vector<int>& p,
                      const std::vector<int>& q);

}  // namespace qcyc
