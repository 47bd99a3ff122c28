#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcyc/corpus.hpp"
#include "qcyc/fnspace.hpp"

using namespace qcyc;

TEST_CASE("convolution is associative and unital") {
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    int n = g.num_arrows();
    // unit of the convolution algebra: sum of unit-arrow indicators
    std::vector<int> units;
    for (int x = 0; x < g.num_units(); ++x) units.push_back(g.unit_arrow(x));
    FinFn one = fn_indicator(n, units);
    std::vector<FinFn> basis;
    for (int a = 0; a < n; ++a) basis.push_back(fn_indicator(n, {a}));
    for (const auto& f : basis) {
      CHECK(convolve(g, one, f) == f);
      CHECK(convolve(g, f, one) == f);
      for (const auto& h : basis)
        for (const auto& k : basis)
          CHECK(convolve(g, convolve(g, f, h), k) == convolve(g, f, convolve(g, h, k)));
    }
  }
}

TEST_CASE("delta convolution realizes the multiplication table") {
  Groupoid g = builtin_groupoid("z2");
  int e = g.unit_arrow(0), s = 1 - e;
  FinFn ds = fn_indicator(2, {s});
  CHECK(convolve(g, ds, ds) == fn_indicator(2, {e}));
}

TEST_CASE("integration sums over range fibers") {
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    FinFn ones(g.num_arrows());
    for (auto& v : ones.v) v = 1;
    FinFn l = integrate(g, ones);
    for (int x = 0; x < g.num_units(); ++x)
      CHECK(l.v[x] == (long)g.arrows_into(x).size());
  }
}

TEST_CASE("pullback is functorial and multiplicative") {
  std::vector<int> phi = {1, 0, 1};  // X = 3 pts -> Y = 2 pts
  std::vector<int> psi = {1, 1};     // Y -> Z = 2 pts
  FinFn f(2);
  f.v = {Rat(2), Rat(-3)};
  FinFn h(2);
  h.v = {Rat(1, 2), Rat(5)};
  CHECK(pullback(phi, fn_mul_pointwise(f, h)) ==
        fn_mul_pointwise(pullback(phi, f), pullback(phi, h)));
  // (psi . phi)^* = phi^* . psi^*
  std::vector<int> comp(3);
  for (int i = 0; i < 3; ++i) comp[i] = psi[phi[i]];
  FinFn z(2);
  z.v = {Rat(7), Rat(-1)};
  CHECK(pullback(comp, z) == pullback(phi, pullback(psi, z)));
}

TEST_CASE("balanced tensor lives on the fibre product") {
  // X = {0,1} -> Z = {0,1} identity, Y = {0,1,2} with q = (0,0,1)
  std::vector<int> p = {0, 1}, q = {0, 0, 1};
  auto fp = fibre_product(p, q);
  CHECK(fp.size() == 3);  // (0,0) (0,1) (1,2)
  FinFn f(2);
  f.v = {Rat(2), Rat(3)};
  FinFn h(3);
  h.v = {Rat(1), Rat(4), Rat(5)};
  FinFn t = balanced_tensor(f, h, p, q);
  REQUIRE(t.size() == 3);
  CHECK(t.v[0] == 2);
  CHECK(t.v[1] == 8);
  CHECK(t.v[2] == 15);
}

TEST_CASE("bisection indicators convolve like the arrows") {
  Groupoid g = builtin_groupoid("flip");
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b) {
      FinFn prod = convolve(g, fn_bisection(g, Bisection{{a}}), fn_bisection(g, Bisection{{b}}));
      if (g.composable(a, b)) {
        CHECK(prod == fn_indicator(g.num_arrows(), {g.mul(a, b)}));
      } else {
        CHECK(prod == FinFn(g.num_arrows()));
      }
    }
}
