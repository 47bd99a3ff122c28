#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcyc/corpus.hpp"
#include "qcyc/galgebra.hpp"

using namespace qcyc;

TEST_CASE("corpus algebras validate") {
  for (const auto& gname : builtin_groupoid_names()) {
    CAPTURE(gname);
    Groupoid g = builtin_groupoid(gname);
    for (const auto& aname : {"trivial", "kg", "og", "dual"}) {
      CAPTURE(aname);
      GAlgebra a = algebra_by_name(g, aname);
      a.validate();
      a.mod.validate();
    }
  }
}

TEST_CASE("separability idempotent: central and multiplies to one") {
  for (const auto& gname : builtin_groupoid_names()) {
    CAPTURE(gname);
    Groupoid g = builtin_groupoid(gname);
    GAlgebra a = kg_algebra(g);
    REQUIRE(a.sep);
    REQUIRE(a.one);
    for (int x = 0; x < g.num_units(); ++x) {
      FibVec s;
      for (const auto& [iu, iv, w] : (*a.sep)[x])
        s = fib_add(s, fib_scale(a.mul_basis(x, iu, iv), w));
      CHECK(fib_equal(s, (*a.one)[x]));
      for (int b = 0; b < a.mod.fdim[x]; ++b) {
        std::map<std::pair<int, int>, Rat> lhs, rhs;
        for (const auto& [iu, iv, w] : (*a.sep)[x]) {
          for (const auto& [p, c] : a.mul_basis(x, b, iu)) {
            auto& e = lhs[{p, iv}];
            e += w * c;
            if (e == 0) lhs.erase({p, iv});
          }
          for (const auto& [q, c] : a.mul_basis(x, iv, b)) {
            auto& e = rhs[{iu, q}];
            e += w * c;
            if (e == 0) rhs.erase({iu, q});
          }
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("regular pairing is equivariant and nondegenerate") {
  for (const auto& gname : builtin_groupoid_names()) {
    CAPTURE(gname);
    Groupoid g = builtin_groupoid(gname);
    EquivariantPairing h = regular_pairing(g);
    h.validate();
    for (int x = 0; x < g.num_units(); ++x) CHECK(h.gram[x].inverse().has_value());
  }
}

TEST_CASE("tensor product algebra multiplies componentwise") {
  Groupoid g = builtin_groupoid("pair2");
  GAlgebra a = kg_algebra(g);
  GAlgebra t = tensor_product_algebra(a, a);
  t.validate();
  for (int x = 0; x < g.num_units(); ++x) CHECK(t.mod.fdim[x] == a.mod.fdim[x] * a.mod.fdim[x]);
  int d = a.mod.fdim[0];
  for (int i = 0; i < d && i < 2; ++i)
    for (int j = 0; j < d && j < 2; ++j) {
      FibVec p1 = a.mul_basis(0, i, j);
      // (i (x) i)(j (x) j) = ij (x) ij
      FibVec pt = t.mul_basis(0, i * d + i, j * d + j);
      FibVec expect;
      for (const auto& [k, c] : p1)
        for (const auto& [l, e] : p1) expect = fib_add(expect, FibVec{{k * d + l, c * e}});
      CHECK(fib_equal(pt, expect));
    }
}

TEST_CASE("unitarisation adjoins a unit") {
  Groupoid g = builtin_groupoid("z2");
  GAlgebra a = dual_numbers_algebra(g);
  GAlgebra u = unitarise(a);
  u.validate();
  REQUIRE(u.one);
  int d = a.mod.fdim[0];
  CHECK(u.mod.fdim[0] == d + 1);
  for (int i = 0; i < d; ++i)
    CHECK(fib_equal(u.mul_basis(0, d, i), FibVec{{i, Rat(1)}}));
}

TEST_CASE("crossed product by a transitive groupoid collapses units") {
  Groupoid g = builtin_groupoid("pair2");
  CrossedProduct cp = crossed_product(trivial_algebra(g));
  CHECK(cp.quotient->num_units() == 1);
  cp.alg.validate();
  CHECK(cp.alg.mod.fdim[0] == g.num_arrows());
  REQUIRE(cp.alg.sep);
}

TEST_CASE("covariant pair integrates to an algebra map") {
  // Z/2 acting on D(G): phi = left multiplication, pi = regular representation
  Groupoid g = builtin_groupoid("z2");
  GAlgebra a = trivial_algebra(g);
  CrossedProduct cp = crossed_product(a);
  CovariantPair cv;
  cv.vdim = 2;
  cv.phi = {{QMat::identity(2)}};
  QMat s(2, 2);
  s.at(0, 1) = 1;
  s.at(1, 0) = 1;
  cv.pi = {QMat::identity(2), s};
  if (g.unit_arrow(0) == 1) std::swap(cv.pi[0], cv.pi[1]);
  // integrate_covariant verifies covariance and multiplicativity internally
  std::vector<QMat> psi = integrate_covariant(cp, cv);
  CHECK(psi.size() == cp.basis.size());
}

TEST_CASE("AYD modules validate and carry the canonical twist") {
  for (const auto& gname : builtin_groupoid_names()) {
    CAPTURE(gname);
    Groupoid g = builtin_groupoid(gname);
    AYDModule m = og_ayd(g);
    m.validate();
    SpMat t = m.canonical_T();
    // T is invertible of finite order: some power is the identity
    SpMat p = t;
    int order = 1;
    while (!p.equals(SpMat::identity(m.dim())) && order < 64) {
      p = SpMat::mul(t, p);
      ++order;
    }
    CHECK(order < 64);
  }
}

TEST_CASE("ayd homs commute with the action") {
  Groupoid g = builtin_groupoid("z2z3");
  AYDModule m = og_ayd(g);
  auto homs = ayd_homs(m, m);
  CHECK(!homs.empty());
  for (const auto& f : homs) CHECK(ayd_commutes(m, m, f));
}
