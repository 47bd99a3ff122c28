#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcyc/corpus.hpp"
#include "qcyc/tensoralg.hpp"

using namespace qcyc;

namespace {
FMono bm(int x, int i) {
  FMono m;
  m.loop = (uint32_t)x;
  m.a0 = (uint16_t)i;
  return m;
}
}  // namespace

TEST_CASE("connection certificates exist for the separable corpus algebras") {
  for (const auto& gname : builtin_groupoid_names()) {
    Groupoid g = builtin_groupoid(gname);
    for (const auto& aname : builtin_algebra_names()) {
      CAPTURE(gname);
      CAPTURE(aname);
      GAlgebra a = algebra_by_name(g, aname);
      auto c = quasifree_certificate(a);
      REQUIRE(c.has_value());
      CHECK(check_certificate(a, *c));
    }
  }
}

TEST_CASE("no certificate exists for the square-zero extension") {
  for (const auto& gname : builtin_groupoid_names()) {
    CAPTURE(gname);
    Groupoid g = builtin_groupoid(gname);
    CHECK_FALSE(quasifree_certificate(algebra_by_name(g, "dual")).has_value());
  }
}

TEST_CASE("the explicit idempotent connection verifies") {
  // phi(f) = 2 f dchi dchi - df dchi with chi the fiber idempotent.
  for (const auto& gname : builtin_groupoid_names()) {
    CAPTURE(gname);
    Groupoid g = builtin_groupoid(gname);
    GAlgebra a = trivial_algebra(g);
    FiberForms ff(a);
    ConnectionCertificate c;
    c.phi.resize(g.num_units());
    for (int x = 0; x < g.num_units(); ++x) {
      FVec v = ff.mul(ff.mul(FVec{{bm(x, 0), Rat(2)}}, ff.d(bm(x, 0))), ff.d(bm(x, 0)));
      fv_axpy(v, Rat(-1), ff.mul(ff.d(bm(x, 0)), ff.d(bm(x, 0))));
      c.phi[x] = {v};
    }
    CHECK(check_certificate(a, c));
  }
}

TEST_CASE("a broken certificate is rejected") {
  Groupoid g = builtin_groupoid("z2");
  GAlgebra a = kg_algebra(g);
  auto c = quasifree_certificate(a);
  REQUIRE(c.has_value());
  FiberForms ff(a);
  fv_axpy(c->phi[0][1], Rat(1), ff.mul(ff.d(bm(0, 0)), ff.d(bm(0, 1))));
  CHECK_FALSE(check_certificate(a, *c));
}

TEST_CASE("truncated tensor algebra splits off A") {
  for (const auto& gname : {"z2", "pair2"}) {
    Groupoid g = builtin_groupoid(gname);
    GAlgebra a = kg_algebra(g);
    for (int n : {1, 2}) {
      CAPTURE(gname);
      CAPTURE(n);
      TruncatedTA ta = truncated_tensor_algebra(a, n);
      CHECK(ta.level == n);
      for (int x = 0; x < g.num_units(); ++x) {
        // tau . sigma = id on the fiber of A
        for (int i = 0; i < a.mod.fdim[x]; ++i) {
          FibVec back = ta.tau(x, ta.sigma(x, FibVec{{i, Rat(1)}}));
          CHECK(fib_equal(fib_normalize(back), FibVec{{i, Rat(1)}}));
        }
        // tau is multiplicative: it kills the higher-degree corrections
        for (int i = 0; i < a.mod.fdim[x] && i < 3; ++i)
          for (int j = 0; j < a.mod.fdim[x] && j < 3; ++j) {
            FibVec p = ta.alg.mul_vec(x, ta.sigma(x, FibVec{{i, Rat(1)}}),
                                      ta.sigma(x, FibVec{{j, Rat(1)}}));
            CHECK(fib_equal(fib_normalize(ta.tau(x, p)),
                            fib_normalize(a.mul_basis(x, i, j))));
          }
      }
    }
  }
}

TEST_CASE("fedosov product is associative in low degrees") {
  Groupoid g = builtin_groupoid("z2");
  GAlgebra a = trivial_algebra(g);
  FiberForms ff(a);
  FVec u{{bm(0, 0), Rat(1)}};
  FVec du = ff.d(bm(0, 0));
  FVec w = ff.mul(du, du);
  fv_axpy(w, Rat(3), u);
  FVec l = fedosov_mul(ff, fedosov_mul(ff, w, u, 4), w, 4);
  FVec r = fedosov_mul(ff, w, fedosov_mul(ff, u, w, 4), 4);
  CHECK(fv_is_zero(fv_sub(l, r)));
}

TEST_CASE("form transport by the identity fixes monomials") {
  Groupoid g = builtin_groupoid("pair2");
  GAlgebra a = kg_algebra(g);
  int d = a.mod.fdim[0];
  QMat id(d, d);
  for (int i = 0; i < d; ++i) id.at(i, i) = Rat(1);
  FiberForms ff(a);
  FVec v = ff.mul(ff.d(bm(0, 0)), ff.d(bm(0, 1)));
  fv_axpy(v, Rat(2), FVec{{bm(0, 1), Rat(1)}});
  CHECK(fv_is_zero(fv_sub(form_transport(id, 0, v), v)));
}

TEST_CASE("is_algebra_map and is_equivariant_map accept identities") {
  Groupoid g = builtin_groupoid("flip");
  GAlgebra a = kg_algebra(g);
  std::vector<QMat> id;
  for (int x = 0; x < g.num_units(); ++x) {
    QMat m(a.mod.fdim[x], a.mod.fdim[x]);
    for (int i = 0; i < a.mod.fdim[x]; ++i) m.at(i, i) = Rat(1);
    id.push_back(m);
  }
  CHECK(is_algebra_map(a, a, id));
  CHECK(is_equivariant_map(a.mod, a.mod, id));
  id[0].at(0, 1) = Rat(1);
  CHECK_FALSE(is_algebra_map(a, a, id));
}
