#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>

#include "qcyc/corpus.hpp"
#include "qcyc/greenjulg.hpp"

using namespace qcyc;

TEST_CASE("orbit localisation covers the module without overlap") {
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    GModule m = GModule::regular(g);
    std::vector<int> seen(m.dim(), 0);
    for (int o = 0; o < (int)g.orbits().size(); ++o)
      for (int idx : localise(m, o).basis) seen[idx]++;
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("local-to-global for module maps") {
  Groupoid g = builtin_groupoid("z2z3");
  GModule m = GModule::regular(g);
  std::vector<QMat> id;
  for (int x = 0; x < g.num_units(); ++x) id.push_back(QMat::identity(m.fdim[x]));
  LocalToGlobalReport r = local_to_global(m, m, id);
  CHECK(r.global_iso);
  for (bool b : r.local_iso) CHECK(b);
  CHECK(r.equivalent);

  // kill one orbit only: global fails, exactly one local factor fails
  std::vector<QMat> broken = id;
  broken[0] = QMat(m.fdim[0], m.fdim[0]);
  LocalToGlobalReport rb = local_to_global(m, m, broken);
  CHECK_FALSE(rb.global_iso);
  int fails = 0;
  for (bool b : rb.local_iso)
    if (!b) fails++;
  CHECK(fails == 1);
  CHECK(rb.equivalent);
}

TEST_CASE("raw gamma fails on multi-unit orbits and the average repairs it") {
  const std::map<std::string, bool> rawfail = {
      {"z2", false}, {"pair2", true}, {"z2z3", false}, {"flip", true}};
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    GammaReport r = gamma_check(trivial_algebra(g));
    CHECK(r.raw_b_fails == rawfail.at(name));
    CHECK(r.averaged_b_ok);
    CHECK(r.averaged_d_ok);
    CHECK(r.averaged_B_ok);
  }
}

TEST_CASE("discrete decomposition: global homology is the orbit sum") {
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    DecompositionReport r = discrete_decomposition(trivial_algebra(g), trivial_algebra(g));
    CHECK(r.equal);
    long se = 0, so = 0;
    for (const auto& o : r.per_orbit) {
      se += o.even_rank;
      so += o.odd_rank;
    }
    CHECK(r.global.even_rank == se);
    CHECK(r.global.odd_rank == so);
    if (name == std::string("z2z3")) {
      REQUIRE(r.per_orbit.size() == 2);
      CHECK(r.global.even_rank == 5);
      CHECK(r.per_orbit[0].even_rank + r.per_orbit[1].even_rank == 5);
    }
  }
}

TEST_CASE("rank equality between the equivariant and crossed-product sides") {
  const std::map<std::string, long> even = {
      {"z2", 2}, {"pair2", 1}, {"z2z3", 5}, {"flip", 1}};
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    for (const auto& aname : {"trivial", "kg"}) {
      CAPTURE(aname);
      GreenJulgReport r = green_julg_verify(algebra_by_name(g, aname));
      CHECK(r.equal);
      CHECK(r.orbit_sums_equal);
      CHECK(r.lhs.even_rank == even.at(name));
      CHECK(r.lhs.odd_rank == 0);
      CHECK(r.rhs.even_rank == even.at(name));
      CHECK(r.rhs.odd_rank == 0);
    }
  }
}
