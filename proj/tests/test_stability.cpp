#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <string>

#include "qcyc/corpus.hpp"
#include "qcyc/stability.hpp"

using namespace qcyc;

TEST_CASE("twisted trace: identity and values on the regular pairing") {
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    EquivariantPairing h = regular_pairing(g);
    TwistedTrace ttr = twisted_trace(h);
    for (int beta = 0; beta < (int)g.loops().size(); ++beta) {
      int x = g.src(g.loops()[beta]);
      int d = h.mod.fdim[x];
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          CHECK(ttr.trace_identity(beta, FibVec{{i * d + j, Rat(1)}},
                                   FibVec{{j * d + i, Rat(1)}}));
    }
  }
}

TEST_CASE("the regular pairing is admissible") {
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    auto cert = admissibility_certificate(regular_pairing(g));
    REQUIRE(cert.has_value());
    for (const Rat& u : cert->u) CHECK(u != Rat(0));
  }
}

TEST_CASE("equivariant average is equivariant and fixes equivariant maps") {
  std::mt19937 rng(20260826);
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    GModule e = GModule::regular(g);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<QMat> phi;
      for (int x = 0; x < g.num_units(); ++x) {
        QMat m(e.fdim[x], e.fdim[x]);
        for (int i = 0; i < m.rows; ++i)
          for (int j = 0; j < m.cols; ++j) m.at(i, j) = Rat((long)(rng() % 7) - 3);
        phi.push_back(m);
      }
      std::vector<QMat> avg = equivariant_average(e, e, phi);
      CHECK(is_equivariant(e, e, avg));
      // averaging is idempotent: an equivariant map is its own average
      std::vector<QMat> again = equivariant_average(e, e, avg);
      for (int x = 0; x < g.num_units(); ++x) CHECK(again[x].equals(avg[x]));
    }
  }
}

TEST_CASE("full stability report for the trivial algebra") {
  const std::map<std::string, long> hp_even = {
      {"z2", 2}, {"pair2", 1}, {"z2z3", 5}, {"flip", 1}};
  for (const auto& name : builtin_groupoid_names()) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    StabilityReport r = stability_check(trivial_algebra(g), regular_pairing(g));
    CHECK(r.admissible);
    CHECK(r.trace_property);
    CHECK(r.chain_map);
    CHECK(r.algebra_map);
    CHECK(r.retraction);
    CHECK(r.induces_id);
    CHECK(r.ranks_equal);
    CHECK(r.hp_a.even_rank == hp_even.at(name));
    CHECK(r.hp_a.odd_rank == 0);
    CHECK(r.hp_ak.even_rank == hp_even.at(name));
    CHECK(r.all());
  }
}

TEST_CASE("stability for the smooth convolution algebra on the small groupoids") {
  // z2z3 and flip with K_G coefficients run in the acceptance suite
  for (const auto& name : {"z2", "pair2"}) {
    CAPTURE(name);
    Groupoid g = builtin_groupoid(name);
    StabilityReport r = stability_check(kg_algebra(g), regular_pairing(g));
    CHECK(r.all());
    CHECK(r.hp_a.even_rank == r.hp_ak.even_rank);
    CHECK(r.hp_a.odd_rank == r.hp_ak.odd_rank);
  }
}
