#pragma once

#include <map>

#include "qcyc/homalg.hpp"

namespace qcyc {

// Localisation of a unit-graded module at an orbit: the sum of the fibers
// over the units of the orbit.
struct OrbitLocalisation {
  int orbit = -1;
  std::vector<int> basis;  // global indices of M
};
OrbitLocalisation localise(const GModule& m, int orbit);

// Local-to-global principle for a grade-preserving module map.
struct LocalToGlobalReport {
  bool global_iso = false;
  std::vector<bool> local_iso;
  bool equivalent = false;  // global <=> all local
};
LocalToGlobalReport local_to_global(const GModule& m, const GModule& n,
                                    const std::vector<QMat>& phi);

// An element of A(G) as a function on pairs (loop beta, arrow alpha with
// r(alpha) = base(beta)).
using AGElement = std::map<std::pair<int, int>, Rat>;
// Right translation F -> F . chi_{\{delta\}} on the D(G) leg.
AGElement ag_right_translate(const Groupoid& g, const AGElement& f, int delta);
// kappa^G(F): O_G -> A(G) as a grade-diagonal matrix between the AYD bases.
SpMat kappa_average(const Groupoid& g, const AGModule& ag, const AGElement& f);

// The comparison map gamma on differential forms of the crossed product:
// gamma(<a0 x d_{alpha0}> d(a1 x d_{alpha1}) ... ) =
//   delta_{alpha0...alphan} (x) <a0> d(rho(alpha0) a1) d(rho(alpha0 alpha1) a2) ...
// Zero unless the chain is composable and the total product is a loop.
FVec gamma_raw(const GAlgebra& a, const CrossedProduct& cp, const FMono& m);
// One summand of the kappa average of F at the loop alpha.
FVec kappa_at(const GAlgebra& a, const FVec& f, int alpha);

struct GammaReport {
  bool raw_b_fails = false;    // raw gamma violates b-compatibility somewhere
  bool averaged_b_ok = false;  // b gamma^G = gamma^G b
  bool averaged_d_ok = false;  // d-compatibility
  bool averaged_B_ok = false;  // B-compatibility
};
GammaReport gamma_check(const GAlgebra& a, int max_degree = 2);

struct DecompositionReport {
  HomologyReport global;
  std::vector<HomologyReport> per_orbit;
  bool equal = false;
};
DecompositionReport discrete_decomposition(const GAlgebra& a, const GAlgebra& b);

struct GreenJulgReport {
  HomologyReport lhs, rhs;                          // HP^G(C(G0), A) vs quotient side
  std::vector<HomologyReport> lhs_orbits, rhs_orbits;
  bool equal = false;             // global rank equality
  bool orbit_sums_equal = false;  // per-orbit reductions match and sum up
};
GreenJulgReport green_julg_verify(const GAlgebra& a);

}  // namespace qcyc
