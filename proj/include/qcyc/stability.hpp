#pragma once

#include <optional>
#include <vector>

#include "qcyc/homalg.hpp"

namespace qcyc {

// Twisted trace ttr: O_G (x) K(E) -> O_G attached to an equivariant pairing,
// ttr(delta_beta (x) e1 (x) e2) = h(beta^{-1} e2, e1) delta_beta.
struct TwistedTrace {
  const Groupoid* G = nullptr;
  EquivariantPairing h;
  // value on the K(E) basis element k (= i*d+j in the fiber at base(beta))
  Rat eval(int beta, int k) const;
  Rat eval_vec(int beta, const FibVec& l) const;
  // trace property ttr(chi_U (x) L0 L1) = ttr(chi_U (x) (chi_{U^-1} L1) L0)
  bool trace_identity(int beta, const FibVec& l0, const FibVec& l1) const;
};
TwistedTrace twisted_trace(const EquivariantPairing& h);

// Average a grade-preserving (per unit) linear map E -> F over the groupoid
// using the canonical cut-off; the result is always equivariant, and equals
// the input when the input already is.
std::vector<QMat> equivariant_average(const GModule& e, const GModule& f,
                                      const std::vector<QMat>& phi);

// An admissible pairing certificate: an equivariant vector w per unit with
// u = h(w, w) invertible, so that e = (w (x) w)/u is an equivariant
// idempotent in K(E) and f -> f e embeds C_c(G^(0)).
struct AdmissibilityCertificate {
  std::vector<FibVec> w;
  std::vector<Rat> u;
};
std::optional<AdmissibilityCertificate> admissibility_certificate(const EquivariantPairing& h);

// Trace chain map tr_A: X_G(A (x) K(E)) -> X_G(A),
//   tr(f (x) x (x) L) = ttr(f (x) L) (x) x,
//   tr(f (x) (x0 (x) L0) d(x1 (x) L1)) = ttr(f (x) L0 L1) (x) x0 dx1.
XChainMap trace_chain_map(const GAlgebra& a, const EquivariantPairing& h,
                          const HodgeComplex& xak, const HodgeComplex& xa);

struct StabilityReport {
  bool admissible = false;      // certificate found
  bool trace_property = false;  // twisted trace identity on all generators
  bool chain_map = false;       // tr commutes with the boundaries
  bool algebra_map = false;     // iota_A is an equivariant algebra map
  bool retraction = false;      // tr . X(iota_A) = id exactly
  bool induces_id = false;      // X(iota_A) . tr = id on H(Hom(O_G[0], -))
  bool ranks_equal = false;     // hp(A, A) = hp(A (x) K(E), A (x) K(E)) etc.
  HomologyReport hp_a, hp_ak, hp_a_ak, hp_ak_a;
  bool all() const {
    return admissible && trace_property && chain_map && algebra_map && retraction &&
           induces_id && ranks_equal;
  }
};
StabilityReport stability_check(const GAlgebra& a, const EquivariantPairing& h);

}  // namespace qcyc
