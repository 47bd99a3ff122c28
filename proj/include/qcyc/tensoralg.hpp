#pragma once

#include <optional>
#include <vector>

#include "qcyc/forms.hpp"
#include "qcyc/galgebra.hpp"

namespace qcyc {

// Transport a fiber-form monomial along a fiber map r (all tensor slots,
// adjoined unit fixed), relocating it to `target_unit`.
FVec form_transport(const QMat& r, int target_unit, const FMono& m);
FVec form_transport(const QMat& r, int target_unit, const FVec& v);

// Fedosov product on even fiber forms, truncated above maxdeg.
FVec fedosov_mul(const FiberForms& ff, const FVec& w, const FVec& e, int maxdeg);

// T A/(J A)^n realized as a GAlgebra: carrier A + Omega^2 + ... + Omega^{2n-2}
// per fiber with the truncated Fedosov product.
struct TruncatedTA {
  GAlgebra alg;                            // the truncated tensor algebra
  GAlgebra base;                           // A itself
  int level = 1;
  std::vector<std::vector<FMono>> basis;   // per unit of G
  std::vector<std::map<FMono, int>> index; // monomial -> local fiber index

  // tau: project to degree 0; sigma: include degree 0.
  FibVec tau(int x, const FibVec& v) const;
  FibVec sigma(int x, const FibVec& a) const;
};
TruncatedTA truncated_tensor_algebra(const GAlgebra& a, int n);

// Curvature of an equivariant linear map l: A -> B given per unit as a matrix.
struct Curvature {
  std::vector<std::vector<std::vector<FibVec>>> omega;  // [unit][i][j] in B
  bool is_zero = true;
  int nilpotency = -1;  // smallest n with (ideal of image)^n = 0; -1 if none <= bound
};
Curvature curvature(const GAlgebra& a, const GAlgebra& b, const std::vector<QMat>& l,
                    int nilpotency_bound = 8);

// The induced homomorphism [[l]]: T A/(J A)^n -> B (per-unit matrices), or
// nullopt when the curvature is not nilpotent of order <= n.
std::optional<std::vector<QMat>> lonilcur_extend(const TruncatedTA& ta, const GAlgebra& b,
                                                 const std::vector<QMat>& l);

// Verification helpers for per-unit linear maps between algebras.
bool is_algebra_map(const GAlgebra& a, const GAlgebra& b, const std::vector<QMat>& f);
bool is_equivariant_map(const GModule& m, const GModule& n, const std::vector<QMat>& f);

// A connection certificate phi: A -> Omega^2(A), stored per unit per basis
// element as a fiber form supported in degree 2.
struct ConnectionCertificate {
  std::vector<std::vector<FVec>> phi;
};
bool check_certificate(const GAlgebra& a, const ConnectionCertificate& c);
// Returns a verified certificate if one exists. When the direct linear system
// is solved and found empty, returns nullopt: a proof of non-quasifreeness.
std::optional<ConnectionCertificate> quasifree_certificate(const GAlgebra& a);

}  // namespace qcyc
