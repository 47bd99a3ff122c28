#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcyc/forms.hpp"
#include "qcyc/galgebra.hpp"
#include "qcyc/tensoralg.hpp"

namespace qcyc {

// A Z/2-graded paracomplex: d^2 = id - T with T the canonical AYD twist.
struct Paracomplex {
  AYDModule even, odd;
  SpMat d0;  // even -> odd
  SpMat d1;  // odd -> even
};
bool paracomplex_check(const Paracomplex& p, std::string* why = nullptr);

// O_G concentrated in even degree with zero boundary.
Paracomplex trivial_paracomplex(const Groupoid& g);

// The Hodge truncation theta^n: Omega^0 + ... + Omega^{n-1} + Omega^n/b,
// with boundary B + b. theta^1 is the X-complex.
class HodgeComplex {
 public:
  HodgeComplex(const Groupoid& g, const GAlgebra& a, int n);

  const Paracomplex& para() const { return p_; }
  int level() const { return n_; }
  const FormCalc& calc() const { return fc_; }
  long dim(int parity) const;
  FMono rep(int parity, int idx) const;
  // Coordinates of a pure-parity form vector (degrees <= n; the degree-n
  // component is reduced modulo b(Omega^{n+1})).
  SpVec coords(int parity, const FVec& v) const;

 private:
  const Groupoid* g_;
  FormCalc fc_;
  int n_;
  // quotient data at top degree, per loop
  std::vector<Echelon> bimage_;
  std::vector<std::map<FMono, int>> toppos_;  // top-degree monomial -> index
  std::vector<std::vector<FMono>> reps_[2];   // basis reps per parity per loop? flat
  std::vector<std::map<FMono, int>> pos_[2];  // monomial -> local index in its loop
  std::vector<int> loff_[2];                  // per-loop offsets
  Paracomplex p_;
  void build();
};

Paracomplex x_complex(const Groupoid& g, const GAlgebra& a);

// Hom_{A(G)}(P, Q) with differential d(phi) = phi d_src - (-1)^{|phi|} d_tgt phi.
struct HomComplex {
  // carrier bases: even = (Pe->Qe) + (Po->Qo), odd = (Pe->Qo) + (Po->Qe)
  std::vector<SpMat> ee, oo, eo, oe;
  SpMat deven, dodd;
  long even_dim() const { return (long)ee.size() + (long)oo.size(); }
  long odd_dim() const { return (long)eo.size() + (long)oe.size(); }
  SpanSolver even_span, odd_span;  // over flattened (block1, block2) entries
  std::optional<SpVec> even_coords(const SpMat& f, const SpMat& g) const;
  std::optional<SpVec> odd_coords(const SpMat& u, const SpMat& v) const;
};
HomComplex hom_paracomplex(const Paracomplex& p, const Paracomplex& q);

// d^2 applied to an arbitrary (not necessarily A(G)-linear) even pair (f, g);
// returns d^2(phi) and T phi - phi T blockwise for comparison.
struct DSquareWitness {
  SpMat dsq_e, dsq_o;    // components of d^2(phi)
  SpMat comm_e, comm_o;  // T phi - phi T
  bool identity_holds = false;
  bool nonzero = false;
};
DSquareWitness dsquare_pair(const Paracomplex& p, const Paracomplex& q, const SpMat& f,
                            const SpMat& g);

struct HomologyReport {
  long even_rank = 0, odd_rank = 0;
  int level = 0;
  std::string reduction;
  bool stabilized = true;
};
HomologyReport homology(const HomComplex& h);

// HP^G(A, B) under the quasifree reduction: homology of Hom(X(A), X(B)).
// Certificates are recomputed unless verify_certs is false.
HomologyReport hp_quasifree(const GAlgebra& a, const GAlgebra& b, bool verify_certs = true);

// Homology of Hom(theta^m(A), theta^m(B)) for m = 1..level.
std::vector<HomologyReport> hp_level(const GAlgebra& a, const GAlgebra& b, int level);

// A polynomial family Phi_t: A -> B[t] given by coefficient matrices per unit.
struct PolyMap {
  std::vector<std::vector<QMat>> coeff;  // [unit][t-power]
};
PolyMap poly_const(const std::vector<QMat>& f);
// Evaluate at a rational t.
std::vector<QMat> poly_eval(const PolyMap& p, const Rat& t);

struct CartanReport {
  bool homomorphism = false;
  bool equivariant = false;
  bool homotopy_identity = false;  // X(Phi_1) xi_2 - X(Phi_0) xi_2 = d eta + eta d
  bool nu_identities = true;       // with certificate: xi_2 nu = id, nu xi_2 = id - [nabla, d]
  bool classes_equal = false;      // [Phi_0] = [Phi_1] in H_0 Hom(X(A), X(B))
  bool all() const {
    return homomorphism && equivariant && homotopy_identity && nu_identities && classes_equal;
  }
};
CartanReport cartan_homotopy_check(const GAlgebra& a, const GAlgebra& b, const PolyMap& phi,
                                   const ConnectionCertificate* cert = nullptr);

// The chain map X(f) induced by an equivariant algebra map f: A -> B.
struct XChainMap {
  SpMat even, odd;
};
XChainMap x_map(const HodgeComplex& xa, const HodgeComplex& xb, const std::vector<QMat>& f);
// Is the even chain map (fe, fo) a boundary in Hom(X(A), X(B))?
bool is_boundary_class(const HomComplex& h, const SpMat& fe, const SpMat& fo);

// Does the even chain map (fe, fo): X -> X induce the identity on the
// homology of Hom(O_G[0], X)?
bool induces_identity_on_homology(const Groupoid& g, const Paracomplex& x, const SpMat& fe,
                                  const SpMat& fo);

// Split extension K -> E -> Q with algebra-map section sigma at tensor level n.
struct SplitExtensionReport {
  bool valid = false;          // pi iota = 0, pi sigma = id, all maps algebra maps
  bool chain_maps = false;     // X(T pi), X(T sigma) commute with boundaries
  bool decomposition = false;  // X(TE) = ker X(Tpi) + X(Tsigma) X(TQ), direct
  std::vector<bool> exactness; // Hom(O_G[0], -) homology sequence nodes
  bool all() const;
};
SplitExtensionReport split_extension(const GAlgebra& k, const GAlgebra& e, const GAlgebra& q,
                                     const std::vector<QMat>& iota,
                                     const std::vector<QMat>& pi,
                                     const std::vector<QMat>& sigma, int level);

}  // namespace qcyc
