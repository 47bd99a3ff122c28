#pragma once
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <tuple>

#include "qcyc/gmodule.hpp"

namespace qcyc {

// Sparse vector in a single fiber.
using FibVec = std::vector<std::pair<int, Rat>>;

FibVec fib_normalize(FibVec v);  // combine duplicates, drop zeros
FibVec fib_scale(const FibVec& v, const Rat& c);
FibVec fib_add(const FibVec& a, const FibVec& b);
bool fib_equal(const FibVec& a, const FibVec& b);
// apply a dense transport matrix to a sparse fiber vector
FibVec fib_apply(const QMat& m, const FibVec& v);

// G-algebra: G-module plus an equivariant per-fiber associative product.
// The product is functional (lazily memoized) so that large derived algebras
// (truncated tensor algebras) never materialize full structure-constant cubes.
struct GAlgebra {
  GModule mod;
  std::function<FibVec(int unit, int i, int j)> mulfn;
  // separability idempotent per unit: e = sum c * (u_i (x) v_j), A-central,
  // multiplying to the fiber unit. Attached by constructors when available;
  // consumed by the quasifreeness machinery.
  std::optional<std::vector<std::vector<std::tuple<int, int, Rat>>>> sep;
  std::optional<std::vector<FibVec>> one;  // fiber units, when the algebra is unital
  std::string name;

  FibVec mul_basis(int x, int i, int j) const;  // memoized
  FibVec mul_vec(int x, const FibVec& a, const FibVec& b) const;
  // Associativity on all basis triples + equivariance of the product.
  void validate() const;

 private:
  mutable std::shared_ptr<std::map<std::tuple<int, int, int>, FibVec>> cache_ =
      std::make_shared<std::map<std::tuple<int, int, int>, FibVec>>();
};

// Equivariant pairing h on a G-module E, given by per-unit Gram matrices.
struct EquivariantPairing {
  GModule mod;
  std::vector<QMat> gram;  // h(e_i, e_j) = gram[x].at(i,j)
  void validate() const;   // equivariance: rho(a)^T gram_{r} rho(a) = gram_{s}
  Rat eval(int x, const FibVec& e, const FibVec& f) const;
};

// Finite G-space: points with anchor map and action table.
struct GSpace {
  std::vector<std::string> points;
  std::vector<int> anchor;                  // point -> unit
  std::vector<std::vector<int>> act;        // [arrow][point] -> point, -1 if not anchored
  void validate(const Groupoid& g) const;   // action axioms
};

GAlgebra trivial_algebra(const Groupoid& g);
GSpace unit_gspace(const Groupoid& g);       // X = G^(0), translation action
GSpace loop_gspace(const Groupoid& g);       // X = G_ad, adjoint action
GAlgebra function_algebra(const Groupoid& g, const GSpace& x);
GAlgebra og_algebra(const Groupoid& g);      // O_G = C_c(G_ad)

EquivariantPairing regular_pairing(const Groupoid& g);  // on D(G)
// K(E) = E (x) E with (e1(x)f1)(e2(x)f2) = h(f1,e2) e1(x)f2.
GAlgebra smoothing_algebra(const EquivariantPairing& h);
GAlgebra kg_algebra(const Groupoid& g);      // smoothing algebra of the regular pairing

// A (x) B over C(G^(0)): diagonal module, componentwise product.
GAlgebra tensor_product_algebra(const GAlgebra& a, const GAlgebra& b);

// A+ = A ⊕ C_c(G^(0)), (a,f)(b,g) = (ab + g·a + f·b, fg). Fiber basis:
// A-basis first, adjoined unit last.
GAlgebra unitarise(const GAlgebra& a);

// Crossed product A ⋊ G, realized as an algebra over the quotient space
// G\G^(0) viewed as a groupoid of units. Basis: pairs (alpha, i) with i in
// the fiber of A at r(alpha), grouped by the orbit of r(alpha).
struct CrossedProduct {
  std::shared_ptr<Groupoid> quotient;  // units = orbit tokens, unit arrows only
  GAlgebra alg;                        // over *quotient
  const Groupoid* G = nullptr;
  std::vector<std::pair<int, int>> basis;  // global index -> (arrow, fiber index)
  std::map<std::pair<int, int>, int> index;
  // i_A(a in fiber x) and i_G(delta_alpha) as global vectors (A unital fiberwise for i_G).
  FibVec embed_a(int x, const FibVec& a) const;
  int orbit_fiber_of_unit(int x) const;  // quotient unit of a G-unit
};
CrossedProduct crossed_product(const GAlgebra& a);

// Covariant pair integration: phi: fiber_x -> Mat(V), pi: arrow -> Mat(V).
struct CovariantPair {
  std::vector<std::vector<QMat>> phi;  // [unit][basis index] -> V x V
  std::vector<QMat> pi;                // [arrow] -> V x V
  int vdim = 0;
};
// Verifies covariance phi(rho(alpha) a) pi(alpha) = pi(alpha) phi(a); returns
// psi on the crossed-product basis, psi(a (x) delta_alpha) = phi(a) pi(alpha),
// verified multiplicative. Throws with the offending pair otherwise.
std::vector<QMat> integrate_covariant(const CrossedProduct& cp, const CovariantPair& cv);

// Anti-Yetter-Drinfeld module in loop-graded functorial form.
struct AYDModule {
  const Groupoid* G = nullptr;
  std::vector<int> fdim, foff;  // per loop (position in G->loops())
  // act[(arrow a, loop l)] : fiber(l) -> fiber(a l a^{-1}), for s(a) = base(l)
  std::map<std::pair<int, int>, SpMat> act;
  int dim() const { return fdim.empty() ? 0 : foff.back() + fdim.back(); }
  void rebuild_offsets();
  const SpMat& action(int a, int l) const;
  void validate() const;
  // Canonical twist: on grade l, T = action of the loop's inverse arrow.
  SpMat canonical_T() const;
};

// Basis of AYD morphisms P -> Q (grade-preserving blocks commuting with all
// arrow maps), returned as global sparse matrices, first nonzero coord 1.
std::vector<SpMat> ayd_homs(const AYDModule& p, const AYDModule& q);
bool ayd_commutes(const AYDModule& p, const AYDModule& q, const SpMat& phi);

// O_G as an AYD module (one-dimensional grade per loop).
AYDModule og_ayd(const Groupoid& g);

// A(G) = O_G ⋊ G as an AYD module with basis (beta loop, alpha arrow with
// r(alpha) = base(beta)); exposed for the kappa-averaging of greenjulg.
struct AGModule {
  AYDModule ayd;
  std::vector<std::pair<int, int>> basis;  // (loop beta, arrow alpha)
  std::map<std::pair<int, int>, int> index;
};
AGModule ag_module(const Groupoid& g);

// Localisation of a G-algebra at the orbit of unit x: the fiber A_x as an
// algebra over the isotropy group G^x_x viewed as a one-unit groupoid.
struct LocalizedAlgebra {
  std::shared_ptr<Groupoid> group;  // isotropy of the orbit representative
  GAlgebra alg;
};
LocalizedAlgebra localize_algebra(const GAlgebra& a, int orbit);

}  // namespace qcyc
