#pragma once
#include <random>
#include <string>
#include <vector>

#include "qcyc/fnspace.hpp"
#include "qcyc/groupoid.hpp"
#include "qcyc/linalg.hpp"

namespace qcyc {

// G-module in functorial form: a fiber per unit plus invertible transport
// maps rho(alpha): fiber(s(alpha)) -> fiber(r(alpha)).
struct GModule {
  const Groupoid* G = nullptr;
  std::vector<int> fdim;           // per unit
  std::vector<int> foff;           // offsets into the global basis
  std::vector<QMat> rho;           // per arrow
  std::vector<std::string> names;  // optional global basis names

  int dim() const { return fdim.empty() ? 0 : foff.back() + fdim.back(); }
  int unit_of(int gidx) const;
  int local_of(int gidx) const { return gidx - foff[unit_of(gidx)]; }
  void rebuild_offsets();
  // Throws on a functoriality violation (identity, composition, invertibility).
  void validate() const;

  static GModule trivial(const Groupoid& g);
  // Regular module D(G): fiber_x spanned by arrows with range x, in arrow
  // order; rho(alpha) delta_gamma = delta_{alpha gamma}.
  static GModule regular(const Groupoid& g);
  // Position of arrow a in the fiber basis of the regular module at tgt(a).
  static int regular_pos(const Groupoid& g, int a);
};

GModule tensor_diagonal(const GModule& m, const GModule& n);

// Action of chi_U (bisection) on a global vector.
std::vector<Rat> bisection_action(const GModule& m, const Bisection& u,
                                  const std::vector<Rat>& vec);

// Basis of Hom_{D(G)}(M, N): grade-preserving block maps commuting with all
// transports. Each element is one block matrix per unit, normalized so the
// first nonzero coordinate is 1.
std::vector<std::vector<QMat>> equivariant_homs(const GModule& m, const GModule& n);
bool is_equivariant(const GModule& m, const GModule& n, const std::vector<QMat>& phi);

// Comodule picture: a C_c(G)-linear map T: C_c(G) (x)_r M -> C_c(G) (x)_s M,
// i.e. one block T_alpha: fiber(r(alpha)) -> fiber(s(alpha)) per arrow,
// subject to the coaction identity T_beta T_alpha = T_{alpha beta}.
struct ComoduleMap {
  const Groupoid* G = nullptr;
  std::vector<int> fdim;     // fiber dims per unit (of the underlying space)
  std::vector<QMat> blocks;  // per arrow
  void validate() const;     // coaction identity + invertibility + unit blocks
};

ComoduleMap module_to_comodule(const GModule& m);
GModule comodule_to_module(const ComoduleMap& c);

// Seeded generator used by property tests: conjugates a known functorial
// module by random invertible change-of-basis matrices per unit.
GModule random_module(const Groupoid& g, std::mt19937& rng, int extra_rank = 1);

}  // namespace qcyc
