#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "qcyc/galgebra.hpp"
#include "qcyc/groupoid.hpp"

namespace qcyc {

// A basis monomial delta_beta (x) <a0> da1 ... dan of the equivariant form
// space: `loop` indexes beta, `a0` a basis element of the unitalised fiber at
// the base of beta (FUNIT = the adjoined unit), tail[i] basis elements of the
// fiber. Fiber dims must stay < 255 and degrees <= 8.
constexpr uint16_t FUNIT = 0xFFFF;

struct FMono {
  uint32_t loop = 0;
  uint16_t a0 = FUNIT;
  uint8_t deg = 0;
  std::array<uint8_t, 8> tail{};

  friend bool operator<(const FMono& a, const FMono& b) {
    if (a.loop != b.loop) return a.loop < b.loop;
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.a0 != b.a0) return a.a0 < b.a0;
    return a.tail < b.tail;
  }
  friend bool operator==(const FMono& a, const FMono& b) {
    return a.loop == b.loop && a.deg == b.deg && a.a0 == b.a0 && a.tail == b.tail;
  }
};

using FVec = std::map<FMono, Rat>;

void fv_axpy(FVec& y, const Rat& c, const FVec& x);
bool fv_is_zero(const FVec& v);
FVec fv_sub(const FVec& a, const FVec& b);

// Operators of the equivariant (B,b)-calculus, computed monomial by monomial.
// Everything is block diagonal over loops; no global matrices are formed.
class FormCalc {
 public:
  FormCalc(const Groupoid& g, const GAlgebra& a);

  const Groupoid& groupoid() const { return *g_; }
  const GAlgebra& algebra() const { return a_; }
  int fdim(int loop) const { return a_.mod.fdim[g_->tgt(g_->loops()[loop])]; }
  int num_loops() const { return (int)g_->loops().size(); }

  std::vector<FMono> basis(int loop, int n) const;
  long dim(int loop, int n) const;

  FVec d(const FMono& m) const;
  FVec b(const FMono& m) const;
  FVec T(const FMono& m) const;
  FVec kappa(const FMono& m) const;  // id - (bd + db)
  FVec B(const FMono& m) const;      // sum_{j=0..deg} kappa^j d

  FVec d(const FVec& v) const;
  FVec b(const FVec& v) const;
  FVec T(const FVec& v) const;
  FVec kappa(const FVec& v) const;
  FVec B(const FVec& v) const;

 private:
  FibVec transport(const FMono& m, int idx) const;  // rho(beta^{-1}) e_idx
  const Groupoid* g_;
  GAlgebra a_;
};

// Per-fiber (non-equivariant) form calculus of a single fiber algebra,
// used for Fedosov products and curvature. Monomials reuse FMono with the
// `loop` field holding the unit index.
class FiberForms {
 public:
  explicit FiberForms(const GAlgebra& a) : a_(a) {}
  const GAlgebra& algebra() const { return a_; }

  FVec d(const FMono& m) const;
  FVec d(const FVec& v) const;
  // Right multiplication by a fiber element and the graded form product.
  FVec mul_right(const FMono& m, int bidx) const;
  FVec mul(const FMono& m, const FMono& n) const;
  FVec mul(const FVec& v, const FVec& w) const;

 private:
  GAlgebra a_;
};

struct ParamixedReport {
  bool all_pass = true;
  int max_degree = 0;
  long monomials_checked = 0;
  std::vector<std::string> failures;
};

// Exact check of the operator identities of the paracyclic calculus on every
// basis monomial up to degree cap-2.
ParamixedReport paramixed_report(const Groupoid& g, const GAlgebra& a, int cap = 6);

}  // namespace qcyc
