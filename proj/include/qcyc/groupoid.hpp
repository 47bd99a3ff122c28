#pragma once
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qcyc/rational.hpp"

namespace qcyc {

struct Arrow {
  std::string id;
  int src = -1, tgt = -1;
};

// Raw description as it comes from a file or a builder, before validation.
struct GroupoidData {
  std::vector<std::string> units;
  std::vector<Arrow> arrows;                            // identity arrows optional
  std::vector<std::array<std::string, 3>> mul;          // (left, right, result) by id
  std::map<std::string, std::string> inv;               // optional
};

// A bisection: a set of arrows on which src and tgt are both injective.
// Singletons {alpha} and unit sets generate everything we need.
struct Bisection {
  std::vector<int> arrows;  // arrow indices, sorted
};

class Groupoid {
 public:
  // Validates all axioms; synthesizes identity arrows (id token = unit token)
  // and the inverse map when absent. Throws std::runtime_error on violation.
  static Groupoid validate(const GroupoidData& d);

  int num_units() const { return (int)units_.size(); }
  int num_arrows() const { return (int)arrows_.size(); }
  const std::string& unit_name(int x) const { return units_[x]; }
  const Arrow& arrow(int a) const { return arrows_[a]; }
  int src(int a) const { return arrows_[a].src; }
  int tgt(int a) const { return arrows_[a].tgt; }
  int inv(int a) const { return inv_[a]; }
  int unit_arrow(int x) const { return unit_arrow_[x]; }
  bool is_unit_arrow(int a) const { return arrows_[a].src == arrows_[a].tgt && unit_arrow_[arrows_[a].src] == a; }
  // Composition alpha * beta (first beta, then alpha): defined iff src(alpha)==tgt(beta).
  int mul(int a, int b) const { return mul_[a][b]; }
  bool composable(int a, int b) const { return arrows_[a].src == arrows_[b].tgt; }

  int unit_index(const std::string& name) const;
  int arrow_index(const std::string& id) const;

  // Arrows with target x (the set G^x).
  const std::vector<int>& arrows_into(int x) const { return into_[x]; }
  // Loop space G_ad: arrows with src == tgt, in groupoid (id token) order.
  const std::vector<int>& loops() const { return loops_; }
  int loop_pos(int arrow) const;  // index into loops(), -1 if not a loop

  // Conjugation: for s(a) == base(loop l): a * l * a^{-1} (as arrow index).
  int conj(int a, int l) const;

  // Orbits of the unit space; each sorted, representative = least unit index.
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  int orbit_of(int x) const { return orbit_of_[x]; }
  // Isotropy group of unit x (arrows x -> x).
  std::vector<int> isotropy(int x) const;

  // Adjoint orbits of loops: conjugacy classes of G_ad under a*l*a^{-1}.
  std::vector<std::vector<int>> loop_orbits() const;

  // Canonical cut-off c = d / lambda(d o s), d = indicator of orbit reps.
  // Satisfies sum_{alpha in G^x} c(s(alpha)) = 1 for every unit x.
  std::vector<Rat> cutoff() const;

  // Bisections: product UV = {ab : a in U, b in V composable}; must again be
  // a bisection (always is, for bisections of a groupoid).
  Bisection bisection_product(const Bisection& u, const Bisection& v) const;
  Bisection bisection_inverse(const Bisection& u) const;
  bool is_bisection(const std::vector<int>& arrows) const;

 private:
  std::vector<std::string> units_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_, unit_arrow_;
  std::vector<std::vector<int>> into_;
  std::vector<int> loops_;
  std::map<int, int> loop_pos_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_of_;
  std::map<std::string, int> unit_by_name_, arrow_by_id_;
};

}  // namespace qcyc
