#include "qcyc/corpus.hpp"

#include <stdexcept>

namespace qcyc {

namespace {
int uidx(const GroupoidData& d, const std::string& u) {
  for (size_t i = 0; i < d.units.size(); ++i)
    if (d.units[i] == u) return (int)i;
  throw std::runtime_error("unknown unit: " + u);
}
void arr(GroupoidData& d, const std::string& id, const std::string& s,
         const std::string& t) {
  d.arrows.push_back({id, uidx(d, s), uidx(d, t)});
}
}  // namespace

Groupoid builtin_groupoid(const std::string& name) {
  GroupoidData d;
  if (name == "z2") {
    d.units = {"x"};
    arr(d, "g", "x", "x");
    d.mul = {{"g", "g", "x"}};
  } else if (name == "pair2") {
    d.units = {"1", "2"};
    arr(d, "a", "1", "2");
    arr(d, "b", "2", "1");
    d.mul = {{"b", "a", "1"}, {"a", "b", "2"}};
  } else if (name == "z2z3") {
    d.units = {"u", "v"};
    arr(d, "g", "u", "u");
    arr(d, "h", "v", "v");
    arr(d, "h2", "v", "v");
    d.mul = {{"g", "g", "u"},
             {"h", "h", "h2"},
             {"h", "h2", "v"},
             {"h2", "h", "v"},
             {"h2", "h2", "h"}};
  } else if (name == "flip") {
    d.units = {"a", "b"};
    arr(d, "ga", "a", "b");
    arr(d, "gb", "b", "a");
    d.mul = {{"gb", "ga", "a"}, {"ga", "gb", "b"}};
  } else if (name == "point") {
    d.units = {"pt"};
  } else {
    throw std::runtime_error("unknown builtin groupoid: " + name);
  }
  return Groupoid::validate(d);
}

std::vector<std::string> builtin_groupoid_names() {
  return {"z2", "pair2", "z2z3", "flip"};
}

GAlgebra dual_numbers_algebra(const Groupoid& g) {
  GAlgebra a;
  a.mod.G = &g;
  a.mod.fdim.assign(g.num_units(), 2);
  a.mod.rebuild_offsets();
  a.mod.rho.resize(g.num_arrows());
  for (int ar = 0; ar < g.num_arrows(); ++ar) a.mod.rho[ar] = QMat::identity(2);
  a.mulfn = [](int, int i, int j) -> FibVec {
    if (i == 0 && j == 0) return {{0, 1}};
    if (i + j == 1) return {{1, 1}};
    return {};  // t*t = 0
  };
  a.one = std::vector<FibVec>(g.num_units(), FibVec{{0, 1}});
  a.name = "dual";
  return a;
}

GAlgebra algebra_by_name(const Groupoid& g, const std::string& name) {
  if (name == "trivial") return trivial_algebra(g);
  if (name == "kg") return kg_algebra(g);
  if (name == "og") return og_algebra(g);
  if (name == "dual") return dual_numbers_algebra(g);
  throw std::runtime_error("unknown builtin algebra: " + name);
}

std::vector<std::string> builtin_algebra_names() {
  return {"trivial", "kg", "og"};
}

}  // namespace qcyc
