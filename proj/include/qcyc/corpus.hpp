#pragma once

#include <string>
#include <vector>

#include "qcyc/galgebra.hpp"
#include "qcyc/groupoid.hpp"

namespace qcyc {

// Built-in groupoids: "z2", "pair2", "z2z3", "flip", "point".
Groupoid builtin_groupoid(const std::string& name);
std::vector<std::string> builtin_groupoid_names();

// Dual numbers Q[t]/(t^2) with trivial action, one fiber per unit.
GAlgebra dual_numbers_algebra(const Groupoid& g);

// Resolve "trivial" | "kg" | "og" | "dual" over g.
GAlgebra algebra_by_name(const Groupoid& g, const std::string& name);
std::vector<std::string> builtin_algebra_names();

}  // namespace qcyc
