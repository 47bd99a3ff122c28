#pragma once

#include <json.hpp>

#include <string>

#include "qcyc/galgebra.hpp"
#include "qcyc/gmodule.hpp"
#include "qcyc/groupoid.hpp"

namespace qcyc {

// Exact rationals travel as JSON integers or "p/q" strings.
Rat rat_from_json(const nlohmann::json& j);
nlohmann::json rat_to_json(const Rat& r);

// {"units":[...], "arrows":[{"id","src","tgt"}...], "mul":[[l,r,res]...],
//  "inv":{id:id} (optional)}. Unit arrows implicit.
GroupoidData groupoid_data_from_json(const nlohmann::json& j);
Groupoid groupoid_from_json(const nlohmann::json& j);
nlohmann::json groupoid_to_json(const Groupoid& g);

// {"fibers":{unit:[basis names]}, "rho":{arrow_id: matrix}}.
GModule module_from_json(const Groupoid& g, const nlohmann::json& j);
nlohmann::json module_to_json(const GModule& m);

// Module file plus {"mul":{unit: 3-index array}}; optional {"one":{unit:vec}}.
GAlgebra algebra_from_json(const Groupoid& g, const nlohmann::json& j);
nlohmann::json algebra_to_json(const GAlgebra& a);

// {"points":[...], "anchor":{pt:unit}, "action":[[arrow,pt,pt']...]}.
GSpace gspace_from_json(const Groupoid& g, const nlohmann::json& j);
nlohmann::json gspace_to_json(const Groupoid& g, const GSpace& s);

// File helpers; throw std::runtime_error with path context.
nlohmann::json load_json_file(const std::string& path);

// Resolve "builtin:z2" style references or a path to a groupoid file.
Groupoid load_groupoid(const std::string& ref);
// Resolve a builtin algebra name ("trivial", "kg", "og", "dual") or a path.
GAlgebra load_algebra(const Groupoid& g, const std::string& ref);

}  // namespace qcyc
