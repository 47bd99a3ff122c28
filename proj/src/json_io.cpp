#include "qcyc/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include "qcyc/corpus.hpp"

namespace qcyc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("json: " + msg); }

QMat qmat_from_json(const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array() || (int)j.size() != rows) fail(where + ": expected " + std::to_string(rows) + " rows");
  QMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || (int)row.size() != cols)
      fail(where + ": row " + std::to_string(i) + " needs " + std::to_string(cols) + " entries");
    for (int k = 0; k < cols; ++k) m.at(i, k) = rat_from_json(row[k]);
  }
  return m;
}

json qmat_to_json(const QMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rat_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat((long)j.get<long long>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  fail("rational must be an integer or a \"p/q\" string, got " + j.dump());
}

json rat_to_json(const Rat& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return json(r.get_num().get_si());
  return json(rat_str(r));
}

GroupoidData groupoid_data_from_json(const json& j) {
  GroupoidData d;
  if (!j.contains("units") || !j["units"].is_array()) fail("groupoid needs a \"units\" array");
  for (const auto& u : j["units"]) d.units.push_back(u.get<std::string>());
  if (j.contains("arrows"))
    for (const auto& a : j["arrows"]) {
      Arrow ar;
      ar.id = a.at("id").get<std::string>();
      std::string s = a.at("src").get<std::string>(), t = a.at("tgt").get<std::string>();
      auto pos = [&](const std::string& n) {
        for (size_t i = 0; i < d.units.size(); ++i)
          if (d.units[i] == n) return (int)i;
        fail("arrow " + ar.id + ": unknown unit " + n);
      };
      ar.src = pos(s);
      ar.tgt = pos(t);
      d.arrows.push_back(std::move(ar));
    }
  if (j.contains("mul"))
    for (const auto& t : j["mul"]) {
      if (!t.is_array() || t.size() != 3) fail("mul entries must be [left,right,result] triples");
      d.mul.push_back({t[0].get<std::string>(), t[1].get<std::string>(), t[2].get<std::string>()});
    }
  if (j.contains("inv"))
    for (const auto& [k, v] : j["inv"].items()) d.inv[k] = v.get<std::string>();
  return d;
}

Groupoid groupoid_from_json(const json& j) { return Groupoid::validate(groupoid_data_from_json(j)); }

json groupoid_to_json(const Groupoid& g) {
  json out;
  out["units"] = json::array();
  for (int x = 0; x < g.num_units(); ++x) out["units"].push_back(g.unit_name(x));
  json arrows = json::array(), mul = json::array(), inv = json::object();
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (g.is_unit_arrow(a)) continue;  // implicit
    arrows.push_back({{"id", g.arrow(a).id},
                      {"src", g.unit_name(g.src(a))},
                      {"tgt", g.unit_name(g.tgt(a))}});
  }
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b)
      if (g.composable(a, b))
        mul.push_back({g.arrow(a).id, g.arrow(b).id, g.arrow(g.mul(a, b)).id});
  for (int a = 0; a < g.num_arrows(); ++a) inv[g.arrow(a).id] = g.arrow(g.inv(a)).id;
  out["arrows"] = std::move(arrows);
  out["mul"] = std::move(mul);
  out["inv"] = std::move(inv);
  return out;
}

GModule module_from_json(const Groupoid& g, const json& j) {
  GModule m;
  m.G = &g;
  m.fdim.assign(g.num_units(), 0);
  if (!j.contains("fibers")) fail("module needs \"fibers\"");
  std::vector<std::vector<std::string>> names(g.num_units());
  for (const auto& [uname, basis] : j["fibers"].items()) {
    int x = g.unit_index(uname);
    if (x < 0) fail("module fiber over unknown unit " + uname);
    for (const auto& n : basis) names[x].push_back(n.get<std::string>());
    m.fdim[x] = (int)names[x].size();
  }
  m.rebuild_offsets();
  for (int x = 0; x < g.num_units(); ++x)
    for (const auto& n : names[x]) m.names.push_back(n);
  m.rho.resize(g.num_arrows());
  const json& rho = j.contains("rho") ? j["rho"] : json::object();
  for (int a = 0; a < g.num_arrows(); ++a) {
    const std::string& id = g.arrow(a).id;
    if (rho.contains(id)) {
      m.rho[a] = qmat_from_json(rho[id], m.fdim[g.tgt(a)], m.fdim[g.src(a)], "rho[" + id + "]");
    } else if (g.is_unit_arrow(a)) {
      m.rho[a] = QMat::identity(m.fdim[g.src(a)]);
    } else {
      fail("module missing rho for arrow " + id);
    }
  }
  m.validate();
  return m;
}

json module_to_json(const GModule& m) {
  const Groupoid& g = *m.G;
  json out;
  json fibers = json::object();
  for (int x = 0; x < g.num_units(); ++x) {
    json basis = json::array();
    for (int i = 0; i < m.fdim[x]; ++i)
      basis.push_back((int)m.names.size() == m.dim() ? m.names[m.foff[x] + i]
                                                     : g.unit_name(x) + ":" + std::to_string(i));
    fibers[g.unit_name(x)] = std::move(basis);
  }
  out["fibers"] = std::move(fibers);
  json rho = json::object();
  for (int a = 0; a < g.num_arrows(); ++a)
    if (!g.is_unit_arrow(a)) rho[g.arrow(a).id] = qmat_to_json(m.rho[a]);
  out["rho"] = std::move(rho);
  return out;
}

GAlgebra algebra_from_json(const Groupoid& g, const json& j) {
  GAlgebra a;
  a.mod = module_from_json(g, j);
  if (!j.contains("mul")) fail("algebra needs \"mul\"");
  // mul[unit][i][j] = structure vector over the fiber basis.
  auto table = std::make_shared<std::vector<std::vector<std::vector<FibVec>>>>(g.num_units());
  for (int x = 0; x < g.num_units(); ++x) {
    int d = a.mod.fdim[x];
    (*table)[x].assign(d, std::vector<FibVec>(d));
    const std::string& uname = g.unit_name(x);
    if (d == 0) continue;
    if (!j["mul"].contains(uname)) fail("algebra mul missing unit " + uname);
    const json& t = j["mul"][uname];
    if ((int)t.size() != d) fail("algebra mul[" + uname + "] needs " + std::to_string(d) + " rows");
    for (int i = 0; i < d; ++i) {
      if ((int)t[i].size() != d) fail("algebra mul[" + uname + "] row " + std::to_string(i) + " malformed");
      for (int jj = 0; jj < d; ++jj) {
        if ((int)t[i][jj].size() != d)
          fail("algebra mul[" + uname + "][" + std::to_string(i) + "][" + std::to_string(jj) + "] malformed");
        for (int k = 0; k < d; ++k) {
          Rat c = rat_from_json(t[i][jj][k]);
          if (c != 0) (*table)[x][i][jj].push_back({k, c});
        }
      }
    }
  }
  a.mulfn = [table](int x, int i, int jj) { return (*table)[x][i][jj]; };
  if (j.contains("one")) {
    std::vector<FibVec> one(g.num_units());
    for (const auto& [uname, vec] : j["one"].items()) {
      int x = g.unit_index(uname);
      if (x < 0) fail("algebra one over unknown unit " + uname);
      for (int k = 0; k < (int)vec.size(); ++k) {
        Rat c = rat_from_json(vec[k]);
        if (c != 0) one[x].push_back({k, c});
      }
    }
    a.one = std::move(one);
  }
  if (j.contains("name")) a.name = j["name"].get<std::string>();
  a.validate();
  return a;
}

json algebra_to_json(const GAlgebra& a) {
  const Groupoid& g = *a.mod.G;
  json out = module_to_json(a.mod);
  json mul = json::object();
  for (int x = 0; x < g.num_units(); ++x) {
    int d = a.mod.fdim[x];
    if (d == 0) continue;
    json t = json::array();
    for (int i = 0; i < d; ++i) {
      json row = json::array();
      for (int jj = 0; jj < d; ++jj) {
        std::vector<Rat> dense(d, Rat(0));
        for (const auto& [k, c] : a.mul_basis(x, i, jj)) dense[k] += c;
        json vec = json::array();
        for (const Rat& c : dense) vec.push_back(rat_to_json(c));
        row.push_back(std::move(vec));
      }
      t.push_back(std::move(row));
    }
    mul[g.unit_name(x)] = std::move(t);
  }
  out["mul"] = std::move(mul);
  if (a.one) {
    json one = json::object();
    for (int x = 0; x < g.num_units(); ++x) {
      std::vector<Rat> dense(a.mod.fdim[x], Rat(0));
      for (const auto& [k, c] : (*a.one)[x]) dense[k] += c;
      json vec = json::array();
      for (const Rat& c : dense) vec.push_back(rat_to_json(c));
      one[g.unit_name(x)] = std::move(vec);
    }
    out["one"] = std::move(one);
  }
  if (!a.name.empty()) out["name"] = a.name;
  return out;
}

GSpace gspace_from_json(const Groupoid& g, const json& j) {
  GSpace s;
  if (!j.contains("points")) fail("gspace needs \"points\"");
  for (const auto& p : j["points"]) s.points.push_back(p.get<std::string>());
  auto point_index = [&](const std::string& n) {
    for (size_t i = 0; i < s.points.size(); ++i)
      if (s.points[i] == n) return (int)i;
    fail("gspace: unknown point " + n);
  };
  s.anchor.assign(s.points.size(), -1);
  for (const auto& [p, u] : j.at("anchor").items()) {
    int x = g.unit_index(u.get<std::string>());
    if (x < 0) fail("gspace anchor to unknown unit " + u.get<std::string>());
    s.anchor[point_index(p)] = x;
  }
  s.act.assign(g.num_arrows(), std::vector<int>((int)s.points.size(), -1));
  if (j.contains("action"))
    for (const auto& t : j["action"]) {
      int a = g.arrow_index(t[0].get<std::string>());
      if (a < 0) fail("gspace action via unknown arrow " + t[0].get<std::string>());
      s.act[a][point_index(t[1].get<std::string>())] = point_index(t[2].get<std::string>());
    }
  for (int x = 0; x < g.num_units(); ++x) {
    int ua = g.unit_arrow(x);
    for (size_t p = 0; p < s.points.size(); ++p)
      if (s.anchor[p] == x && s.act[ua][p] < 0) s.act[ua][p] = (int)p;
  }
  s.validate(g);
  return s;
}

json gspace_to_json(const Groupoid& g, const GSpace& s) {
  json out;
  out["points"] = s.points;
  json anchor = json::object();
  for (size_t p = 0; p < s.points.size(); ++p) anchor[s.points[p]] = g.unit_name(s.anchor[p]);
  out["anchor"] = std::move(anchor);
  json action = json::array();
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (g.is_unit_arrow(a)) continue;
    for (size_t p = 0; p < s.points.size(); ++p)
      if (s.act[a][p] >= 0) action.push_back({g.arrow(a).id, s.points[p], s.points[s.act[a][p]]});
  }
  out["action"] = std::move(action);
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(path + ": " + e.what());
  }
  return j;
}

Groupoid load_groupoid(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) return builtin_groupoid(ref.substr(8));
  return groupoid_from_json(load_json_file(ref));
}

GAlgebra load_algebra(const Groupoid& g, const std::string& ref) {
  for (const auto& n : builtin_algebra_names())
    if (ref == n) return algebra_by_name(g, ref);
  if (ref == "dual") return algebra_by_name(g, ref);
  return algebra_from_json(g, load_json_file(ref));
}

}  // namespace qcyc
