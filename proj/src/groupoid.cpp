#include "qcyc/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qcyc {

namespace {
[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("groupoid: " + msg);
}
}  // namespace

Groupoid Groupoid::validate(const GroupoidData& d) {
  Groupoid g;
  g.units_ = d.units;
  if (g.units_.empty()) fail("no units");
  for (int x = 0; x < (int)g.units_.size(); ++x) {
    if (!g.unit_by_name_.emplace(g.units_[x], x).second)
      fail("duplicate unit token " + g.units_[x]);
  }

  // Arrows in id-token order; synthesize missing identity arrows (id = unit token).
  std::vector<Arrow> arrows = d.arrows;
  std::set<std::string> have;
  for (const auto& a : arrows) have.insert(a.id);
  for (int x = 0; x < (int)g.units_.size(); ++x)
    if (!have.count(g.units_[x])) arrows.push_back({g.units_[x], x, x});
  std::sort(arrows.begin(), arrows.end(),
            [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
  g.arrows_ = arrows;
  int n = (int)arrows.size();
  for (int a = 0; a < n; ++a) {
    const Arrow& ar = g.arrows_[a];
    if (ar.src < 0 || ar.src >= (int)g.units_.size() || ar.tgt < 0 ||
        ar.tgt >= (int)g.units_.size())
      fail("arrow " + ar.id + " has bad endpoints");
    if (!g.arrow_by_id_.emplace(ar.id, a).second) fail("duplicate arrow id " + ar.id);
  }

  // Identity arrows: the arrow whose id equals the unit token.
  g.unit_arrow_.assign(g.units_.size(), -1);
  for (int x = 0; x < (int)g.units_.size(); ++x) {
    auto it = g.arrow_by_id_.find(g.units_[x]);
    if (it == g.arrow_by_id_.end()) fail("missing identity arrow for " + g.units_[x]);
    int a = it->second;
    if (g.arrows_[a].src != x || g.arrows_[a].tgt != x)
      fail("identity arrow of " + g.units_[x] + " is not a loop at it");
    g.unit_arrow_[x] = a;
  }

  // Multiplication table: given triples plus unit laws; check totality on
  // composable pairs and all axioms.
  g.mul_.assign(n, std::vector<int>(n, -1));
  auto setmul = [&](int a, int b, int c) {
    if (g.arrows_[a].src != g.arrows_[b].tgt)
      fail("product " + g.arrows_[a].id + "*" + g.arrows_[b].id + " not composable");
    if (g.arrows_[c].tgt != g.arrows_[a].tgt || g.arrows_[c].src != g.arrows_[b].src)
      fail("product " + g.arrows_[a].id + "*" + g.arrows_[b].id + " has wrong endpoints");
    if (g.mul_[a][b] != -1 && g.mul_[a][b] != c)
      fail("conflicting products for " + g.arrows_[a].id + "*" + g.arrows_[b].id);
    g.mul_[a][b] = c;
  };
  for (const auto& t : d.mul) {
    auto look = [&](const std::string& id) {
      auto it = g.arrow_by_id_.find(id);
      if (it == g.arrow_by_id_.end()) fail("mul refers to unknown arrow " + id);
      return it->second;
    };
    setmul(look(t[0]), look(t[1]), look(t[2]));
  }
  for (int a = 0; a < n; ++a) {
    setmul(g.unit_arrow_[g.arrows_[a].tgt], a, a);
    setmul(a, g.unit_arrow_[g.arrows_[a].src], a);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.arrows_[a].src == g.arrows_[b].tgt && g.mul_[a][b] < 0)
        fail("missing product " + g.arrows_[a].id + "*" + g.arrows_[b].id);

  // Inverses: declared or derived.
  g.inv_.assign(n, -1);
  for (const auto& [k, v] : d.inv) {
    auto ik = g.arrow_by_id_.find(k), iv = g.arrow_by_id_.find(v);
    if (ik == g.arrow_by_id_.end() || iv == g.arrow_by_id_.end())
      fail("inv refers to unknown arrow");
    g.inv_[ik->second] = iv->second;
  }
  for (int a = 0; a < n; ++a) {
    if (g.inv_[a] < 0) {
      for (int b = 0; b < n; ++b)
        if (g.arrows_[b].src == g.arrows_[a].tgt && g.arrows_[b].tgt == g.arrows_[a].src &&
            g.mul_[a][b] == g.unit_arrow_[g.arrows_[a].tgt] &&
            g.mul_[b][a] == g.unit_arrow_[g.arrows_[a].src]) {
          g.inv_[a] = b;
          break;
        }
      if (g.inv_[a] < 0) fail("arrow " + g.arrows_[a].id + " has no inverse");
    } else {
      int b = g.inv_[a];
      if (g.mul_[a][b] != g.unit_arrow_[g.arrows_[a].tgt] ||
          g.mul_[b][a] != g.unit_arrow_[g.arrows_[a].src])
        fail("declared inverse of " + g.arrows_[a].id + " fails the inverse law");
    }
  }

  // Associativity on all composable triples.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (g.arrows_[a].src != g.arrows_[b].tgt) continue;
      for (int c = 0; c < n; ++c) {
        if (g.arrows_[b].src != g.arrows_[c].tgt) continue;
        if (g.mul_[g.mul_[a][b]][c] != g.mul_[a][g.mul_[b][c]])
          fail("associativity fails at " + g.arrows_[a].id + "," + g.arrows_[b].id + "," +
               g.arrows_[c].id);
      }
    }

  g.into_.assign(g.units_.size(), {});
  for (int a = 0; a < n; ++a) g.into_[g.arrows_[a].tgt].push_back(a);
  for (int a = 0; a < n; ++a)
    if (g.arrows_[a].src == g.arrows_[a].tgt) {
      g.loop_pos_[a] = (int)g.loops_.size();
      g.loops_.push_back(a);
    }

  // Unit-space orbits (connected components under arrows).
  int nu = (int)g.units_.size();
  std::vector<int> parent(nu);
  for (int i = 0; i < nu; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < n; ++a) parent[find(g.arrows_[a].src)] = find(g.arrows_[a].tgt);
  std::map<int, std::vector<int>> comp;
  for (int x = 0; x < nu; ++x) comp[find(x)].push_back(x);
  g.orbit_of_.assign(nu, -1);
  for (auto& [root, mem] : comp) {
    std::sort(mem.begin(), mem.end());
    for (int x : mem) g.orbit_of_[x] = (int)g.orbits_.size();
    g.orbits_.push_back(mem);
  }
  return g;
}

int Groupoid::unit_index(const std::string& name) const {
  auto it = unit_by_name_.find(name);
  if (it == unit_by_name_.end()) fail("unknown unit " + name);
  return it->second;
}

int Groupoid::arrow_index(const std::string& id) const {
  auto it = arrow_by_id_.find(id);
  if (it == arrow_by_id_.end()) fail("unknown arrow " + id);
  return it->second;
}

int Groupoid::loop_pos(int arrow) const {
  auto it = loop_pos_.find(arrow);
  return it == loop_pos_.end() ? -1 : it->second;
}

int Groupoid::conj(int a, int l) const {
  if (arrows_[a].src != arrows_[l].tgt) fail("conj: arrow not anchored at loop base");
  return mul_[mul_[a][l]][inv_[a]];
}

std::vector<int> Groupoid::isotropy(int x) const {
  std::vector<int> r;
  for (int a : into_[x])
    if (arrows_[a].src == x) r.push_back(a);
  return r;
}

std::vector<std::vector<int>> Groupoid::loop_orbits() const {
  std::vector<std::vector<int>> res;
  std::set<int> seen;
  for (int l : loops_) {
    if (seen.count(l)) continue;
    std::set<int> orb;
    orb.insert(l);
    for (int a = 0; a < (int)arrows_.size(); ++a)
      if (arrows_[a].src == arrows_[l].tgt) orb.insert(conj(a, l));
    // saturate (conjugation by all arrows out of any member's base)
    bool grew = true;
    while (grew) {
      grew = false;
      for (int m : std::vector<int>(orb.begin(), orb.end()))
        for (int a = 0; a < (int)arrows_.size(); ++a)
          if (arrows_[a].src == arrows_[m].tgt && orb.insert(conj(a, m)).second) grew = true;
    }
    for (int m : orb) seen.insert(m);
    res.emplace_back(orb.begin(), orb.end());
  }
  return res;
}

std::vector<Rat> Groupoid::cutoff() const {
  // d = indicator of orbit representatives (least unit of each orbit);
  // c(x) = d(x) / #G^x restricted appropriately: lambda(d o s)(y) counts
  // arrows alpha in G^y with s(alpha) a representative.
  int nu = (int)units_.size();
  std::vector<int> rep(nu, 0);
  for (const auto& orb : orbits_) rep[orb[0]] = 1;
  std::vector<Rat> c(nu, Rat(0));
  for (int x = 0; x < nu; ++x) {
    if (!rep[x]) continue;
    // lambda(d o s)(x) = #{alpha in G^x : s(alpha) is a representative}
    int cnt = 0;
    for (int a : into_[x])
      if (rep[arrows_[a].src]) ++cnt;
    c[x] = Rat(1, cnt);
  }
  return c;
}

bool Groupoid::is_bisection(const std::vector<int>& arrows) const {
  std::set<int> s, t;
  for (int a : arrows) {
    if (!s.insert(arrows_[a].src).second) return false;
    if (!t.insert(arrows_[a].tgt).second) return false;
  }
  return true;
}

Bisection Groupoid::bisection_product(const Bisection& u, const Bisection& v) const {
  std::vector<int> prod;
  for (int a : u.arrows)
    for (int b : v.arrows)
      if (arrows_[a].src == arrows_[b].tgt) prod.push_back(mul_[a][b]);
  std::sort(prod.begin(), prod.end());
  prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
  if (!is_bisection(prod)) fail("product of bisections is not a bisection");
  return {prod};
}

Bisection Groupoid::bisection_inverse(const Bisection& u) const {
  std::vector<int> r;
  for (int a : u.arrows) r.push_back(inv_[a]);
  std::sort(r.begin(), r.end());
  return {r};
}

}  // namespace qcyc
