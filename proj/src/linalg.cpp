#include "qcyc/linalg.hpp"

#include <cassert>

namespace qcyc {

void sp_axpy(SpVec& dst, const Rat& c, const SpVec& src) {
  if (c == 0) return;
  for (const auto& [i, x] : src) {
    auto it = dst.find(i);
    if (it == dst.end()) {
      Rat v = c * x;
      if (v != 0) dst.emplace(i, std::move(v));
    } else {
      it->second += c * x;
      if (it->second == 0) dst.erase(it);
    }
  }
}

SpVec sp_scale(const SpVec& v, const Rat& c) {
  SpVec r;
  if (c == 0) return r;
  for (const auto& [i, x] : v) r.emplace_hint(r.end(), i, c * x);
  return r;
}

bool sp_is_zero(const SpVec& v) { return v.empty(); }

SpVec SpMat::apply(const SpVec& v) const {
  SpVec r;
  for (const auto& [j, c] : v) sp_axpy(r, c, col[j]);
  return r;
}

SpMat SpMat::identity(int n) {
  SpMat m(n, n);
  for (int i = 0; i < n; ++i) m.col[i][i] = 1;
  return m;
}

SpMat SpMat::mul(const SpMat& a, const SpMat& b) {
  assert(a.cols == b.rows);
  SpMat r(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) r.col[j] = a.apply(b.col[j]);
  return r;
}

SpMat SpMat::add(const SpMat& a, const Rat& c, const SpMat& b) {
  assert(a.rows == b.rows && a.cols == b.cols);
  SpMat r = a;
  for (int j = 0; j < b.cols; ++j) sp_axpy(r.col[j], c, b.col[j]);
  return r;
}

bool SpMat::equals(const SpMat& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (int j = 0; j < cols; ++j)
    if (col[j] != o.col[j]) return false;
  return true;
}

bool SpMat::is_zero() const {
  for (const auto& c : col)
    if (!c.empty()) return false;
  return true;
}

// Forward sweep: every stored row has its leading (smallest) index at the
// pivot, so cancelling at a pivot only introduces indices beyond it and a
// single left-to-right pass fully reduces v.
SpVec Echelon::reduce(SpVec v) const {
  for (auto it = v.begin(); it != v.end();)
    it = (it->second == 0) ? v.erase(it) : std::next(it);
  auto it = v.begin();
  while (it != v.end()) {
    auto r = rows_.find(it->first);
    if (r == rows_.end()) {
      ++it;
      continue;
    }
    int piv = it->first;
    Rat c = -it->second;
    sp_axpy(v, c, r->second);
    it = v.upper_bound(piv);
  }
  return v;
}

bool Echelon::add(SpVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Rat inv = 1 / v.begin()->second;
  int piv = v.begin()->first;
  if (inv != 1) v = sp_scale(v, inv);
  rows_.emplace(piv, std::move(v));
  return true;
}

KernelResult kernel_of_columns(int ncols, const std::function<SpVec(int)>& column) {
  KernelResult res;
  std::map<int, std::pair<SpVec, SpVec>> rows;  // pivot -> (value, combination)
  for (int j = 0; j < ncols; ++j) {
    SpVec v = column(j);
    for (auto it = v.begin(); it != v.end();)
      it = (it->second == 0) ? v.erase(it) : std::next(it);
    SpVec comb;
    comb[j] = 1;
    auto it = v.begin();
    while (it != v.end()) {
      auto r = rows.find(it->first);
      if (r == rows.end()) {
        ++it;
        continue;
      }
      int piv = it->first;
      Rat c = -it->second;
      sp_axpy(v, c, r->second.first);
      sp_axpy(comb, c, r->second.second);
      it = v.upper_bound(piv);
    }
    if (v.empty()) {
      res.kernel.push_back(std::move(comb));
    } else {
      Rat inv = 1 / v.begin()->second;
      int piv = v.begin()->first;
      if (inv != 1) {
        comb = sp_scale(comb, inv);
        v = sp_scale(v, inv);
      }
      rows.emplace(piv, std::make_pair(std::move(v), std::move(comb)));
      ++res.rank;
    }
  }
  return res;
}

int rank_of_columns(int ncols, const std::function<SpVec(int)>& column) {
  Echelon ech;
  int r = 0;
  for (int j = 0; j < ncols; ++j)
    if (ech.add(column(j))) ++r;
  return r;
}

bool SpanSolver::add(const SpVec& v, int tag) {
  SpVec w = v, comb;
  comb[tag] = 1;
  auto it = w.begin();
  while (it != w.end()) {
    auto r = rows_.find(it->first);
    if (r == rows_.end()) {
      ++it;
      continue;
    }
    int piv = it->first;
    Rat c = -it->second;
    sp_axpy(w, c, r->second.v);
    sp_axpy(comb, c, r->second.comb);
    it = w.upper_bound(piv);
  }
  if (w.empty()) return false;
  Rat inv = 1 / w.begin()->second;
  int piv = w.begin()->first;
  rows_.emplace(piv, Row{sp_scale(w, inv), sp_scale(comb, inv)});
  return true;
}

std::optional<SpVec> SpanSolver::express(const SpVec& v) const {
  SpVec w = v, comb;
  auto it = w.begin();
  while (it != w.end()) {
    auto r = rows_.find(it->first);
    if (r == rows_.end()) return std::nullopt;  // leading term not in span
    int piv = it->first;
    Rat c = it->second;  // w -= c*row.v, comb += c*row.comb
    sp_axpy(w, -c, r->second.v);
    sp_axpy(comb, c, r->second.comb);
    it = w.upper_bound(piv);
  }
  return comb;
}

std::optional<std::vector<Rat>> linear_solve(int nunknowns,
                                             const std::vector<SpVec>& rows,
                                             const std::vector<Rat>& rhs) {
  // Echelon over [A | b], rhs carried at index nunknowns (largest, so it can
  // never become a pivot unless a row reduces to 0 = nonzero).
  Echelon ech;
  for (size_t i = 0; i < rows.size(); ++i) {
    SpVec r = rows[i];
    if (rhs[i] != 0) r[nunknowns] = rhs[i];
    if (!ech.add(std::move(r))) continue;
    if (ech.rows().count(nunknowns)) return std::nullopt;  // inconsistent
  }
  // Back-substitution with free unknowns at zero (rows are echelon by pivot).
  std::vector<Rat> x(nunknowns, Rat(0));
  for (auto it = ech.rows().rbegin(); it != ech.rows().rend(); ++it) {
    const auto& [piv, row] = *it;
    Rat val(0);
    for (const auto& [j, c] : row) {
      if (j == piv) continue;
      if (j == nunknowns)
        val += c;
      else if (x[j] != 0)
        val -= c * x[j];
    }
    x[piv] = val;
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    Rat acc(0);
    for (const auto& [j, c] : rows[i]) acc += c * x[j];
    if (acc != rhs[i]) return std::nullopt;
  }
  return x;
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::mul(const QMat& x, const QMat& y) {
  assert(x.cols == y.rows);
  QMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

bool QMat::equals(const QMat& o) const {
  return rows == o.rows && cols == o.cols && a == o.a;
}

bool QMat::is_identity() const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != ((i == j) ? 1 : 0)) return false;
  return true;
}

std::optional<QMat> QMat::inverse() const {
  if (rows != cols) return std::nullopt;
  int n = rows;
  QMat m = *this, inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m.at(r, c) != 0) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    Rat d = 1 / m.at(c, c);
    for (int j = 0; j < n; ++j) {
      m.at(c, j) *= d;
      inv.at(c, j) *= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.at(r, c) == 0) continue;
      Rat f = m.at(r, c);
      for (int j = 0; j < n; ++j) {
        m.at(r, j) -= f * m.at(c, j);
        inv.at(r, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

std::vector<Rat> QMat::apply(const std::vector<Rat>& v) const {
  assert((int)v.size() == cols);
  std::vector<Rat> r(rows, Rat(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

}  // namespace qcyc
