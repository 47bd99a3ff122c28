#pragma once
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qcyc/rational.hpp"

namespace qcyc {

// Sparse vector over an int-indexed basis.
using SpVec = std::map<int, Rat>;

void sp_axpy(SpVec& dst, const Rat& c, const SpVec& src);  // dst += c*src
SpVec sp_scale(const SpVec& v, const Rat& c);
bool sp_is_zero(const SpVec& v);

// Sparse matrix stored by columns.
struct SpMat {
  int rows = 0, cols = 0;
  std::vector<SpVec> col;

  explicit SpMat(int r = 0, int c = 0) : rows(r), cols(c), col(c) {}
  SpVec apply(const SpVec& v) const;  // matrix * vector
  static SpMat identity(int n);
  static SpMat mul(const SpMat& a, const SpMat& b);
  static SpMat add(const SpMat& a, const Rat& c, const SpMat& b);  // a + c*b
  bool equals(const SpMat& o) const;
  bool is_zero() const;
};

// Incremental exact row echelon (pivot column -> row scaled to pivot 1).
class Echelon {
 public:
  // Reduce v against the current rows; returns the residual.
  SpVec reduce(SpVec v) const;
  // Reduce and, if a nonzero residual remains, insert it. True if inserted.
  bool add(SpVec v);
  int rank() const { return (int)rows_.size(); }
  const std::map<int, SpVec>& rows() const { return rows_; }
  bool contains(const SpVec& v) const { return sp_is_zero(reduce(v)); }

 private:
  std::map<int, SpVec> rows_;
};

// Rank / kernel of a column-generated subspace. Columns are pulled lazily so
// big images never need to be materialized at once.
struct KernelResult {
  int rank = 0;
  std::vector<SpVec> kernel;  // coordinates in the column index space
};
KernelResult kernel_of_columns(int ncols, const std::function<SpVec(int)>& column);
int rank_of_columns(int ncols, const std::function<SpVec(int)>& column);

// Span with coordinate tracking: express vectors as combinations of the
// generators handed to add().
class SpanSolver {
 public:
  // Returns true if v enlarged the span. Generator keeps index `tag`.
  bool add(const SpVec& v, int tag);
  // Coordinates over generator tags, or nullopt if v is outside the span.
  std::optional<SpVec> express(const SpVec& v) const;
  int rank() const { return (int)rows_.size(); }

 private:
  struct Row {
    SpVec v;     // reduced generator
    SpVec comb;  // expression of v over generator tags
  };
  std::map<int, Row> rows_;
};

// One solution of a sparse affine system (rows hold the unknown coefficients,
// rhs[i] the right-hand side). Returns nullopt when inconsistent.
std::optional<std::vector<Rat>> linear_solve(int nunknowns,
                                             const std::vector<SpVec>& rows,
                                             const std::vector<Rat>& rhs);

// Dense exact matrix (small fibers: transports, structure data, Gram matrices).
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  Rat& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Rat& at(int i, int j) const { return a[(size_t)i * cols + j]; }
  static QMat identity(int n);
  static QMat mul(const QMat& x, const QMat& y);
  bool equals(const QMat& o) const;
  bool is_identity() const;
  std::optional<QMat> inverse() const;
  std::vector<Rat> apply(const std::vector<Rat>& v) const;
};

}  // namespace qcyc
