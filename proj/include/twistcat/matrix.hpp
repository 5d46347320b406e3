#pragma once

#include <map>
#include <optional>
#include <vector>

#include "twistcat/field.hpp"

namespace twistcat {

using SparseVec = std::vector<std::pair<int, Scalar>>;  // sorted by index, zero-free

struct Triplet {
  int row, col;
  Scalar value;
};

// Sparse matrix in canonical triplet form: entries sorted by (row, col),
// zero entries omitted.  Dense work happens inside the elimination kernels.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Triplet> entries;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c) {}

  void add(int r, int c, const Scalar& v);
  void canonicalize();
  bool is_canonical() const;
  static Matrix identity(int n, const FieldSpec& f);
};

// Echelon data from the elimination kernels.  `rref_rows` are the reduced
// rows (unit pivots, zeros above and below), `pivot_cols[i]` the pivot
// column of rref_rows[i].
struct EchelonForm {
  int rank = 0;
  std::vector<int> pivot_cols;
  std::vector<SparseVec> rref_rows;
};

// Exact rank via elimination with deterministic pivoting (smallest row
// index, columns scanned in order).  Throws FieldError if an entry does not
// lie in f.
long matrix_rank(const Matrix& m, const FieldSpec& f);
long matrix_rank_serial(const Matrix& m, const FieldSpec& f);

// Echelonized spanning set of ker(m); size == cols - rank.
std::vector<SparseVec> kernel_basis(const Matrix& m, const FieldSpec& f);
std::vector<SparseVec> kernel_basis_serial(const Matrix& m, const FieldSpec& f);

EchelonForm row_reduce(const Matrix& m, const FieldSpec& f, bool parallel = true);

// One solution x of m x = b, if any.
std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b, const FieldSpec& f);

// y = m x
SparseVec apply(const Matrix& m, const SparseVec& x, const FieldSpec& f);

// Accumulator helpers for sparse linear combinations.
inline void axpy_into(std::map<int, Scalar>& acc, const SparseVec& v, const Scalar& c) {
  if (c.is_zero()) return;
  for (auto& [i, w] : v) {
    Scalar t = c * w;
    auto [pos, fresh] = acc.try_emplace(i, t);
    if (!fresh) pos->second = pos->second + t;
  }
}

inline SparseVec collect(const std::map<int, Scalar>& acc) {
  SparseVec out;
  for (auto& [i, v] : acc)
    if (!v.is_zero()) out.push_back({i, v});
  return out;
}

// canonical form: sorted by index, duplicates merged, zeros dropped
inline SparseVec normalized(const SparseVec& v) {
  std::map<int, Scalar> acc;
  for (auto& [i, c] : v) {
    auto [pos, fresh] = acc.try_emplace(i, c);
    if (!fresh) pos->second = pos->second + c;
  }
  return collect(acc);
}

// Incremental echelon "span tracker": used to pick representatives
// completing a basis of a subspace, deterministically.
class SpanTracker {
 public:
  SpanTracker(int dim, const FieldSpec& f) : dim_(dim), field_(f) {}
  // Reduces v against the current span; if independent, absorbs it and
  // returns true.
  bool insert(const SparseVec& v);
  // Reduction of v modulo the current span (not absorbed).
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  int rank() const { return (int)rows_.size(); }

 private:
  int dim_;
  FieldSpec field_;
  std::vector<SparseVec> rows_;     // echelonized, unit leading entries
  std::vector<int> leads_;
};

}  // namespace twistcat
