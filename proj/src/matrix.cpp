#include "twistcat/matrix.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twistcat {

void Matrix::add(int r, int c, const Scalar& v) {
  if (r < 0 || r >= rows || c < 0 || c >= cols)
    throw FieldError("matrix index out of range");
  if (!v.is_zero()) entries.push_back({r, c, v});
}

void Matrix::canonicalize() {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    if (!out.empty() && out.back().row == e.row && out.back().col == e.col)
      out.back().value = out.back().value + e.value;
    else
      out.push_back(e);
  }
  entries.clear();
  for (auto& e : out)
    if (!e.value.is_zero()) entries.push_back(e);
}

bool Matrix::is_canonical() const {
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].value.is_zero()) return false;
    if (i > 0) {
      auto& a = entries[i - 1];
      auto& b = entries[i];
      if (a.row > b.row || (a.row == b.row && a.col >= b.col)) return false;
    }
  }
  return true;
}

Matrix Matrix::identity(int n, const FieldSpec& f) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.add(i, i, Scalar::one(f));
  return m;
}

namespace {

struct FpOps {
  long p;
  using T = long;
  T zero() const { return 0; }
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const { return (a + b) % p; }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T mul(T a, T b) const { return static_cast<long>((__int128)a * b % p); }
  T inv(T a) const { return mod_inverse(a, p); }
  T from_scalar(const Scalar& s) const {
    if (s.characteristic() != p)
      throw FieldError("matrix entry not reducible into F_" + std::to_string(p));
    return s.res();
  }
  Scalar to_scalar(T a) const { return Scalar::residue(a, p); }
};

struct QOps {
  using T = mpq_class;
  T zero() const { return mpq_class(0); }
  bool is_zero(const T& a) const { return a == 0; }
  T add(const T& a, const T& b) const { T r = a + b; r.canonicalize(); return r; }
  T neg(const T& a) const { return -a; }
  T mul(const T& a, const T& b) const { T r = a * b; r.canonicalize(); return r; }
  T inv(const T& a) const {
    if (a == 0) throw FieldError("division by zero in Q");
    return 1 / a;
  }
  T from_scalar(const Scalar& s) const {
    if (s.characteristic() != 0)
      throw FieldError("matrix entry not reducible into Q");
    return s.rat();
  }
  Scalar to_scalar(const T& a) const { return Scalar::rational(a); }
};

// Sparse row echelon engine.  Rows kept as sorted (col, value) vectors.
// Deterministic: columns scanned left to right, pivot is the smallest-index
// row whose current leading column equals the scanned column.  The row
// updates within one column are independent and run in parallel in the
// OpenMP path; the serial path is the reference used by tests.
template <class Ops>
class Elim {
 public:
  using T = typename Ops::T;
  using Row = std::vector<std::pair<int, T>>;

  Elim(const Matrix& m, const Ops& ops, bool parallel)
      : ops_(ops), ncols_(m.cols), parallel_(parallel) {
    rows_.resize(m.rows);
    for (auto& e : m.entries) rows_[e.row].push_back({e.col, ops_.from_scalar(e.value)});
    for (auto& r : rows_)
      std::sort(r.begin(), r.end(),
                [](auto& a, auto& b) { return a.first < b.first; });
  }

  // returns (pivot rows in pivot order, pivot cols); rows are fully reduced
  void run() {
    std::vector<std::vector<int>> lead(ncols_);
    for (int r = 0; r < (int)rows_.size(); ++r)
      if (!rows_[r].empty()) lead[rows_[r].front().first].push_back(r);

    for (int c = 0; c < ncols_; ++c) {
      auto& bucket = lead[c];
      if (bucket.empty()) continue;
      std::sort(bucket.begin(), bucket.end());
      int piv = bucket.front();
      T piv_inv = ops_.inv(rows_[piv].front().second);
      scale_row(rows_[piv], piv_inv);
      std::vector<int> victims(bucket.begin() + 1, bucket.end());
      bucket.clear();
      eliminate(victims, piv, c);
      for (int r : victims)
        if (!rows_[r].empty()) lead[rows_[r].front().first].push_back(r);
      pivot_rows_.push_back(piv);
      pivot_cols_.push_back(c);
    }
    back_substitute();
  }

  EchelonForm to_form(int full_rank_only) {
    EchelonForm f;
    f.rank = (int)pivot_rows_.size();
    f.pivot_cols = pivot_cols_;
    if (!full_rank_only) {
      f.rref_rows.reserve(pivot_rows_.size());
      for (int r : pivot_rows_) {
        SparseVec v;
        for (auto& [c, val] : rows_[r]) v.push_back({c, ops_.to_scalar(val)});
        f.rref_rows.push_back(std::move(v));
      }
    }
    return f;
  }

 private:
  void scale_row(Row& row, const T& s) {
    for (auto& [c, v] : row) v = ops_.mul(v, s);
  }

  // row -= coeff * pivot_row, sparse merge; pivot entry cancels exactly
  Row axpy(const Row& row, const T& coeff, const Row& pivot_row) {
    Row out;
    out.reserve(row.size() + pivot_row.size());
    size_t i = 0, j = 0;
    while (i < row.size() || j < pivot_row.size()) {
      if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || pivot_row[j].first < row[i].first) {
        out.push_back({pivot_row[j].first, ops_.mul(ops_.neg(coeff), pivot_row[j].second)});
        ++j;
      } else {
        T v = ops_.add(row[i].second, ops_.mul(ops_.neg(coeff), pivot_row[j].second));
        if (!ops_.is_zero(v)) out.push_back({row[i].first, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void eliminate(const std::vector<int>& victims, int piv, int c) {
    const Row& prow = rows_[piv];
#ifdef _OPENMP
    if (parallel_ && victims.size() >= 8) {
#pragma omp parallel for schedule(dynamic)
      for (size_t k = 0; k < victims.size(); ++k) {
        int r = victims[k];
        rows_[r] = axpy(rows_[r], rows_[r].front().second, prow);
      }
      return;
    }
#endif
    for (int r : victims) rows_[r] = axpy(rows_[r], rows_[r].front().second, prow);
    (void)c;
  }

  void back_substitute() {
    // pivots have unit leading entries; clear entries above, last pivot
    // first.  Rows being axpy'd in are already fully reduced, so one pass
    // over the collected pivot-column entries suffices.
    std::vector<int> row_of_col(ncols_, -1);
    for (size_t i = 0; i < pivot_rows_.size(); ++i) row_of_col[pivot_cols_[i]] = pivot_rows_[i];
    for (int i = (int)pivot_rows_.size() - 1; i >= 0; --i) {
      int r = pivot_rows_[i];
      std::vector<std::pair<int, T>> todo;
      for (auto& [c, v] : rows_[r])
        if (c != pivot_cols_[i] && row_of_col[c] >= 0) todo.push_back({c, v});
      for (auto& [c, v] : todo) rows_[r] = axpy(rows_[r], v, rows_[row_of_col[c]]);
    }
  }

  Ops ops_;
  int ncols_;
  bool parallel_;
  std::vector<Row> rows_;
  std::vector<int> pivot_rows_;
  std::vector<int> pivot_cols_;
};

template <class Ops>
EchelonForm reduce_with(const Matrix& m, const Ops& ops, bool parallel, bool rank_only) {
  Elim<Ops> e(m, ops, parallel);
  e.run();
  return e.to_form(rank_only);
}

EchelonForm reduce_dispatch(const Matrix& m, const FieldSpec& f, bool parallel, bool rank_only) {
  if (f.is_rational()) return reduce_with(m, QOps{}, parallel, rank_only);
  return reduce_with(m, FpOps{f.characteristic}, parallel, rank_only);
}

std::vector<SparseVec> kernel_from_rref(const EchelonForm& e, int cols, const FieldSpec& f) {
  std::vector<bool> is_pivot(cols, false);
  std::vector<int> pivot_index(cols, -1);
  for (size_t i = 0; i < e.pivot_cols.size(); ++i) {
    is_pivot[e.pivot_cols[i]] = true;
    pivot_index[e.pivot_cols[i]] = (int)i;
  }
  std::vector<SparseVec> ker;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    SparseVec v;
    for (size_t i = 0; i < e.rref_rows.size(); ++i) {
      for (auto& [cc, val] : e.rref_rows[i]) {
        if (cc == c) {
          v.push_back({e.pivot_cols[i], -val});
          break;
        }
        if (cc > c) break;
      }
    }
    v.push_back({c, Scalar::one(f)});
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    ker.push_back(std::move(v));
  }
  return ker;
}

}  // namespace

EchelonForm row_reduce(const Matrix& m, const FieldSpec& f, bool parallel) {
  return reduce_dispatch(m, f, parallel, false);
}

long matrix_rank(const Matrix& m, const FieldSpec& f) {
  return reduce_dispatch(m, f, true, true).rank;
}

long matrix_rank_serial(const Matrix& m, const FieldSpec& f) {
  return reduce_dispatch(m, f, false, true).rank;
}

std::vector<SparseVec> kernel_basis(const Matrix& m, const FieldSpec& f) {
  return kernel_from_rref(reduce_dispatch(m, f, true, false), m.cols, f);
}

std::vector<SparseVec> kernel_basis_serial(const Matrix& m, const FieldSpec& f) {
  return kernel_from_rref(reduce_dispatch(m, f, false, false), m.cols, f);
}

std::optional<SparseVec> solve(const Matrix& m, const SparseVec& b, const FieldSpec& f) {
  Matrix aug(m.rows, m.cols + 1);
  aug.entries = m.entries;
  for (auto& [i, v] : b) aug.add(i, m.cols, v);
  aug.canonicalize();
  auto e = row_reduce(aug, f);
  SparseVec x;
  for (size_t i = 0; i < e.rref_rows.size(); ++i) {
    if (e.pivot_cols[i] == m.cols) return std::nullopt;  // inconsistent
    auto& row = e.rref_rows[i];
    if (!row.empty() && row.back().first == m.cols)
      x.push_back({e.pivot_cols[i], row.back().second});
  }
  std::sort(x.begin(), x.end(), [](auto& a, auto& b2) { return a.first < b2.first; });
  return x;
}

SparseVec apply(const Matrix& m, const SparseVec& x, const FieldSpec& f) {
  std::map<int, Scalar> acc;
  // column lookup over triplets; fine for the sizes the callers use
  std::map<int, Scalar> xv(x.begin(), x.end());
  for (auto& e : m.entries) {
    auto it = xv.find(e.col);
    if (it == xv.end()) continue;
    Scalar t = e.value * it->second;
    auto [pos, fresh] = acc.try_emplace(e.row, t);
    if (!fresh) pos->second = pos->second + t;
  }
  SparseVec out;
  for (auto& [i, v] : acc)
    if (!v.is_zero()) out.push_back({i, v});
  (void)f;
  return out;
}

bool SpanTracker::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Scalar lead_inv = r.front().second.inverse();
  for (auto& [i, val] : r) val = val * lead_inv;
  leads_.push_back(r.front().first);
  rows_.push_back(std::move(r));
  return true;
}

SparseVec SpanTracker::reduce(const SparseVec& v) const {
  std::vector<int> row_of_lead(dim_, -1);
  for (size_t i = 0; i < leads_.size(); ++i) row_of_lead[leads_[i]] = (int)i;
  SparseVec cur = v;
  while (!cur.empty() && row_of_lead[cur.front().first] >= 0) {
    const SparseVec& row = rows_[row_of_lead[cur.front().first]];
    Scalar c = cur.front().second;
    SparseVec out;
    size_t a = 0, b = 0;
    while (a < cur.size() || b < row.size()) {
      if (b == row.size() || (a < cur.size() && cur[a].first < row[b].first)) {
        out.push_back(cur[a++]);
      } else if (a == cur.size() || row[b].first < cur[a].first) {
        out.push_back({row[b].first, -(c * row[b].second)});
        ++b;
      } else {
        Scalar val = cur[a].second - c * row[b].second;
        if (!val.is_zero()) out.push_back({cur[a].first, val});
        ++a;
        ++b;
      }
    }
    cur = std::move(out);
  }
  return cur;
}

}  // namespace twistcat
