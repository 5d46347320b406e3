#include "twistcat/graded.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twistcat {

int GradedSpace::add(const std::string& label, int degree) {
  if (index_.count(label))
    throw ComplexError("duplicate basis label: " + label);
  labels_.push_back(label);
  degrees_.push_back(degree);
  index_[label] = (int)labels_.size() - 1;
  return (int)labels_.size() - 1;
}

int GradedSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ComplexError("unknown basis label: " + label);
  return it->second;
}

bool GradedSpace::has_label(const std::string& label) const {
  return index_.count(label) > 0;
}

std::vector<int> GradedSpace::slice(int degree) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (degrees_[i] == degree) out.push_back(i);
  return out;
}

int GradedSpace::min_degree() const {
  int m = std::numeric_limits<int>::max();
  for (int d : degrees_) m = std::min(m, d);
  return dim() == 0 ? 0 : m;
}

int GradedSpace::max_degree() const {
  int m = std::numeric_limits<int>::min();
  for (int d : degrees_) m = std::max(m, d);
  return dim() == 0 ? 0 : m;
}

CochainComplex::CochainComplex(GradedSpace space, FieldSpec field,
                               std::vector<SparseVec> d, bool check)
    : space_(std::move(space)), field_(field), d_(std::move(d)) {
  if ((int)d_.size() != space_.dim())
    throw ComplexError("differential has wrong number of columns");
  for (auto& col : d_) col = normalized(col);
  if (!check) return;
  for (int i = 0; i < space_.dim(); ++i) {
    for (auto& [j, v] : d_[i]) {
      if (v.field() != field_)
        throw ComplexError("differential entry in wrong field at " + space_.label(i));
      if (space_.degree(j) != space_.degree(i) + 1)
        throw ComplexError("differential not of degree +1 at basis label " +
                           space_.label(i));
    }
    SparseVec dd = apply_d(d_[i]);
    if (!dd.empty())
      throw ComplexError("d^2 != 0 at basis label " + space_.label(i));
  }
}

SparseVec CochainComplex::apply_d(const SparseVec& v) const {
  std::map<int, Scalar> acc;
  for (auto& [i, c] : v) {
    for (auto& [j, w] : d_[i]) {
      Scalar t = c * w;
      auto [pos, fresh] = acc.try_emplace(j, t);
      if (!fresh) pos->second = pos->second + t;
    }
  }
  SparseVec out;
  for (auto& [j, w] : acc)
    if (!w.is_zero()) out.push_back({j, w});
  return out;
}

namespace {

Matrix degree_block(const CochainComplex& c, int k, const std::vector<int>& src_slice,
                    const std::vector<int>& dst_slice) {
  std::vector<int> pos(c.space().dim(), -1);
  for (size_t i = 0; i < dst_slice.size(); ++i) pos[dst_slice[i]] = (int)i;
  Matrix m((int)dst_slice.size(), (int)src_slice.size());
  for (size_t j = 0; j < src_slice.size(); ++j)
    for (auto& [i, v] : c.differential()[src_slice[j]])
      if (pos[i] >= 0) m.add(pos[i], (int)j, v);
  m.canonicalize();
  (void)k;
  return m;
}

}  // namespace

Cohomology cohomology(const CochainComplex& c) {
  Cohomology h;
  if (c.space().dim() == 0) return h;
  int lo = c.space().min_degree(), hi = c.space().max_degree();
  std::vector<int> degs;
  for (int k = lo; k <= hi; ++k) degs.push_back(k);

  std::vector<std::vector<int>> slices(degs.size() + 1);
  for (size_t i = 0; i < degs.size(); ++i) slices[i] = c.space().slice(degs[i]);
  std::vector<long> rank_d(degs.size(), 0);
  std::vector<std::vector<SparseVec>> kernels(degs.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (size_t i = 0; i < degs.size(); ++i) {
    std::vector<int> next = (i + 1 < degs.size()) ? slices[i + 1] : std::vector<int>{};
    Matrix dk = degree_block(c, degs[i], slices[i], next);
    kernels[i] = kernel_basis(dk, c.field());
    rank_d[i] = (long)slices[i].size() - (long)kernels[i].size();
  }

  for (size_t i = 0; i < degs.size(); ++i) {
    long rk_prev = i == 0 ? 0 : rank_d[i - 1];
    int hk = (int)((long)kernels[i].size() - rk_prev);
    if (hk <= 0) continue;
    h.ranks[degs[i]] = hk;
    // representatives: cocycles completing a basis of the image
    SpanTracker span((int)slices[i].size(), c.field());
    if (i > 0) {
      for (int j : slices[i - 1]) {
        SparseVec img;
        std::vector<int> pos(c.space().dim(), -1);
        for (size_t t = 0; t < slices[i].size(); ++t) pos[slices[i][t]] = (int)t;
        for (auto& [b, v] : c.differential()[j])
          if (pos[b] >= 0) img.push_back({pos[b], v});
        std::sort(img.begin(), img.end(), [](auto& a, auto& b2) { return a.first < b2.first; });
        span.insert(img);
      }
    }
    std::vector<SparseVec> reps;
    for (auto& kv : kernels[i]) {
      if (span.insert(kv)) {
        SparseVec global;
        for (auto& [t, v] : kv) global.push_back({slices[i][t], v});
        reps.push_back(std::move(global));
      }
    }
    h.representatives[degs[i]] = std::move(reps);
  }
  return h;
}

bool is_acyclic(const CochainComplex& c) { return cohomology(c).ranks.empty(); }

bool is_chain_map(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f) {
  if ((int)f.columns.size() != src.space().dim()) return false;
  for (int i = 0; i < src.space().dim(); ++i) {
    for (auto& [j, v] : f.columns[i])
      if (dst.space().degree(j) != src.space().degree(i)) return false;
    // f(d x) == d(f x)
    std::map<int, Scalar> acc;
    for (auto& [j, v] : src.differential()[i])
      for (auto& [k, w] : f.columns[j]) {
        Scalar t = v * w;
        auto [pos, fresh] = acc.try_emplace(k, t);
        if (!fresh) pos->second = pos->second + t;
      }
    for (auto& [k, w] : dst.apply_d(f.columns[i])) {
      auto [pos, fresh] = acc.try_emplace(k, -w);
      if (!fresh) pos->second = pos->second - w;
    }
    for (auto& [k, w] : acc)
      if (!w.is_zero()) return false;
  }
  return true;
}

CochainComplex mapping_cone(const CochainComplex& src, const CochainComplex& dst,
                            const ChainMap& f) {
  GradedSpace total;
  int ns = src.space().dim();
  for (int i = 0; i < ns; ++i)
    total.add("s:" + src.space().label(i), src.space().degree(i) - 1);
  for (int i = 0; i < dst.space().dim(); ++i)
    total.add("t:" + dst.space().label(i), dst.space().degree(i));
  std::vector<SparseVec> d(total.dim());
  for (int i = 0; i < ns; ++i) {
    SparseVec col;
    for (auto& [j, v] : src.differential()[i]) col.push_back({j, -v});
    for (auto& [j, v] : f.columns[i]) col.push_back({ns + j, v});
    std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
    d[i] = std::move(col);
  }
  for (int i = 0; i < dst.space().dim(); ++i) {
    SparseVec col;
    for (auto& [j, v] : dst.differential()[i]) col.push_back({ns + j, v});
    d[ns + i] = std::move(col);
  }
  return CochainComplex(std::move(total), src.field(), std::move(d));
}

bool is_quasi_iso(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f) {
  if (!is_chain_map(src, dst, f))
    throw ComplexError("is_quasi_iso: candidate is not a chain map");
  return is_acyclic(mapping_cone(src, dst, f));
}

std::string rank_table_str(const Cohomology& h) {
  if (h.ranks.empty()) return "0";
  std::string s = "{";
  bool first = true;
  for (auto& [d, r] : h.ranks) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(d) + ":" + std::to_string(r);
  }
  return s + "}";
}

}  // namespace twistcat
