#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistcat/matrix.hpp"

namespace twistcat {

struct ComplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite labeled graded basis with integer degrees.
class GradedSpace {
 public:
  int add(const std::string& label, int degree);
  int dim() const { return (int)labels_.size(); }
  const std::string& label(int i) const { return labels_[i]; }
  int degree(int i) const { return degrees_[i]; }
  int index_of(const std::string& label) const;
  bool has_label(const std::string& label) const;
  std::vector<int> slice(int degree) const;
  int min_degree() const;
  int max_degree() const;
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::unordered_map<std::string, int> index_;
};

// Complex with degree +1 differential; d^2 = 0 is checked at construction.
class CochainComplex {
 public:
  CochainComplex(GradedSpace space, FieldSpec field, std::vector<SparseVec> d,
                 bool check = true);

  const GradedSpace& space() const { return space_; }
  const FieldSpec& field() const { return field_; }
  const std::vector<SparseVec>& differential() const { return d_; }
  SparseVec apply_d(const SparseVec& v) const;

 private:
  GradedSpace space_;
  FieldSpec field_;
  std::vector<SparseVec> d_;  // column k -> d(e_k)
};

struct Cohomology {
  std::map<int, int> ranks;  // degree -> rank, zero ranks omitted
  std::map<int, std::vector<SparseVec>> representatives;
  int rank_at(int degree) const {
    auto it = ranks.find(degree);
    return it == ranks.end() ? 0 : it->second;
  }
  int total() const {
    int t = 0;
    for (auto& [d, r] : ranks) t += r;
    return t;
  }
  bool operator==(const Cohomology& o) const { return ranks == o.ranks; }
};

Cohomology cohomology(const CochainComplex& c);
bool is_acyclic(const CochainComplex& c);

// Degree-0 chain map between complexes, as a column map on basis elements.
struct ChainMap {
  std::vector<SparseVec> columns;  // src basis index -> image in dst
};

bool is_chain_map(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f);
CochainComplex mapping_cone(const CochainComplex& src, const CochainComplex& dst,
                            const ChainMap& f);
// true iff the mapping cone is acyclic; throws if f is not a chain map.
bool is_quasi_iso(const CochainComplex& src, const CochainComplex& dst, const ChainMap& f);

// Ranks of a complex as "(r_lo, ..., r_hi)" for error messages and reports.
std::string rank_table_str(const Cohomology& h);

}  // namespace twistcat
