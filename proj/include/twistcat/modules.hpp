#pragma once

#include "twistcat/ainf.hpp"

namespace twistcat {

// Right A-infinity module over a finite category.  Value spaces are finite
// graded bases per object; action tensors mu^{1|d} are stored sparsely on
// unit-free tuples (strict-unit slots synthesized: mu^{1|1}(m, e) = m,
// higher unit slots vanish).
class RightModule {
 public:
  explicit RightModule(const AInfCategory& cat);

  const AInfCategory& cat() const { return *cat_; }
  const FieldSpec& field() const { return cat_->field(); }

  int add_element(int obj, const std::string& label, int degree);
  int num_elems() const { return (int)elems_.size(); }
  struct ElemInfo {
    int obj, degree;
    std::string label;
  };
  const ElemInfo& elem(int id) const { return elems_[id]; }
  std::vector<int> elems_at(int obj) const;
  GradedSpace value_space(int obj) const;

  // mu^{1|d}(m, a_d, ..., a_1); output elements live at the source object
  // of a_1 (or of m when d = 0)
  void set_action(int m, const GenTuple& args, SparseVec out);
  SparseVec action(int m, const GenTuple& args) const;
  int max_stored_len() const { return max_len_; }

  // (value(X), mu^{1|0}) as a complex
  CochainComplex value_complex(int obj) const;
  // sum over basis of (-1)^deg
  long euler_char(int obj) const;

  const std::map<std::pair<int, GenTuple>, SparseVec>& actions() const { return act_; }
  // relations on longer tuples vanish term by term (see the category bound)
  int relation_arity_bound() const;

 private:
  const AInfCategory* cat_;
  std::vector<ElemInfo> elems_;
  std::map<std::pair<int, GenTuple>, SparseVec> act_;
  int max_len_ = 0;
};

CheckReport check_module(const RightModule& m, int arity);

// Morphism of right modules, homogeneous of one degree; components
// t^{1|d}(m, a_d, ..., a_1) keyed by (m, chain), chain possibly empty.
// Components live on unit-free chains (normalized morphism spaces).
struct ModuleMorphism {
  const RightModule* src = nullptr;
  const RightModule* dst = nullptr;
  int degree = 0;
  std::map<std::pair<int, GenTuple>, SparseVec> comps;

  SparseVec component(int m, const GenTuple& args) const {
    auto it = comps.find({m, args});
    return it == comps.end() ? SparseVec{} : it->second;
  }
  void add_component(int m, const GenTuple& args, const SparseVec& v);
};

ModuleMorphism identity_morphism(const RightModule& m);
ModuleMorphism zero_morphism(const RightModule& src, const RightModule& dst);

// Closedness of a degree-0 morphism in the cone-compatible sense: the
// mapping cone built on t satisfies the module relations.  This is the
// contract required by cone_module.
CheckReport check_closed0(const ModuleMorphism& t, int arity);

// Yoneda module X -> hom(X, E), plain mu^{d+1} action (the convention the
// evaluation map and mapping cone formulas use).
RightModule yoneda(const AInfCategory& cat, int obj);

// Module sign twist eps(d) = -(-1)^{sum ||a_j||} on every action tensor.
// Self-inverse; translates between the two module sign conventions used by
// the two halves of the machinery.  Value degrees are unchanged.
RightModule convention_twist(const RightModule& m);

// Degree shift M[1]: value degrees lowered by one, tensors unchanged.
RightModule shift(const RightModule& m, int by = 1);

// Mapping cone of a closed degree-0 morphism: value M[1] + N, actions
// (mu_M, mu_N + t).  Throws unless t is closed.
RightModule cone_module(const ModuleMorphism& t, int check_arity = 4);

// Direct sum, with labels prefixed "l:" / "r:".
RightModule direct_sum(const RightModule& a, const RightModule& b);

// Submodule cut out by a strict idempotent module endomorphism given by
// per-object projector columns (p[obj][elem] = image vector).  Checks that
// the actions preserve the image.
RightModule submodule_from_projector(const RightModule& m,
                                     const std::vector<std::vector<SparseVec>>& proj,
                                     const std::string& tag);

// V (x) M for a cochain complex V: value V (x) M(X), differential
// d(v (x) m) = (-1)^{|m|-1} dv (x) m + v (x) dm, actions on the M factor.
RightModule complex_tensor_module(const CochainComplex& v, const RightModule& m,
                                  const std::string& tag);

struct CompareResult {
  bool pass = false;
  // "strong" = quasi-isomorphism certificate, "rank-indistinguishable" =
  // equal rank tables only (weak certificate)
  std::string mode;
  std::string detail;
};

enum class CompareMode { explicit_morphism, rank_table };

CompareResult compare_modules(const RightModule& a, const RightModule& b, CompareMode mode,
                              const ModuleMorphism* t = nullptr);

// Rank tables of H*(M(X)) for all X.
std::map<int, Cohomology> module_cohomology(const RightModule& m);

}  // namespace twistcat
