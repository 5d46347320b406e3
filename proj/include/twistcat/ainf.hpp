#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistcat/graded.hpp"

namespace twistcat {

struct AInfError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Convention { seidel, lefevre };

// key: generator tuple in math order (a_d, ..., a_1); index 0 is the
// leftmost (last applied) argument
using GenTuple = std::vector<int>;

struct GenTupleHash {
  size_t operator()(const GenTuple& t) const {
    size_t h = 1469598103934665603ull;
    for (int v : t) {
      h ^= (size_t)(v + 0x9e3779b9);
      h *= 1099511628211ull;
    }
    return h;
  }
};

using Tensor = std::unordered_map<GenTuple, SparseVec, GenTupleHash>;

struct CheckReport {
  bool ok = true;
  std::string failure;  // first failing tuple, human-readable
};

// Finite A-infinity category: finite object set, finite-dimensional graded
// hom spaces, structure tensors stored sparsely on non-unit tuples.
// Relations follow the reduced-degree convention:
//   sum_{m,n} (-1)^{maltese_n} mu(a_d,...,mu(a_{n+m},...,a_{n+1}),...,a_1) = 0
// with maltese_n the sum of reduced degrees of the n rightmost arguments.
class AInfCategory {
 public:
  int add_object(const std::string& name);
  int num_objects() const { return (int)objects_.size(); }
  const std::string& object_name(int i) const { return objects_[i]; }
  int object_index(const std::string& name) const;

  int add_generator(int src, int dst, const std::string& label, int degree);
  struct GenInfo {
    int src, dst, degree;
    std::string label;
  };
  const GenInfo& gen(int id) const { return gens_[id]; }
  int num_gens() const { return (int)gens_.size(); }
  int gen_index(const std::string& label) const;
  int reduced_degree(int id) const { return gens_[id].degree - 1; }

  void set_strict_unit(int obj, int gen_id);
  void set_cohomological_unit(int obj, int gen_id);
  int unit(int obj) const { return units_[obj]; }
  bool unit_is_strict(int obj) const { return strict_unit_[obj]; }
  bool is_unit_gen(int id) const;

  void set_mu(const GenTuple& args, SparseVec out);
  // Full structure map with strict-unit slots synthesized.
  SparseVec mu(const GenTuple& args) const;
  const std::map<int, Tensor>& tensors() const { return mu_; }

  int max_arity() const { return max_arity_; }
  void set_max_arity(int a) { max_arity_ = a; }
  Convention convention() const { return convention_; }
  void set_convention(Convention c) { convention_ = c; }

  bool composable(const GenTuple& args) const;
  // arities carrying stored tensors, plus the synthesized mu^1/mu^2;
  // relations on tuples longer than relation_arity_bound() vanish term by
  // term, so checkers may skip them
  std::vector<int> effective_arities() const;
  int relation_arity_bound() const;
  // generators of hom(src, dst)
  std::vector<int> hom_gens(int src, int dst) const;
  // non-unit generators, for reduced chains
  std::vector<int> reduced_gens(int src, int dst) const;
  GradedSpace hom_space(int src, int dst) const;
  // the (hom(X,Y), mu^1) cochain complex
  CochainComplex hom_complex(int src, int dst) const;

  const FieldSpec& field() const { return field_; }
  void set_field(const FieldSpec& f) { field_ = f; }

  // degree and composability validation of every stored entry
  void validate() const;

 private:
  std::vector<std::string> objects_;
  std::vector<GenInfo> gens_;
  std::map<std::string, int> gen_index_;
  std::map<std::string, int> object_index_;
  std::vector<int> units_;
  std::vector<bool> strict_unit_;
  std::map<int, Tensor> mu_;  // arity -> tensor
  int max_arity_ = 4;
  Convention convention_ = Convention::seidel;
  FieldSpec field_;
};

// Enumerates composable tuples of reduced generators, lengths 1..max_len,
// in math order (leftmost = last applied).
class ChainEnumerator {
 public:
  ChainEnumerator(const AInfCategory& cat, int max_len);
  // all chains of the given length
  const std::vector<GenTuple>& chains(int length) const;
  // chains of given length from object src (rightmost argument's source) to
  // object dst (leftmost argument's target)
  std::vector<GenTuple> chains_between(int length, int src, int dst) const;

 private:
  std::vector<std::vector<GenTuple>> by_length_;
  const AInfCategory* cat_;
};

CheckReport check_ainf_relations(const AInfCategory& cat, int arity);

// DG category data: associative product, degree +1 differential.
struct DgCategoryData {
  std::vector<std::string> objects;
  struct DgGen {
    int src, dst, degree;
    std::string label;
  };
  std::vector<DgGen> gens;
  std::vector<std::string> unit_labels;              // one per object
  std::map<std::string, SparseVec> differential;     // by label; index = gen id
  std::map<std::pair<std::string, std::string>, SparseVec> product;  // (a2,a1) -> a2*a1
  FieldSpec field;
};

// Convention: mu^1(a) = (-1)^{|a|} d(a), mu^2(a1,a0) = (-1)^{|a0|} a1 a0,
// mu^k = 0 for k >= 3.  Checks d^2=0, Leibniz, associativity, unit laws.
AInfCategory dg_to_ainf(const DgCategoryData& dg, Convention conv = Convention::seidel);

struct AInfFunctor {
  const AInfCategory* source = nullptr;
  const AInfCategory* target = nullptr;
  std::vector<int> object_map;
  std::map<GenTuple, SparseVec> components;  // F^k keyed by (a_k,...,a_1)
  bool strictly_unital = true;

  SparseVec apply(const GenTuple& args) const;  // with unit synthesis
};

AInfFunctor identity_functor(const AInfCategory& cat);
AInfFunctor compose(const AInfFunctor& later, const AInfFunctor& first);
CheckReport check_functor(const AInfFunctor& f, int arity);

// Cohomology ring of (hom(X,X), mu^1, mu^2) with representative-based
// structure constants; product is the associative one, a*b =
// (-1)^{|b|} mu^2(a, b).
struct MinimalAlgebra {
  GradedSpace classes;                      // one label per cohomology class
  std::map<std::pair<int, int>, SparseVec> product;  // (i,j) -> i*j in class basis
  std::map<int, int> ranks;
  bool well_defined = true;
  std::string obstruction;  // witness if not well defined
};

MinimalAlgebra minimal_endomorphism_algebra(const AInfCategory& cat, int obj);

}  // namespace twistcat
