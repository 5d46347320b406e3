#pragma once

#include "twistcat/homcomplex.hpp"

namespace twistcat {

// A-infinity (C, D)-bimodule: value spaces B(X, V) for X in D (module
// variable) and V in C, tensors mu^{r|1|s}(g_r..g_1, b, a_s..a_1) of degree
// 2 - (r + 1 + s), stored on unit-free tuples.
class Bimodule {
 public:
  Bimodule(const AInfCategory& left, const AInfCategory& right)
      : left_(&left), right_(&right) {}

  const AInfCategory& left_cat() const { return *left_; }    // C
  const AInfCategory& right_cat() const { return *right_; }  // D

  int add_element(int cobj, int dobj, const std::string& label, int degree);
  struct ElemInfo {
    int cobj, dobj, degree;
    std::string label;
  };
  const ElemInfo& elem(int id) const { return elems_[id]; }
  int num_elems() const { return (int)elems_.size(); }
  std::vector<int> elems_at(int cobj, int dobj) const;

  void set_tensor(const GenTuple& gs, int b, const GenTuple& as, SparseVec out);
  SparseVec tensor(const GenTuple& gs, int b, const GenTuple& as) const;
  const std::map<std::tuple<GenTuple, int, GenTuple>, SparseVec>& tensors() const {
    return ten_;
  }
  int max_left_len() const { return max_r_; }
  int max_right_len() const { return max_s_; }

  // the right D-module B(-, V) for fixed V in C
  RightModule restrict_right(int cobj, const std::string& tag) const;

 private:
  const AInfCategory *left_, *right_;
  std::vector<ElemInfo> elems_;
  std::map<std::tuple<GenTuple, int, GenTuple>, SparseVec> ten_;
  int max_r_ = 0, max_s_ = 0;
};

CheckReport check_bimodule(const Bimodule& b, int arity);

// Graph bimodule of an A-infinity functor F: C -> D,
//   mu^{r|1|s}(g_r..g_1, x, a_s..a_1) =
//     (-1)^{1 + sum ||a_j||} sum_{partitions} mu_D(F(g-blocks), x, a_s..a_1).
Bimodule graph_bimodule(const AInfFunctor& f);
Bimodule diagonal_bimodule(const AInfCategory& cat);

// Bar tensor V (x)^L_C B: words v (x) g_s..g_1 (x) b of length <= cap and
// degree inside the window, with the maltese-sign differential.  Length and
// degree truncation form an honest submodule/quotient; stabilization is the
// caller's check.
RightModule bar_tensor(const RightModule& v, const Bimodule& b, int length_cap,
                       DegreeWindow window, const std::string& tag);

// hom functor F_hom(B)(M): value at V is the capped morphism complex
// hom_{mod-D}(B(-, V), M); right C-action per the dagger-sign formula.
RightModule hom_functor(const Bimodule& b, const RightModule& m, int length_cap,
                        const std::string& tag);

// Adjunction unit V -> hom(B, V (x)^L B) and counit hom(B, M) (x)^L B -> M
// for the tensor-hom adjunction; both closed (contract violation if not).
struct Adjunction {
  RightModule tensor_module;   // V (x)^L B        (over D)
  RightModule hom_module;      // hom(B, V (x) B)  (over C)
  ModuleMorphism unit;         // V -> hom_module
};
std::unique_ptr<Adjunction> adjunction_unit(const RightModule& v, const Bimodule& b,
                                            int cap, DegreeWindow window);

struct Counit {
  RightModule hom_module;     // hom(B, M)            (over C)
  RightModule tensor_module;  // hom(B, M) (x)^L B    (over D)
  ModuleMorphism counit;      // tensor_module -> M
};
std::unique_ptr<Counit> adjunction_counit(const Bimodule& b, const RightModule& m, int cap,
                                          DegreeWindow window);

// Bar contraction t: M (x)^L Delta -> M and its one-sided inverse
// eta: M -> M (x)^L Delta with t o eta = Id exactly (strict units).
struct BarContraction {
  RightModule bar;  // M (x)^L Delta_D
  ModuleMorphism t;
  ModuleMorphism eta;
};
std::unique_ptr<BarContraction> bar_contraction(const RightModule& m, const Bimodule& diag,
                                                int cap, DegreeWindow window);

}  // namespace twistcat
