#pragma once

#include <memory>

#include "twistcat/modules.hpp"

namespace twistcat {

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Morphism-complex differential, graded-commutator convention:
//   (delta t)^{1|D}(m, a_D..a_1) =
//       sum_k (-1)^{|t| maltese_k} mu_N(t(m, a_D..a_{k+1}), a_k..a_1)
//     - (-1)^{|t|} [ sum_k (-1)^{maltese_k} t(mu_M(m, ..), a_k..a_1)
//                  + sum   (-1)^{maltese_n} t(m, .., mu_A(block), ..) ]
// restricted to unit-free chains (normalized morphism spaces).  Components
// beyond the length cap are dropped; the truncation is a quotient complex
// because delta never shortens chains.
ModuleMorphism delta_morphism(const ModuleMorphism& t, int length_cap);

// mu^2 on morphism complexes: (-1)^{|t0|} t1 o t0-hat with the Koszul
// weights (-1)^{|t0| maltese_k}.
ModuleMorphism compose_morphisms(const ModuleMorphism& t1, const ModuleMorphism& t0,
                                 int length_cap);

// Bridge between delta-cocycles and cone-closed morphisms:
// t'(m, chain) = (-1)^{|m| + sum ||chain||} t(m, chain).  Involution;
// delta(t') vanishes iff the mapping-cone relations for t hold.
ModuleMorphism parity_bridge(const ModuleMorphism& t);

// Shift comparison operators.  sigma: hom(M, N) -> hom(M, N[1]) and
// eta: hom(M, N) -> hom(M[1], N); the component sign twists are derived so
// that the three shift identities hold literally:
//   delta o ((-1)^deg o sigma) = ((-1)^deg o sigma) o delta
//   delta o eta = - eta o delta
//   mu^2 = mu^2 o (eta (x) ((-1)^deg o sigma))
// (shifted_src / shifted_dst must be shift(M) / shift(N)).
ModuleMorphism sigma_push(const ModuleMorphism& t, const RightModule& shifted_dst);
ModuleMorphism eta_push(const ModuleMorphism& t, const RightModule& shifted_src);

// Length-capped morphism complex hom(M, N) on unit-free chains.
class HomComplex {
 public:
  HomComplex(const RightModule& m, const RightModule& n, int length_cap);

  struct BasisElem {
    GenTuple chain;
    int src_elem, dst_elem;
  };

  const RightModule& src() const { return *m_; }
  const RightModule& dst() const { return *n_; }
  int cap() const { return cap_; }
  int dim() const { return (int)basis_.size(); }
  const BasisElem& basis(int i) const { return basis_[i]; }
  const CochainComplex& complex() const { return *cx_; }

  SparseVec to_vector(const ModuleMorphism& t) const;
  ModuleMorphism to_morphism(const SparseVec& v, int degree) const;
  int degree_of_basis(int i) const;

 private:
  const RightModule *m_, *n_;
  int cap_;
  std::vector<BasisElem> basis_;
  std::map<std::tuple<GenTuple, int, int>, int> index_;
  std::unique_ptr<CochainComplex> cx_;
};

struct HomCohomology {
  Cohomology coh;  // ranks restricted to the degree window
  bool stabilized = false;
  int cap = 0;
};

struct DegreeWindow {
  int lo, hi;
};

// Cohomology of hom(M, N) within the degree window at the cap, with the
// cap-vs-cap+2 stabilization check on the windowed ranks.  Throws
// TruncationError if not stabilized unless allow_truncated.
HomCohomology hom_cohomology(const RightModule& m, const RightModule& n, int cap,
                             DegreeWindow window, bool allow_truncated = false);

// default window for a category: [min hom degree - 2, max hom degree + 2]
DegreeWindow default_window(const AInfCategory& cat);

// Degree-0 delta-cocycle representatives of H^0(hom(M, N)), returned in the
// cone-closed normalization (parity bridge applied).
std::vector<ModuleMorphism> h0_morphisms(const RightModule& m, const RightModule& n, int cap);

int default_length_cap();  // 6, overridable via TWISTCAT_LENGTH_CAP

}  // namespace twistcat
