#pragma once

#include "twistcat/homcomplex.hpp"

namespace twistcat {

// Twisted-complex presentation of a module: a finite sum of shifted Yoneda
// summands (+)_i Y(X_i)[s_i] with a strictly triangular connection
// delta_{ij} in hom(X_j, X_i) of degree s_j - s_i + 1, subject to the
// Maurer-Cartan equation sum_k mu^k(delta, ..., delta) = 0.
//
// realize() rebuilds the module with all tensors explicit; builders that
// attach a presentation assert realize(pres) == module entry by entry, so
// the presentation is exact bookkeeping, never an up-to-quasi-iso claim.
struct TwPresentation {
  struct Generator {
    int obj;
    int shift;  // Y(obj)[shift]: element degrees are lowered by shift
  };
  std::vector<Generator> gens;
  std::map<std::pair<int, int>, SparseVec> delta;  // (i, j) -> hom(X_j, X_i) elements

  SparseVec connection(int i, int j) const {
    auto it = delta.find({i, j});
    return it == delta.end() ? SparseVec{} : it->second;
  }
};

// Maurer-Cartan check: mu^1(delta) + mu^2(delta, delta) + ... = 0 entrywise,
// plus triangularity (no cycles among generators through delta).
CheckReport check_maurer_cartan(const TwPresentation& p, const AInfCategory& cat);

// The module (+)_i Y(X_i)[s_i] twisted by the connection.  Element (i, psi)
// for psi in hom(X, X_i); actions
//   mu^{1|d}((i, psi), a_d..a_1) = (i, mu^{d+1}(psi, a..))
//     + sum over delta-chains i <- i_1 <- ... <- i_r:
//       (-1)^{eps} (i_r, mu^{d+1+r}(delta_{i_r i_{r-1}}, .., delta_{i_1 i}, psi, a..))
// with eps = |psi| + s_i fixed by the mapping-cone and tensor formulas.
RightModule realize(const TwPresentation& p, const AInfCategory& cat);

// A module together with its exact presentation.
struct PresentedModule {
  RightModule module;
  TwPresentation pres;

  PresentedModule(RightModule m, TwPresentation p);  // asserts realize == m
};

// hom(E, N) for presented E: the finite complex (+)_i N(X_i)[-s_i] with
// differential d_N + pullback along the connection (all mu^{1|r}_N
// insertions of delta-chains).  Exact, no length truncation.
class TwHom {
 public:
  TwHom(const TwPresentation& e, const RightModule& n);
  const CochainComplex& complex() const { return *cx_; }
  // basis bookkeeping: index -> (generator, element of N)
  struct BasisElem {
    int gen, n_elem;
  };
  const BasisElem& basis(int i) const { return basis_[i]; }
  int dim() const { return (int)basis_.size(); }

 private:
  std::vector<BasisElem> basis_;
  std::unique_ptr<CochainComplex> cx_;
};

Cohomology tw_hom_cohomology(const TwPresentation& e, const RightModule& n);

// Presentation builders mirroring the module builders.
TwPresentation yoneda_presentation(const AInfCategory& cat, int obj);
TwPresentation shift_presentation(const TwPresentation& p, int by);
TwPresentation sum_presentation(const TwPresentation& a, const TwPresentation& b);

// Cone presentation: the morphism t between realized modules must be a
// twisted-complex morphism; its components are read off from the generator
// elements and the result is certified by the realize == cone assertion.
TwPresentation cone_presentation(const TwPresentation& src, const TwPresentation& dst,
                                 const ModuleMorphism& t, const AInfCategory& cat);

}  // namespace twistcat
