#pragma once

#include "twistcat/equivariant.hpp"

namespace twistcat {

// A fixture is an orbit model: a category plus the distinguished twist
// object P and its Gamma-structure (trivial group for the non-quotient
// models).
struct Fixture {
  std::string name;
  int n = 0;  // sphere dimension
  OrbitModel model;
};

// One object S with end(S) = H*(S^n) = {e, x}, |x| = n; formal, strictly
// unital; the twist object is S itself.
Fixture sphere_algebra(int n, const FieldSpec& f);

// The Milnor-fiber plumbing model: chain S1 - P (m = 2) or S1 - P - S3
// (m = 3), together with the perturbed parallel copy S2 of S1
// (hom(S1, S2) = {e12, p12} in degrees 0 and n).  Adjacent homs are rank 1,
// hom(S_i, next) in degree 0, the opposite direction in degree n; all
// pairings hit top classes; signs fixed by associativity.  The twist object
// is the middle sphere P.
Fixture a_m_plumbing(int m, int n, const FieldSpec& f);

// Upstairs equivariant model for S^n/Gamma: sphere object with end =
// H*(S^n) and trivial action, fiber objects permuted regularly, descent via
// the orbit construction.  P carries the universal local system structure.
Fixture sn_gamma_model(const FiniteGroup& g, int n, const FieldSpec& f);

// The upstairs model and action, exposed for tests.
GammaCategoryAction sn_gamma_upstairs(const FiniteGroup& g, int n, const FieldSpec& f);

// Named fixture lookup for the CLI: "sphere<n>", "a2n<k>"/"a3n<k>",
// "rp<n>" (Z/2 quotient), "s<n>z<q>" (Z/q quotient).
Fixture fixture_by_name(const std::string& name, const FieldSpec& f);
std::vector<std::string> standard_fixture_names();

// Equivariant cell cochain complex of S^3 (two cells per degree, antipodal
// swap), used by the invariants oracles.
std::pair<CochainComplex, ComplexGammaAction> s3_cell_complex(const FiniteGroup& z2,
                                                              const FieldSpec& f);

}  // namespace twistcat
