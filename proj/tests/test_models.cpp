#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twistcat/models.hpp"

using namespace twistcat;

TEST_CASE("every fixture passes relation checks over Q, F2, F3") {
  for (long p : {0L, 2L, 3L}) {
    FieldSpec f(p);
    for (auto& name : standard_fixture_names()) {
      Fixture fx = fixture_by_name(name, f);
      auto rep = check_ainf_relations(fx.model.cat, 2 * fx.model.cat.max_arity());
      CHECK_MESSAGE(rep.ok, name, ": ", rep.failure);
    }
  }
}

TEST_CASE("plumbing hom ranks: non-adjacent vanish, ends are spheres") {
  FieldSpec q(0);
  Fixture fx = a_m_plumbing(3, 3, q);
  const AInfCategory& c = fx.model.cat;
  int S1 = c.object_index("S1"), S3 = c.object_index("S3"), S2 = c.object_index("S2");
  CHECK(c.hom_gens(S1, S3).empty());
  CHECK(c.hom_gens(S3, S1).empty());
  CHECK(c.hom_gens(S2, S3).empty());
  auto h = cohomology(c.hom_complex(S2, S2));
  CHECK(h.ranks == std::map<int, int>{{0, 1}, {3, 1}});
}

TEST_CASE("orbit model: end(P) is H*(S^n) (x) K[Gamma] as an algebra") {
  for (long p : {0L, 2L, 3L}) {
    FieldSpec f(p);
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    Fixture fx = sn_gamma_model(z2, 3, f);
    auto alg = minimal_endomorphism_algebra(fx.model.cat, fx.model.obj_P);
    CHECK(alg.well_defined);
    CHECK(alg.ranks == std::map<int, int>{{0, 2}, {3, 2}});
    // theta_g . theta_h = theta_{gh}; x_g . theta_h = x_{gh}
    auto cls = [&](const std::string& l) { return alg.classes.index_of("[" + l + "]"); };
    int t1 = cls("e@1"), tg = cls("e@g"), x1 = cls("x@1"), xg = cls("x@g");
    CHECK(alg.product.at({tg, tg}) == SparseVec{{t1, Scalar::one(f)}});
    CHECK(alg.product.at({tg, t1}) == SparseVec{{tg, Scalar::one(f)}});
    CHECK(alg.product.at({xg, tg}) == SparseVec{{x1, Scalar::one(f)}});
    CHECK(alg.product.at({x1, tg}) == SparseVec{{xg, Scalar::one(f)}});
    CHECK(alg.product.at({tg, x1}) == SparseVec{{xg, Scalar::one(f)}});
    CHECK_FALSE(alg.product.count({x1, xg}));
  }
}

TEST_CASE("orbit model hom spaces: hom(F,P) = K[Gamma] in degree 0") {
  FieldSpec q(0);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  Fixture fx = sn_gamma_model(z3, 3, q);
  const AInfCategory& c = fx.model.cat;
  int P = fx.model.obj_P;
  int F = c.object_index("F.1");
  auto fp = c.hom_gens(F, P);
  CHECK(fp.size() == 3);
  for (int g : fp) CHECK(c.gen(g).degree == 0);
  auto pf = c.hom_gens(P, F);
  CHECK(pf.size() == 3);
  for (int g : pf) CHECK(c.gen(g).degree == 3);
  auto ff = c.hom_gens(F, F);
  CHECK(ff.size() == 1);
  auto h = cohomology(c.hom_complex(P, P));
  CHECK(h.ranks == std::map<int, int>{{0, 3}, {3, 3}});
}

TEST_CASE("orbit_category of the trivial action returns the input category") {
  FieldSpec q(0);
  Fixture up = sphere_algebra(3, q);
  GammaCategoryAction act;
  FiniteGroup triv = FiniteGroup::cyclic(1);
  act.group = &triv;
  act.cat = up.model.cat;
  act.obj_map = {{0}};
  act.gen_map.resize(1);
  for (int g = 0; g < act.cat.num_gens(); ++g)
    act.gen_map[0].push_back({g, Scalar::one(q)});
  OrbitCategory orb = orbit_category(act);
  CHECK(orb.cat.num_objects() == up.model.cat.num_objects());
  CHECK(orb.cat.num_gens() == up.model.cat.num_gens());
  auto rep = check_ainf_relations(orb.cat, 8);
  CHECK_MESSAGE(rep.ok, rep.failure);
}

TEST_CASE("gamma actions: strictness, commutation, mu-compatibility") {
  for (long p : {0L, 2L, 3L}) {
    FieldSpec f(p);
    for (int nz : {2, 3}) {
      Fixture fx = sn_gamma_model(FiniteGroup::cyclic(nz), 3, f);
      auto rep = gamma_actions_check(fx.model);
      CHECK_MESSAGE(rep.ok, rep.failure);
    }
  }
}

TEST_CASE("left action on hom(F,P) is the left regular representation") {
  FieldSpec q(0);
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  Fixture fx = sn_gamma_model(z3, 3, q);
  const AInfCategory& c = fx.model.cat;
  int P = fx.model.obj_P, F = c.object_index("F.1");
  for (int gen : c.hom_gens(F, P)) {
    // label "f.<a>@<b>": left action by h sends it to "f.<ha?>..."; regular:
    // orbit of size |Gamma| and free
    std::set<int> orbit;
    for (int h = 0; h < 3; ++h) {
      auto [y, coeff] = fx.model.left(h, gen);
      CHECK(coeff.is_one());
      orbit.insert(y);
    }
    CHECK(orbit.size() == 3);
  }
}

TEST_CASE("S^3 cell complex invariants: RP^3 ranks over F2 and Q") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  {
    FieldSpec f2(2);
    auto [c, act] = s3_cell_complex(z2, f2);
    auto triv = GroupAlgebraRep::trivial(z2, f2);
    auto inv = invariants_complex(c, act, triv, triv);
    CHECK(cohomology(inv).ranks == std::map<int, int>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  }
  {
    FieldSpec q(0);
    auto [c, act] = s3_cell_complex(z2, q);
    auto triv = GroupAlgebraRep::trivial(z2, q);
    auto inv = invariants_complex(c, act, triv, triv);
    CHECK(cohomology(inv).ranks == std::map<int, int>{{0, 1}, {3, 1}});
  }
}

TEST_CASE("invariants with the regular rep give (|Gamma|, 0, 0, |Gamma|)") {
  for (long p : {0L, 2L, 3L}) {
    FieldSpec f(p);
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    auto [c, act] = s3_cell_complex(z2, f);
    auto reg = GroupAlgebraRep::regular(z2, f);
    auto inv = invariants_complex(c, act, reg, reg);
    CHECK(cohomology(inv).ranks == std::map<int, int>{{0, 2}, {3, 2}});
  }
}

TEST_CASE("char 3, two distinct rank-1 systems: invariants acyclic") {
  FieldSpec f3(3);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  auto [c, act] = s3_cell_complex(z2, f3);
  auto triv = GroupAlgebraRep::trivial(z2, f3);
  auto sgn = GroupAlgebraRep::sign_z2(z2, f3);
  auto inv = invariants_complex(c, act, triv, sgn);
  CHECK(cohomology(inv).ranks.empty());
}

TEST_CASE("universal-coefficient sanity: rank_Fp >= rank_Q on the cell fixture") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FieldSpec q(0);
  auto [cq, actq] = s3_cell_complex(z2, q);
  auto hq = cohomology(invariants_complex(cq, actq, GroupAlgebraRep::trivial(z2, q),
                                          GroupAlgebraRep::trivial(z2, q)));
  for (long p : {2L, 3L, 5L}) {
    FieldSpec f(p);
    auto [cp, actp] = s3_cell_complex(z2, f);
    auto hp = cohomology(invariants_complex(cp, actp, GroupAlgebraRep::trivial(z2, f),
                                            GroupAlgebraRep::trivial(z2, f)));
    for (int k = 0; k <= 3; ++k) CHECK(hp.rank_at(k) >= hq.rank_at(k));
  }
}

TEST_CASE("group algebra idempotents") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  FieldSpec q(0);
  // (1 +- g)/2 are idempotent over Q
  auto chi_triv = std::vector<Scalar>{Scalar::one(q), Scalar::one(q)};
  auto e = character_idempotent(z2, q, chi_triv);
  // e = (1/2)(1 + g); check e*e = e inside K[Z2]
  AInfCategory kg = group_algebra(z2, q);
  // mu^2(a, b) has no sign in degree 0; multiply coefficient vectors
  std::map<int, Scalar> acc;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto [pos, fresh] = acc.try_emplace(z2.mul(a, b), e[a] * e[b]);
      if (!fresh) pos->second = pos->second + e[a] * e[b];
    }
  for (auto& [g, v] : acc) CHECK(v == e[g]);
  // modular request errors
  CHECK_THROWS_AS(character_idempotent(z2, FieldSpec(2),
                                       {Scalar::one(FieldSpec(2)), Scalar::one(FieldSpec(2))}),
                  FieldError);
  // (1+g)^2 = 0 over F2
  FieldSpec f2(2);
  AInfCategory kg2 = group_algebra(z2, f2);
  std::map<int, Scalar> sq;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto [pos, fresh] = sq.try_emplace(z2.mul(a, b), Scalar::one(f2));
      if (!fresh) pos->second = pos->second + Scalar::one(f2);
    }
  CHECK(collect(sq).empty());
}

TEST_CASE("F2[Z/3] is semisimple: brute-force central idempotent split") {
  // oracle: enumerate all 8 elements of F2[Z/3], find idempotents
  FiniteGroup z3 = FiniteGroup::cyclic(3);
  FieldSpec f2(2);
  std::vector<std::vector<int>> idems;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> v = {(mask >> 0) & 1, (mask >> 1) & 1, (mask >> 2) & 1};
    std::vector<int> sq(3, 0);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) sq[z3.mul(a, b)] = (sq[z3.mul(a, b)] + v[a] * v[b]) % 2;
    if (sq == v && mask != 0) idems.push_back(v);
  }
  // 1 = e0 + e1 with e0 = 1+g+g^2, e1 = g+g^2: both present
  auto has = [&](std::vector<int> w) {
    return std::find(idems.begin(), idems.end(), w) != idems.end();
  };
  CHECK(has({1, 1, 1}));
  CHECK(has({0, 1, 1}));
  CHECK(has({1, 0, 0}));
}
