#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistcat/models.hpp"

using namespace twistcat;

TEST_CASE("sphere algebra passes relations over Q, F2, F3") {
  for (long p : {0L, 2L, 3L}) {
    Fixture fx = sphere_algebra(3, FieldSpec(p));
    auto rep = check_ainf_relations(fx.model.cat, 2 * fx.model.cat.max_arity());
    CHECK_MESSAGE(rep.ok, rep.failure);
  }
}

TEST_CASE("dg_to_ainf signs: K[Gamma] and H*(S^3)") {
  FieldSpec q(0);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  AInfCategory kg = group_algebra(z2, q);
  // mu^2(g, g) = g*g = 1 with DG-to-Ainf sign (+, degree 0)
  int g = kg.gen_index("g"), e = kg.gen_index("1");
  auto out = kg.mu({g, g});
  REQUIRE(out.size() == 1);
  CHECK(out[0].first == e);
  CHECK(out[0].second.is_one());

  // H*(S^3): mu^2(x, e) = x and mu^2(e, x) = -x over Q
  Fixture s3 = sphere_algebra(3, q);
  const AInfCategory& c = s3.model.cat;
  int x = c.gen_index("x"), eu = c.gen_index("e");
  auto xe = c.mu({x, eu});
  REQUIRE(xe.size() == 1);
  CHECK(xe[0].second.is_one());
  auto ex = c.mu({eu, x});
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].second == -Scalar::one(q));
}

TEST_CASE("exterior algebra on one degree-1 generator passes relations") {
  for (long p : {0L, 2L}) {
    FieldSpec f(p);
    DgCategoryData dg;
    dg.field = f;
    dg.objects = {"*"};
    dg.gens = {{0, 0, 0, "e"}, {0, 0, 1, "u"}};
    dg.unit_labels = {"e"};
    Scalar one = Scalar::one(f);
    dg.product[{"e", "e"}] = {{0, one}};
    dg.product[{"e", "u"}] = {{1, one}};
    dg.product[{"u", "e"}] = {{1, one}};
    // u*u = 0
    AInfCategory cat = dg_to_ainf(dg);
    auto rep = check_ainf_relations(cat, 8);
    CHECK_MESSAGE(rep.ok, rep.failure);
  }
}

TEST_CASE("degree-inconsistent tensor entry is a structural error") {
  FieldSpec q(0);
  AInfCategory cat;
  cat.set_field(q);
  cat.add_object("X");
  int e = cat.add_generator(0, 0, "e", 0);
  int u = cat.add_generator(0, 0, "u", 1);
  cat.set_strict_unit(0, e);
  CHECK_THROWS_AS(cat.set_mu({u, u}, {{u, Scalar::one(q)}}), AInfError);
}

TEST_CASE("non-associative product rejected by dg_to_ainf") {
  FieldSpec q(0);
  DgCategoryData dg;
  dg.field = q;
  dg.objects = {"*"};
  dg.gens = {{0, 0, 0, "e"}, {0, 0, 0, "a"}};
  dg.unit_labels = {"e"};
  Scalar one = Scalar::one(q);
  dg.gens.push_back({0, 0, 0, "b"});
  dg.product[{"e", "e"}] = {{0, one}};
  for (auto* l : {"a", "b"}) {
    dg.product[{"e", std::string(l)}] = {{l[0] == 'a' ? 1 : 2, one}};
    dg.product[{std::string(l), "e"}] = {{l[0] == 'a' ? 1 : 2, one}};
  }
  // a*a = b, a*b = e, b*a = a, b*b = e: (aa)a = ba = a but a(aa) = ab = e
  dg.product[{"a", "a"}] = {{2, one}};
  dg.product[{"a", "b"}] = {{0, one}};
  dg.product[{"b", "a"}] = {{1, one}};
  dg.product[{"b", "b"}] = {{0, one}};
  CHECK_THROWS_AS(dg_to_ainf(dg), AInfError);
}

TEST_CASE("dg_to_ainf passes relations on random truncated path algebras") {
  std::mt19937 rng(23);
  for (int it = 0; it < 12; ++it) {
    long p = std::vector<long>{0, 2, 3}[it % 3];
    FieldSpec f(p);
    int nobj = 1 + (int)(rng() % 2);
    DgCategoryData dg;
    dg.field = f;
    for (int i = 0; i < nobj; ++i) dg.objects.push_back("O" + std::to_string(i));
    Scalar one = Scalar::one(f);
    // paths of length <= 2 in a random quiver; product = concatenation,
    // truncated above length 2 (associative by construction)
    struct Arrow { int src, dst, deg; };
    std::vector<Arrow> arrows;
    int narr = 2 + (int)(rng() % 2);
    for (int a = 0; a < narr; ++a)
      arrows.push_back({(int)(rng() % nobj), (int)(rng() % nobj), (int)(rng() % 3)});
    for (int i = 0; i < nobj; ++i) {
      dg.gens.push_back({i, i, 0, "e" + std::to_string(i)});
      dg.unit_labels.push_back("e" + std::to_string(i));
    }
    for (int a = 0; a < narr; ++a)
      dg.gens.push_back({arrows[a].src, arrows[a].dst, arrows[a].deg, "a" + std::to_string(a)});
    std::vector<std::pair<int, int>> paths2;
    for (int a = 0; a < narr; ++a)
      for (int b = 0; b < narr; ++b)
        if (arrows[b].dst == arrows[a].src) {
          paths2.push_back({a, b});
          dg.gens.push_back({arrows[b].src, arrows[a].dst, arrows[a].deg + arrows[b].deg,
                             "p" + std::to_string(a) + "_" + std::to_string(b)});
        }
    std::map<std::string, int> gi;
    int idx = 0;
    for (auto& g : dg.gens) gi[g.label] = idx++;
    for (auto& g : dg.gens) {
      dg.product[{g.label, "e" + std::to_string(g.src)}] = {{gi.at(g.label), one}};
      if (g.label[0] != 'e')
        dg.product[{"e" + std::to_string(g.dst), g.label}] = {{gi.at(g.label), one}};
    }
    for (auto& [a, b] : paths2)
      dg.product[{"a" + std::to_string(a), "a" + std::to_string(b)}] = {
          {gi.at("p" + std::to_string(a) + "_" + std::to_string(b)), one}};
    // longer concatenations truncate to zero
    AInfCategory cat = dg_to_ainf(dg);
    auto rep = check_ainf_relations(cat, 6);
    CHECK_MESSAGE(rep.ok, rep.failure);
  }
}

TEST_CASE("identity functor passes; broken functor fails") {
  FieldSpec q(0);
  Fixture fx = a_m_plumbing(2, 2, q);
  AInfFunctor id = identity_functor(fx.model.cat);
  auto rep = check_functor(id, 6);
  CHECK_MESSAGE(rep.ok, rep.failure);

  // non-closed F^1 image: send a closed generator to a non-cycle... here all
  // generators are closed (formal), so break mu^2-compatibility instead
  AInfFunctor bad = id;
  int q1 = fx.model.cat.gen_index("q1");
  bad.components[{q1}] = {{fx.model.cat.gen_index("q2"), Scalar::one(q)}};
  CHECK_FALSE(check_functor(bad, 4).ok);
}

TEST_CASE("functor K[Gamma] -> orbit model, g -> g e_P, passes") {
  for (long p : {0L, 2L, 3L}) {
    FieldSpec f(p);
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    AInfCategory kg = group_algebra(z2, f);
    Fixture fx = sn_gamma_model(z2, 3, f);
    AInfFunctor fp;
    fp.source = &kg;
    fp.target = &fx.model.cat;
    fp.object_map = {fx.model.obj_P};
    // g -> theta_g = e@g
    fp.components[{kg.gen_index("g")}] = {
        {fx.model.cat.gen_index("e@g"), Scalar::one(f)}};
    auto rep = check_functor(fp, 6);
    CHECK_MESSAGE(rep.ok, rep.failure);
  }
}

TEST_CASE("minimal endomorphism algebra of the sphere fixture is K[x]/x^2") {
  FieldSpec q(0);
  Fixture fx = sphere_algebra(4, q);
  auto alg = minimal_endomorphism_algebra(fx.model.cat, 0);
  CHECK(alg.well_defined);
  CHECK(alg.ranks == std::map<int, int>{{0, 1}, {4, 1}});
  // x * x = 0, e acts as unit
  int ce = alg.classes.index_of("[e]");
  int cx = alg.classes.index_of("[x]");
  CHECK(alg.product.count({ce, cx}));
  CHECK(alg.product.at({ce, cx}) == SparseVec{{cx, Scalar::one(q)}});
  CHECK_FALSE(alg.product.count({cx, cx}));
}
