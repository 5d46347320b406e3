#include "twistcat/models.hpp"

#include <algorithm>

namespace twistcat {

namespace {

OrbitModel trivial_group_model(AInfCategory cat, const std::string& name, int obj_P) {
  OrbitModel m;
  m.cat = std::move(cat);
  m.group = FiniteGroup::cyclic(1);
  m.obj_P = obj_P;
  m.name = name;
  int ng = m.cat.num_gens();
  m.left_on_into_P.assign(1, std::vector<std::pair<int, Scalar>>(ng));
  m.right_on_from_P.assign(1, std::vector<std::pair<int, Scalar>>(ng));
  for (int i = 0; i < ng; ++i) {
    m.left_on_into_P[0][i] = {i, Scalar::one(m.cat.field())};
    m.right_on_from_P[0][i] = {i, Scalar::one(m.cat.field())};
  }
  return m;
}

}  // namespace

Fixture sphere_algebra(int n, const FieldSpec& f) {
  if (n < 2) throw AInfError("sphere_algebra needs n >= 2");
  DgCategoryData dg;
  dg.field = f;
  dg.objects = {"S"};
  dg.gens = {{0, 0, 0, "e"}, {0, 0, n, "x"}};
  dg.unit_labels = {"e"};
  Scalar one = Scalar::one(f);
  dg.product[{"e", "e"}] = {{0, one}};
  dg.product[{"e", "x"}] = {{1, one}};
  dg.product[{"x", "e"}] = {{1, one}};
  // x*x = 0 by degree
  Fixture fx;
  fx.name = "sphere_n" + std::to_string(n);
  fx.n = n;
  fx.model = trivial_group_model(dg_to_ainf(dg), fx.name, 0);
  return fx;
}

Fixture a_m_plumbing(int m, int n, const FieldSpec& f) {
  if (m != 2 && m != 3) throw AInfError("a_m_plumbing needs m in {2, 3}");
  if (n < 2) throw AInfError("a_m_plumbing needs n >= 2");
  DgCategoryData dg;
  dg.field = f;
  dg.objects = {"S1", "S2", "P"};
  if (m == 3) dg.objects.push_back("S3");
  int S1 = 0, S2 = 1, P = 2, S3 = 3;
  Scalar one = Scalar::one(f);

  auto G = [&](int src, int dst, int deg, const std::string& l) {
    dg.gens.push_back({src, dst, deg, l});
  };
  G(S1, S1, 0, "e1");
  G(S1, S1, n, "x1");
  G(S2, S2, 0, "e2");
  G(S2, S2, n, "x2");
  G(P, P, 0, "eP");
  G(P, P, n, "xP");
  G(S1, S2, 0, "e12");
  G(S1, S2, n, "p12");
  G(S2, S1, 0, "e21");
  G(S2, S1, n, "p21");
  G(S1, P, 0, "q1");
  G(P, S1, n, "q1v");
  G(S2, P, 0, "q2");
  G(P, S2, n, "q2v");
  if (m == 3) {
    G(S3, S3, 0, "e3");
    G(S3, S3, n, "x3");
    G(P, S3, 0, "r3");
    G(S3, P, n, "r3v");
  }
  dg.unit_labels = {"e1", "e2", "eP"};
  if (m == 3) dg.unit_labels.push_back("e3");

  int idx = 0;
  std::map<std::string, int> gi;
  for (auto& g : dg.gens) gi[g.label] = idx++;
  auto put = [&](const std::string& a2, const std::string& a1, const std::string& out) {
    dg.product[{a2, a1}] = {{gi.at(out), one}};
  };
  // units
  for (auto& g : dg.gens) {
    const std::string& e_src = dg.unit_labels[g.src];
    const std::string& e_dst = dg.unit_labels[g.dst];
    put(g.label, e_src, g.label);
    put(e_dst, g.label, g.label);
  }
  // the parallel pair S2 ~ S1: all homs between them are H*(S^n)
  put("e21", "e12", "e1");
  put("e12", "e21", "e2");
  put("p21", "e12", "x1");
  put("e21", "p12", "x1");
  put("p12", "e21", "x2");
  put("e12", "p21", "x2");
  put("x1", "e21", "p21");
  put("e21", "x2", "p21");
  put("x2", "e12", "p12");
  put("e12", "x1", "p12");
  // adjacency pairings into top classes
  put("q1v", "q1", "x1");
  put("q1", "q1v", "xP");
  put("q2v", "q2", "x2");
  put("q2", "q2v", "xP");
  // triangles through P between the parallel copies
  put("q2v", "q1", "p12");
  put("q1v", "q2", "p21");
  // sliding along the parallel identification
  put("q2", "e12", "q1");
  put("q1", "e21", "q2");
  put("e12", "q1v", "q2v");
  put("e21", "q2v", "q1v");
  if (m == 3) {
    put("r3v", "r3", "xP");
    put("r3", "r3v", "x3");
  }

  Fixture fx;
  fx.name = "a" + std::to_string(m) + "_plumbing_n" + std::to_string(n);
  fx.n = n;
  fx.model = trivial_group_model(dg_to_ainf(dg), fx.name, P);
  return fx;
}

GammaCategoryAction sn_gamma_upstairs(const FiniteGroup& g, int n, const FieldSpec& f) {
  DgCategoryData dg;
  dg.field = f;
  dg.objects = {"P"};
  for (int a = 0; a < g.order(); ++a) dg.objects.push_back("F." + g.name(a));
  Scalar one = Scalar::one(f);
  dg.gens.push_back({0, 0, 0, "e"});
  dg.gens.push_back({0, 0, n, "x"});
  dg.unit_labels = {"e"};
  for (int a = 0; a < g.order(); ++a) {
    dg.gens.push_back({1 + a, 1 + a, 0, "eF." + g.name(a)});
    dg.gens.push_back({1 + a, 0, 0, "f." + g.name(a)});   // F_a -> P
    dg.gens.push_back({0, 1 + a, n, "fv." + g.name(a)});  // P -> F_a
    dg.unit_labels.push_back("eF." + g.name(a));
  }
  std::map<std::string, int> gi;
  int idx = 0;
  for (auto& gg : dg.gens) gi[gg.label] = idx++;
  auto put = [&](const std::string& a2, const std::string& a1, const std::string& out) {
    dg.product[{a2, a1}] = {{gi.at(out), one}};
  };
  for (auto& gg : dg.gens) {
    put(gg.label, dg.unit_labels[gg.src], gg.label);
    put(dg.unit_labels[gg.dst], gg.label, gg.label);
  }
  for (int a = 0; a < g.order(); ++a)
    put("f." + g.name(a), "fv." + g.name(a), "x");  // P -> F_a -> P hits the top

  GammaCategoryAction act;
  act.group = &g;
  act.cat = dg_to_ainf(dg);
  act.obj_map.assign(g.order(), {});
  act.gen_map.assign(g.order(), {});
  for (int a = 0; a < g.order(); ++a) {
    act.obj_map[a].resize(act.cat.num_objects());
    act.obj_map[a][0] = 0;
    for (int b = 0; b < g.order(); ++b) act.obj_map[a][1 + b] = 1 + g.mul(a, b);
    act.gen_map[a].resize(act.cat.num_gens());
    for (int x = 0; x < act.cat.num_gens(); ++x) {
      std::string l = act.cat.gen(x).label;
      std::string moved = l;
      auto dot = l.rfind('.');
      if (dot != std::string::npos) {
        int b = g.index_of(l.substr(dot + 1));
        moved = l.substr(0, dot + 1) + g.name(g.mul(a, b));
      }
      act.gen_map[a][x] = {act.cat.gen_index(moved), one};
    }
  }
  return act;
}

Fixture sn_gamma_model(const FiniteGroup& g, int n, const FieldSpec& f) {
  // the group must outlive the fixture; store a copy inside the model
  Fixture fx;
  fx.n = n;
  fx.name = "s" + std::to_string(n) + "_z" + std::to_string(g.order());
  fx.model.group = g;
  GammaCategoryAction up = sn_gamma_upstairs(fx.model.group, n, f);
  OrbitCategory orb = orbit_category(up);
  fx.model.cat = std::move(orb.cat);
  fx.model.obj_P = fx.model.cat.object_index("P");
  fx.model.name = fx.name;

  // left action on hom(X, P): h . (psi, a) = (h psi, h a);
  // right action on hom(P, X): (psi, a) . h = (psi, a h)
  int ng = fx.model.cat.num_gens();
  int ord = fx.model.group.order();
  Scalar one = Scalar::one(f);
  std::map<std::pair<int, int>, int> down_of;  // (group elem, up gen) -> down gen
  for (int i = 0; i < ng; ++i) down_of[orb.down_gen[i]] = i;
  fx.model.left_on_into_P.assign(ord, std::vector<std::pair<int, Scalar>>(ng, {-1, one}));
  fx.model.right_on_from_P.assign(ord, std::vector<std::pair<int, Scalar>>(ng, {-1, one}));
  for (int h = 0; h < ord; ++h)
    for (int i = 0; i < ng; ++i) {
      auto [a, p] = orb.down_gen[i];
      if (fx.model.cat.gen(i).dst == fx.model.obj_P) {
        auto [q, c] = up.gen_map[h][p];
        fx.model.left_on_into_P[h][i] = {down_of.at({fx.model.group.mul(h, a), q}), c};
      }
      if (fx.model.cat.gen(i).src == fx.model.obj_P)
        fx.model.right_on_from_P[h][i] = {down_of.at({fx.model.group.mul(a, h), p}), one};
    }
  return fx;
}

Fixture fixture_by_name(const std::string& name, const FieldSpec& f) {
  if (name.rfind("sphere", 0) == 0) return sphere_algebra(std::stoi(name.substr(6)), f);
  if (name.rfind("a2n", 0) == 0) return a_m_plumbing(2, std::stoi(name.substr(3)), f);
  if (name.rfind("a3n", 0) == 0) return a_m_plumbing(3, std::stoi(name.substr(3)), f);
  if (name.rfind("rp", 0) == 0)
    return sn_gamma_model(FiniteGroup::cyclic(2), std::stoi(name.substr(2)), f);
  if (name.rfind("s", 0) == 0) {
    auto z = name.find('z');
    if (z != std::string::npos)
      return sn_gamma_model(FiniteGroup::cyclic(std::stoi(name.substr(z + 1))),
                            std::stoi(name.substr(1, z - 1)), f);
  }
  throw AInfError("unknown fixture name: " + name);
}

std::vector<std::string> standard_fixture_names() {
  return {"sphere3", "a2n2", "a2n3", "a3n2", "a3n3", "rp3", "s3z3"};
}

std::pair<CochainComplex, ComplexGammaAction> s3_cell_complex(const FiniteGroup& z2,
                                                              const FieldSpec& f) {
  if (z2.order() != 2) throw GroupError("s3_cell_complex needs Z/2");
  GradedSpace s;
  for (int k = 0; k <= 3; ++k) {
    s.add("c" + std::to_string(k) + "+", k);
    s.add("c" + std::to_string(k) + "-", k);
  }
  Scalar one = Scalar::one(f);
  auto id = [&](int k, int sgn) { return 2 * k + (sgn > 0 ? 0 : 1); };
  // cochain differential: d(y_{k-1}^+) = y_k^+ + (-1)^k y_k^-,
  //                       d(y_{k-1}^-) = (-1)^k y_k^+ + y_k^-
  std::vector<SparseVec> d(8);
  for (int k = 1; k <= 3; ++k) {
    Scalar sk = k % 2 == 0 ? one : -one;
    d[id(k - 1, +1)] = {{id(k, +1), one}, {id(k, -1), sk}};
    d[id(k - 1, -1)] = {{id(k, +1), sk}, {id(k, -1), one}};
  }
  for (auto& col : d)
    std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
  CochainComplex c(std::move(s), f, std::move(d));
  ComplexGammaAction act;
  act.group = &z2;
  act.maps.assign(2, std::vector<SparseVec>(8));
  for (int k = 0; k <= 3; ++k) {
    act.maps[z2.identity()][id(k, +1)] = {{id(k, +1), one}};
    act.maps[z2.identity()][id(k, -1)] = {{id(k, -1), one}};
    int other = 1 - z2.identity();
    act.maps[other][id(k, +1)] = {{id(k, -1), one}};
    act.maps[other][id(k, -1)] = {{id(k, +1), one}};
  }
  return {std::move(c), std::move(act)};
}

}  // namespace twistcat
