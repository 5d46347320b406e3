#include "twistcat/equivariant.hpp"

#include <algorithm>
#include <memory>

namespace twistcat {

FiniteGroup::FiniteGroup(std::vector<std::string> elements, std::vector<std::vector<int>> table)
    : elements_(std::move(elements)), table_(std::move(table)) {
  int n = (int)elements_.size();
  if ((int)table_.size() != n) throw GroupError("table size mismatch");
  for (auto& row : table_) {
    if ((int)row.size() != n) throw GroupError("table row size mismatch");
    for (int v : row)
      if (v < 0 || v >= n) throw GroupError("table entry out of range");
  }
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) { id_ = e; break; }
  }
  if (id_ < 0) throw GroupError("no identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw GroupError("multiplication not associative");
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == id_ && table_[b][a] == id_) inv_[a] = b;
    if (inv_[a] < 0) throw GroupError("element without inverse: " + elements_[a]);
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    names.push_back(i == 0 ? "1" : (i == 1 ? "g" : "g" + std::to_string(i)));
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(names), std::move(t));
}

int FiniteGroup::index_of(const std::string& name) const {
  for (int i = 0; i < order(); ++i)
    if (elements_[i] == name) return i;
  throw GroupError("unknown group element: " + name);
}

namespace {

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows, b.cols);
  std::map<std::pair<int, int>, Scalar> acc;
  for (auto& ea : a.entries)
    for (auto& eb : b.entries)
      if (ea.col == eb.row) {
        Scalar t = ea.value * eb.value;
        auto [pos, fresh] = acc.try_emplace({ea.row, eb.col}, t);
        if (!fresh) pos->second = pos->second + t;
      }
  for (auto& [rc, v] : acc)
    if (!v.is_zero()) out.add(rc.first, rc.second, v);
  out.canonicalize();
  return out;
}

bool mat_eq(const Matrix& a, const Matrix& b) {
  Matrix x = a, y = b;
  x.canonicalize();
  y.canonicalize();
  if (x.rows != y.rows || x.cols != y.cols || x.entries.size() != y.entries.size()) return false;
  for (size_t i = 0; i < x.entries.size(); ++i)
    if (x.entries[i].row != y.entries[i].row || x.entries[i].col != y.entries[i].col ||
        !(x.entries[i].value == y.entries[i].value))
      return false;
  return true;
}

}  // namespace

GroupAlgebraRep GroupAlgebraRep::trivial(const FiniteGroup& g, const FieldSpec& f) {
  GroupAlgebraRep r;
  r.group = &g;
  r.field = f;
  r.dim = 1;
  for (int i = 0; i < g.order(); ++i) r.matrices.push_back(Matrix::identity(1, f));
  return r;
}

GroupAlgebraRep GroupAlgebraRep::sign_z2(const FiniteGroup& g, const FieldSpec& f) {
  if (g.order() != 2) throw GroupError("sign_z2 needs Z/2");
  GroupAlgebraRep r;
  r.group = &g;
  r.field = f;
  r.dim = 1;
  for (int i = 0; i < 2; ++i) {
    Matrix m(1, 1);
    m.add(0, 0, i == g.identity() ? Scalar::one(f) : -Scalar::one(f));
    r.matrices.push_back(m);
  }
  return r;
}

GroupAlgebraRep GroupAlgebraRep::regular(const FiniteGroup& g, const FieldSpec& f) {
  GroupAlgebraRep r;
  r.group = &g;
  r.field = f;
  r.dim = g.order();
  for (int a = 0; a < g.order(); ++a) {
    Matrix m(g.order(), g.order());
    // right regular action: basis e_h -> e_{h a}
    for (int h = 0; h < g.order(); ++h) m.add(g.mul(h, a), h, Scalar::one(f));
    m.canonicalize();
    r.matrices.push_back(m);
  }
  return r;
}

void GroupAlgebraRep::validate() const {
  if (!mat_eq(matrices[group->identity()], Matrix::identity(dim, field)))
    throw GroupError("rho(1) != Id");
  for (int a = 0; a < group->order(); ++a)
    for (int b = 0; b < group->order(); ++b)
      if (!mat_eq(mat_mul(matrices[a], matrices[b]), matrices[group->mul(a, b)]))
        throw GroupError("rho(a) rho(b) != rho(ab)");
}

AInfCategory group_algebra(const FiniteGroup& g, const FieldSpec& f) {
  DgCategoryData dg;
  dg.field = f;
  dg.objects = {"*"};
  for (int i = 0; i < g.order(); ++i) dg.gens.push_back({0, 0, 0, g.name(i)});
  dg.unit_labels = {g.name(g.identity())};
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      dg.product[{g.name(a), g.name(b)}] = {{g.mul(a, b), Scalar::one(f)}};
  AInfCategory cat = dg_to_ainf(dg);
  cat.set_max_arity(4);
  return cat;
}

CheckReport GammaCategoryAction::validate() const {
  const FiniteGroup& g = *group;
  int ng = cat.num_gens();
  auto apply = [&](int gi, int gen) { return gen_map[gi][gen]; };
  for (int a = 0; a < g.order(); ++a) {
    // permutation sanity + degree/type preservation
    for (int x = 0; x < ng; ++x) {
      auto [y, c] = apply(a, x);
      if (cat.gen(y).degree != cat.gen(x).degree)
        return {false, "action does not preserve degree"};
      if (obj_map[a][cat.gen(x).src] != cat.gen(y).src ||
          obj_map[a][cat.gen(x).dst] != cat.gen(y).dst)
        return {false, "action does not match the object permutation"};
      (void)c;
    }
  }
  int e = g.identity();
  for (int x = 0; x < ng; ++x) {
    auto [y, c] = apply(e, x);
    if (y != x || !c.is_one()) return {false, "identity does not act as identity"};
  }
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      for (int x = 0; x < ng; ++x) {
        auto [y1, c1] = apply(b, x);
        auto [y2, c2] = apply(a, y1);
        auto [y3, c3] = apply(g.mul(a, b), x);
        if (y2 != y3 || !(c1 * c2 == c3)) return {false, "action law g(h x) = (gh) x fails"};
      }
  // mu equivariance on stored tensors
  for (auto& [d, tensor] : cat.tensors()) {
    (void)d;
    for (auto& [args, out] : tensor) {
      for (int a = 0; a < g.order(); ++a) {
        GenTuple targs;
        Scalar coeff = Scalar::one(cat.field());
        for (int x : args) {
          auto [y, c] = apply(a, x);
          targs.push_back(y);
          coeff = coeff * c;
        }
        std::map<int, Scalar> acc;
        axpy_into(acc, cat.mu(targs), Scalar::one(cat.field()));
        for (auto& [b, v] : out) {
          auto [y, c] = apply(a, b);
          axpy_into(acc, {{y, -(coeff.inverse() * c * v)}},
                    Scalar::one(cat.field()));
        }
        // compare mu(g args) with g(out)/coeff normalization:
        // mu(g a_d, ..., g a_1) = g . mu(a_d, ..., a_1)
        std::map<int, Scalar> acc2;
        axpy_into(acc2, cat.mu(targs), Scalar::one(cat.field()));
        for (auto& [b, v] : out) {
          auto [y, c] = apply(a, b);
          axpy_into(acc2, {{y, -(coeff * v * c)}}, Scalar::one(cat.field()));
        }
        if (!collect(acc2).empty())
          return {false, "mu tensor not equivariant under the group action"};
      }
    }
  }
  return {};
}

OrbitCategory orbit_category(const GammaCategoryAction& up) {
  auto rep = up.validate();
  if (!rep.ok) throw GroupError("orbit_category: " + rep.failure);
  const FiniteGroup& g = *up.group;
  const AInfCategory& U = up.cat;

  OrbitCategory out;
  out.cat.set_field(U.field());
  out.cat.set_convention(U.convention());
  out.cat.set_max_arity(U.max_arity());

  // orbits of objects; representative = smallest index
  out.orbit_of_up_obj.assign(U.num_objects(), -1);
  std::vector<int> rep_of_orbit;
  for (int o = 0; o < U.num_objects(); ++o) {
    if (out.orbit_of_up_obj[o] >= 0) continue;
    int down = out.cat.add_object(U.object_name(o));
    rep_of_orbit.push_back(o);
    for (int a = 0; a < g.order(); ++a) out.orbit_of_up_obj[up.obj_map[a][o]] = down;
  }

  // generators: (group element a, up gen p) with p in Hom(a . rep(src), rep(dst))
  std::map<std::pair<int, int>, int> down_of;
  for (int a = 0; a < g.order(); ++a)
    for (int p = 0; p < U.num_gens(); ++p) {
      int src_orbit = out.orbit_of_up_obj[U.gen(p).src];
      int dst_orbit = out.orbit_of_up_obj[U.gen(p).dst];
      if (U.gen(p).dst != rep_of_orbit[dst_orbit]) continue;
      if (U.gen(p).src != up.obj_map[a][rep_of_orbit[src_orbit]]) continue;
      std::string label = U.gen(p).label + "@" + g.name(a);
      int id = out.cat.add_generator(src_orbit, dst_orbit, label, U.gen(p).degree);
      down_of[{a, p}] = id;
      out.down_gen.push_back({a, p});
    }
  for (int d = 0; d < out.cat.num_objects(); ++d) {
    int urep = rep_of_orbit[d];
    int uu = U.unit(urep);
    if (uu >= 0 && U.unit_is_strict(urep))
      out.cat.set_strict_unit(d, down_of.at({g.identity(), uu}));
  }

  // tensors by translation: mu_down((p_d,g_d),...,(p_1,g_1)) =
  //   (mu_up(p_d, g_d p_{d-1}, ..., (g_d...g_2) p_1), g_d...g_1)
  ChainEnumerator chains(out.cat, U.max_arity());
  for (int D = 1; D <= U.max_arity(); ++D) {
    for (const auto& t : chains.chains(D)) {
      GenTuple uargs;
      Scalar coeff = Scalar::one(U.field());
      int prefix = g.identity();  // product g_d ... g_{j+1}
      int total = g.identity();
      for (int j = 0; j < D; ++j) {
        auto [a, p] = out.down_gen[t[j]];
        auto [q, c] = up.gen_map[prefix][p];
        uargs.push_back(q);
        coeff = coeff * c;
        prefix = g.mul(prefix, a);
        total = g.mul(total, a);
      }
      SparseVec muv = U.mu(uargs);
      if (muv.empty()) continue;
      SparseVec down_out;
      for (auto& [b, v] : muv) down_out.push_back({down_of.at({total, b}), coeff * v});
      std::sort(down_out.begin(), down_out.end(),
                [](auto& x, auto& y) { return x.first < y.first; });
      out.cat.set_mu(t, down_out);
    }
  }
  return out;
}

CochainComplex invariants_complex(const CochainComplex& c, const ComplexGammaAction& act,
                                  const GroupAlgebraRep& rho0, const GroupAlgebraRep& rho1) {
  const FiniteGroup& g = *act.group;
  rho0.validate();
  rho1.validate();
  const FieldSpec& f = c.field();
  int n = c.space().dim();
  // action sanity: group law and equivariance of d
  for (int a = 0; a < g.order(); ++a) {
    for (int i = 0; i < n; ++i) {
      std::map<int, Scalar> acc;
      for (auto& [j, v] : c.differential()[i]) axpy_into(acc, act.maps[a][j], v);
      for (auto& [j, v] : act.maps[a][i]) axpy_into(acc, c.apply_d({{j, Scalar::one(f)}}), -v);
      if (!collect(acc).empty())
        throw ComplexError("invariants_complex: differential is not equivariant");
    }
  }
  // total space: x (x) phi_{ab}, phi_{ab} = E0_b* (x) E1_a
  int d0 = rho0.dim, d1 = rho1.dim;
  auto tid = [&](int x, int a, int b) { return (x * d1 + a) * d0 + b; };
  int total = n * d0 * d1;

  auto dense = [&](const Matrix& m) {
    std::vector<std::vector<Scalar>> out(m.rows,
                                         std::vector<Scalar>(m.cols, Scalar::zero(f)));
    for (auto& e : m.entries) out[e.row][e.col] = e.value;
    return out;
  };

  // invariance equations: for all group elements, (g . v) - v = 0
  Matrix eq(total * g.order(), total);
  for (int a = 0; a < g.order(); ++a) {
    auto m1 = dense(rho1.matrices[g.inv(a)]);
    auto m0 = dense(rho0.matrices[a]);
    for (int x = 0; x < n; ++x)
      for (int p = 0; p < d1; ++p)
        for (int q = 0; q < d0; ++q) {
          int col = tid(x, p, q);
          // g . (x (x) phi_{pq}) = (A_g x) (x) sum_{p',q'} m1[p'][p] m0[q][q'] phi_{p'q'}
          for (auto& [y, v] : act.maps[a][x])
            for (int p2 = 0; p2 < d1; ++p2)
              for (int q2 = 0; q2 < d0; ++q2) {
                Scalar cval = v * m1[p2][p] * m0[q][q2];
                if (!cval.is_zero()) eq.add(a * total + tid(y, p2, q2), col, cval);
              }
          eq.add(a * total + col, col, -Scalar::one(f));
        }
  }
  eq.canonicalize();
  auto inv_basis = kernel_basis(eq, f);

  GradedSpace space;
  for (size_t i = 0; i < inv_basis.size(); ++i) {
    int deg = c.space().degree(inv_basis[i][0].first / (d0 * d1));
    for (auto& [t, v] : inv_basis[i])
      if (c.space().degree(t / (d0 * d1)) != deg)
        throw ComplexError("invariant vector not homogeneous");
    space.add("inv" + std::to_string(i), deg);
  }
  // restricted differential, in invariant coordinates
  Matrix B(total, (int)inv_basis.size());
  for (size_t j = 0; j < inv_basis.size(); ++j)
    for (auto& [t, v] : inv_basis[j]) B.add(t, (int)j, v);
  B.canonicalize();
  std::vector<SparseVec> diff(inv_basis.size());
  for (size_t j = 0; j < inv_basis.size(); ++j) {
    std::map<int, Scalar> acc;
    for (auto& [t, v] : inv_basis[j]) {
      int x = t / (d0 * d1), rest = t % (d0 * d1);
      for (auto& [y, w] : c.differential()[x]) {
        auto [pos, fresh] = acc.try_emplace(y * d0 * d1 + rest, v * w);
        if (!fresh) pos->second = pos->second + v * w;
      }
    }
    auto img = collect(acc);
    auto x = solve(B, img, f);
    if (!x) throw ComplexError("differential does not preserve invariants");
    diff[j] = *x;
  }
  return CochainComplex(std::move(space), f, std::move(diff));
}

void GammaDgModule::validate() const {
  const FieldSpec& f = field;
  int n = space.dim();
  // d^2 = 0 and degree +1
  for (int i = 0; i < n; ++i) {
    for (auto& [j, v] : differential[i]) {
      if (space.degree(j) != space.degree(i) + 1)
        throw ComplexError("GammaDgModule: differential not degree +1");
      (void)v;
    }
  }
  for (int a = 0; a < group->order(); ++a) {
    // action commutes with d; action law
    for (int i = 0; i < n; ++i) {
      std::map<int, Scalar> acc;
      for (auto& [j, v] : differential[i]) axpy_into(acc, right_act[a][j], v);
      for (auto& [j, v] : right_act[a][i])
        for (auto& [k, w] : differential[j]) {
          auto [pos, fresh] = acc.try_emplace(k, -(v * w));
          if (!fresh) pos->second = pos->second - v * w;
        }
      if (!collect(acc).empty())
        throw ComplexError("GammaDgModule: action does not commute with differential");
    }
    for (int b = 0; b < group->order(); ++b)
      for (int i = 0; i < n; ++i) {
        std::map<int, Scalar> acc;
        for (auto& [j, v] : right_act[a][i]) axpy_into(acc, right_act[b][j], v);
        axpy_into(acc, right_act[group->mul(a, b)][i], -Scalar::one(f));
        if (!collect(acc).empty())
          throw ComplexError("GammaDgModule: (v a) b != v (ab)");
      }
  }
}

CheckReport gamma_actions_check(const OrbitModel& m) {
  const FiniteGroup& g = m.group;
  const AInfCategory& cat = m.cat;
  Scalar one = Scalar::one(cat.field());
  auto lact = [&](int a, int x) { return m.left(a, x); };
  auto ract = [&](int a, int x) { return m.right(a, x); };
  // strict action laws
  for (int x = 0; x < cat.num_gens(); ++x) {
    if (cat.gen(x).dst == m.obj_P) {
      auto [y, c] = lact(g.identity(), x);
      if (y != x || !c.is_one()) return {false, "left action: identity fails"};
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
          auto [y1, c1] = lact(b, x);
          auto [y2, c2] = lact(a, y1);
          auto [y3, c3] = lact(g.mul(a, b), x);
          if (y2 != y3 || !(c1 * c2 == c3)) return {false, "left action law g(h psi) fails"};
        }
    }
    if (cat.gen(x).src == m.obj_P) {
      auto [y, c] = ract(g.identity(), x);
      if (y != x || !c.is_one()) return {false, "right action: identity fails"};
      for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
          auto [y1, c1] = ract(a, x);
          auto [y2, c2] = ract(b, y1);
          auto [y3, c3] = ract(g.mul(a, b), x);
          if (y2 != y3 || !(c1 * c2 == c3)) return {false, "right action law (psi a) b fails"};
        }
    }
  }
  // the two actions commute on hom(P, P)
  for (int x = 0; x < cat.num_gens(); ++x) {
    if (cat.gen(x).src != m.obj_P || cat.gen(x).dst != m.obj_P) continue;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b) {
        auto [y1, c1] = lact(a, x);
        auto [y2, c2] = ract(b, y1);
        auto [z1, d1] = ract(b, x);
        auto [z2, d2] = lact(a, z1);
        if (y2 != z2 || !(c1 * c2 == d1 * d2))
          return {false, "left and right actions do not commute on hom(P,P)"};
      }
  }
  // mu^2 compatibility: mu(psi2 . a, psi1) = mu(psi2, a . psi1)
  for (int p2 = 0; p2 < cat.num_gens(); ++p2) {
    if (cat.gen(p2).src != m.obj_P) continue;
    for (int p1 = 0; p1 < cat.num_gens(); ++p1) {
      if (cat.gen(p1).dst != m.obj_P) continue;
      for (int a = 0; a < g.order(); ++a) {
        auto [q2, c2] = ract(a, p2);
        auto [q1, c1] = lact(a, p1);
        std::map<int, Scalar> acc;
        axpy_into(acc, cat.mu({q2, p1}), c2);
        axpy_into(acc, cat.mu({p2, q1}), -c1);
        if (!collect(acc).empty()) return {false, "mu^2(psi2 a, psi1) != mu^2(psi2, a psi1)"};
      }
    }
  }
  // action compatibility with mu^{d} in the outer slots, arity <= 3
  ChainEnumerator chains(cat, 2);
  for (int x = 0; x < cat.num_gens(); ++x) {
    if (cat.gen(x).dst == m.obj_P) {
      for (int len = 1; len <= 2; ++len)
        for (const auto& c : chains.chains(len)) {
          if (cat.gen(c.front()).dst != cat.gen(x).src) continue;
          for (int a = 0; a < g.order(); ++a) {
            // mu(g x, chain) = g mu(x, chain), coefficients folded in
            auto [y, cf] = lact(a, x);
            GenTuple t1;
            t1.push_back(y);
            t1.insert(t1.end(), c.begin(), c.end());
            GenTuple t0;
            t0.push_back(x);
            t0.insert(t0.end(), c.begin(), c.end());
            std::map<int, Scalar> acc;
            axpy_into(acc, cat.mu(t1), one);
            for (auto& [b, v] : cat.mu(t0)) {
              auto [bb, cb] = lact(a, b);
              axpy_into(acc, {{bb, cf * v * cb}}, -one);
            }
            if (!collect(acc).empty())
              return {false, "left action incompatible with module-side mu"};
          }
        }
    }
  }
  return {};
}

GammaDgModule hom_from_P(const OrbitModel& m, int obj_E) {
  GammaDgModule v;
  v.group = &m.group;
  v.field = m.cat.field();
  auto gens = m.cat.hom_gens(m.obj_P, obj_E);
  std::map<int, int> local;
  for (int gid : gens) {
    local[gid] = v.space.dim();
    v.space.add(m.cat.gen(gid).label, m.cat.gen(gid).degree);
  }
  v.differential.resize(gens.size());
  for (size_t i = 0; i < gens.size(); ++i)
    for (auto& [b, c] : m.cat.mu({gens[(int)i]})) v.differential[i].push_back({local.at(b), c});
  v.right_act.assign(m.group.order(), std::vector<SparseVec>(gens.size()));
  for (int a = 0; a < m.group.order(); ++a)
    for (size_t i = 0; i < gens.size(); ++i) {
      auto [y, c] = m.right(a, gens[i]);
      v.right_act[a][i] = {{local.at(y), c}};
    }
  v.validate();
  return v;
}

namespace {

// factorization data of the free left action on hom(X, P) generators:
// gen -> (group element, orbit representative, coefficient)
struct LeftOrbits {
  std::vector<int> reps;                             // representative gens
  std::map<int, std::tuple<int, int, Scalar>> fact;  // gen -> (a, rep index, coeff)
};

LeftOrbits left_orbits(const OrbitModel& m, int obj_X) {
  LeftOrbits out;
  auto gens = m.cat.hom_gens(obj_X, m.obj_P);
  std::vector<bool> seen(m.cat.num_gens(), false);
  for (int gid : gens) {
    if (seen[gid]) continue;
    int rep_idx = (int)out.reps.size();
    out.reps.push_back(gid);
    for (int a = 0; a < m.group.order(); ++a) {
      auto [y, c] = m.left(a, gid);
      if (out.fact.count(y)) {
        auto& [a0, r0, c0] = out.fact[y];
        if (r0 != rep_idx || a0 != a)
          throw AInfError("tensor_over_gamma: left action on basis is not free");
      }
      out.fact[y] = {a, rep_idx, c};
      seen[y] = true;
    }
  }
  return out;
}

}  // namespace

RightModule tensor_over_gamma(const OrbitModel& m, const GammaDgModule& v,
                              const std::string& tag) {
  const AInfCategory& cat = m.cat;
  v.validate();
  RightModule out(cat);
  Scalar one = Scalar::one(cat.field());

  std::vector<LeftOrbits> orbits(cat.num_objects());
  // elements: (v_i, rep r) per object
  std::map<std::pair<int, int>, int> elem_of;  // (v index, rep gen) -> elem id
  for (int obj = 0; obj < cat.num_objects(); ++obj) {
    orbits[obj] = left_orbits(m, obj);
    for (int r : orbits[obj].reps)
      for (int i = 0; i < v.space.dim(); ++i)
        elem_of[{i, r}] =
            out.add_element(obj, tag + ":" + v.space.label(i) + "(x)" + cat.gen(r).label,
                            v.space.degree(i) + cat.gen(r).degree);
  }
  // express v_i (x) psi in the quotient basis: psi = c * (a . rep) gives
  // v (x) psi = c * (v . a) (x) rep
  auto express = [&](int obj, int vi, int psi, const Scalar& coeff) {
    auto& [a, ridx, c] = orbits[obj].fact.at(psi);
    int r = orbits[obj].reps[ridx];
    SparseVec outv;
    for (auto& [vj, cv] : v.right_act[a][vi])
      outv.push_back({elem_of.at({vj, r}), coeff * c * cv});
    return outv;
  };

  ChainEnumerator chains(cat, cat.max_arity() - 1);
  for (int obj = 0; obj < cat.num_objects(); ++obj) {
    for (int r : orbits[obj].reps)
      for (int i = 0; i < v.space.dim(); ++i) {
        int me = elem_of.at({i, r});
        // differential: (-1)^{|psi|-1} dv (x) psi + v (x) mu^1(psi)
        std::map<int, Scalar> acc;
        Scalar s = (cat.gen(r).degree - 1) % 2 == 0 ? one : -one;
        for (auto& [vj, cv] : v.differential[i])
          axpy_into(acc, {{elem_of.at({vj, r}), s * cv}}, one);
        for (auto& [b, cb] : cat.mu({r})) axpy_into(acc, express(obj, i, b, cb), one);
        out.set_action(me, {}, collect(acc));
        // actions: v (x) mu^{d+1}(psi, a_d, ..., a_1)
        for (int d = 1; d <= cat.max_arity() - 1; ++d)
          for (const auto& ch : chains.chains(d)) {
            if (cat.gen(ch.front()).dst != obj) continue;
            GenTuple full;
            full.push_back(r);
            full.insert(full.end(), ch.begin(), ch.end());
            SparseVec muv = cat.mu(full);
            if (muv.empty()) continue;
            std::map<int, Scalar> a2;
            int obj0 = cat.gen(ch.back()).src;
            for (auto& [b, cb] : muv) axpy_into(a2, express(obj0, i, b, cb), one);
            out.set_action(me, ch, collect(a2));
          }
      }
  }
  return out;
}

namespace {

// orbit structure of the free right action on V's basis
struct RightOrbits {
  std::vector<int> reps;  // representative basis indices
  // basis index -> (group element, rep index, coeff): v_i = coeff * (rep . g)
  std::map<int, std::tuple<int, int, Scalar>> fact;
};

RightOrbits right_orbits(const GammaDgModule& v) {
  RightOrbits out;
  std::vector<bool> seen(v.space.dim(), false);
  for (int i = 0; i < v.space.dim(); ++i) {
    if (seen[i]) continue;
    int rep_idx = (int)out.reps.size();
    out.reps.push_back(i);
    for (int a = 0; a < v.group->order(); ++a) {
      const SparseVec& img = v.right_act[a][i];
      if (img.size() != 1)
        throw AInfError("tensor_over_gamma_presented: right action not free on the basis");
      auto [j, c] = img[0];
      if (out.fact.count(j)) {
        auto& [a0, r0, c0] = out.fact[j];
        if (r0 != rep_idx)
          throw AInfError("tensor_over_gamma_presented: right action not free on the basis");
        continue;
      }
      out.fact[j] = {a, rep_idx, c};
      seen[j] = true;
    }
  }
  return out;
}

}  // namespace

PresentedModule tensor_over_gamma_presented(const OrbitModel& m, const GammaDgModule& v,
                                            const std::string& tag) {
  const AInfCategory& cat = m.cat;
  v.validate();
  Scalar one = Scalar::one(cat.field());
  RightOrbits orb = right_orbits(v);

  TwPresentation pres;
  for (int r : orb.reps) pres.gens.push_back({m.obj_P, -v.space.degree(r)});

  // theta elements realizing the left action: g . psi = mu^2-composition
  // with theta_g; locate them via the model's left action on the unit of P
  int eP = cat.unit(m.obj_P);
  std::vector<int> theta(m.group.order());
  std::vector<Scalar> theta_coeff(m.group.order(), one);
  for (int a = 0; a < m.group.order(); ++a) {
    auto [t, c] = m.left(a, eP);
    theta[a] = t;
    theta_coeff[a] = c;
  }
  // connection from the V differential: d(v_rep[alpha]) = sum c_j v_j with
  // v_j = cj' * (v_rep[beta] . g): delta_{beta,alpha} -= c_j cj' theta_g
  for (size_t alpha = 0; alpha < orb.reps.size(); ++alpha) {
    std::map<int, std::map<int, Scalar>> acc;  // beta -> hom elements
    for (auto& [j, c] : v.differential[orb.reps[alpha]]) {
      auto& [a, beta, cj] = orb.fact.at(j);
      Scalar coeff = -(c * cj * theta_coeff[a]);
      auto [pos, fresh] = acc[beta].try_emplace(theta[a], coeff);
      if (!fresh) pos->second = pos->second + coeff;
    }
    for (auto& [beta, ents] : acc) {
      SparseVec d = collect(ents);
      if (!d.empty()) pres.delta[{(int)beta, (int)alpha}] = d;
    }
  }

  // the module itself, on the basis (alpha, psi), by the Section 2 formulas
  RightModule mod(cat);
  std::map<std::pair<int, int>, int> elem_of;
  for (size_t alpha = 0; alpha < orb.reps.size(); ++alpha)
    for (int g = 0; g < cat.num_gens(); ++g)
      if (cat.gen(g).dst == m.obj_P)
        elem_of[{(int)alpha, g}] = mod.add_element(
            cat.gen(g).src, "g" + std::to_string(alpha) + ":" + cat.gen(g).label,
            v.space.degree(orb.reps[alpha]) + cat.gen(g).degree);
  ChainEnumerator chains(cat, cat.max_arity() - 1);
  for (auto& [key, me] : elem_of) {
    auto [alpha, psi] = key;
    int obj = cat.gen(psi).src;
    // differential: (-1)^{|psi|-1} dV (x) psi + (alpha, mu^1 psi)
    std::map<int, Scalar> acc;
    Scalar s = (cat.gen(psi).degree - 1) % 2 == 0 ? one : -one;
    for (auto& [j, c] : v.differential[orb.reps[alpha]]) {
      auto& [a, beta, cj] = orb.fact.at(j);
      // v_j (x) psi = cj * (v_beta . g) (x) psi = cj * v_beta (x) (g . psi)
      auto [gp, cg] = m.left(a, psi);
      auto [pos, fresh] = acc.try_emplace(elem_of.at({beta, gp}), s * c * cj * cg);
      if (!fresh) pos->second = pos->second + s * c * cj * cg;
    }
    for (auto& [b, c] : cat.mu({psi})) {
      auto [pos, fresh] = acc.try_emplace(elem_of.at({alpha, b}), c);
      if (!fresh) pos->second = pos->second + c;
    }
    mod.set_action(me, {}, collect(acc));
    // actions: (alpha, mu^{d+1}(psi, a_d..a_1))
    for (int d = 1; d <= cat.max_arity() - 1; ++d)
      for (const auto& ch : chains.chains(d)) {
        if (cat.gen(ch.front()).dst != obj) continue;
        GenTuple full;
        full.push_back(psi);
        full.insert(full.end(), ch.begin(), ch.end());
        SparseVec muv = cat.mu(full);
        if (muv.empty()) continue;
        SparseVec outv;
        for (auto& [b, c] : muv) outv.push_back({elem_of.at({(int)alpha, b}), c});
        mod.set_action(me, ch, outv);
      }
  }
  return PresentedModule(std::move(mod), std::move(pres));
}

std::unique_ptr<EquivariantEv> equivariant_ev(const OrbitModel& m, int obj_E) {
  const AInfCategory& cat = m.cat;
  GammaDgModule v = hom_from_P(m, obj_E);
  RightOrbits orb = right_orbits(v);
  auto homPE = cat.hom_gens(m.obj_P, obj_E);

  auto out = std::make_unique<EquivariantEv>(
      EquivariantEv{tensor_over_gamma_presented(m, v, "t"),
                    PresentedModule(yoneda(cat, obj_E), yoneda_presentation(cat, obj_E)),
                    {}});
  out->ev.src = &out->source.module;
  out->ev.dst = &out->target.module;
  out->ev.degree = 0;

  std::map<std::string, int> tgt_of_label;
  for (int e = 0; e < out->target.module.num_elems(); ++e)
    tgt_of_label[out->target.module.elem(e).label] = e;

  // source elements are (alpha, psi) with label "g<alpha>:<psi label>"
  ChainEnumerator chains(cat, std::max(0, cat.max_arity() - 2));
  for (int me = 0; me < out->source.module.num_elems(); ++me) {
    const std::string& lbl = out->source.module.elem(me).label;
    auto colon = lbl.find(':');
    int alpha = std::stoi(lbl.substr(1, colon - 1));
    int psi1 = cat.gen_index(lbl.substr(colon + 1));
    int psi2 = homPE[(size_t)orb.reps[alpha]];
    {
      SparseVec img;
      for (auto& [b, c] : cat.mu({psi2, psi1}))
        img.push_back({tgt_of_label.at(cat.gen(b).label), c});
      out->ev.add_component(me, {}, img);
    }
    for (int k = 1; k <= cat.max_arity() - 2; ++k)
      for (const auto& ch : chains.chains(k)) {
        if (cat.gen(ch.front()).dst != cat.gen(psi1).src) continue;
        GenTuple full = {psi2, psi1};
        full.insert(full.end(), ch.begin(), ch.end());
        SparseVec muv = cat.mu(full);
        if (muv.empty()) continue;
        SparseVec img;
        for (auto& [b, c] : muv) img.push_back({tgt_of_label.at(cat.gen(b).label), c});
        out->ev.add_component(me, ch, img);
      }
  }
  return out;
}

PresentedModule twist_cone(const OrbitModel& m, int obj_E, int check_arity) {
  auto ev = equivariant_ev(m, obj_E);
  RightModule cone = cone_module(ev->ev, check_arity);
  TwPresentation pres =
      cone_presentation(ev->source.pres, ev->target.pres, ev->ev, m.cat);
  return PresentedModule(std::move(cone), std::move(pres));
}

std::vector<Scalar> character_idempotent(const FiniteGroup& g, const FieldSpec& f,
                                         const std::vector<Scalar>& chi) {
  if (!f.is_rational() && g.order() % f.characteristic == 0)
    throw FieldError("no idempotent splitting: characteristic divides the group order");
  Scalar inv_order = Scalar::from_int(g.order(), f).inverse();
  std::vector<Scalar> e(g.order(), Scalar::zero(f));
  for (int a = 0; a < g.order(); ++a) e[a] = inv_order * chi[g.inv(a)];
  return e;
}

RightModule local_system_object(const OrbitModel& m, const GroupAlgebraRep& rep,
                                const std::string& tag) {
  if (rep.dim != 1) throw GroupError("local_system_object expects a rank-1 representation");
  const FieldSpec& f = m.cat.field();
  std::vector<Scalar> chi(m.group.order());
  for (int a = 0; a < m.group.order(); ++a) {
    chi[a] = Scalar::zero(f);
    for (auto& e : rep.matrices[a].entries) chi[a] = e.value;
  }
  auto idem = character_idempotent(m.group, f, chi);
  RightModule Y = yoneda(m.cat, m.obj_P);
  // projector: psi -> sum_a idem[a] * (a . psi), in global element ids
  std::vector<std::vector<SparseVec>> proj(m.cat.num_objects());
  std::map<std::string, int> elem_of_label;
  for (int e = 0; e < Y.num_elems(); ++e) elem_of_label[Y.elem(e).label] = e;
  for (int obj = 0; obj < m.cat.num_objects(); ++obj) {
    auto ids = Y.elems_at(obj);
    proj[obj].resize(ids.size());
    for (size_t i = 0; i < ids.size(); ++i) {
      int gen = m.cat.gen_index(Y.elem(ids[i]).label);
      std::map<int, Scalar> acc;
      for (int a = 0; a < m.group.order(); ++a) {
        auto [y, c] = m.left(a, gen);
        axpy_into(acc, {{elem_of_label.at(m.cat.gen(y).label), c}}, idem[a]);
      }
      proj[obj][i] = collect(acc);
    }
  }
  return submodule_from_projector(Y, proj, tag);
}

}  // namespace twistcat
