#include "twistcat/modules.hpp"

#include <algorithm>
#include <sstream>

namespace twistcat {

namespace {

int reduced_chain_sum(const AInfCategory& cat, const GenTuple& t, size_t from, size_t to) {
  int s = 0;
  for (size_t i = from; i < to; ++i) s += cat.reduced_degree(t[i]);
  return s;
}

std::string mod_tuple_str(const RightModule& m, int e, const GenTuple& t) {
  std::string s = "(" + m.elem(e).label;
  for (int g : t) s += ", " + m.cat().gen(g).label;
  return s + ")";
}

}  // namespace

RightModule::RightModule(const AInfCategory& cat) : cat_(&cat) {}

int RightModule::add_element(int obj, const std::string& label, int degree) {
  for (auto& e : elems_)
    if (e.obj == obj && e.label == label)
      throw AInfError("duplicate module element label at object: " + label);
  elems_.push_back({obj, degree, label});
  return (int)elems_.size() - 1;
}

std::vector<int> RightModule::elems_at(int obj) const {
  std::vector<int> out;
  for (int i = 0; i < num_elems(); ++i)
    if (elems_[i].obj == obj) out.push_back(i);
  return out;
}

GradedSpace RightModule::value_space(int obj) const {
  GradedSpace s;
  for (int i : elems_at(obj)) s.add(elems_[i].label, elems_[i].degree);
  return s;
}

void RightModule::set_action(int m, const GenTuple& args, SparseVec out) {
  out = normalized(out);
  if (out.empty()) return;
  int d = (int)args.size();
  if (d > 0) {
    if (!cat_->composable(args)) throw AInfError("module action on non-composable chain");
    if (cat_->gen(args.front()).dst != elems_[m].obj)
      throw AInfError("module action chain does not end at the element's object");
    for (int a : args)
      if (cat_->is_unit_gen(a))
        throw AInfError("unit-slot module actions are synthesized, not stored");
  }
  int src_obj = d == 0 ? elems_[m].obj : cat_->gen(args.back()).src;
  int want = elems_[m].degree + 2 - (1 + d);
  for (int a : args) want += cat_->gen(a).degree;
  for (auto& [e, v] : out) {
    if (elems_[e].obj != src_obj)
      throw AInfError("module action output at wrong object: " + mod_tuple_str(*this, m, args));
    if (elems_[e].degree != want)
      throw AInfError("module action of wrong degree: " + mod_tuple_str(*this, m, args));
    (void)v;
  }
  max_len_ = std::max(max_len_, d);
  act_[{m, args}] = std::move(out);
}

SparseVec RightModule::action(int m, const GenTuple& args) const {
  int d = (int)args.size();
  if (d == 1 && cat_->is_unit_gen(args[0])) {
    if (cat_->gen(args[0]).dst != elems_[m].obj) return {};
    return {{m, Scalar::one(field())}};  // mu^{1|1}(m, e) = m
  }
  if (d >= 2)
    for (int a : args)
      if (cat_->is_unit_gen(a)) return {};
  auto it = act_.find({m, args});
  return it == act_.end() ? SparseVec{} : it->second;
}

CochainComplex RightModule::value_complex(int obj) const {
  auto ids = elems_at(obj);
  GradedSpace s = value_space(obj);
  std::map<int, int> local;
  for (size_t i = 0; i < ids.size(); ++i) local[ids[i]] = (int)i;
  std::vector<SparseVec> d(s.dim());
  for (size_t i = 0; i < ids.size(); ++i) {
    SparseVec col;
    for (auto& [e, v] : action(ids[i], {})) col.push_back({local.at(e), v});
    std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
    d[i] = std::move(col);
  }
  return CochainComplex(std::move(s), field(), std::move(d));
}

long RightModule::euler_char(int obj) const {
  long chi = 0;
  for (int i : elems_at(obj)) chi += elems_[i].degree % 2 == 0 ? 1 : -1;
  return chi;
}

namespace {

// module relation sum at (m, a_D..a_1); empty result means the relation holds
std::map<int, Scalar> module_relation_sum(const RightModule& M, int m, const GenTuple& t) {
  const AInfCategory& cat = M.cat();
  int D = (int)t.size();
  Scalar one = Scalar::one(M.field());
  std::map<int, Scalar> acc;
  // (A) two module actions
  for (int k = 0; k <= D; ++k) {
    GenTuple left(t.begin(), t.begin() + (D - k));
    GenTuple right(t.begin() + (D - k), t.end());
    SparseVec mid = M.action(m, left);
    if (mid.empty()) continue;
    int sgn = reduced_chain_sum(cat, t, D - k, t.size()) % 2;
    Scalar c0 = sgn ? -one : one;
    for (auto& [e, c] : mid) axpy_into(acc, M.action(e, right), c0 * c);
  }
  // (B) inner category application
  for (int mm = 1; mm <= D; ++mm)
    for (int n = 0; n + mm <= D; ++n) {
      size_t lo = D - (n + mm), hi = (size_t)(D - n);
      GenTuple inner(t.begin() + lo, t.begin() + hi);
      SparseVec mid = cat.mu(inner);
      if (mid.empty()) continue;
      int sgn = reduced_chain_sum(cat, t, hi, t.size()) % 2;
      Scalar c0 = sgn ? -one : one;
      // unit outputs of mu_A are handled by the synthesized unit action
      // (length-one unit chain acts as the identity, longer ones vanish)
      for (auto& [b, c] : mid) {
        GenTuple outer(t.begin(), t.begin() + lo);
        outer.push_back(b);
        outer.insert(outer.end(), t.begin() + hi, t.end());
        axpy_into(acc, M.action(m, outer), c0 * c);
      }
    }
  return acc;
}

}  // namespace

int RightModule::relation_arity_bound() const {
  int max_act = std::max(1, max_len_);
  int max_mu = 0;
  for (int a : cat_->effective_arities()) max_mu = std::max(max_mu, a);
  return std::max({2 * max_act, max_act + max_mu - 1, max_mu});
}

CheckReport check_module(const RightModule& m, int arity) {
  const AInfCategory& cat = m.cat();
  arity = std::min(arity, m.relation_arity_bound());
  ChainEnumerator chains(cat, arity);
  for (int e = 0; e < m.num_elems(); ++e) {
    // D = 0: d^2 = 0
    std::map<int, Scalar> acc;
    for (auto& [f, v] : m.action(e, {})) axpy_into(acc, m.action(f, {}), v);
    if (!collect(acc).empty())
      return {false, "module d^2 != 0 at " + m.elem(e).label};
    for (int D = 1; D <= arity; ++D) {
      for (const auto& t : chains.chains(D)) {
        if (cat.gen(t.front()).dst != m.elem(e).obj) continue;
        auto sum = module_relation_sum(m, e, t);
        if (!collect(sum).empty())
          return {false, "module relation fails at " + mod_tuple_str(m, e, t)};
      }
    }
  }
  return {};
}

void ModuleMorphism::add_component(int m, const GenTuple& args, const SparseVec& vin) {
  SparseVec v = normalized(vin);
  if (v.empty()) return;
  auto [it, fresh] = comps.try_emplace({m, args}, v);
  if (!fresh) {
    std::map<int, Scalar> acc;
    axpy_into(acc, it->second, Scalar::one(v[0].second.field()));
    axpy_into(acc, v, Scalar::one(v[0].second.field()));
    it->second = collect(acc);
    if (it->second.empty()) comps.erase(it);
  }
}

ModuleMorphism identity_morphism(const RightModule& m) {
  ModuleMorphism t;
  t.src = &m;
  t.dst = &m;
  t.degree = 0;
  for (int e = 0; e < m.num_elems(); ++e)
    t.comps[{e, {}}] = {{e, Scalar::one(m.field())}};
  return t;
}

ModuleMorphism zero_morphism(const RightModule& src, const RightModule& dst) {
  ModuleMorphism t;
  t.src = &src;
  t.dst = &dst;
  t.degree = 0;
  return t;
}

RightModule convention_twist(const RightModule& m) {
  RightModule out(m.cat());
  for (int e = 0; e < m.num_elems(); ++e)
    out.add_element(m.elem(e).obj, m.elem(e).label, m.elem(e).degree);
  Scalar one = Scalar::one(m.field());
  for (auto& [key, v] : m.actions()) {
    int sgn = 1 + reduced_chain_sum(m.cat(), key.second, 0, key.second.size());
    SparseVec tv = v;
    if (sgn % 2) {
      for (auto& [e, c] : tv) c = -c;
    }
    out.set_action(key.first, key.second, tv);
  }
  return out;
}

RightModule shift(const RightModule& m, int by) {
  RightModule out(m.cat());
  for (int e = 0; e < m.num_elems(); ++e)
    out.add_element(m.elem(e).obj, m.elem(e).label, m.elem(e).degree - by);
  for (auto& [key, v] : m.actions()) out.set_action(key.first, key.second, v);
  return out;
}

RightModule yoneda(const AInfCategory& cat, int obj) {
  RightModule out(cat);
  std::vector<int> elem_of_gen(cat.num_gens(), -1);
  for (int g = 0; g < cat.num_gens(); ++g)
    if (cat.gen(g).dst == obj)
      elem_of_gen[g] = out.add_element(cat.gen(g).src, cat.gen(g).label, cat.gen(g).degree);
  int max_len = std::max(0, cat.max_arity() - 1);
  ChainEnumerator chains(cat, max_len);
  for (int g = 0; g < cat.num_gens(); ++g) {
    if (elem_of_gen[g] < 0) continue;
    // d = 0 differential
    {
      SparseVec col;
      for (auto& [b, v] : cat.mu({g})) col.push_back({elem_of_gen[b], v});
      out.set_action(elem_of_gen[g], {}, col);
    }
    for (int d = 1; d <= max_len; ++d)
      for (const auto& c : chains.chains(d)) {
        if (cat.gen(c.front()).dst != cat.gen(g).src) continue;
        GenTuple full;
        full.push_back(g);
        full.insert(full.end(), c.begin(), c.end());
        SparseVec muv = cat.mu(full);
        if (muv.empty()) continue;
        SparseVec col;
        for (auto& [b, v] : muv) col.push_back({elem_of_gen[b], v});
        out.set_action(elem_of_gen[g], c, col);
      }
  }
  return out;
}

namespace {

RightModule build_cone(const ModuleMorphism& t) {
  const RightModule& M = *t.src;
  const RightModule& N = *t.dst;
  RightModule out(M.cat());
  std::vector<int> mpart(M.num_elems()), npart(N.num_elems());
  for (int e = 0; e < M.num_elems(); ++e)
    mpart[e] = out.add_element(M.elem(e).obj, "c0:" + M.elem(e).label, M.elem(e).degree - 1);
  for (int e = 0; e < N.num_elems(); ++e)
    npart[e] = out.add_element(N.elem(e).obj, "c1:" + N.elem(e).label, N.elem(e).degree);

  std::map<std::pair<int, GenTuple>, std::map<int, Scalar>> acc;
  for (auto& [key, v] : M.actions())
    for (auto& [e, c] : v) acc[{mpart[key.first], key.second}][mpart[e]] = c;
  for (auto& [key, v] : N.actions())
    for (auto& [e, c] : v) acc[{npart[key.first], key.second}][npart[e]] = c;
  for (auto& [key, v] : t.comps)
    for (auto& [e, c] : v) {
      auto& slot = acc[{mpart[key.first], key.second}];
      auto [pos, fresh] = slot.try_emplace(npart[e], c);
      if (!fresh) pos->second = pos->second + c;
    }
  for (auto& [key, m2] : acc) out.set_action(key.first, key.second, collect(m2));
  return out;
}

}  // namespace

CheckReport check_closed0(const ModuleMorphism& t, int arity) {
  if (t.degree != 0) return {false, "morphism is not of degree 0"};
  RightModule cone = build_cone(t);
  return check_module(cone, arity);
}

RightModule cone_module(const ModuleMorphism& t, int check_arity) {
  auto rep = check_closed0(t, check_arity);
  if (!rep.ok)
    throw AInfError("cone_module: morphism is not closed (" + rep.failure + ")");
  return build_cone(t);
}

RightModule direct_sum(const RightModule& a, const RightModule& b) {
  RightModule out(a.cat());
  std::vector<int> am(a.num_elems()), bm(b.num_elems());
  for (int e = 0; e < a.num_elems(); ++e)
    am[e] = out.add_element(a.elem(e).obj, "l:" + a.elem(e).label, a.elem(e).degree);
  for (int e = 0; e < b.num_elems(); ++e)
    bm[e] = out.add_element(b.elem(e).obj, "r:" + b.elem(e).label, b.elem(e).degree);
  for (auto& [key, v] : a.actions()) {
    SparseVec w;
    for (auto& [e, c] : v) w.push_back({am[e], c});
    out.set_action(am[key.first], key.second, w);
  }
  for (auto& [key, v] : b.actions()) {
    SparseVec w;
    for (auto& [e, c] : v) w.push_back({bm[e], c});
    out.set_action(bm[key.first], key.second, w);
  }
  return out;
}

RightModule submodule_from_projector(const RightModule& m,
                                     const std::vector<std::vector<SparseVec>>& proj,
                                     const std::string& tag) {
  const AInfCategory& cat = m.cat();
  // per object: independent image vectors in module-element coordinates
  std::vector<std::vector<SparseVec>> basis(cat.num_objects());
  for (int obj = 0; obj < cat.num_objects(); ++obj) {
    auto ids = m.elems_at(obj);
    SpanTracker span(m.num_elems(), m.field());
    for (size_t i = 0; i < ids.size(); ++i) {
      const SparseVec& img = proj[obj][i];  // in global element ids
      if (span.insert(img)) basis[obj].push_back(img);
    }
  }
  RightModule out(cat);
  std::vector<std::vector<int>> sub_ids(cat.num_objects());
  for (int obj = 0; obj < cat.num_objects(); ++obj)
    for (size_t i = 0; i < basis[obj].size(); ++i) {
      int deg = m.elem(basis[obj][i][0].first).degree;
      for (auto& [e, v] : basis[obj][i])
        if (m.elem(e).degree != deg) throw AInfError("projector image not homogeneous");
      sub_ids[obj].push_back(
          out.add_element(obj, tag + ":" + std::to_string(i) + "@" + cat.object_name(obj), deg));
    }
  // express action outputs in the sub-basis
  auto to_sub = [&](int obj, const SparseVec& v) -> SparseVec {
    if (v.empty()) return {};
    Matrix B(m.num_elems(), (int)basis[obj].size());
    for (size_t j = 0; j < basis[obj].size(); ++j)
      for (auto& [e, c] : basis[obj][j]) B.add(e, (int)j, c);
    B.canonicalize();
    auto x = solve(B, v, m.field());
    if (!x) throw AInfError("submodule not closed under the action");
    SparseVec outv;
    for (auto& [j, c] : *x) outv.push_back({sub_ids[obj][j], c});
    return outv;
  };
  ChainEnumerator chains(cat, std::max(1, m.max_stored_len()));
  for (int obj = 0; obj < cat.num_objects(); ++obj) {
    for (size_t i = 0; i < basis[obj].size(); ++i) {
      // d = 0
      std::map<int, Scalar> acc;
      for (auto& [e, c] : basis[obj][i]) axpy_into(acc, m.action(e, {}), c);
      out.set_action(sub_ids[obj][i], {}, to_sub(obj, collect(acc)));
      for (int d = 1; d <= m.max_stored_len(); ++d)
        for (const auto& ch : chains.chains(d)) {
          if (cat.gen(ch.front()).dst != obj) continue;
          std::map<int, Scalar> a2;
          for (auto& [e, c] : basis[obj][i]) axpy_into(a2, m.action(e, ch), c);
          SparseVec img = collect(a2);
          if (img.empty()) continue;
          out.set_action(sub_ids[obj][i], ch, to_sub(cat.gen(ch.back()).src, img));
        }
    }
  }
  return out;
}

RightModule complex_tensor_module(const CochainComplex& v, const RightModule& m,
                                  const std::string& tag) {
  RightModule out(m.cat());
  Scalar one = Scalar::one(m.field());
  int nv = v.space().dim();
  auto id = [&](int vi, int me) { return vi * m.num_elems() + me; };
  std::vector<int> ids(nv * m.num_elems(), -1);
  for (int vi = 0; vi < nv; ++vi)
    for (int me = 0; me < m.num_elems(); ++me)
      ids[id(vi, me)] = out.add_element(
          m.elem(me).obj, tag + ":" + v.space().label(vi) + "(x)" + m.elem(me).label,
          v.space().degree(vi) + m.elem(me).degree);
  for (int vi = 0; vi < nv; ++vi)
    for (int me = 0; me < m.num_elems(); ++me) {
      // d(v (x) m) = (-1)^{|m|-1} dv (x) m + v (x) dm
      std::map<int, Scalar> acc;
      Scalar s = (m.elem(me).degree - 1) % 2 == 0 ? one : -one;
      for (auto& [w, c] : v.differential()[vi]) {
        auto [pos, fresh] = acc.try_emplace(ids[id(w, me)], s * c);
        if (!fresh) pos->second = pos->second + s * c;
      }
      for (auto& [e, c] : m.action(me, {})) {
        auto [pos, fresh] = acc.try_emplace(ids[id(vi, e)], c);
        if (!fresh) pos->second = pos->second + c;
      }
      out.set_action(ids[id(vi, me)], {}, collect(acc));
    }
  for (auto& [key, av] : m.actions()) {
    if (key.second.empty()) continue;
    for (int vi = 0; vi < nv; ++vi) {
      SparseVec w;
      for (auto& [e, c] : av) w.push_back({ids[id(vi, e)], c});
      std::sort(w.begin(), w.end(), [](auto& a, auto& b) { return a.first < b.first; });
      out.set_action(ids[id(vi, key.first)], key.second, w);
    }
  }
  return out;
}

std::map<int, Cohomology> module_cohomology(const RightModule& m) {
  std::map<int, Cohomology> out;
  for (int obj = 0; obj < m.cat().num_objects(); ++obj)
    out[obj] = cohomology(m.value_complex(obj));
  return out;
}

CompareResult compare_modules(const RightModule& a, const RightModule& b, CompareMode mode,
                              const ModuleMorphism* t) {
  CompareResult res;
  if (mode == CompareMode::rank_table) {
    res.mode = "rank-indistinguishable";
    auto ha = module_cohomology(a), hb = module_cohomology(b);
    for (int obj = 0; obj < a.cat().num_objects(); ++obj) {
      if (!(ha[obj].ranks == hb[obj].ranks)) {
        res.pass = false;
        res.detail = "rank tables differ at object " + a.cat().object_name(obj) + ": " +
                     rank_table_str(ha[obj]) + " vs " + rank_table_str(hb[obj]);
        return res;
      }
    }
    res.pass = true;
    return res;
  }
  res.mode = "strong";
  if (!t) throw AInfError("compare_modules: explicit mode needs a morphism");
  if (t->src != &a || t->dst != &b) throw AInfError("compare_modules: morphism endpoints mismatch");
  auto closed = check_closed0(*t, std::max(2, a.cat().max_arity()));
  if (!closed.ok)
    throw AInfError("compare_modules: morphism not closed: " + closed.failure);
  Scalar one = Scalar::one(a.field());
  for (int obj = 0; obj < a.cat().num_objects(); ++obj) {
    CochainComplex ca = a.value_complex(obj), cb = b.value_complex(obj);
    auto ids_a = a.elems_at(obj);
    auto ids_b = b.elems_at(obj);
    std::map<int, int> local_b;
    for (size_t i = 0; i < ids_b.size(); ++i) local_b[ids_b[i]] = (int)i;
    ChainMap f;
    f.columns.resize(ids_a.size());
    for (size_t i = 0; i < ids_a.size(); ++i) {
      Scalar s = a.elem(ids_a[i]).degree % 2 == 0 ? one : -one;  // (-1)^deg o t
      for (auto& [e, c] : t->component(ids_a[i], {})) f.columns[i].push_back({local_b.at(e), s * c});
    }
    if (!is_quasi_iso(ca, cb, f)) {
      res.pass = false;
      res.detail = "cone not acyclic at object " + a.cat().object_name(obj);
      return res;
    }
  }
  res.pass = true;
  return res;
}

}  // namespace twistcat
