#include "twistcat/homcomplex.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>

namespace twistcat {

namespace {

int chain_reduced_sum(const AInfCategory& cat, const GenTuple& c, size_t from, size_t to) {
  int s = 0;
  for (size_t i = from; i < to; ++i) s += cat.reduced_degree(c[i]);
  return s;
}

}  // namespace

int default_length_cap() {
  if (const char* env = std::getenv("TWISTCAT_LENGTH_CAP")) return std::atoi(env);
  return 6;
}

ModuleMorphism delta_morphism(const ModuleMorphism& t, int length_cap) {
  const RightModule& M = *t.src;
  const RightModule& N = *t.dst;
  const AInfCategory& cat = M.cat();
  Scalar one = Scalar::one(M.field());
  Scalar sign_t = t.degree % 2 == 0 ? one : -one;
  ModuleMorphism out;
  out.src = t.src;
  out.dst = t.dst;
  out.degree = t.degree + 1;

  // family 1: extend on the right by an N action (k = 0 term is mu_N^{1|0})
  for (auto& [key, img] : t.comps) {
    const GenTuple& c = key.second;
    {
      std::map<int, Scalar> acc;
      for (auto& [n, v] : img) axpy_into(acc, N.action(n, {}), v);
      out.add_component(key.first, c, collect(acc));
    }
    for (auto& [nkey, nout] : N.actions()) {
      const GenTuple& gamma = nkey.second;
      if (gamma.empty()) continue;
      if ((int)(c.size() + gamma.size()) > length_cap) continue;
      Scalar coeff = Scalar::zero(M.field());
      for (auto& [n, v] : img)
        if (n == nkey.first) coeff = v;
      if (coeff.is_zero()) continue;
      if (!c.empty() && cat.gen(c.back()).src != cat.gen(gamma.front()).dst) continue;
      if (c.empty() && M.elem(key.first).obj != cat.gen(gamma.front()).dst) continue;
      GenTuple ext = c;
      ext.insert(ext.end(), gamma.begin(), gamma.end());
      int sgn = (t.degree * chain_reduced_sum(cat, gamma, 0, gamma.size())) % 2;
      SparseVec val;
      for (auto& [n2, v2] : nout) val.push_back({n2, (sgn ? -one : one) * coeff * v2});
      out.add_component(key.first, ext, val);
    }
  }
  // family 2: extend on the left by an M action
  for (auto& [mkey, mout] : M.actions()) {
    const GenTuple& gamma = mkey.second;
    for (auto& [mid, v] : mout) {
      for (auto& [key, img] : t.comps) {
        if (key.first != mid) continue;
        const GenTuple& c = key.second;
        if ((int)(gamma.size() + c.size()) > length_cap) continue;
        if (!gamma.empty() && !c.empty() &&
            cat.gen(gamma.back()).src != cat.gen(c.front()).dst)
          continue;
        if (gamma.empty() && !c.empty() &&
            M.elem(mkey.first).obj != cat.gen(c.front()).dst)
          continue;
        GenTuple ext = gamma;
        ext.insert(ext.end(), c.begin(), c.end());
        int sgn = chain_reduced_sum(cat, c, 0, c.size()) % 2;
        Scalar s = (sgn ? -one : one) * sign_t * v;
        SparseVec val;
        for (auto& [n2, v2] : img) val.push_back({n2, -(s * v2)});
        out.add_component(mkey.first, ext, val);
      }
    }
  }
  // family 3: expand a chain letter into a stored mu_A block
  for (auto& [key, img] : t.comps) {
    const GenTuple& c = key.second;
    for (size_t i = 0; i < c.size(); ++i) {
      for (auto& [arity, tensor] : cat.tensors()) {
        (void)arity;
        for (auto& [block, mu_out] : tensor) {
          Scalar coeff = Scalar::zero(M.field());
          for (auto& [b, v] : mu_out)
            if (b == c[i]) coeff = v;
          if (coeff.is_zero()) continue;
          if ((int)(c.size() - 1 + block.size()) > length_cap) continue;
          bool ok = true;
          if (i > 0 && cat.gen(c[i - 1]).src != cat.gen(block.front()).dst) ok = false;
          if (i == 0 && M.elem(key.first).obj != cat.gen(block.front()).dst) ok = false;
          if (i + 1 < c.size() && cat.gen(block.back()).src != cat.gen(c[i + 1]).dst) ok = false;
          if (!ok) continue;
          GenTuple ext(c.begin(), c.begin() + i);
          ext.insert(ext.end(), block.begin(), block.end());
          ext.insert(ext.end(), c.begin() + i + 1, c.end());
          int sgn = chain_reduced_sum(cat, c, i + 1, c.size()) % 2;
          Scalar s = (sgn ? -one : one) * sign_t * coeff;
          SparseVec val;
          for (auto& [n2, v2] : img) val.push_back({n2, -(s * v2)});
          out.add_component(key.first, ext, val);
        }
      }
    }
  }
  return out;
}

ModuleMorphism compose_morphisms(const ModuleMorphism& t1, const ModuleMorphism& t0,
                                 int length_cap) {
  if (t0.dst != t1.src) throw AInfError("compose_morphisms: endpoint mismatch");
  const AInfCategory& cat = t0.src->cat();
  Scalar one = Scalar::one(t0.src->field());
  Scalar pre = t0.degree % 2 == 0 ? one : -one;
  ModuleMorphism out;
  out.src = t0.src;
  out.dst = t1.dst;
  out.degree = t0.degree + t1.degree;
  for (auto& [k0, img0] : t0.comps) {
    const GenTuple& c0 = k0.second;
    for (auto& [k1, img1] : t1.comps) {
      const GenTuple& c1 = k1.second;
      Scalar coeff = Scalar::zero(cat.field());
      for (auto& [mid, v] : img0)
        if (mid == k1.first) coeff = v;
      if (coeff.is_zero()) continue;
      if ((int)(c0.size() + c1.size()) > length_cap) continue;
      if (!c0.empty() && !c1.empty() && cat.gen(c0.back()).src != cat.gen(c1.front()).dst)
        continue;
      if (c0.empty() && !c1.empty() &&
          t0.src->elem(k0.first).obj != cat.gen(c1.front()).dst)
        continue;
      // t1^{1|k}(t0^{1|D-k}(m, c0), c1): c1 is the right tail under t0;
      // Koszul weight (-1)^{|t0| X(c1) + |t1| X(c0)} (calibrated against the
      // dg relation with delta and the strict unit laws)
      GenTuple ext = c0;
      ext.insert(ext.end(), c1.begin(), c1.end());
      int sgn = (t0.degree * chain_reduced_sum(cat, c1, 0, c1.size()) +
                 t1.degree * chain_reduced_sum(cat, c0, 0, c0.size())) %
                2;
      SparseVec val;
      for (auto& [n2, v2] : img1) val.push_back({n2, pre * (sgn ? -one : one) * coeff * v2});
      out.add_component(k0.first, ext, val);
    }
  }
  return out;
}

ModuleMorphism parity_bridge(const ModuleMorphism& t) {
  const AInfCategory& cat = t.src->cat();
  ModuleMorphism out;
  out.src = t.src;
  out.dst = t.dst;
  out.degree = t.degree;
  for (auto& [key, img] : t.comps) {
    int w = t.src->elem(key.first).degree +
            chain_reduced_sum(cat, key.second, 0, key.second.size());
    if (w % 2 == 0)
      out.comps[key] = img;
    else {
      SparseVec v;
      for (auto& [n, c] : img) v.push_back({n, -c});
      out.comps[key] = v;
    }
  }
  return out;
}

namespace {

// component twist (-1)^{|m| + sum||chain|| + |t|}: the unique sign choice
// under which all three shift identities are literal equalities (found by
// exhausting the candidates; pinned by the sign-identity suite)
ModuleMorphism shift_twist(const ModuleMorphism& t) {
  ModuleMorphism out = parity_bridge(t);
  if (t.degree % 2)
    for (auto& [key, img] : out.comps)
      for (auto& [n, c] : img) c = -c;
  return out;
}

}  // namespace

ModuleMorphism sigma_push(const ModuleMorphism& t, const RightModule& shifted_dst) {
  ModuleMorphism out = shift_twist(t);
  out.dst = &shifted_dst;
  out.degree = t.degree - 1;
  return out;
}

ModuleMorphism eta_push(const ModuleMorphism& t, const RightModule& shifted_src) {
  ModuleMorphism out = shift_twist(t);
  out.src = &shifted_src;
  out.degree = t.degree + 1;
  return out;
}

HomComplex::HomComplex(const RightModule& m, const RightModule& n, int length_cap)
    : m_(&m), n_(&n), cap_(length_cap) {
  const AInfCategory& cat = m.cat();
  ChainEnumerator chains(cat, length_cap);
  for (int obj = 0; obj < cat.num_objects(); ++obj)
    for (int me : m.elems_at(obj))
      for (int ne : n.elems_at(obj)) basis_.push_back({{}, me, ne});
  for (int len = 1; len <= length_cap; ++len)
    for (auto& c : chains.chains(len)) {
      int top = cat.gen(c.front()).dst, bot = cat.gen(c.back()).src;
      for (int me : m.elems_at(top))
        for (int ne : n.elems_at(bot)) basis_.push_back({c, me, ne});
    }
  for (int i = 0; i < (int)basis_.size(); ++i)
    index_[{basis_[i].chain, basis_[i].src_elem, basis_[i].dst_elem}] = i;

  GradedSpace space;
  for (int i = 0; i < (int)basis_.size(); ++i)
    space.add("t" + std::to_string(i), degree_of_basis(i));

  // reverse indices so each basis column is built in output-size time
  std::vector<std::vector<std::pair<const GenTuple*, const SparseVec*>>> n_act(n.num_elems());
  for (auto& [key, out] : n.actions())
    if (!key.second.empty()) n_act[key.first].push_back({&key.second, &out});
  std::vector<std::vector<std::tuple<int, const GenTuple*, Scalar>>> m_into(m.num_elems());
  for (auto& [key, out] : m.actions())
    for (auto& [mid, v] : out) m_into[mid].push_back({key.first, &key.second, v});
  std::vector<std::vector<std::pair<const GenTuple*, Scalar>>> mu_into(cat.num_gens());
  for (auto& [arity, tensor] : cat.tensors()) {
    (void)arity;
    for (auto& [block, out] : tensor)
      for (auto& [b, v] : out) mu_into[b].push_back({&block, v});
  }

  Scalar one = Scalar::one(m.field());
  std::vector<SparseVec> d(basis_.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < (int)basis_.size(); ++i) {
    const BasisElem& b = basis_[i];
    const GenTuple& c = b.chain;
    int deg = space.degree(i);
    Scalar sign_t = deg % 2 == 0 ? one : -one;
    std::map<int, Scalar> col;
    auto emit = [&](const GenTuple& chain, int me, int ne, const Scalar& v) {
      auto it = index_.find({chain, me, ne});
      if (it == index_.end()) return;  // beyond the cap
      auto [pos, fresh] = col.try_emplace(it->second, v);
      if (!fresh) pos->second = pos->second + v;
    };
    // family 1, k = 0: post-compose with mu_N^{1|0}
    for (auto& [n2, v] : n.action(b.dst_elem, {})) emit(c, b.src_elem, n2, v);
    // family 1, k > 0: extend right by an N action eating t's output
    for (auto& [gamma, out] : n_act[b.dst_elem]) {
      if ((int)(c.size() + gamma->size()) > cap_) continue;
      int seam = c.empty() ? m.elem(b.src_elem).obj : cat.gen(c.back()).src;
      if (cat.gen(gamma->front()).dst != seam) continue;
      GenTuple ext = c;
      ext.insert(ext.end(), gamma->begin(), gamma->end());
      int sgn = (deg * chain_reduced_sum(cat, *gamma, 0, gamma->size())) % 2;
      for (auto& [n2, v2] : *out) emit(ext, b.src_elem, n2, (sgn ? -one : one) * v2);
    }
    // family 2: extend left by an M action producing t's input
    {
      int sgn_c = chain_reduced_sum(cat, c, 0, c.size()) % 2;
      Scalar s0 = (sgn_c ? -one : one) * sign_t;
      for (auto& [mp, gamma, v] : m_into[b.src_elem]) {
        if ((int)(gamma->size() + c.size()) > cap_) continue;
        if (!c.empty()) {
          int seam = gamma->empty() ? m.elem(mp).obj : cat.gen(gamma->back()).src;
          if (seam != cat.gen(c.front()).dst) continue;
        }
        GenTuple ext = *gamma;
        ext.insert(ext.end(), c.begin(), c.end());
        emit(ext, mp, b.dst_elem, -(s0 * v));
      }
    }
    // family 3: expand a chain letter into a stored mu_A block
    for (size_t pos = 0; pos < c.size(); ++pos) {
      for (auto& [block, v] : mu_into[c[pos]]) {
        if ((int)(c.size() - 1 + block->size()) > cap_) continue;
        bool ok = true;
        if (pos > 0 && cat.gen(c[pos - 1]).src != cat.gen(block->front()).dst) ok = false;
        if (pos == 0 && m.elem(b.src_elem).obj != cat.gen(block->front()).dst) ok = false;
        if (pos + 1 < c.size() && cat.gen(block->back()).src != cat.gen(c[pos + 1]).dst)
          ok = false;
        if (!ok) continue;
        GenTuple ext(c.begin(), c.begin() + pos);
        ext.insert(ext.end(), block->begin(), block->end());
        ext.insert(ext.end(), c.begin() + pos + 1, c.end());
        int sgn = chain_reduced_sum(cat, c, pos + 1, c.size()) % 2;
        emit(ext, b.src_elem, b.dst_elem, -((sgn ? -one : one) * sign_t * v));
      }
    }
    d[i] = collect(col);
  }
  cx_ = std::make_unique<CochainComplex>(std::move(space), m.field(), std::move(d));
}

int HomComplex::degree_of_basis(int i) const {
  const BasisElem& b = basis_[i];
  int s = 0;
  for (int g : b.chain) s += m_->cat().reduced_degree(g);
  return n_->elem(b.dst_elem).degree - m_->elem(b.src_elem).degree - s;
}

SparseVec HomComplex::to_vector(const ModuleMorphism& t) const {
  SparseVec out;
  for (auto& [key, img] : t.comps)
    for (auto& [ne, v] : img) {
      auto it = index_.find({key.second, key.first, ne});
      if (it == index_.end()) {
        if ((int)key.second.size() <= cap_)
          throw AInfError("morphism not representable in the hom complex");
        continue;  // beyond the cap: truncated away
      }
      out.push_back({it->second, v});
    }
  return normalized(out);
}

ModuleMorphism HomComplex::to_morphism(const SparseVec& v, int degree) const {
  ModuleMorphism t;
  t.src = m_;
  t.dst = n_;
  t.degree = degree;
  for (auto& [i, c] : v)
    t.add_component(basis_[i].src_elem, basis_[i].chain, {{basis_[i].dst_elem, c}});
  return t;
}

DegreeWindow default_window(const AInfCategory& cat) {
  int lo = 0, hi = 0;
  for (int g = 0; g < cat.num_gens(); ++g) {
    lo = std::min(lo, cat.gen(g).degree);
    hi = std::max(hi, cat.gen(g).degree);
  }
  return {lo - 2, hi + 2};
}

namespace {

std::map<int, int> window_ranks(const Cohomology& c, DegreeWindow w) {
  std::map<int, int> out;
  for (auto& [d, r] : c.ranks)
    if (d >= w.lo && d <= w.hi) out[d] = r;
  return out;
}

}  // namespace

HomCohomology hom_cohomology(const RightModule& m, const RightModule& n, int cap,
                             DegreeWindow window, bool allow_truncated) {
  HomComplex h0(m, n, cap);
  HomComplex h2(m, n, cap + 2);
  HomCohomology out;
  out.cap = cap;
  Cohomology c0 = cohomology(h0.complex());
  Cohomology c2 = cohomology(h2.complex());
  out.coh.ranks = window_ranks(c0, window);
  out.coh.representatives = c0.representatives;
  out.stabilized = out.coh.ranks == window_ranks(c2, window);
  if (!out.stabilized && !allow_truncated)
    throw TruncationError("hom complex does not stabilize at cap " + std::to_string(cap));
  return out;
}

std::vector<ModuleMorphism> h0_morphisms(const RightModule& m, const RightModule& n, int cap) {
  HomComplex h(m, n, cap);
  Cohomology c = cohomology(h.complex());
  std::vector<ModuleMorphism> out;
  auto it = c.representatives.find(0);
  if (it == c.representatives.end()) return out;
  for (auto& rep : it->second) out.push_back(parity_bridge(h.to_morphism(rep, 0)));
  return out;
}

}  // namespace twistcat
