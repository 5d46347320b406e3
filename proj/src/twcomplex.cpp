#include "twistcat/twcomplex.hpp"

#include <algorithm>
#include <functional>

namespace twistcat {

CheckReport check_maurer_cartan(const TwPresentation& p, const AInfCategory& cat) {
  int n = (int)p.gens.size();
  Scalar one = Scalar::one(cat.field());
  // degree and endpoint sanity
  for (auto& [ij, v] : p.delta) {
    auto [i, j] = ij;
    if (i == j) return {false, "connection has a self-loop"};
    int want = p.gens[i].shift - p.gens[j].shift + 1;
    for (auto& [g, c] : v) {
      (void)c;
      if (cat.gen(g).src != p.gens[j].obj || cat.gen(g).dst != p.gens[i].obj)
        return {false, "connection entry in the wrong hom space"};
      if (cat.gen(g).degree != want)
        return {false, "connection entry of wrong degree"};
    }
  }
  // triangularity: the directed graph j -> i must be acyclic
  std::vector<int> state(n, 0);
  std::function<bool(int)> dfs = [&](int v) {
    state[v] = 1;
    for (int w = 0; w < n; ++w) {
      if (p.connection(w, v).empty()) continue;
      if (state[w] == 1) return false;
      if (state[w] == 0 && !dfs(w)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (state[v] == 0 && !dfs(v)) return {false, "connection is not triangular"};

  // Maurer-Cartan: for each pair (i, j), sum over delta-paths j -> ... -> i
  // of mu^r(delta_{i, p_{r-1}}, ..., delta_{p_1, j}) = 0
  for (int j = 0; j < n; ++j) {
    std::map<int, std::map<int, Scalar>> acc;  // target gen -> residue
    // paths from j: expand multilinearly
    std::function<void(int, GenTuple, Scalar)> rec = [&](int at, GenTuple letters, Scalar c) {
      if (!letters.empty()) {
        SparseVec mu = cat.mu(letters);
        for (auto& [g, v] : mu) {
          auto [pos, fresh] = acc[at].try_emplace(g, c * v);
          if (!fresh) pos->second = pos->second + c * v;
        }
      }
      if ((int)letters.size() >= 8) return;
      for (int nxt = 0; nxt < n; ++nxt) {
        for (auto& [g, v] : p.connection(nxt, at)) {
          GenTuple l2;
          l2.push_back(g);
          l2.insert(l2.end(), letters.begin(), letters.end());
          rec(nxt, std::move(l2), c * v);
        }
      }
    };
    rec(j, {}, one);
    for (auto& [tgt, res] : acc)
      if (!collect(res).empty())
        return {false, "Maurer-Cartan fails from generator " + std::to_string(j)};
  }
  return {};
}

RightModule realize(const TwPresentation& p, const AInfCategory& cat) {
  RightModule out(cat);
  int n = (int)p.gens.size();
  std::map<std::pair<int, int>, int> elem_of;  // (gen, hom gen) -> element
  for (int i = 0; i < n; ++i) {
    for (int g = 0; g < cat.num_gens(); ++g)
      if (cat.gen(g).dst == p.gens[i].obj)
        elem_of[{i, g}] = out.add_element(
            cat.gen(g).src, "g" + std::to_string(i) + ":" + cat.gen(g).label,
            cat.gen(g).degree - p.gens[i].shift);
  }
  Scalar one = Scalar::one(cat.field());
  int max_arity = cat.max_arity();
  ChainEnumerator chains(cat, std::max(0, max_arity - 1));

  for (auto& [key, me] : elem_of) {
    auto [i, psi] = key;
    int obj = cat.gen(psi).src;
    for (int d = 0; d <= max_arity - 1; ++d) {
      std::vector<GenTuple> cands;
      if (d == 0)
        cands.push_back({});
      else
        for (auto& c : chains.chains(d))
          if (cat.gen(c.front()).dst == obj) cands.push_back(c);
      for (auto& c : cands) {
        std::map<int, Scalar> acc;
        // plain part
        {
          GenTuple full;
          full.push_back(psi);
          full.insert(full.end(), c.begin(), c.end());
          for (auto& [b, v] : cat.mu(full)) {
            auto [pos, fresh] = acc.try_emplace(elem_of.at({i, b}), v);
            if (!fresh) pos->second = pos->second + v;
          }
        }
        // connection insertions: mu^{r+d+1}(delta-chain, psi, c)
        std::function<void(int, GenTuple, Scalar)> rec = [&](int at, GenTuple letters,
                                                             Scalar coeff) {
          if (!letters.empty() && (int)letters.size() + 1 + (int)c.size() <= max_arity) {
            GenTuple full = letters;
            full.push_back(psi);
            full.insert(full.end(), c.begin(), c.end());
            for (auto& [b, v] : cat.mu(full)) {
              auto [pos, fresh] = acc.try_emplace(elem_of.at({at, b}), coeff * v);
              if (!fresh) pos->second = pos->second + coeff * v;
            }
          }
          if ((int)letters.size() >= max_arity - 1) return;
          for (int nxt = 0; nxt < n; ++nxt)
            for (auto& [g, v] : p.connection(nxt, at)) {
              GenTuple l2;
              l2.push_back(g);
              l2.insert(l2.end(), letters.begin(), letters.end());
              rec(nxt, std::move(l2), coeff * v);
            }
        };
        rec(i, {}, one);
        out.set_action(me, c, collect(acc));
      }
    }
  }
  return out;
}

PresentedModule::PresentedModule(RightModule m, TwPresentation p)
    : module(std::move(m)), pres(std::move(p)) {
  const AInfCategory& cat = module.cat();
  auto mc = check_maurer_cartan(pres, cat);
  if (!mc.ok) throw AInfError("presentation fails Maurer-Cartan: " + mc.failure);
  RightModule r = realize(pres, cat);
  if (r.num_elems() != module.num_elems())
    throw AInfError("presentation does not realize the module (size mismatch)");
  for (int e = 0; e < r.num_elems(); ++e) {
    if (r.elem(e).obj != module.elem(e).obj || r.elem(e).degree != module.elem(e).degree)
      throw AInfError("presentation does not realize the module (element mismatch at " +
                      module.elem(e).label + ")");
  }
  // actions must agree entry by entry
  auto canon = [](const std::map<std::pair<int, GenTuple>, SparseVec>& a) {
    std::map<std::pair<int, GenTuple>, SparseVec> out;
    for (auto& [k, v] : a) {
      SparseVec nv = normalized(v);
      if (!nv.empty()) out[k] = nv;
    }
    return out;
  };
  auto ra = canon(r.actions()), ma = canon(module.actions());
  if (!(ra == ma)) {
    for (auto& [k, v] : ra)
      if (!ma.count(k) || !(ma.at(k) == v))
        throw AInfError("presentation does not realize the module (action mismatch at " +
                        module.elem(k.first).label + ")");
    throw AInfError("presentation does not realize the module (extra stored actions)");
  }
}

TwHom::TwHom(const TwPresentation& e, const RightModule& n) {
  const AInfCategory& cat = n.cat();
  Scalar one = Scalar::one(cat.field());
  int ng = (int)e.gens.size();
  std::map<std::pair<int, int>, int> idx;
  GradedSpace space;
  for (int i = 0; i < ng; ++i)
    for (int ne : n.elems_at(e.gens[i].obj)) {
      idx[{i, ne}] = (int)basis_.size();
      basis_.push_back({i, ne});
      space.add("h" + std::to_string(basis_.size() - 1),
                n.elem(ne).degree + e.gens[i].shift);
    }
  std::vector<SparseVec> d(basis_.size());
  for (int bi = 0; bi < (int)basis_.size(); ++bi) {
    auto [i, ne] = std::pair(basis_[bi].gen, basis_[bi].n_elem);
    std::map<int, Scalar> acc;
    // d_N term, weighted (-1)^{s_i}; the insertion terms below carry no
    // extra sign.  This is the unique convention (up to per-generator
    // gauge) compatible with d^2 = 0 across the presentation zoo.
    {
      Scalar s = e.gens[i].shift % 2 == 0 ? one : -one;
      for (auto& [n2, v] : n.action(ne, {})) {
        auto [pos, fresh] = acc.try_emplace(idx.at({i, n2}), s * v);
        if (!fresh) pos->second = pos->second + s * v;
      }
    }
    // pullback along delta-chains: (k, mu^{1|r}_N(n, delta_{i,i1},...,delta_{i_{r-1},k}))
    std::function<void(int, GenTuple, Scalar)> rec = [&](int at, GenTuple letters,
                                                         Scalar coeff) {
      if (!letters.empty()) {
        for (auto& [n2, v] : n.action(ne, letters)) {
          auto [pos, fresh] = acc.try_emplace(idx.at({at, n2}), coeff * v);
          if (!fresh) pos->second = pos->second + coeff * v;
        }
      }
      if ((int)letters.size() >= 8) return;
      for (int nxt = 0; nxt < ng; ++nxt)
        for (auto& [g, v] : e.connection(at, nxt)) {
          // hop at -> nxt uses delta_{at, nxt} in hom(X_nxt, X_at): appended
          // on the right of the letter string
          GenTuple l2 = letters;
          l2.push_back(g);
          rec(nxt, std::move(l2), coeff * v);
        }
    };
    rec(i, {}, one);
    d[bi] = collect(acc);
  }
  cx_ = std::make_unique<CochainComplex>(std::move(space), cat.field(), std::move(d));
}

Cohomology tw_hom_cohomology(const TwPresentation& e, const RightModule& n) {
  return cohomology(TwHom(e, n).complex());
}

TwPresentation yoneda_presentation(const AInfCategory& cat, int obj) {
  (void)cat;
  TwPresentation p;
  p.gens.push_back({obj, 0});
  return p;
}

TwPresentation shift_presentation(const TwPresentation& p, int by) {
  TwPresentation out = p;
  for (auto& g : out.gens) g.shift += by;
  return out;
}

TwPresentation sum_presentation(const TwPresentation& a, const TwPresentation& b) {
  TwPresentation out = a;
  int off = (int)a.gens.size();
  for (auto& g : b.gens) out.gens.push_back(g);
  for (auto& [ij, v] : b.delta) out.delta[{ij.first + off, ij.second + off}] = v;
  return out;
}

namespace {

// element order of realize(): (generator index, category generator) pairs;
// the realize == module assertion pins modules to this order, so index
// decoding is exact
std::vector<std::pair<int, int>> realization_order(const TwPresentation& p,
                                                   const AInfCategory& cat) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < (int)p.gens.size(); ++i)
    for (int g = 0; g < cat.num_gens(); ++g)
      if (cat.gen(g).dst == p.gens[i].obj) out.push_back({i, g});
  return out;
}

}  // namespace

TwPresentation cone_presentation(const TwPresentation& src, const TwPresentation& dst,
                                 const ModuleMorphism& t, const AInfCategory& cat) {
  TwPresentation out;
  int ns = (int)src.gens.size();
  for (auto& g : src.gens) out.gens.push_back({g.obj, g.shift + 1});
  for (auto& g : dst.gens) out.gens.push_back(g);
  for (auto& [ij, v] : src.delta) out.delta[ij] = v;
  for (auto& [ij, v] : dst.delta) out.delta[{ij.first + ns, ij.second + ns}] = v;

  auto src_order = realization_order(src, cat);
  auto dst_order = realization_order(dst, cat);
  if ((int)src_order.size() != t.src->num_elems() ||
      (int)dst_order.size() != t.dst->num_elems())
    throw AInfError("cone_presentation: morphism endpoints are not realizations");

  // cross components: t^{1|0} on the generator elements (j, e_{X_j})
  for (int j = 0; j < ns; ++j) {
    int obj = src.gens[j].obj;
    int unit = cat.unit(obj);
    if (unit < 0) throw AInfError("cone_presentation needs strict units");
    int me = -1;
    for (size_t e = 0; e < src_order.size(); ++e)
      if (src_order[e] == std::pair(j, unit)) me = (int)e;
    if (me < 0) throw AInfError("cone_presentation: missing generator element");
    for (auto& [n2, v] : t.component(me, {})) {
      auto [i, hom_gen] = dst_order[n2];
      auto key = std::pair(ns + i, j);
      SparseVec& slot = out.delta[key];
      slot.push_back({hom_gen, v});
      slot = normalized(slot);
    }
  }
  for (auto it = out.delta.begin(); it != out.delta.end();) {
    if (it->second.empty())
      it = out.delta.erase(it);
    else
      ++it;
  }
  return out;
}

}  // namespace twistcat
