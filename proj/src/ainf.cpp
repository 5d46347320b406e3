#include "twistcat/ainf.hpp"

#include <algorithm>
#include <sstream>

namespace twistcat {

namespace {

std::string tuple_str(const AInfCategory& cat, const GenTuple& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ", ";
    s += cat.gen(t[i]).label;
  }
  return s + ")";
}

int reduced_sum(const AInfCategory& cat, const GenTuple& t, size_t from, size_t to) {
  int s = 0;
  for (size_t i = from; i < to; ++i) s += cat.reduced_degree(t[i]);
  return s;
}

}  // namespace

int AInfCategory::add_object(const std::string& name) {
  if (object_index_.count(name)) throw AInfError("duplicate object: " + name);
  objects_.push_back(name);
  units_.push_back(-1);
  strict_unit_.push_back(false);
  object_index_[name] = (int)objects_.size() - 1;
  return (int)objects_.size() - 1;
}

int AInfCategory::object_index(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) throw AInfError("unknown object: " + name);
  return it->second;
}

int AInfCategory::add_generator(int src, int dst, const std::string& label, int degree) {
  if (gen_index_.count(label)) throw AInfError("duplicate generator label: " + label);
  gens_.push_back({src, dst, degree, label});
  gen_index_[label] = (int)gens_.size() - 1;
  return (int)gens_.size() - 1;
}

int AInfCategory::gen_index(const std::string& label) const {
  auto it = gen_index_.find(label);
  if (it == gen_index_.end()) throw AInfError("unknown generator: " + label);
  return it->second;
}

void AInfCategory::set_strict_unit(int obj, int gen_id) {
  const auto& g = gen(gen_id);
  if (g.src != obj || g.dst != obj || g.degree != 0)
    throw AInfError("strict unit must be a degree-0 endomorphism generator");
  units_[obj] = gen_id;
  strict_unit_[obj] = true;
}

void AInfCategory::set_cohomological_unit(int obj, int gen_id) {
  units_[obj] = gen_id;
  strict_unit_[obj] = false;
}

bool AInfCategory::is_unit_gen(int id) const {
  const auto& g = gens_[id];
  return g.src == g.dst && units_[g.src] == id && strict_unit_[g.src];
}

void AInfCategory::set_mu(const GenTuple& args, SparseVec out) {
  out = normalized(out);
  if (args.empty()) throw AInfError("mu needs at least one argument");
  if (!composable(args)) throw AInfError("non-composable tuple " + tuple_str(*this, args));
  for (int a : args)
    if (is_unit_gen(a))
      throw AInfError("tensors on strict-unit slots are synthesized, not stored: " +
                      tuple_str(*this, args));
  int d = (int)args.size();
  int want = 2 - d;
  for (int a : args) want += gen(a).degree;
  for (auto& [b, v] : out) {
    if (gen(b).degree != want)
      throw AInfError("mu entry of wrong degree at " + tuple_str(*this, args) +
                      " -> " + gen(b).label);
    if (gen(b).src != gen(args.back()).src || gen(b).dst != gen(args.front()).dst)
      throw AInfError("mu output in wrong hom space at " + tuple_str(*this, args));
    if (v.field() != field_)
      throw AInfError("mu coefficient in wrong field at " + tuple_str(*this, args));
  }
  if (!out.empty()) mu_[d][args] = std::move(out);
}

SparseVec AInfCategory::mu(const GenTuple& args) const {
  int d = (int)args.size();
  if (d == 2) {
    int a1 = args[0], a0 = args[1];  // mu^2(a1, a0)
    if (is_unit_gen(a0) && gens_[a0].dst == gens_[a1].src) {
      if (is_unit_gen(a1) && gens_[a1].src == gens_[a0].src)
        return {{a1, Scalar::one(field_)}};
      return {{a1, Scalar::one(field_)}};  // mu^2(x, e) = x
    }
    if (is_unit_gen(a1) && gens_[a1].src == gens_[a0].dst) {
      Scalar c = (gens_[a0].degree % 2 == 0) ? Scalar::one(field_) : -Scalar::one(field_);
      return {{a0, c}};  // mu^2(e, x) = (-1)^{|x|} x
    }
  } else {
    for (int a : args)
      if (is_unit_gen(a)) return {};  // strict unit kills mu^1 and mu^{>=3}
  }
  auto ten = mu_.find(d);
  if (ten == mu_.end()) return {};
  auto it = ten->second.find(args);
  return it == ten->second.end() ? SparseVec{} : it->second;
}

std::vector<int> AInfCategory::effective_arities() const {
  std::vector<int> out = {1, 2};
  for (auto& [d, tensor] : mu_)
    if (!tensor.empty() && d > 2) out.push_back(d);
  return out;
}

int AInfCategory::relation_arity_bound() const {
  // a relation term needs an inner mu of arity m and an outer of arity
  // D - m + 1, both effective; anything longer is identically zero
  int mx = 0;
  for (int a : effective_arities()) mx = std::max(mx, a);
  return 2 * mx - 1;
}

bool AInfCategory::composable(const GenTuple& args) const {
  for (size_t i = 0; i + 1 < args.size(); ++i)
    if (gens_[args[i]].src != gens_[args[i + 1]].dst) return false;
  return true;
}

std::vector<int> AInfCategory::hom_gens(int src, int dst) const {
  std::vector<int> out;
  for (int i = 0; i < num_gens(); ++i)
    if (gens_[i].src == src && gens_[i].dst == dst) out.push_back(i);
  return out;
}

std::vector<int> AInfCategory::reduced_gens(int src, int dst) const {
  std::vector<int> out;
  for (int i : hom_gens(src, dst))
    if (!is_unit_gen(i)) out.push_back(i);
  return out;
}

GradedSpace AInfCategory::hom_space(int src, int dst) const {
  GradedSpace s;
  for (int i : hom_gens(src, dst)) s.add(gens_[i].label, gens_[i].degree);
  return s;
}

CochainComplex AInfCategory::hom_complex(int src, int dst) const {
  auto gens = hom_gens(src, dst);
  GradedSpace s;
  std::map<int, int> local;
  for (int g : gens) {
    local[g] = s.dim();
    s.add(gens_[g].label, gens_[g].degree);
  }
  std::vector<SparseVec> d(s.dim());
  for (size_t i = 0; i < gens.size(); ++i) {
    std::map<int, Scalar> acc;
    for (auto& [b, v] : mu({gens[i]})) axpy_into(acc, {{local.at(b), v}}, Scalar::one(field_));
    d[i] = collect(acc);
  }
  return CochainComplex(std::move(s), field_, std::move(d));
}

void AInfCategory::validate() const {
  for (auto& [d, tensor] : mu_) {
    for (auto& [args, out] : tensor) {
      if ((int)args.size() != d) throw AInfError("tensor arity mismatch");
      if (!composable(args))
        throw AInfError("stored tensor on non-composable tuple " + tuple_str(*this, args));
      int want = 2 - d;
      for (int a : args) want += gen(a).degree;
      for (auto& [b, v] : out) {
        if (gen(b).degree != want)
          throw AInfError("mu entry of wrong degree at " + tuple_str(*this, args));
        (void)v;
      }
    }
  }
}

ChainEnumerator::ChainEnumerator(const AInfCategory& cat, int max_len) : cat_(&cat) {
  by_length_.resize(max_len + 1);
  // length 1
  std::vector<GenTuple>& one = by_length_[1];
  for (int i = 0; i < cat.num_gens(); ++i)
    if (!cat.is_unit_gen(i)) one.push_back({i});
  for (int len = 2; len <= max_len; ++len) {
    auto& cur = by_length_[len];
    for (const auto& c : by_length_[len - 1]) {
      // extend on the right: new rightmost argument feeds the chain
      int need_dst = cat.gen(c.back()).src;
      for (int g = 0; g < cat.num_gens(); ++g) {
        if (cat.is_unit_gen(g)) continue;
        if (cat.gen(g).dst == need_dst) {
          GenTuple t = c;
          t.push_back(g);
          cur.push_back(std::move(t));
        }
      }
    }
  }
}

const std::vector<GenTuple>& ChainEnumerator::chains(int length) const {
  static const std::vector<GenTuple> empty;
  if (length <= 0 || length >= (int)by_length_.size()) return empty;
  return by_length_[length];
}

std::vector<GenTuple> ChainEnumerator::chains_between(int length, int src, int dst) const {
  std::vector<GenTuple> out;
  for (const auto& c : chains(length))
    if (cat_->gen(c.back()).src == src && cat_->gen(c.front()).dst == dst)
      out.push_back(c);
  return out;
}

namespace {

// relation sum at one tuple; returns accumulated coefficients
std::map<int, Scalar> relation_sum(const AInfCategory& cat, const GenTuple& t) {
  int D = (int)t.size();
  std::map<int, Scalar> acc;
  for (int m = 1; m <= D; ++m) {
    for (int n = 0; n + m <= D; ++n) {
      // inner block positions: a_{n+m} .. a_{n+1} are indices D-(n+m) .. D-(n+1)
      size_t lo = D - (n + m), hi = D - n;  // [lo, hi)
      GenTuple inner(t.begin() + lo, t.begin() + hi);
      SparseVec mid = cat.mu(inner);
      if (mid.empty()) continue;
      int sign = reduced_sum(cat, t, hi, t.size()) % 2;  // rightmost n letters
      Scalar sgn = sign ? -Scalar::one(cat.field()) : Scalar::one(cat.field());
      for (auto& [b, c] : mid) {
        GenTuple outer(t.begin(), t.begin() + lo);
        outer.push_back(b);
        outer.insert(outer.end(), t.begin() + hi, t.end());
        axpy_into(acc, cat.mu(outer), sgn * c);
      }
    }
  }
  return acc;
}

}  // namespace

CheckReport check_ainf_relations(const AInfCategory& cat, int arity) {
  CheckReport rep;
  try {
    cat.validate();
  } catch (const AInfError& e) {
    return {false, e.what()};
  }
  int bound = std::min(arity, cat.relation_arity_bound());
  ChainEnumerator chains(cat, bound);
  for (int D = 1; D <= bound; ++D) {
    for (const auto& t : chains.chains(D)) {
      auto acc = relation_sum(cat, t);
      for (auto& [b, v] : acc)
        if (!v.is_zero())
          return {false, "relation fails at tuple " + tuple_str(cat, t) + " with residue at " +
                             cat.gen(b).label};
    }
    // spot-check tuples with one strict unit inserted (low arity only)
    if (D <= 3) {
      for (const auto& t : chains.chains(D)) {
        for (size_t pos = 0; pos <= t.size(); ++pos) {
          int obj = pos == 0 ? cat.gen(t.front()).dst : cat.gen(t[pos - 1]).src;
          int e = cat.unit(obj);
          if (e < 0 || !cat.unit_is_strict(obj)) continue;
          GenTuple u = t;
          u.insert(u.begin() + pos, e);
          auto acc = relation_sum(cat, u);
          for (auto& [b, v] : acc)
            if (!v.is_zero())
              return {false, "unit relation fails at tuple " + tuple_str(cat, u)};
        }
      }
    }
  }
  return rep;
}

AInfCategory dg_to_ainf(const DgCategoryData& dg, Convention conv) {
  AInfCategory cat;
  cat.set_field(dg.field);
  cat.set_convention(conv);
  for (auto& o : dg.objects) cat.add_object(o);
  for (auto& g : dg.gens) cat.add_generator(g.src, g.dst, g.label, g.degree);

  auto gi = [&](const std::string& l) { return cat.gen_index(l); };
  Scalar one = Scalar::one(dg.field);

  // plain product lookup
  auto prod = [&](int a2, int a1) -> SparseVec {
    auto it = dg.product.find({cat.gen(a2).label, cat.gen(a1).label});
    return it == dg.product.end() ? SparseVec{} : it->second;
  };
  auto diff = [&](int a) -> SparseVec {
    auto it = dg.differential.find(cat.gen(a).label);
    return it == dg.differential.end() ? SparseVec{} : it->second;
  };

  // validations: d^2 = 0, Leibniz, associativity, units
  for (int a = 0; a < cat.num_gens(); ++a) {
    std::map<int, Scalar> acc;
    for (auto& [b, v] : diff(a)) axpy_into(acc, diff(b), v);
    if (!collect(acc).empty())
      throw AInfError("dg_to_ainf: d^2 != 0 at " + cat.gen(a).label);
  }
  for (int a2 = 0; a2 < cat.num_gens(); ++a2)
    for (int a1 = 0; a1 < cat.num_gens(); ++a1) {
      if (cat.gen(a2).src != cat.gen(a1).dst) continue;
      // Leibniz: d(a2 a1) = d(a2) a1 + (-1)^{|a2|} a2 d(a1)
      std::map<int, Scalar> acc;
      for (auto& [b, v] : prod(a2, a1)) axpy_into(acc, diff(b), v);
      for (auto& [b, v] : diff(a2)) axpy_into(acc, prod(b, a1), -v);
      Scalar s2 = cat.gen(a2).degree % 2 == 0 ? one : -one;
      for (auto& [b, v] : diff(a1)) axpy_into(acc, prod(a2, b), -(s2 * v));
      if (!collect(acc).empty())
        throw AInfError("dg_to_ainf: Leibniz fails at (" + cat.gen(a2).label + ", " +
                        cat.gen(a1).label + ")");
      for (int a0 = 0; a0 < cat.num_gens(); ++a0) {
        if (cat.gen(a1).src != cat.gen(a0).dst) continue;
        std::map<int, Scalar> as;
        for (auto& [b, v] : prod(a2, a1)) axpy_into(as, prod(b, a0), v);
        for (auto& [b, v] : prod(a1, a0)) axpy_into(as, prod(a2, b), -v);
        if (!collect(as).empty())
          throw AInfError("dg_to_ainf: non-associative product at (" + cat.gen(a2).label +
                          ", " + cat.gen(a1).label + ", " + cat.gen(a0).label + ")");
      }
    }
  for (size_t o = 0; o < dg.objects.size(); ++o) {
    int e = gi(dg.unit_labels[o]);
    if (!diff(e).empty()) throw AInfError("dg_to_ainf: d(unit) != 0");
    for (int a = 0; a < cat.num_gens(); ++a) {
      if (cat.gen(a).dst == (int)o) {
        SparseVec ea = prod(e, a);
        if (ea.size() != 1 || ea[0].first != a || !(ea[0].second == one))
          throw AInfError("dg_to_ainf: e*x != x at " + cat.gen(a).label);
      }
      if (cat.gen(a).src == (int)o) {
        SparseVec ae = prod(a, e);
        if (ae.size() != 1 || ae[0].first != a || !(ae[0].second == one))
          throw AInfError("dg_to_ainf: x*e != x at " + cat.gen(a).label);
      }
    }
    cat.set_strict_unit((int)o, e);
  }

  // mu^1(a) = (-1)^{|a|} d(a); mu^2(a1, a0) = (-1)^{|a0|} a1 a0
  for (int a = 0; a < cat.num_gens(); ++a) {
    if (cat.is_unit_gen(a)) continue;
    SparseVec d1;
    Scalar s = cat.gen(a).degree % 2 == 0 ? one : -one;
    for (auto& [b, v] : diff(a)) d1.push_back({b, s * v});
    if (!d1.empty()) cat.set_mu({a}, d1);
  }
  for (int a1 = 0; a1 < cat.num_gens(); ++a1)
    for (int a0 = 0; a0 < cat.num_gens(); ++a0) {
      if (cat.gen(a1).src != cat.gen(a0).dst) continue;
      if (cat.is_unit_gen(a1) || cat.is_unit_gen(a0)) continue;
      Scalar s = cat.gen(a0).degree % 2 == 0 ? one : -one;
      SparseVec m2;
      for (auto& [b, v] : prod(a1, a0)) m2.push_back({b, s * v});
      if (!m2.empty()) cat.set_mu({a1, a0}, m2);
    }
  return cat;
}

SparseVec AInfFunctor::apply(const GenTuple& args) const {
  if (args.size() == 1 && strictly_unital && source->is_unit_gen(args[0])) {
    int obj = source->gen(args[0]).src;
    int e = target->unit(object_map[obj]);
    return {{e, Scalar::one(target->field())}};
  }
  for (int a : args)
    if (strictly_unital && source->is_unit_gen(a) && args.size() >= 2) return {};
  auto it = components.find(args);
  return it == components.end() ? SparseVec{} : it->second;
}

AInfFunctor identity_functor(const AInfCategory& cat) {
  AInfFunctor f;
  f.source = &cat;
  f.target = &cat;
  for (int i = 0; i < cat.num_objects(); ++i) f.object_map.push_back(i);
  for (int g = 0; g < cat.num_gens(); ++g)
    if (!cat.is_unit_gen(g)) f.components[{g}] = {{g, Scalar::one(cat.field())}};
  return f;
}

AInfFunctor compose(const AInfFunctor& later, const AInfFunctor& first) {
  if (first.target != later.source) throw AInfError("compose: functor targets mismatch");
  AInfFunctor f;
  f.source = first.source;
  f.target = later.target;
  for (int o : first.object_map) f.object_map.push_back(later.object_map[o]);

  int maxF = 1, maxL = 1;
  for (auto& [args, out] : first.components) maxF = std::max(maxF, (int)args.size());
  for (auto& [args, out] : later.components) maxL = std::max(maxL, (int)args.size());
  int cap = std::min(8, maxF * std::max(maxL, later.target->relation_arity_bound()));
  ChainEnumerator chains(*first.source, cap);
  for (int D = 1; D <= cap; ++D) {
    for (const auto& t : chains.chains(D)) {
      // sum over partitions i_r + ... + i_1 = D of later^r(first(...), ..., first(...))
      std::map<int, Scalar> acc;
      std::vector<std::vector<size_t>> cuts;  // partition endpoints
      std::vector<size_t> cur;
      // enumerate compositions of D
      std::function<void(size_t)> rec = [&](size_t at) {
        if (at == t.size()) {
          // blocks: [0,cur[0]), [cur[0],cur[1]), ...
          std::vector<SparseVec> imgs;
          size_t lo = 0;
          bool dead = false;
          for (size_t c : cur) {
            GenTuple block(t.begin() + lo, t.begin() + c);
            imgs.push_back(first.apply(block));
            if (imgs.back().empty()) { dead = true; break; }
            lo = c;
          }
          if (!dead) {
            // expand multilinear later^r over imgs
            std::function<void(size_t, GenTuple, Scalar)> rec2 = [&](size_t bi, GenTuple sel,
                                                                     Scalar coeff) {
              if (bi == imgs.size()) {
                axpy_into(acc, later.apply(sel), coeff);
                return;
              }
              for (auto& [g, v] : imgs[bi]) {
                GenTuple s2 = sel;
                s2.push_back(g);
                rec2(bi + 1, std::move(s2), coeff * v);
              }
            };
            rec2(0, {}, Scalar::one(f.target->field()));
          }
          return;
        }
        for (size_t nxt = at + 1; nxt <= t.size(); ++nxt) {
          cur.push_back(nxt);
          rec(nxt);
          cur.pop_back();
        }
      };
      rec(0);
      SparseVec out = collect(acc);
      if (!out.empty()) f.components[t] = out;
    }
  }
  return f;
}

CheckReport check_functor(const AInfFunctor& f, int arity) {
  const AInfCategory& src = *f.source;
  const AInfCategory& tgt = *f.target;
  Scalar one = Scalar::one(tgt.field());
  // degree check on components: F^k has degree 1-k
  for (auto& [args, out] : f.components) {
    int want = 1 - (int)args.size();
    for (int a : args) want += src.gen(a).degree;
    for (auto& [b, v] : out) {
      if (tgt.gen(b).degree != want)
        return {false, "functor component of wrong degree at " + tuple_str(src, args)};
      (void)v;
    }
  }
  int maxF = 1;
  for (auto& [args, out] : f.components) maxF = std::max(maxF, (int)args.size());
  int mu_src = 0, mu_tgt = 0;
  for (int a : src.effective_arities()) mu_src = std::max(mu_src, a);
  for (int a : tgt.effective_arities()) mu_tgt = std::max(mu_tgt, a);
  arity = std::min(arity, std::max(maxF + mu_src - 1, maxF * mu_tgt));
  ChainEnumerator chains(src, arity);
  for (int D = 1; D <= arity; ++D) {
    for (const auto& t : chains.chains(D)) {
      std::map<int, Scalar> acc;
      // LHS: sum (-1)^{maltese_n} F(a_D, ..., mu_src(block), ..., a_1)
      for (int m = 1; m <= D; ++m)
        for (int n = 0; n + m <= D; ++n) {
          size_t lo = D - (n + m), hi = (size_t)(D - n);
          GenTuple inner(t.begin() + lo, t.begin() + hi);
          SparseVec mid = src.mu(inner);
          if (mid.empty()) continue;
          int sgn = reduced_sum(src, t, hi, t.size()) % 2;
          Scalar c0 = sgn ? -one : one;
          for (auto& [b, c] : mid) {
            GenTuple outer(t.begin(), t.begin() + lo);
            outer.push_back(b);
            outer.insert(outer.end(), t.begin() + hi, t.end());
            axpy_into(acc, f.apply(outer), c0 * c);
          }
        }
      // RHS: sum over partitions mu_tgt^r(F(...), ..., F(...)), subtracted
      std::vector<size_t> cur;
      std::function<void(size_t)> rec = [&](size_t at) {
        if (at == t.size()) {
          std::vector<SparseVec> imgs;
          size_t lo = 0;
          bool dead = false;
          for (size_t c : cur) {
            GenTuple block(t.begin() + lo, t.begin() + c);
            imgs.push_back(f.apply(block));
            if (imgs.back().empty()) { dead = true; break; }
            lo = c;
          }
          if (!dead) {
            std::function<void(size_t, GenTuple, Scalar)> rec2 = [&](size_t bi, GenTuple sel,
                                                                     Scalar coeff) {
              if (bi == imgs.size()) {
                axpy_into(acc, tgt.mu(sel), -coeff);
                return;
              }
              for (auto& [g, v] : imgs[bi]) {
                GenTuple s2 = sel;
                s2.push_back(g);
                rec2(bi + 1, std::move(s2), coeff * v);
              }
            };
            rec2(0, {}, one);
          }
          return;
        }
        for (size_t nxt = at + 1; nxt <= t.size(); ++nxt) {
          cur.push_back(nxt);
          rec(nxt);
          cur.pop_back();
        }
      };
      rec(0);
      for (auto& [b, v] : acc)
        if (!v.is_zero())
          return {false, "functor equation fails at arity " + std::to_string(D) +
                             " tuple " + tuple_str(src, t)};
    }
  }
  return {};
}

MinimalAlgebra minimal_endomorphism_algebra(const AInfCategory& cat, int obj) {
  MinimalAlgebra out;
  CochainComplex cx = cat.hom_complex(obj, obj);
  Cohomology h = cohomology(cx);
  out.ranks = h.ranks;

  auto gens = cat.hom_gens(obj, obj);
  std::vector<SparseVec> reps;  // in local hom-complex coordinates
  for (auto& [deg, rlist] : h.representatives)
    for (auto& r : rlist) reps.push_back(r);
  for (auto& r : reps) {
    std::string lbl;
    if (r.size() == 1 && r[0].second.is_one())
      lbl = "[" + cx.space().label(r[0].first) + "]";
    else
      lbl = "[h" + std::to_string(out.classes.dim()) + "]";
    int deg = cx.space().degree(r[0].first);
    out.classes.add(lbl, deg);
  }

  Scalar one = Scalar::one(cat.field());
  // projection to cohomology: solve [reps | image] x = v
  auto image_cols = [&]() {
    std::vector<SparseVec> cols;
    for (int i = 0; i < cx.space().dim(); ++i) {
      const SparseVec& di = cx.differential()[i];
      if (!di.empty()) cols.push_back(di);
    }
    return cols;
  }();
  int n = cx.space().dim();
  Matrix A(n, (int)reps.size() + (int)image_cols.size());
  for (size_t j = 0; j < reps.size(); ++j)
    for (auto& [i, v] : reps[j]) A.add(i, (int)j, v);
  for (size_t j = 0; j < image_cols.size(); ++j)
    for (auto& [i, v] : image_cols[j]) A.add(i, (int)(reps.size() + j), v);
  A.canonicalize();

  auto project = [&](const SparseVec& v) -> std::optional<SparseVec> {
    auto x = solve(A, v, cat.field());
    if (!x) return std::nullopt;
    SparseVec cls;
    for (auto& [i, c] : *x)
      if (i < (int)reps.size()) cls.push_back({i, c});
    return cls;
  };

  // associative product on representatives: a*b = (-1)^{|b|} mu^2(a, b)
  auto chain_product = [&](const SparseVec& a, const SparseVec& b) {
    std::map<int, Scalar> acc;
    for (auto& [i, va] : a)
      for (auto& [j, vb] : b) {
        Scalar s = cx.space().degree(j) % 2 == 0 ? one : -one;
        for (auto& [g, c] : cat.mu({gens[i], gens[j]})) {
          // g is a global gen id; map back to local index
          for (size_t k = 0; k < gens.size(); ++k)
            if (gens[k] == g) {
              Scalar t = s * va * vb * c;
              auto [pos, fresh] = acc.try_emplace((int)k, t);
              if (!fresh) pos->second = pos->second + t;
            }
        }
      }
    return collect(acc);
  };

  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < reps.size(); ++j) {
      SparseVec p = chain_product(reps[i], reps[j]);
      auto cls = project(p);
      if (!cls) {
        out.well_defined = false;
        out.obstruction = "product of classes " + std::to_string(i) + "," + std::to_string(j) +
                          " is not a cocycle mod image";
        continue;
      }
      if (!cls->empty()) out.product[{(int)i, (int)j}] = *cls;
      // representative independence: perturb each factor by an exact term
      for (int u = 0; u < n; ++u) {
        const SparseVec& du = cx.differential()[u];
        if (du.empty()) continue;
        if (cx.space().degree(u) + 1 != cx.space().degree(reps[i][0].first)) continue;
        std::map<int, Scalar> pert;
        axpy_into(pert, reps[i], one);
        axpy_into(pert, du, one);
        SparseVec p2 = chain_product(collect(pert), reps[j]);
        auto cls2 = project(p2);
        if (!cls2 || !(*cls2 == *cls)) {
          out.well_defined = false;
          out.obstruction = "product depends on representative (witness: exact shift by d " +
                            cx.space().label(u) + ")";
        }
      }
    }
  return out;
}

}  // namespace twistcat
