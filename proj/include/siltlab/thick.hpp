#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cotorsion.hpp"
#include "io.hpp"

namespace siltlab {

struct ClosureOptions {
  int mult_cap = 2;            // summands per side of a candidate map
  std::size_t ext_cap = 4;     // class_candidates dimension cap
  std::uint64_t budget = 256;  // projective points tried before falling back
  int random_maps = 4;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Closure rules over a finite universe: whenever every id in `need` is in a
// subcategory, so is every id in `produce`.
struct RuleTable {
  std::map<Subset, Subset> rules;
  bool exhaustive = true;  // every map space was enumerated in full

  void add(const Subset& need, const Subset& produce) {
    auto& p = rules[normalized(need)];
    p.insert(p.end(), produce.begin(), produce.end());
    p = normalized(p);
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  Subset closure(Subset H) const {
    H = normalized(H);
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& [need, prod] : rules) {
        if (!subset_includes(H, need) || subset_includes(H, prod)) continue;
        H.insert(H.end(), prod.begin(), prod.end());
        H = normalized(H);
        H.erase(std::unique(H.begin(), H.end()), H.end());
        grew = true;
      }
    }
    return H;
  }
  bool is_closed(const Subset& H) const {
    for (const auto& [need, prod] : rules)
      if (subset_includes(H, need) && !subset_includes(H, prod)) return false;
    return true;
  }
  // every closed subset, by brute force over 2^n
  std::vector<Subset> scan(std::size_t n) const {
    std::vector<Subset> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Subset S;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) S.push_back(static_cast<int>(i));
      if (is_closed(S)) out.push_back(S);
    }
    std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  }
};

namespace detail {

// Multisets of at most k ids out of n, including the empty one.
inline std::vector<std::vector<int>> small_multisets(int n, int k) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (static_cast<int>(out[i].size()) == k) continue;
    int lo = out[i].empty() ? 0 : out[i].back();
    for (int j = lo; j < n; ++j) {
      auto m = out[i];
      m.push_back(j);
      out.push_back(m);
    }
  }
  return out;
}

template <class F>
std::vector<Vec<F>> map_candidates(const F& f, std::size_t d, const ClosureOptions& opt, std::mt19937_64& rng, bool& full) {
  auto [c, ok] = class_candidates(f, d, opt.ext_cap, opt.budget);
  full = ok;
  c.push_back(Vec<F>(d, f.zero()));
  if (!ok)
    for (int r = 0; r < opt.random_maps; ++r) {
      Vec<F> v(d);
      for (auto& x : v) x = f.random(rng);
      c.push_back(v);
    }
  return c;
}

}  // namespace detail

// Rules for thick subcategories of the two-term universe: summands of cones
// of inflations, cocones of deflations and middle terms of conflations.
template <class F>
RuleTable thick_rules(const TwoTermUniverse<F>& T, const ClosureOptions& opt = {}) {
  require_complete(*T.mods, "thick_rules");
  const auto& A = *T.alg;
  const F& f = A.field;
  int n = static_cast<int>(T.size());
  auto objs = detail::small_multisets(n, opt.mult_cap);
  std::vector<TwoTermComplex<F>> cx;
  for (const auto& m : objs) {
    std::vector<TwoTermComplex<F>> parts;
    for (int i : m) parts.push_back(T.entries[i].cx);
    cx.push_back(direct_sum_all(A, parts));
  }
  std::vector<std::pair<int, int>> jobs;
  for (std::size_t a = 0; a < objs.size(); ++a)
    for (std::size_t b = 0; b < objs.size(); ++b)
      if (static_cast<int>(objs[a].size() + objs[b].size()) <= opt.mult_cap + 1 && !(objs[a].empty() && objs[b].empty())) jobs.emplace_back(a, b);
  std::vector<Subset> prod(jobs.size() + static_cast<std::size_t>(n) * n);
  std::vector<char> full(prod.size(), 1);
  parallel_for(jobs.size(), opt.threads, [&](std::size_t k) {
    auto [a, b] = jobs[k];
    std::mt19937_64 rng(opt.seed * 1000003u + k);
    auto H = hom_K(A, cx[a], cx[b]);
    bool ok;
    Subset out;
    for (const auto& c : detail::map_candidates(f, H.dim(), opt, rng, ok)) {
      auto m = H.lift(c);
      if (auto r = cone_of_map(A, cx[a], cx[b], m))
        for (int i : identify_two_term(T, *r.obj, opt.seed)) out.push_back(i);
      if (auto r = cocone_of_map(A, cx[a], cx[b], m))
        for (int i : identify_two_term(T, *r.obj, opt.seed)) out.push_back(i);
    }
    full[k] = ok;
    prod[k] = out;
  });
  parallel_for(static_cast<std::size_t>(n) * n, opt.threads, [&](std::size_t k) {
    int z = static_cast<int>(k) / n, x = static_cast<int>(k) % n;
    std::mt19937_64 rng(opt.seed * 1000003u + jobs.size() + k);
    auto E = ext_E(A, T.entries[z].cx, T.entries[x].cx);
    bool ok;
    Subset out;
    for (const auto& c : detail::map_candidates(f, E.dim(), opt, rng, ok)) {
      auto conf = realize_class(A, E, c);
      for (int i : identify_two_term(T, conf.Y, opt.seed)) out.push_back(i);
    }
    full[jobs.size() + k] = ok;
    prod[jobs.size() + k] = out;
  });
  RuleTable R;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto need = objs[jobs[k].first];
    need.insert(need.end(), objs[jobs[k].second].begin(), objs[jobs[k].second].end());
    R.add(need, prod[k]);
    R.exhaustive = R.exhaustive && full[k];
  }
  for (int k = 0; k < n * n; ++k) {
    R.add({k / n, k % n}, prod[jobs.size() + k]);
    R.exhaustive = R.exhaustive && full[jobs.size() + k];
  }
  return R;
}

template <class F>
Subset thick_closure(const RuleTable& R, const Subset& seed) {
  return R.closure(seed);
}

namespace detail {

// Integer coordinates of v in the g-vector basis of U, if any.
template <class F>
std::optional<std::vector<long long>> u_coords(const TwoTermUniverse<F>& T, const std::vector<int>& U, const std::vector<int>& v) {
  RationalField Q;
  std::size_t n = v.size();
  if (U.empty()) {
    for (int t : v)
      if (t) return std::nullopt;
    return std::vector<long long>{};
  }
  Mat<RationalField> M(n, U.size(), Q.zero());
  for (std::size_t j = 0; j < U.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) M(i, j) = T.entries[U[j]].g[i];
  Vec<RationalField> b(v.begin(), v.end());
  auto sol = solve(Q, M, b);
  if (!sol) return std::nullopt;
  std::vector<long long> c;
  for (const auto& x : *sol) {
    if (boost::multiprecision::denominator(x) != 1) return std::nullopt;
    c.push_back(static_cast<long long>(boost::multiprecision::numerator(x)));
  }
  return c;
}

template <class F>
TwoTermComplex<F> entry_sum(const TwoTermUniverse<F>& T, const std::vector<int>& ids) {
  std::vector<TwoTermComplex<F>> parts;
  for (int i : ids) parts.push_back(T.entries[i].cx);
  return direct_sum_all(*T.alg, parts);
}

// Some map src -> tgt has cone (cocone when !cone) isomorphic to entry x.
template <class F>
bool realizes(const TwoTermUniverse<F>& T, const std::vector<int>& src, const std::vector<int>& tgt, int x, bool cone, const ClosureOptions& opt, std::mt19937_64& rng) {
  const auto& A = *T.alg;
  auto S = entry_sum(T, src), Z = entry_sum(T, tgt);
  auto H = hom_K(A, S, Z);
  bool ok;
  std::vector<int> want{x};
  for (const auto& c : map_candidates(A.field, H.dim(), opt, rng, ok)) {
    auto m = H.lift(c);
    auto r = cone ? cone_of_map(A, S, Z, m) : cocone_of_map(A, S, Z, m);
    if (r && identify_two_term(T, *r.obj, opt.seed) == want) return true;
  }
  return false;
}

}  // namespace detail

// thick(U) in the window, read off the star product U[-1] * U * U[1]
// without iterating a closure.  One layer: X is the cone of W + U_- -> W + U_+
// or the cocone of W + U_+ -> W + U_-, with [X] = [U_+] - [U_-] and W in
// add(U) up to mult_cap summands.  Second layer: X is the cone of V -> Y or
// the cocone of Y -> V, Y a sum of first-layer objects and V in add(U) with
// [V] = [Y] - [X].
template <class F>
Subset thick_of_presilting(const TwoTermUniverse<F>& T, const std::vector<int>& U, const ClosureOptions& opt = {}) {
  int n = static_cast<int>(T.size());
  auto expand = [&](const std::vector<long long>& c, int sign) {
    std::vector<int> out;
    for (std::size_t j = 0; j < c.size(); ++j)
      for (long long k = 0; k < sign * c[j]; ++k) out.push_back(U[j]);
    return out;
  };
  auto pads = detail::small_multisets(static_cast<int>(U.size()), opt.mult_cap);
  std::vector<char> in(n, 0);
  parallel_for(n, opt.threads, [&](std::size_t x) {
    std::mt19937_64 rng(opt.seed ^ (static_cast<std::uint64_t>(x) << 20));
    if (subset_contains(normalized(U), static_cast<int>(x))) {
      in[x] = 1;
      return;
    }
    auto c = detail::u_coords(T, U, T.entries[x].g);
    if (!c) return;
    for (const auto& wi : pads) {
      auto pos = expand(*c, 1), neg = expand(*c, -1);
      for (int i : wi) {
        pos.push_back(U[i]);
        neg.push_back(U[i]);
      }
      if (detail::realizes(T, neg, pos, static_cast<int>(x), true, opt, rng) || detail::realizes(T, pos, neg, static_cast<int>(x), false, opt, rng)) {
        in[x] = 1;
        return;
      }
    }
  });
  Subset first;
  for (int x = 0; x < n; ++x)
    if (in[x]) first.push_back(x);
  auto ys = detail::small_multisets(static_cast<int>(first.size()), opt.mult_cap);
  std::vector<char> second(n, 0);
  parallel_for(n, opt.threads, [&](std::size_t x) {
    if (in[x]) return;
    std::mt19937_64 rng(opt.seed ^ (static_cast<std::uint64_t>(x) << 21));
    for (const auto& yi : ys) {
      if (yi.empty()) continue;
      std::vector<int> Y;
      std::vector<int> gy(T.alg->n(), 0);
      for (int i : yi) {
        Y.push_back(first[i]);
        for (std::size_t t = 0; t < gy.size(); ++t) gy[t] += T.entries[first[i]].g[t];
      }
      for (std::size_t t = 0; t < gy.size(); ++t) gy[t] -= T.entries[x].g[t];
      auto c = detail::u_coords(T, U, gy);
      if (!c || std::any_of(c->begin(), c->end(), [](long long v) { return v < 0; })) continue;
      auto V = expand(*c, 1);
      if (detail::realizes(T, V, Y, static_cast<int>(x), true, opt, rng) || detail::realizes(T, Y, V, static_cast<int>(x), false, opt, rng)) {
        second[x] = 1;
        return;
      }
    }
  });
  Subset out;
  for (int x = 0; x < n; ++x)
    if (in[x] || second[x]) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Injectives and projectives of a thick subcategory H.

inline Subset injectives_of(const std::vector<std::vector<int>>& ext, const Subset& H) {
  Subset out;
  for (int i : H) {
    bool ok = true;
    for (int x : H) ok = ok && ext[x][i] == 0;
    if (ok) out.push_back(i);
  }
  return out;
}

inline Subset projectives_of(const std::vector<std::vector<int>>& ext, const Subset& H) {
  Subset out;
  for (int p : H) {
    bool ok = true;
    for (int x : H) ok = ok && ext[p][x] == 0;
    if (ok) out.push_back(p);
  }
  return out;
}

struct EnoughCheck {
  Verdict state = Verdict::inconclusive;
  std::string witness;
  bool ok() const { return state == Verdict::complete; }
};

// A conflation X >-> I ->> X' with I injective in H and X' in H exists iff
// the minimal left add(inj H)-approximation of X is such a conflation.
template <class F>
EnoughCheck has_enough_injectives(const TwoTermUniverse<F>& T, const std::vector<std::vector<int>>& ext, const Subset& H, std::uint64_t seed = 0) {
  const auto& A = *T.alg;
  EnoughCheck r;
  if (!T.complete()) return r;
  auto inj = detail::entry_objects(T, injectives_of(ext, H));
  for (int x : H) {
    const auto& X = T.entries[x].cx;
    auto ap = left_approximation(A, inj, X);
    auto c = cone_of_map(A, X, ap.object, ap.map);
    bool ok = static_cast<bool>(c);
    if (ok)
      for (int k : identify_two_term(T, *c.obj, seed)) ok = ok && subset_contains(H, k);
    if (!ok) {
      r.state = Verdict::incomplete;
      r.witness = T.entries[x].id;
      return r;
    }
  }
  r.state = Verdict::complete;
  return r;
}

template <class F>
EnoughCheck has_enough_projectives(const TwoTermUniverse<F>& T, const std::vector<std::vector<int>>& ext, const Subset& H, std::uint64_t seed = 0) {
  const auto& A = *T.alg;
  EnoughCheck r;
  if (!T.complete()) return r;
  auto proj = detail::entry_objects(T, projectives_of(ext, H));
  for (int x : H) {
    const auto& X = T.entries[x].cx;
    auto ap = right_approximation(A, proj, X);
    auto c = cocone_of_map(A, ap.object, X, ap.map);
    bool ok = static_cast<bool>(c);
    if (ok)
      for (int k : identify_two_term(T, *c.obj, seed)) ok = ok && subset_contains(H, k);
    if (!ok) {
      r.state = Verdict::incomplete;
      r.witness = T.entries[x].id;
      return r;
    }
  }
  r.state = Verdict::complete;
  return r;
}

// Summands of U occurring in the minimal right add(U)-approximation of
// Lambda[1].
template <class F>
std::vector<int> u_rho(const FinDimAlgebra<F>& A, const SiltingObject<F>& U) {
  auto ap = right_approximation(A, U.summands, regular_shift(A));
  std::vector<int> out;
  for (std::size_t i = 0; i < U.size(); ++i)
    if (ap.mult[i] > 0) out.push_back(static_cast<int>(i));
  return out;
}

// ---------------------------------------------------------------------------
// W and T: perpendicularity of complexes and modules.

// Hom(d_X, M): Hom(X^0, M) -> Hom(X^{-1}, M) is bijective.
template <class F>
bool hom_diff_bijective(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const Rep<F>& M) {
  const F& f = A.field;
  auto P0 = projective_sum(A, X.zero), P1 = projective_sum(A, X.minus);
  auto h0 = hom_space(P0, M), h1 = hom_space(P1, M);
  if (h0.size() != h1.size()) return false;
  if (h0.empty()) return true;
  auto d = pmat_module_map(A, X.d);
  std::vector<Vec<F>> imgs;
  for (const auto& phi : h0) imgs.push_back(flatten(compose(f, phi, d)));
  return rank(f, from_columns(f, imgs[0].size(), imgs)) == h0.size();
}

template <class F>
struct PerpTable {
  std::vector<std::vector<char>> direct;  // [entry][module]
  std::vector<std::vector<char>> via_hom;  // Hom_D(X, M[i]) = 0 for all i
  bool agree = true;
};

template <class F>
PerpTable<F> perp_table(const TwoTermUniverse<F>& T, int threads = 1) {
  const auto& U = *T.mods;
  const auto& A = *T.alg;
  std::size_t n = T.size(), m = U.size();
  PerpTable<F> P;
  P.direct.assign(n, std::vector<char>(m, 0));
  P.via_hom.assign(n, std::vector<char>(m, 0));
  parallel_for(n * m, threads, [&](std::size_t k) {
    std::size_t x = k / m, j = k % m;
    const auto& e = T.entries[x];
    const auto& M = U.modules[j];
    P.direct[x][j] = hom_diff_bijective(A, e.cx, M);
    // Hom(X_N, M) = Hom(N, M), Hom(X_N, M[1]) = D Hom(M, tau N);
    // Hom(P_v[1], M[1]) = M_v
    if (e.module >= 0)
      P.via_hom[x][j] = hom_dim(T.h0s[x], M) == 0 && (T.taus[x].total() == 0 || hom_dim(M, T.taus[x]) == 0);
    else
      P.via_hom[x][j] = M.dims[e.vertex] == 0;
  });
  P.agree = P.direct == P.via_hom;
  return P;
}

template <class F>
Subset w_map(const PerpTable<F>& P, const Subset& H) {
  Subset out;
  for (std::size_t j = 0; j < (P.direct.empty() ? 0 : P.direct[0].size()); ++j) {
    bool ok = true;
    for (int x : H) ok = ok && P.direct[x][j];
    if (ok) out.push_back(static_cast<int>(j));
  }
  return out;
}

template <class F>
Subset t_map(const PerpTable<F>& P, const Subset& C) {
  Subset out;
  for (std::size_t x = 0; x < P.direct.size(); ++x) {
    bool ok = true;
    for (int j : C) ok = ok && P.direct[x][j];
    if (ok) out.push_back(static_cast<int>(x));
  }
  return out;
}

// Rules for wide subcategories of the module universe: summands of kernels
// and cokernels of maps, and of extension middle terms.
template <class F>
RuleTable wide_rules(const Universe<F>& U, const ClosureOptions& opt = {}) {
  require_complete(U, "wide_rules");
  const auto& A = *U.alg;
  const F& f = A.field;
  int n = static_cast<int>(U.size());
  auto objs = detail::small_multisets(n, opt.mult_cap);
  std::vector<Rep<F>> mods;
  for (const auto& m : objs) {
    std::vector<Rep<F>> parts;
    for (int i : m) parts.push_back(U.modules[i]);
    mods.push_back(direct_sum(parts, A));
  }
  std::vector<std::pair<int, int>> jobs;
  for (std::size_t a = 0; a < objs.size(); ++a)
    for (std::size_t b = 0; b < objs.size(); ++b)
      if (!objs[a].empty() && !objs[b].empty() && static_cast<int>(objs[a].size() + objs[b].size()) <= opt.mult_cap + 1) jobs.emplace_back(a, b);
  std::vector<Subset> prod(jobs.size() + static_cast<std::size_t>(n) * n);
  std::vector<char> full(prod.size(), 1);
  auto ids = [&](const Rep<F>& M, Subset& out) {
    if (M.total() == 0) return;
    for (int i : identify_summands(U, M, opt.seed)) out.push_back(i);
  };
  parallel_for(jobs.size(), opt.threads, [&](std::size_t k) {
    auto [a, b] = jobs[k];
    std::mt19937_64 rng(opt.seed * 1000003u + k);
    auto H = hom_space(mods[a], mods[b]);
    bool ok;
    Subset out;
    for (const auto& c : detail::map_candidates(f, H.size(), opt, rng, ok)) {
      auto m = map_lincomb(f, H, c, mods[a], mods[b]);
      ids(map_kernel(mods[a], m).first, out);
      ids(map_cokernel(mods[b], m).first, out);
    }
    full[k] = ok;
    prod[k] = out;
  });
  parallel_for(static_cast<std::size_t>(n) * n, opt.threads, [&](std::size_t k) {
    int z = static_cast<int>(k) / n, x = static_cast<int>(k) % n;
    std::mt19937_64 rng(opt.seed * 1000003u + jobs.size() + k);
    auto D = ext1(U.modules[z], U.modules[x]);
    bool ok;
    Subset out;
    auto [cands, full_ext] = class_candidates(f, D.dim(), opt.ext_cap, opt.budget);
    ok = full_ext;
    for (const auto& c : cands) ids(ext_middle(D, U.modules[x], c), out);
    full[jobs.size() + k] = ok;
    prod[jobs.size() + k] = out;
  });
  RuleTable R;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto need = objs[jobs[k].first];
    need.insert(need.end(), objs[jobs[k].second].begin(), objs[jobs[k].second].end());
    R.add(need, prod[k]);
    R.exhaustive = R.exhaustive && full[k];
  }
  for (int k = 0; k < n * n; ++k) {
    R.add({k / n, k % n}, prod[jobs.size() + k]);
    R.exhaustive = R.exhaustive && full[jobs.size() + k];
  }
  return R;
}

// ---------------------------------------------------------------------------
// Presilting objects inside a thick subcategory.

struct ShrinkStep {
  std::string object;      // X^{(i)}
  std::string middle;      // middle term of the self-extension, minimalized
  int ext_dim = 0;         // dim E(X^{(i)}, X^{(i)})
  bool witness_ok = false; // conflation maps are chain maps composing to zero
};

template <class F>
struct ShrinkResult {
  std::vector<ShrinkStep> steps;
  TwoTermComplex<F> final_object;
  bool reached = false;  // final object is P + P[1]
};

// X = (P --f--> P) with f radical.  Each step realizes the class of the
// identity in E(X, X); the middle term is (P --(-f^2)--> P) up to homotopy
// equivalence.
template <class F>
ShrinkResult<F> nilpotent_shrink(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, int max_steps = 32) {
  const F& f = A.field;
  if (X.minus.size() != 1 || X.zero.size() != 1 || X.minus[0] != X.zero[0]) throw InputError("nilpotent_shrink needs a complex P -> P");
  int v = X.minus[0];
  if (!f.is_zero(X.d.at(0, 0)[A.idem[v]])) throw NotRadical("differential has an invertible part");
  ShrinkResult<F> r;
  TwoTermComplex<F> cur = X;
  for (int step = 0; step < max_steps; ++step) {
    if (vec_is_zero(f, cur.d.at(0, 0))) {
      r.final_object = cur;
      r.reached = true;
      return r;
    }
    ShrinkStep s;
    s.object = complex_str(A, cur);
    auto E = ext_E(A, cur, cur);
    s.ext_dim = static_cast<int>(E.dim());
    auto id = pmat_identity(A, cur.minus);
    auto conf = realize_extension(A, cur, cur, id);
    auto comp = chain_compose(A, conf.inflation, conf.deflation);
    s.witness_ok = E.dim() > 0 && !vec_is_zero(f, E.coords(id)) && is_chain_map(A, conf.X, conf.Y, conf.inflation) &&
                   is_chain_map(A, conf.Y, conf.Z, conf.deflation) && pmat_is_zero(A, comp.minus) && pmat_is_zero(A, comp.zero);
    auto m = minimal(A, conf.Y);
    s.middle = complex_str(A, m);
    r.steps.push_back(s);
    if (m.minus.size() != 1 || m.zero.size() != 1) {
      r.final_object = m;
      return r;
    }
    cur = m;
  }
  r.final_object = cur;
  return r;
}

template <class F>
struct Extraction {
  bool zero_class = false;
  std::vector<int> summands;     // entry ids of the basic presilting U
  std::vector<long long> mult;   // [X] = sum mult_i [U_i]
  ShrinkResult<F> shrink;        // when [X] = 0
  bool in_h = false;             // U (or P and P[1]) lies in H
};

// A presilting U in H with [U] = [X].  Nonzero classes are looked up on the
// fan of the complete mutation graph; the zero class goes through
// nilpotent_shrink.
template <class F>
Extraction<F> extract_presilting(const TwoTermUniverse<F>& T, const MutationGraph<F>& G, const Subset& H, int x, std::uint64_t seed = 0) {
  require_complete(G);
  const auto& A = *T.alg;
  Extraction<F> r;
  const auto& g = T.entries[x].g;
  if (std::all_of(g.begin(), g.end(), [](int t) { return t == 0; })) {
    r.zero_class = true;
    r.shrink = nilpotent_shrink(A, T.entries[x].cx);
    if (!r.shrink.reached) return r;
    int v = T.entries[x].cx.minus[0];
    auto p = identify_two_term(T, stalk(A, std::vector<int>{v}), seed);
    r.summands = {p[0], shifted_index(T, v)};
    r.mult = {1, 1};
    r.in_h = subset_contains(H, p[0]) && subset_contains(H, shifted_index(T, v));
    return r;
  }
  for (const auto& S : G.nodes) {
    auto c = cone_coefficients(S.g, g);
    if (!c) continue;
    r.in_h = true;
    for (std::size_t i = 0; i < S.size(); ++i) {
      if ((*c)[i] == 0) continue;
      int id = identify_two_term(T, S.summands[i], seed)[0];
      r.summands.push_back(id);
      r.mult.push_back((*c)[i]);
      r.in_h = r.in_h && subset_contains(H, id);
    }
    return r;
  }
  throw GVectorNotPresilting("no presilting object has g-vector " + gvec_str(g));
}

}  // namespace siltlab
