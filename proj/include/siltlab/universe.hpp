#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "rep.hpp"

namespace siltlab {

// Runs body(i) for i in [0, n) on up to `threads` workers.  Callers write
// into preallocated slots so results never depend on scheduling.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t t = std::min<std::size_t>(threads, n);
  std::vector<std::exception_ptr> errs(t);
  for (std::size_t w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += t) body(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

using Subset = std::vector<int>;  // sorted indices into a universe

inline bool subset_contains(const Subset& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

inline bool subset_includes(const Subset& big, const Subset& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline Subset normalized(Subset s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

template <class F>
struct Universe {
  const FinDimAlgebra<F>* alg = nullptr;
  std::vector<Rep<F>> modules;
  bool complete = false;
  int bound = 0;  // total-dimension bound for bounded universes
  std::string provider;

  std::size_t size() const { return modules.size(); }
  static std::string id(std::size_t i) { return "M" + std::to_string(i); }
};

// Index of the entry isomorphic to the indecomposable M, or -1.
template <class F>
int find_module(const Universe<F>& U, const Rep<F>& M, std::uint64_t seed = 0) {
  for (std::size_t i = 0; i < U.modules.size(); ++i)
    if (U.modules[i].dims == M.dims && is_isomorphic(U.modules[i], M, seed)) return static_cast<int>(i);
  return -1;
}

template <class F>
int identify(const Universe<F>& U, const Rep<F>& M, std::uint64_t seed = 0) {
  int i = find_module(U, M, seed);
  if (i < 0) {
    std::string d;
    for (int x : M.dims) d += (d.empty() ? "" : ",") + std::to_string(x);
    throw IncompleteUniverse("module with dimension vector (" + d + ") is missing from the universe");
  }
  return i;
}

// Indices (with multiplicity) of the indecomposable summands of M.
template <class F>
std::vector<int> identify_summands(const Universe<F>& U, const Rep<F>& M, std::uint64_t seed = 0) {
  std::vector<int> out;
  for (const auto& X : decompose(M, {seed}))
    out.push_back(identify(U, X, seed));
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
void canonical_order(Universe<F>& U) {
  std::vector<std::size_t> idx(U.modules.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& A = U.modules[a];
    const auto& B = U.modules[b];
    if (A.total() != B.total()) return A.total() < B.total();
    return A.dims > B.dims;
  });
  std::vector<Rep<F>> sorted;
  for (auto i : idx) sorted.push_back(U.modules[i]);
  U.modules = std::move(sorted);
}

// rad^k M as a submodule spanning set (per vertex) and its dimension.
template <class F>
std::vector<Rep<F>> radical_layers(const Rep<F>& M) {
  std::vector<Rep<F>> layers{M};
  while (layers.back().total() > 0) layers.push_back(radical(layers.back()).first);
  return layers;
}

template <class F>
bool is_uniserial(const Rep<F>& M) {
  auto L = radical_layers(M);
  for (std::size_t k = 0; k + 1 < L.size(); ++k)
    if (L[k].total() - L[k + 1].total() != 1) return false;
  return true;
}

template <class F>
bool is_nakayama(const FinDimAlgebra<F>& A) {
  for (int v = 0; v < A.n(); ++v)
    if (!is_uniserial(projective(A, v)) || !is_uniserial(injective(A, v))) return false;
  return true;
}

// Nakayama algebras: every indecomposable is P_i / rad^k P_i.
template <class F>
Universe<F> interval_universe(const FinDimAlgebra<F>& A) {
  if (!is_nakayama(A)) throw ProviderUnsupported("interval provider needs a Nakayama algebra (uniserial projectives and injectives)");
  Universe<F> U;
  U.alg = &A;
  U.complete = true;
  U.provider = "interval";
  for (int v = 0; v < A.n(); ++v) {
    auto P = projective(A, v);
    // P / rad^k P for k = 1 .. Loewy length
    Rep<F> sub = P;
    ModMap<F> inc = identity_map(P);
    while (sub.total() > 0) {
      auto [R, i] = radical(sub);
      inc = compose(A.field, inc, i);
      sub = R;
      std::vector<std::vector<Vec<F>>> span(A.n());
      for (int w = 0; w < A.n(); ++w)
        for (std::size_t j = 0; j < inc.b[w].cols; ++j) span[w].push_back(column(inc.b[w], j));
      auto Q = quotient_rep(P, span).first;
      if (find_module(U, Q) < 0) U.modules.push_back(Q);
    }
  }
  canonical_order(U);
  return U;
}

struct SearchOptions {
  int bound = 6;          // total dimension bound
  std::size_t budget = 200;  // max universe size
  int rounds = 4;
  std::uint64_t seed = 0;
};

// Bounded search: seeds with simples, projectives and injectives, then adds
// indecomposable summands of kernels and cokernels of basis maps (and their
// pairwise sums), τ-translates, and middle terms of basis extensions, while
// staying within the dimension bound.
template <class F>
Universe<F> search_universe(const FinDimAlgebra<F>& A, const SearchOptions& opt = {}) {
  Universe<F> U;
  U.alg = &A;
  U.complete = false;
  U.bound = opt.bound;
  U.provider = "search";
  const F& f = A.field;
  auto add = [&](const Rep<F>& M) {
    if (M.total() == 0 || M.total() > opt.bound) return false;
    for (const auto& X : decompose(M, {opt.seed})) {
      if (X.total() > opt.bound || find_module(U, X, opt.seed) >= 0) continue;
      if (U.modules.size() >= opt.budget) throw SearchBudgetExceeded("universe search exceeded " + std::to_string(opt.budget) + " modules");
      U.modules.push_back(X);
    }
    return true;
  };
  for (int v = 0; v < A.n(); ++v) {
    add(simple(A, v));
    add(projective(A, v));
    add(injective(A, v));
  }
  std::size_t done = 0;
  for (int round = 0; round < opt.rounds; ++round) {
    std::size_t before = U.modules.size();
    auto snapshot = U.modules;
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      add(tau(snapshot[i]));
      for (std::size_t j = 0; j < snapshot.size(); ++j) {
        if (i < done && j < done) continue;
        const auto& M = snapshot[i];
        const auto& N = snapshot[j];
        auto H = hom_space(M, N);
        std::vector<ModMap<F>> maps = H;
        for (std::size_t a = 0; a < H.size(); ++a)
          for (std::size_t b = a + 1; b < H.size(); ++b) {
            ModMap<F> s = H[a];
            for (std::size_t v = 0; v < s.b.size(); ++v) s.b[v] = mat_add(f, s.b[v], H[b].b[v]);
            maps.push_back(s);
          }
        for (const auto& m : maps) {
          add(map_kernel(M, m).first);
          add(map_cokernel(N, m).first);
        }
        if (M.total() + N.total() <= opt.bound) {
          auto D = ext1(M, N);
          for (std::size_t k = 0; k < D.dim(); ++k) {
            Vec<F> c(D.dim(), f.zero());
            c[k] = f.one();
            add(ext_middle(D, N, c));
          }
        }
      }
    }
    done = before;
    if (U.modules.size() == before) break;
  }
  canonical_order(U);
  return U;
}

template <class F>
Universe<F> make_universe(const FinDimAlgebra<F>& A, const std::string& provider, const SearchOptions& opt = {}) {
  if (provider == "interval") return interval_universe(A);
  if (provider == "search") return search_universe(A, opt);
  if (provider == "auto") {
    if (is_nakayama(A)) return interval_universe(A);
    return search_universe(A, opt);
  }
  throw InputError("unknown provider '" + provider + "'");
}

// Hom and Ext^1 dimension tables over a universe.
template <class F>
struct ModuleTables {
  std::vector<std::vector<int>> hom, ext;
};

template <class F>
ModuleTables<F> module_tables(const Universe<F>& U, int threads = 1) {
  std::size_t n = U.size();
  ModuleTables<F> T;
  T.hom.assign(n, std::vector<int>(n, 0));
  T.ext.assign(n, std::vector<int>(n, 0));
  parallel_for(n * n, threads, [&](std::size_t k) {
    std::size_t i = k / n, j = k % n;
    T.hom[i][j] = hom_dim(U.modules[i], U.modules[j]);
    T.ext[i][j] = static_cast<int>(ext1(U.modules[i], U.modules[j]).dim());
  });
  return T;
}

template <class F>
void require_complete(const Universe<F>& U, const std::string& what) {
  if (!U.complete) throw IncompleteUniverse(what + " needs a complete universe (provider '" + U.provider + "')");
}

// S^perp = {N : Hom(S, N) = 0}; ^perp S dually.
template <class F>
Subset hom_perp_right(const ModuleTables<F>& T, const Subset& S) {
  Subset out;
  for (std::size_t j = 0; j < T.hom.size(); ++j) {
    bool ok = true;
    for (int i : S) ok = ok && T.hom[i][j] == 0;
    if (ok) out.push_back(static_cast<int>(j));
  }
  return out;
}

template <class F>
Subset hom_perp_left(const ModuleTables<F>& T, const Subset& S) {
  Subset out;
  for (std::size_t i = 0; i < T.hom.size(); ++i) {
    bool ok = true;
    for (int j : S) ok = ok && T.hom[i][j] == 0;
    if (ok) out.push_back(static_cast<int>(i));
  }
  return out;
}

// Smallest torsion class containing S: ^perp(S^perp).
template <class F>
Subset torsion_closure(const Universe<F>& U, const ModuleTables<F>& T, const Subset& S) {
  require_complete(U, "torsion_closure");
  return hom_perp_left(T, hom_perp_right(T, S));
}

template <class F>
Rep<F> sum_of(const Universe<F>& U, const Subset& S) {
  std::vector<Rep<F>> parts;
  for (int i : S) parts.push_back(U.modules[i]);
  return direct_sum(parts, *U.alg);
}

struct TorsionCheck {
  bool ok = true;
  bool exhaustive = true;  // false when some extension space was sampled
  std::string reason;
};

// Direct check: closure under quotients (every universe module in Fac of the
// sum is a member) and under extensions (middle terms of enumerated classes).
template <class F>
TorsionCheck check_torsion_class(const Universe<F>& U, const Subset& S, std::size_t ext_cap = 4, std::uint64_t seed = 0) {
  require_complete(U, "is_torsion_class");
  TorsionCheck r;
  const F& f = U.alg->field;
  auto sum = sum_of(U, S);
  for (std::size_t j = 0; j < U.size(); ++j) {
    if (subset_contains(S, static_cast<int>(j))) continue;
    if (fac_membership(U.modules[j], sum)) {
      r.ok = false;
      r.reason = "quotient " + Universe<F>::id(j) + " missing";
      return r;
    }
  }
  for (int a : S)
    for (int b : S) {
      auto D = ext1(U.modules[a], U.modules[b]);
      auto [cands, full] = class_candidates(f, D.dim(), ext_cap);
      r.exhaustive = r.exhaustive && full;
      for (const auto& c : cands)
        for (int k : identify_summands(U, ext_middle(D, U.modules[b], c), seed))
          if (!subset_contains(S, k)) {
            r.ok = false;
            r.reason = "extension of " + Universe<F>::id(a) + " by " + Universe<F>::id(b) + " has summand " + Universe<F>::id(k);
            return r;
          }
    }
  return r;
}

template <class F>
bool is_torsion_class(const Universe<F>& U, const Subset& S, std::size_t ext_cap = 4, std::uint64_t seed = 0) {
  return check_torsion_class(U, S, ext_cap, seed).ok;
}

// All torsion classes, grown from 0 by adjoining one module and closing.
template <class F>
std::vector<Subset> enumerate_torsion_classes(const Universe<F>& U, const ModuleTables<F>& T) {
  require_complete(U, "enumerate_torsion_classes");
  std::set<Subset> seen;
  std::vector<Subset> queue{torsion_closure(U, T, {})};
  seen.insert(queue[0]);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t m = 0; m < U.size(); ++m) {
      if (subset_contains(queue[q], static_cast<int>(m))) continue;
      auto S = queue[q];
      S.push_back(static_cast<int>(m));
      auto C = torsion_closure(U, T, normalized(S));
      if (seen.insert(C).second) queue.push_back(C);
    }
  }
  std::vector<Subset> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// Ext-projectives of T: members M with Ext^1(M, T) = 0.
template <class F>
Subset ext_projectives(const ModuleTables<F>& T, const Subset& S) {
  Subset out;
  for (int i : S) {
    bool ok = true;
    for (int j : S) ok = ok && T.ext[i][j] == 0;
    if (ok) out.push_back(i);
  }
  return out;
}

template <class F>
bool is_functorially_finite(const Universe<F>& U, const ModuleTables<F>& T, const Subset& S) {
  require_complete(U, "is_functorially_finite");
  auto P = sum_of(U, ext_projectives(T, S));
  for (std::size_t j = 0; j < U.size(); ++j)
    if (fac_membership(U.modules[j], P) != subset_contains(S, static_cast<int>(j))) return false;
  return true;
}

template <class F>
Subset bricks(const Universe<F>& U) {
  Subset out;
  for (std::size_t i = 0; i < U.size(); ++i)
    if (is_brick(U.modules[i])) out.push_back(static_cast<int>(i));
  return out;
}

// Covering relations of a family ordered by inclusion.
inline std::vector<std::pair<int, int>> hasse_edges(const std::vector<Subset>& xs) {
  std::vector<std::pair<int, int>> e;
  int n = static_cast<int>(xs.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || xs[a] == xs[b] || !subset_includes(xs[b], xs[a])) continue;
      bool cover = true;
      for (int c = 0; c < n && cover; ++c)
        if (c != a && c != b && xs[c] != xs[a] && xs[c] != xs[b] && subset_includes(xs[c], xs[a]) && subset_includes(xs[b], xs[c])) cover = false;
      if (cover) e.emplace_back(a, b);
    }
  return e;
}

}  // namespace siltlab
