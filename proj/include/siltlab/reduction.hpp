#pragma once

#include <string>
#include <vector>

#include "thick.hpp"

namespace siltlab {

inline bool z_u_membership(const std::vector<std::vector<int>>& ext, int x, const Subset& U) {
  for (int u : U)
    if (ext[x][u] || ext[u][x]) return false;
  return true;
}

// dim Hom(M, N) through a projective presentation X of M: the kernel of
// Hom(X^0, N) -> Hom(X^{-1}, N).
template <class F>
int hom_dim_via_presentation(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const Rep<F>& N) {
  const F& f = A.field;
  auto h0 = hom_space(projective_sum(A, X.zero), N);
  if (h0.empty()) return 0;
  if (X.minus.empty()) return static_cast<int>(h0.size());
  auto d = pmat_module_map(A, X.d);
  std::vector<Vec<F>> imgs;
  for (const auto& phi : h0) imgs.push_back(flatten(compose(f, phi, d)));
  if (imgs[0].empty()) return static_cast<int>(h0.size());
  return static_cast<int>(h0.size() - rank(f, from_columns(f, imgs[0].size(), imgs)));
}

template <class F>
struct ReductionData {
  SiltingObject<F> U, TU;
  std::vector<Rep<F>> tops;     // indecomposable summands of H^0(T_U)
  std::vector<char> from_u;     // tops[i] is a summand of H^0(U)
  int endo_dim = 0;
  int endo_dim_presentation = 0;
  FinDimAlgebra<F> endo;
  Vec<F> e;
  bool reduced_zero = false;   // every idempotent killed
  FinDimAlgebra<F> reduced;
};

template <class F>
ReductionData<F> reduce(const FinDimAlgebra<F>& A, const SiltingObject<F>& U, std::uint64_t seed = 0) {
  const F& f = A.field;
  ReductionData<F> R;
  R.U = U;
  R.TU = bongartz_complete(A, U.summands, seed);
  std::vector<TwoTermComplex<F>> pres;
  for (const auto& X : R.TU.summands) {
    auto M = h0(A, X);
    if (M.total() == 0) continue;
    R.tops.push_back(M);
    pres.push_back(X);
    R.from_u.push_back(find_summand(A, U, X, seed) >= 0);
  }
  std::size_t r = R.tops.size();
  // block basis: Hom(M_j, M_i) lies in e_i End e_j
  struct B {
    std::size_t i, j;
    ModMap<F> m;
  };
  std::vector<B> basis;
  std::vector<std::vector<std::vector<ModMap<F>>>> blocks(r, std::vector<std::vector<ModMap<F>>>(r));
  std::vector<std::vector<std::size_t>> offset(r, std::vector<std::size_t>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      offset[i][j] = basis.size();
      blocks[i][j] = hom_space(R.tops[j], R.tops[i]);
      for (const auto& m : blocks[i][j]) basis.push_back({i, j, m});
      R.endo_dim_presentation += hom_dim_via_presentation(A, pres[j], R.tops[i]);
    }
  int dim = static_cast<int>(basis.size());
  R.endo_dim = dim;
  auto embed = [&](std::size_t i, std::size_t j, const Vec<F>& c) {
    Vec<F> v(dim, f.zero());
    for (std::size_t k = 0; k < c.size(); ++k) v[offset[i][j] + k] = c[k];
    return v;
  };
  std::vector<Vec<F>> table;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      // basis[a] * basis[b] = basis[a] o basis[b]
      if (basis[a].j != basis[b].i) {
        table.push_back(Vec<F>(dim, f.zero()));
        continue;
      }
      auto m = compose(f, basis[a].m, basis[b].m);
      table.push_back(embed(basis[a].i, basis[b].j, hom_coords(f, blocks[basis[a].i][basis[b].j], m)));
    }
  std::vector<Vec<F>> idem;
  for (std::size_t i = 0; i < r; ++i) idem.push_back(embed(i, i, hom_coords(f, blocks[i][i], identity_map(R.tops[i]))));
  R.endo = abstract_algebra(f, dim, table, idem, "End(H0 T_U)");
  // quotient by the ideal generated by e
  auto mul = [&](const Vec<F>& x, const Vec<F>& y) {
    Vec<F> out(dim, f.zero());
    for (int a = 0; a < dim; ++a) {
      if (f.is_zero(x[a])) continue;
      for (int b = 0; b < dim; ++b)
        if (!f.is_zero(y[b])) axpy(f, out, f.mul(x[a], y[b]), table[a * dim + b]);
    }
    return out;
  };
  R.e = Vec<F>(dim, f.zero());
  for (std::size_t i = 0; i < r; ++i)
    if (R.from_u[i]) axpy(f, R.e, f.one(), idem[i]);
  std::vector<Vec<F>> units, ideal, all;
  for (int a = 0; a < dim; ++a) {
    Vec<F> u(dim, f.zero());
    u[a] = f.one();
    units.push_back(u);
  }
  for (const auto& x : units)
    for (const auto& y : units) ideal.push_back(mul(mul(x, R.e), y));
  Quotient<F> Q(f, dim, ideal, units);
  int qd = static_cast<int>(Q.dim());
  if (qd == 0) {
    R.reduced_zero = true;
    return R;
  }
  std::vector<Vec<F>> qtable;
  for (int a = 0; a < qd; ++a)
    for (int b = 0; b < qd; ++b) qtable.push_back(Q.coords(mul(Q.basis()[a], Q.basis()[b])));
  std::vector<Vec<F>> qidem;
  for (std::size_t i = 0; i < r; ++i)
    if (!R.from_u[i]) qidem.push_back(Q.coords(idem[i]));
  R.reduced = abstract_algebra(f, qd, qtable, qidem, "reduced");
  return R;
}

struct ReductionCount {
  int n1 = 0;              // siltings of A containing U
  int n2 = 0;              // siltings of the reduced algebra
  bool reduced_finite = false;
  bool connected = false;  // the siltings containing U span a connected subgraph
  bool ok() const { return reduced_finite && n1 == n2 && connected; }
};

template <class F>
ReductionCount verify_reduction_bijection(const FinDimAlgebra<F>& A, const MutationGraph<F>& G, const SiltingObject<F>& U, int cap, std::uint64_t seed = 0) {
  require_complete(G);
  ReductionCount c;
  std::vector<int> hit(G.nodes.size(), 0);
  for (std::size_t s = 0; s < G.nodes.size(); ++s) {
    bool all = true;
    for (const auto& X : U.summands) all = all && find_summand(A, G.nodes[s], X, seed) >= 0;
    hit[s] = all;
    c.n1 += all;
  }
  // connectivity over mutation edges
  std::vector<int> seen(G.nodes.size(), 0), stack;
  for (std::size_t s = 0; s < G.nodes.size() && stack.empty(); ++s)
    if (hit[s]) {
      stack.push_back(static_cast<int>(s));
      seen[s] = 1;
    }
  int reached = static_cast<int>(stack.size());
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (auto [a, b, k] : G.edges) {
      (void)k;
      int o = a == s ? b : b == s ? a : -1;
      if (o < 0 || !hit[o] || seen[o]) continue;
      seen[o] = 1;
      ++reached;
      stack.push_back(o);
    }
  }
  c.connected = reached == c.n1;
  auto R = reduce(A, U, seed);
  if (R.reduced_zero) {
    c.n2 = 1;
    c.reduced_finite = true;
    return c;
  }
  auto H = enumerate_silting(R.reduced, cap, seed);
  auto d = decide_g_finite(H);
  c.reduced_finite = d.finite;
  c.n2 = d.count;
  return c;
}

}  // namespace siltlab
