#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "complex.hpp"

namespace siltlab {

// A finite-dimensional left module: a vector space per vertex and one
// matrix per generator g in e_t A e_s, of shape dims[t] x dims[s].
template <class F>
struct Rep {
  const FinDimAlgebra<F>* alg = nullptr;
  std::vector<int> dims;
  std::vector<Mat<F>> act;

  int total() const { return std::accumulate(dims.begin(), dims.end(), 0); }
  std::vector<int> offsets() const {
    std::vector<int> o(dims.size() + 1, 0);
    for (std::size_t v = 0; v < dims.size(); ++v) o[v + 1] = o[v] + dims[v];
    return o;
  }
};

// Per-vertex blocks of a module homomorphism, block v of shape N_v x M_v.
template <class F>
struct ModMap {
  std::vector<Mat<F>> b;
};

template <class F>
Rep<F> zero_rep(const FinDimAlgebra<F>& A) {
  Rep<F> M{&A, std::vector<int>(A.n(), 0), {}};
  M.act.assign(A.gens.size(), zeros(A.field, 0, 0));
  return M;
}

// Action of basis element b as a dims[tgt] x dims[src] matrix.
template <class F>
Mat<F> basis_action(const Rep<F>& M, int b) {
  const auto& A = *M.alg;
  const F& f = A.field;
  if (A.is_idempotent(b)) return identity(f, M.dims[A.tgt[b]]);
  const auto& w = A.word[b];
  Mat<F> R = M.act[w.back()];
  for (std::size_t k = w.size() - 1; k-- > 0;) R = mat_mul(f, M.act[w[k]], R);
  return R;
}

// Action of an element of e_t A e_s.
template <class F>
Mat<F> elem_action(const Rep<F>& M, const Vec<F>& x, int t, int s) {
  const auto& A = *M.alg;
  const F& f = A.field;
  Mat<F> R = zeros(f, M.dims[t], M.dims[s]);
  for (int b : A.piece[t][s])
    if (!f.is_zero(x[b])) R = mat_add(f, R, mat_scale(f, x[b], basis_action(M, b)));
  return R;
}

// Checks generator * basis products against the structure constants.
template <class F>
bool satisfies_relations(const Rep<F>& M) {
  const auto& A = *M.alg;
  const F& f = A.field;
  std::vector<Mat<F>> acts;
  for (int b = 0; b < A.dim(); ++b) acts.push_back(basis_action(M, b));
  for (int g : A.gens)
    for (int b = 0; b < A.dim(); ++b) {
      if (A.src[g] != A.tgt[b]) continue;
      Mat<F> lhs = mat_mul(f, acts[g], acts[b]);
      Mat<F> rhs = zeros(f, lhs.rows, lhs.cols);
      for (const auto& [k, c] : A.mul_basis(g, b)) rhs = mat_add(f, rhs, mat_scale(f, c, acts[k]));
      if (!mat_eq(f, lhs, rhs)) return false;
    }
  return true;
}

template <class F>
ModMap<F> zero_map(const Rep<F>& M, const Rep<F>& N) {
  ModMap<F> m;
  for (std::size_t v = 0; v < M.dims.size(); ++v) m.b.push_back(zeros(M.alg->field, N.dims[v], M.dims[v]));
  return m;
}

template <class F>
ModMap<F> identity_map(const Rep<F>& M) {
  ModMap<F> m;
  for (int d : M.dims) m.b.push_back(identity(M.alg->field, d));
  return m;
}

// g after f
template <class F>
ModMap<F> compose(const F& fld, const ModMap<F>& g, const ModMap<F>& f) {
  ModMap<F> h;
  for (std::size_t v = 0; v < f.b.size(); ++v) h.b.push_back(mat_mul(fld, g.b[v], f.b[v]));
  return h;
}

template <class F>
ModMap<F> map_lincomb(const F& fld, const std::vector<ModMap<F>>& basis, const Vec<F>& c, const Rep<F>& M, const Rep<F>& N) {
  ModMap<F> m = zero_map(M, N);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t v = 0; v < m.b.size(); ++v) m.b[v] = mat_add(fld, m.b[v], mat_scale(fld, c[i], basis[i].b[v]));
  return m;
}

template <class F>
bool map_is_zero(const F& fld, const ModMap<F>& m) {
  for (const auto& x : m.b)
    if (!mat_is_zero(fld, x)) return false;
  return true;
}

template <class F>
Vec<F> flatten(const ModMap<F>& m) {
  Vec<F> out;
  for (const auto& x : m.b) out.insert(out.end(), x.a.begin(), x.a.end());
  return out;
}

template <class F>
ModMap<F> unflatten(const Vec<F>& v, const Rep<F>& M, const Rep<F>& N) {
  ModMap<F> m = zero_map(M, N);
  std::size_t k = 0;
  for (auto& x : m.b)
    for (auto& t : x.a) t = v[k++];
  return m;
}

template <class F>
bool same_algebra(const Rep<F>& M, const Rep<F>& N) {
  return M.alg == N.alg;
}

// Basis of Hom_A(M, N) as solutions of the intertwining system.
template <class F>
std::vector<ModMap<F>> hom_space(const Rep<F>& M, const Rep<F>& N) {
  if (!same_algebra(M, N)) throw AlgebraMismatch("hom_space over different algebras");
  const auto& A = *M.alg;
  const F& f = A.field;
  int n = A.n();
  std::vector<int> off(n + 1, 0);
  for (int v = 0; v < n; ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
  int unknowns = off[n];
  if (unknowns == 0) return {};
  std::size_t neq = 0;
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi];
    neq += static_cast<std::size_t>(N.dims[A.tgt[g]]) * M.dims[A.src[g]];
  }
  Mat<F> E(neq, unknowns, f.zero());
  std::size_t row = 0;
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi], s = A.src[g], t = A.tgt[g];
    const auto& Mg = M.act[gi];
    const auto& Ng = N.act[gi];
    // (f_t Mg - Ng f_s)[i][j] = 0
    for (int i = 0; i < N.dims[t]; ++i)
      for (int j = 0; j < M.dims[s]; ++j, ++row) {
        for (int k = 0; k < M.dims[t]; ++k)
          if (!f.is_zero(Mg(k, j))) E(row, off[t] + i * M.dims[t] + k) = f.add(E(row, off[t] + i * M.dims[t] + k), Mg(k, j));
        for (int k = 0; k < N.dims[s]; ++k)
          if (!f.is_zero(Ng(i, k))) E(row, off[s] + k * M.dims[s] + j) = f.sub(E(row, off[s] + k * M.dims[s] + j), Ng(i, k));
      }
  }
  std::vector<ModMap<F>> out;
  for (const auto& v : nullspace(f, E)) out.push_back(unflatten(v, M, N));
  return out;
}

template <class F>
int hom_dim(const Rep<F>& M, const Rep<F>& N) {
  return static_cast<int>(hom_space(M, N).size());
}

template <class F>
bool is_iso_map(const F& fld, const ModMap<F>& m) {
  for (const auto& x : m.b) {
    if (x.rows != x.cols) return false;
    if (rank(fld, x) != x.rows) return false;
  }
  return true;
}

// A submodule given by per-vertex bases (columns) that are closed under the
// action; returns the induced module and its inclusion.
template <class F>
std::pair<Rep<F>, ModMap<F>> subrep(const Rep<F>& M, const std::vector<std::vector<Vec<F>>>& basis) {
  const auto& A = *M.alg;
  const F& f = A.field;
  Rep<F> S{&A, {}, {}};
  ModMap<F> inc;
  for (int v = 0; v < A.n(); ++v) {
    S.dims.push_back(static_cast<int>(basis[v].size()));
    inc.b.push_back(basis[v].empty() ? zeros(f, M.dims[v], 0) : from_columns(f, M.dims[v], basis[v]));
  }
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi], s = A.src[g], t = A.tgt[g];
    Mat<F> a = zeros(f, S.dims[t], S.dims[s]);
    for (int j = 0; j < S.dims[s]; ++j) {
      auto img = mat_vec(f, M.act[gi], basis[s][j]);
      auto x = solve(f, inc.b[t], img);
      if (!x) throw std::logic_error("subrep: subspace is not a submodule");
      for (int i = 0; i < S.dims[t]; ++i) a(i, j) = (*x)[i];
    }
    S.act.push_back(std::move(a));
  }
  return {S, inc};
}

// Quotient of M by a submodule given by per-vertex spanning vectors.
template <class F>
std::pair<Rep<F>, ModMap<F>> quotient_rep(const Rep<F>& M, const std::vector<std::vector<Vec<F>>>& sub) {
  const auto& A = *M.alg;
  const F& f = A.field;
  std::vector<Quotient<F>> qs;
  Rep<F> Q{&A, {}, {}};
  ModMap<F> proj;
  for (int v = 0; v < A.n(); ++v) {
    std::vector<Vec<F>> all;
    for (int i = 0; i < M.dims[v]; ++i) {
      Vec<F> u(M.dims[v], f.zero());
      u[i] = f.one();
      all.push_back(u);
    }
    qs.emplace_back(f, M.dims[v], sub[v], all);
    int d = static_cast<int>(qs.back().dim());
    Q.dims.push_back(d);
    Mat<F> p = zeros(f, d, M.dims[v]);
    for (int i = 0; i < M.dims[v]; ++i) {
      auto c = qs.back().coords(all[i]);
      for (int k = 0; k < d; ++k) p(k, i) = c[k];
    }
    proj.b.push_back(std::move(p));
  }
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi], s = A.src[g], t = A.tgt[g];
    Mat<F> a = zeros(f, Q.dims[t], Q.dims[s]);
    for (int j = 0; j < Q.dims[s]; ++j) {
      auto img = mat_vec(f, M.act[gi], qs[s].basis()[j]);
      auto c = qs[t].coords(img);
      for (int i = 0; i < Q.dims[t]; ++i) a(i, j) = c[i];
    }
    Q.act.push_back(std::move(a));
  }
  return {Q, proj};
}

template <class F>
std::pair<Rep<F>, ModMap<F>> map_kernel(const Rep<F>& M, const ModMap<F>& phi) {
  std::vector<std::vector<Vec<F>>> basis;
  for (std::size_t v = 0; v < M.dims.size(); ++v) basis.push_back(M.dims[v] ? nullspace(M.alg->field, phi.b[v]) : std::vector<Vec<F>>{});
  return subrep(M, basis);
}

template <class F>
std::pair<Rep<F>, ModMap<F>> map_image(const Rep<F>& N, const ModMap<F>& phi) {
  std::vector<std::vector<Vec<F>>> basis;
  for (std::size_t v = 0; v < N.dims.size(); ++v)
    basis.push_back(phi.b[v].empty() ? std::vector<Vec<F>>{} : column_space(N.alg->field, phi.b[v]));
  return subrep(N, basis);
}

template <class F>
std::pair<Rep<F>, ModMap<F>> map_cokernel(const Rep<F>& N, const ModMap<F>& phi) {
  std::vector<std::vector<Vec<F>>> sub;
  for (std::size_t v = 0; v < N.dims.size(); ++v)
    sub.push_back(phi.b[v].empty() ? std::vector<Vec<F>>{} : column_space(N.alg->field, phi.b[v]));
  return quotient_rep(N, sub);
}

// rad M = sum of the images of the generators.
template <class F>
std::vector<std::vector<Vec<F>>> radical_spans(const Rep<F>& M) {
  const auto& A = *M.alg;
  std::vector<std::vector<Vec<F>>> sp(A.n());
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi];
    const auto& a = M.act[gi];
    for (std::size_t j = 0; j < a.cols; ++j) sp[A.tgt[g]].push_back(column(a, j));
  }
  return sp;
}

template <class F>
std::pair<Rep<F>, ModMap<F>> radical(const Rep<F>& M) {
  const auto& A = *M.alg;
  auto sp = radical_spans(M);
  std::vector<std::vector<Vec<F>>> basis(A.n());
  for (int v = 0; v < A.n(); ++v) {
    Echelon<F> e(A.field, M.dims[v]);
    for (auto& x : sp[v])
      if (e.insert(x)) basis[v].push_back(x);
  }
  return subrep(M, basis);
}

template <class F>
Rep<F> direct_sum(const std::vector<Rep<F>>& parts, const FinDimAlgebra<F>& A) {
  const F& f = A.field;
  Rep<F> S{&A, std::vector<int>(A.n(), 0), {}};
  for (const auto& P : parts)
    for (int v = 0; v < A.n(); ++v) S.dims[v] += P.dims[v];
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi], s = A.src[g], t = A.tgt[g];
    Mat<F> a = zeros(f, S.dims[t], S.dims[s]);
    int ro = 0, co = 0;
    for (const auto& P : parts) {
      for (int i = 0; i < P.dims[t]; ++i)
        for (int j = 0; j < P.dims[s]; ++j) a(ro + i, co + j) = P.act[gi](i, j);
      ro += P.dims[t];
      co += P.dims[s];
    }
    S.act.push_back(std::move(a));
  }
  return S;
}

// Inclusion of the k-th summand of direct_sum(parts).
template <class F>
ModMap<F> sum_inclusion(const std::vector<Rep<F>>& parts, std::size_t k, const FinDimAlgebra<F>& A) {
  ModMap<F> m;
  for (int v = 0; v < A.n(); ++v) {
    int tot = 0, off = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i == k) off = tot;
      tot += parts[i].dims[v];
    }
    Mat<F> x = zeros(A.field, tot, parts[k].dims[v]);
    for (int i = 0; i < parts[k].dims[v]; ++i) x(off + i, i) = A.field.one();
    m.b.push_back(std::move(x));
  }
  return m;
}

template <class F>
ModMap<F> sum_projection(const std::vector<Rep<F>>& parts, std::size_t k, const FinDimAlgebra<F>& A) {
  auto inc = sum_inclusion(parts, k, A);
  for (auto& x : inc.b) x = transpose(x);
  return inc;
}

// The sum of projectives P_{v[0]} + P_{v[1]} + ...; at vertex w its basis is
// the concatenation over i of the basis of e_w A e_{v[i]}.
template <class F>
Rep<F> projective_sum(const FinDimAlgebra<F>& A, const std::vector<int>& v) {
  const F& f = A.field;
  Rep<F> P{&A, std::vector<int>(A.n(), 0), {}};
  for (int w = 0; w < A.n(); ++w)
    for (int a : v) P.dims[w] += static_cast<int>(A.piece[w][a].size());
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi], s = A.src[g], t = A.tgt[g];
    Mat<F> m = zeros(f, P.dims[t], P.dims[s]);
    int ro = 0, co = 0;
    for (int a : v) {
      const auto& in = A.piece[s][a];
      const auto& out = A.piece[t][a];
      for (std::size_t j = 0; j < in.size(); ++j)
        for (const auto& [k, c] : A.mul_basis(g, in[j])) {
          auto pos = std::find(out.begin(), out.end(), k) - out.begin();
          m(ro + pos, co + j) = f.add(m(ro + pos, co + j), c);
        }
      ro += static_cast<int>(out.size());
      co += static_cast<int>(in.size());
    }
    P.act.push_back(std::move(m));
  }
  return P;
}

template <class F>
Rep<F> projective(const FinDimAlgebra<F>& A, int v) {
  return projective_sum(A, std::vector<int>{v});
}

// Coordinates of an element x of e_w A e_a inside summand i of projective_sum(v).
template <class F>
Vec<F> proj_coords(const FinDimAlgebra<F>& A, const std::vector<int>& v, int w, std::size_t i, const Vec<F>& x) {
  int tot = 0, off = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k == i) off = tot;
    tot += static_cast<int>(A.piece[w][v[k]].size());
  }
  Vec<F> out(tot, A.field.zero());
  const auto& pc = A.piece[w][v[i]];
  for (std::size_t j = 0; j < pc.size(); ++j) out[off + j] = x[pc[j]];
  return out;
}

// The module map between projective sums given by a PMat.
template <class F>
ModMap<F> pmat_module_map(const FinDimAlgebra<F>& A, const PMat<F>& D) {
  const F& f = A.field;
  auto src = projective_sum(A, D.rows), dst = projective_sum(A, D.cols);
  ModMap<F> m;
  for (int w = 0; w < A.n(); ++w) {
    Mat<F> x = zeros(f, dst.dims[w], src.dims[w]);
    int co = 0;
    for (std::size_t r = 0; r < D.nr(); ++r) {
      const auto& pc = A.piece[w][D.rows[r]];
      for (std::size_t j = 0; j < pc.size(); ++j) {
        for (std::size_t c = 0; c < D.nc(); ++c) {
          auto y = A.mul(A.unit_vec(pc[j]), D.at(r, c));
          auto coords = proj_coords(A, D.cols, w, c, y);
          for (std::size_t i = 0; i < coords.size(); ++i) x(i, co + j) = f.add(x(i, co + j), coords[i]);
        }
      }
      co += static_cast<int>(pc.size());
    }
    m.b.push_back(std::move(x));
  }
  return m;
}

// Map from projective_sum(v) to M sending e_{v[i]} to images[i] in M_{v[i]}.
template <class F>
ModMap<F> map_from_projectives(const Rep<F>& M, const std::vector<int>& v, const std::vector<Vec<F>>& images) {
  const auto& A = *M.alg;
  const F& f = A.field;
  auto P = projective_sum(A, v);
  ModMap<F> m = zero_map(P, M);
  for (int w = 0; w < A.n(); ++w) {
    int co = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& pc = A.piece[w][v[i]];
      for (std::size_t j = 0; j < pc.size(); ++j) {
        auto col = mat_vec(f, basis_action(M, pc[j]), images[i]);
        for (int r = 0; r < M.dims[w]; ++r) m.b[w](r, co + j) = col[r];
      }
      co += static_cast<int>(pc.size());
    }
  }
  return m;
}

template <class F>
Rep<F> simple(const FinDimAlgebra<F>& A, int v) {
  Rep<F> S{&A, std::vector<int>(A.n(), 0), {}};
  S.dims[v] = 1;
  for (int g : A.gens) S.act.push_back(zeros(A.field, S.dims[A.tgt[g]], S.dims[A.src[g]]));
  return S;
}

// Sum of injectives D(e_{v[i]} A); at vertex w the basis is dual to
// e_{v[i]} A e_w.
template <class F>
Rep<F> injective_sum(const FinDimAlgebra<F>& A, const std::vector<int>& v) {
  const F& f = A.field;
  Rep<F> I{&A, std::vector<int>(A.n(), 0), {}};
  for (int w = 0; w < A.n(); ++w)
    for (int a : v) I.dims[w] += static_cast<int>(A.piece[a][w].size());
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) {
    int g = A.gens[gi], s = A.src[g], t = A.tgt[g];
    Mat<F> m = zeros(f, I.dims[t], I.dims[s]);
    int ro = 0, co = 0;
    for (int a : v) {
      const auto& in = A.piece[a][s];   // phi basis (dual)
      const auto& out = A.piece[a][t];  // psi basis (dual)
      // (g.phi)(y) = phi(y g) for y in e_a A e_t
      for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& [k, c] : A.mul_basis(out[i], g)) {
          auto pos = std::find(in.begin(), in.end(), k) - in.begin();
          m(ro + i, co + pos) = f.add(m(ro + i, co + pos), c);
        }
      ro += static_cast<int>(out.size());
      co += static_cast<int>(in.size());
    }
    I.act.push_back(std::move(m));
  }
  return I;
}

template <class F>
Rep<F> injective(const FinDimAlgebra<F>& A, int v) {
  return injective_sum(A, std::vector<int>{v});
}

// The Nakayama functor on a map of projectives: nu(D) : nu(rows) -> nu(cols),
// phi |-> (y |-> phi(d y)).
template <class F>
ModMap<F> nakayama_map(const FinDimAlgebra<F>& A, const PMat<F>& D) {
  const F& f = A.field;
  auto src = injective_sum(A, D.rows), dst = injective_sum(A, D.cols);
  ModMap<F> m;
  for (int w = 0; w < A.n(); ++w) {
    Mat<F> x = zeros(f, dst.dims[w], src.dims[w]);
    int co = 0;
    for (std::size_t r = 0; r < D.nr(); ++r) {
      const auto& in = A.piece[D.rows[r]][w];
      int ro = 0;
      for (std::size_t c = 0; c < D.nc(); ++c) {
        const auto& out = A.piece[D.cols[c]][w];
        for (std::size_t i = 0; i < out.size(); ++i) {
          auto y = A.mul(D.at(r, c), A.unit_vec(out[i]));
          for (std::size_t j = 0; j < in.size(); ++j)
            if (!f.is_zero(y[in[j]])) x(ro + i, co + j) = f.add(x(ro + i, co + j), y[in[j]]);
        }
        ro += static_cast<int>(out.size());
      }
      co += static_cast<int>(in.size());
    }
    m.b.push_back(std::move(x));
  }
  return m;
}

// Lifts of a basis of M/rad M: vertex and vector for each top element.
template <class F>
std::vector<std::pair<int, Vec<F>>> top_lifts(const Rep<F>& M) {
  const auto& A = *M.alg;
  const F& f = A.field;
  auto sp = radical_spans(M);
  std::vector<std::pair<int, Vec<F>>> out;
  for (int v = 0; v < A.n(); ++v) {
    Echelon<F> e(f, M.dims[v]);
    for (auto& x : sp[v]) e.insert(x);
    for (int i = 0; i < M.dims[v]; ++i) {
      Vec<F> u(M.dims[v], f.zero());
      u[i] = f.one();
      if (e.insert(u)) out.emplace_back(v, u);
    }
  }
  return out;
}

template <class F>
std::vector<int> top_dims(const Rep<F>& M) {
  std::vector<int> t(M.alg->n(), 0);
  for (const auto& [v, x] : top_lifts(M)) ++t[v];
  return t;
}

template <class F>
struct ProjectiveCover {
  std::vector<int> vertices;
  ModMap<F> map;  // projective_sum(vertices) -> M
};

template <class F>
ProjectiveCover<F> projective_cover(const Rep<F>& M) {
  ProjectiveCover<F> pc;
  std::vector<Vec<F>> imgs;
  for (auto& [v, x] : top_lifts(M)) {
    pc.vertices.push_back(v);
    imgs.push_back(x);
  }
  pc.map = map_from_projectives(M, pc.vertices, imgs);
  return pc;
}

// X_M: P^{-1} -> P^0 with P^0 -> M a projective cover and P^{-1} a
// projective cover of the kernel.
template <class F>
TwoTermComplex<F> minimal_presentation(const Rep<F>& M) {
  const auto& A = *M.alg;
  auto pc = projective_cover(M);
  auto P0 = projective_sum(A, pc.vertices);
  auto [K, inc] = map_kernel(P0, pc.map);
  auto lifts = top_lifts(K);
  TwoTermComplex<F> X;
  X.zero = pc.vertices;
  for (auto& [v, x] : lifts) X.minus.push_back(v);
  X.d = pmat_zero(A, X.minus, X.zero);
  // Row r: the image of e_{minus[r]}, an element of e_w P0 = sum_c e_w A e_{zero[c]}.
  for (std::size_t r = 0; r < lifts.size(); ++r) {
    int w = lifts[r].first;
    auto y = mat_vec(A.field, inc.b[w], lifts[r].second);
    int off = 0;
    for (std::size_t c = 0; c < X.zero.size(); ++c) {
      const auto& pcs = A.piece[w][X.zero[c]];
      for (std::size_t j = 0; j < pcs.size(); ++j) X.d.at(r, c)[pcs[j]] = y[off + j];
      off += static_cast<int>(pcs.size());
    }
  }
  return X;
}

template <class F>
Rep<F> h0(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  auto P0 = projective_sum(A, X.zero);
  return map_cokernel(P0, pmat_module_map(A, X.d)).first;
}

template <class F>
Rep<F> tau(const Rep<F>& M) {
  const auto& A = *M.alg;
  auto X = minimal_presentation(M);
  auto nu = nakayama_map(A, X.d);
  return map_kernel(injective_sum(A, X.minus), nu).first;
}

template <class F>
bool is_projective_module(const Rep<F>& M) {
  auto pc = projective_cover(M);
  auto P = projective_sum(*M.alg, pc.vertices);
  return P.total() == M.total();
}

// ---------------------------------------------------------------------------
// Endomorphism algebras and decomposition

template <class F>
struct EndAlgebra {
  std::vector<ModMap<F>> basis;
  std::vector<Vec<F>> table;  // table[i*k+j] = basis[i] o basis[j]
  std::vector<Vec<F>> radical;
};

template <class F>
Vec<F> hom_coords(const F& f, const std::vector<ModMap<F>>& basis, const ModMap<F>& m) {
  std::size_t n = flatten(m).size();
  Echelon<F> e(f, n, basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Vec<F> tag(basis.size(), f.zero());
    tag[i] = f.one();
    e.insert(flatten(basis[i]), tag);
  }
  auto v = flatten(m);
  auto c = e.reduce(v);
  if (!vec_is_zero(f, v)) throw std::logic_error("hom_coords: map outside span");
  return c;
}

template <class F>
EndAlgebra<F> endomorphism_algebra(const Rep<F>& M) {
  const F& f = M.alg->field;
  EndAlgebra<F> E;
  E.basis = hom_space(M, M);
  std::size_t k = E.basis.size();
  if (k == 0) return E;
  std::size_t n = flatten(E.basis[0]).size();
  Echelon<F> e(f, n, k);
  for (std::size_t i = 0; i < k; ++i) {
    Vec<F> tag(k, f.zero());
    tag[i] = f.one();
    e.insert(flatten(E.basis[i]), tag);
  }
  E.table.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto v = flatten(compose(f, E.basis[i], E.basis[j]));
      E.table[i * k + j] = e.reduce(v);
    }
  int dim = static_cast<int>(k);
  E.radical = radical_by_trace<F>(f, dim, [&](const Vec<F>& x, const Vec<F>& y) {
    Vec<F> r(k, f.zero());
    for (std::size_t i = 0; i < k; ++i) {
      if (f.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (!f.is_zero(y[j])) axpy(f, r, f.mul(x[i], y[j]), E.table[i * k + j]);
    }
    return r;
  });
  return E;
}

namespace detail {

inline std::uint64_t fnv(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

template <class F>
std::uint64_t rep_hash(const Rep<F>& M, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (int d : M.dims) h = fnv(h, std::to_string(d) + ",");
  for (const auto& a : M.act)
    for (const auto& x : a.a) h = fnv(h, M.alg->field.str(x) + ";");
  return h;
}

// Roots of a polynomial lying in the field, when they can be found.
inline std::vector<PrimeField::elem> field_roots(const PrimeField& f, const Vec<PrimeField>& c) {
  std::vector<PrimeField::elem> out;
  if (f.characteristic() > 70000) return out;
  for (std::uint32_t x = 0; x < f.characteristic(); ++x)
    if (f.is_zero(poly_eval(f, c, x))) out.push_back(x);
  return out;
}

inline std::vector<RationalField::elem> field_roots(const RationalField& f, const Vec<RationalField>& c) {
  using boost::multiprecision::cpp_int;
  std::vector<RationalField::elem> out;
  // Clear denominators, strip factors of x, then apply the rational root test.
  cpp_int l = 1;
  for (const auto& x : c) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
  std::vector<cpp_int> z;
  for (const auto& x : c) z.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
  std::size_t lo = 0;
  while (lo < z.size() && z[lo] == 0) ++lo;
  if (lo > 0) out.push_back(0);
  if (lo >= z.size()) return out;
  auto divisors = [](cpp_int n) -> std::optional<std::vector<cpp_int>> {
    if (n < 0) n = -n;
    std::vector<std::pair<cpp_int, int>> fac;
    cpp_int m = n;
    for (cpp_int p = 2; p * p <= m; ++p) {
      if (p > 100000) return std::nullopt;
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e) fac.emplace_back(p, e);
    }
    if (m > 1) fac.emplace_back(m, 1);
    std::vector<cpp_int> ds{1};
    for (auto& [p, e] : fac) {
      std::size_t sz = ds.size();
      cpp_int pk = 1;
      for (int k = 1; k <= e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
      }
    }
    return ds;
  };
  auto num = divisors(z[lo]);
  auto den = divisors(z.back());
  if (!num || !den) return out;
  std::set<RationalField::elem> seen;
  for (const auto& p : *num)
    for (const auto& q : *den)
      for (int s : {1, -1}) {
        RationalField::elem r = RationalField::elem(p * s) / RationalField::elem(q);
        if (seen.insert(r).second && f.is_zero(poly_eval(f, c, r))) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
Mat<F> block_diag(const F& f, const ModMap<F>& m) {
  std::size_t n = 0;
  for (const auto& x : m.b) n += x.rows;
  Mat<F> B = zeros(f, n, n);
  std::size_t o = 0;
  for (const auto& x : m.b) {
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t j = 0; j < x.cols; ++j) B(o + i, o + j) = x(i, j);
    o += x.rows;
  }
  return B;
}

template <class F>
ModMap<F> map_power(const F& f, ModMap<F> m, int k) {
  ModMap<F> r = m;
  for (int i = 1; i < k; ++i) r = compose(f, r, m);
  return r;
}

}  // namespace detail

struct DecomposeOptions {
  std::uint64_t seed = 0;
  int retries = 8;
};

// Splits M = ker(g^N) + im(g^N) for the first endomorphism g found that is
// neither invertible nor nilpotent.
template <class F>
std::optional<std::pair<Rep<F>, Rep<F>>> split_once(const Rep<F>& M, const EndAlgebra<F>& E, std::mt19937_64& rng, int retries) {
  const F& f = M.alg->field;
  int N = M.total();
  auto try_split = [&](const ModMap<F>& g) -> std::optional<std::pair<Rep<F>, Rep<F>>> {
    auto gN = detail::map_power(f, g, std::max(N, 1));
    int kd = 0;
    for (const auto& x : gN.b) kd += static_cast<int>(x.cols) - static_cast<int>(rank(f, x));
    if (kd == 0 || kd == N) return std::nullopt;
    auto K = map_kernel(M, gN).first;
    auto I = map_image(M, gN).first;
    return std::make_pair(K, I);
  };
  std::size_t k = E.basis.size();
  for (int attempt = 0; attempt < retries; ++attempt) {
    Vec<F> c(k);
    for (auto& x : c) x = f.random(rng);
    auto phi = map_lincomb(f, E.basis, c, M, M);
    for (const auto& lam : detail::field_roots(f, charpoly(f, detail::block_diag(f, phi)))) {
      auto g = phi;
      for (std::size_t v = 0; v < g.b.size(); ++v)
        for (std::size_t i = 0; i < g.b[v].rows; ++i) g.b[v](i, i) = f.sub(g.b[v](i, i), lam);
      if (auto s = try_split(g)) return s;
    }
    // Endomorphisms killing a random vector are never invertible.
    std::vector<int> support;
    for (std::size_t v = 0; v < M.dims.size(); ++v)
      if (M.dims[v]) support.push_back(static_cast<int>(v));
    if (support.empty()) return std::nullopt;
    int v = support[rng() % support.size()];
    Vec<F> x(M.dims[v]);
    for (auto& t : x) t = f.random(rng);
    Mat<F> ev = zeros(f, M.dims[v], k);
    for (std::size_t i = 0; i < k; ++i) {
      auto col = mat_vec(f, E.basis[i].b[v], x);
      for (int r = 0; r < M.dims[v]; ++r) ev(r, i) = col[r];
    }
    auto ann = nullspace(f, ev);
    if (ann.empty()) continue;
    Vec<F> cc(k, f.zero());
    for (const auto& a : ann) axpy(f, cc, f.random(rng), a);
    if (auto s = try_split(map_lincomb(f, E.basis, cc, M, M))) return s;
  }
  return std::nullopt;
}

template <class F>
bool is_split_local(const EndAlgebra<F>& E) {
  return !E.basis.empty() && E.basis.size() - E.radical.size() == 1;
}

// Indecomposable summands of M (Fitting splitting, iterated to a fixpoint).
template <class F>
std::vector<Rep<F>> decompose(const Rep<F>& M, const DecomposeOptions& opt = {}) {
  std::vector<Rep<F>> out, todo{M};
  while (!todo.empty()) {
    Rep<F> X = todo.back();
    todo.pop_back();
    if (X.total() == 0) continue;
    auto E = endomorphism_algebra(X);
    if (is_split_local(E)) {
      out.push_back(X);
      continue;
    }
    std::mt19937_64 rng(detail::rep_hash(X, opt.seed));
    auto s = split_once(X, E, rng, opt.retries);
    if (!s) throw DecompositionInconclusive("no splitting endomorphism found for a module of dimension " + std::to_string(X.total()));
    todo.push_back(s->first);
    todo.push_back(s->second);
  }
  std::stable_sort(out.begin(), out.end(), [](const Rep<F>& a, const Rep<F>& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.dims < b.dims;
  });
  return out;
}

template <class F>
bool is_indecomposable(const Rep<F>& M) {
  if (M.total() == 0) return false;
  return is_split_local(endomorphism_algebra(M));
}

template <class F>
bool is_isomorphic(const Rep<F>& M, const Rep<F>& N, std::uint64_t seed = 0) {
  if (M.dims != N.dims) return false;
  if (M.total() == 0) return true;
  auto H = hom_space(M, N);
  auto H2 = hom_space(N, M);
  if (H.size() != H2.size() || H.empty()) return false;
  const F& f = M.alg->field;
  std::mt19937_64 rng(detail::rep_hash(M, seed) ^ detail::rep_hash(N, seed + 1));
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec<F> c(H.size());
    for (auto& x : c) x = f.random(rng);
    if (is_iso_map(f, map_lincomb(f, H, c, M, N))) return true;
  }
  return false;
}

template <class F>
bool is_brick(const Rep<F>& M) {
  auto E = endomorphism_algebra(M);
  if (!is_split_local(E)) throw NotIndecomposable("is_brick expects an indecomposable module");
  return E.radical.empty();
}

// N is a quotient of a finite sum of copies of M.
template <class F>
bool fac_membership(const Rep<F>& N, const Rep<F>& M) {
  if (N.total() == 0) return true;
  const F& f = N.alg->field;
  auto H = hom_space(M, N);
  for (std::size_t v = 0; v < N.dims.size(); ++v) {
    if (N.dims[v] == 0) continue;
    Echelon<F> e(f, N.dims[v]);
    for (const auto& h : H)
      for (std::size_t j = 0; j < h.b[v].cols; ++j) e.insert(column(h.b[v], j));
    if (static_cast<int>(e.size()) != N.dims[v]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ext^1 between modules via 0 -> K -> P0 -> M -> 0.

template <class F>
struct ExtData {
  Rep<F> P0, K;
  ModMap<F> inc;                    // K -> P0
  std::vector<ModMap<F>> hom_KN;    // Hom(K, N)
  std::optional<Quotient<F>> quo;   // Hom(K,N) / restrictions of Hom(P0,N)
  std::size_t dim() const { return quo ? quo->dim() : 0; }
};

template <class F>
ExtData<F> ext1(const Rep<F>& M, const Rep<F>& N) {
  const auto& A = *M.alg;
  const F& f = A.field;
  ExtData<F> D;
  auto pc = projective_cover(M);
  D.P0 = projective_sum(A, pc.vertices);
  std::tie(D.K, D.inc) = map_kernel(D.P0, pc.map);
  D.hom_KN = hom_space(D.K, N);
  std::size_t n = D.hom_KN.empty() ? 0 : flatten(D.hom_KN[0]).size();
  if (n == 0) return D;
  std::vector<Vec<F>> space, sub;
  for (const auto& h : D.hom_KN) space.push_back(flatten(h));
  for (const auto& h : hom_space(D.P0, N)) sub.push_back(flatten(compose(f, h, D.inc)));
  D.quo.emplace(f, n, sub, space);
  return D;
}

// Middle term of the extension 0 -> N -> E -> M -> 0 with class psi in Hom(K, N).
template <class F>
Rep<F> ext_middle(const ExtData<F>& D, const Rep<F>& N, const Vec<F>& cls) {
  const auto& A = *N.alg;
  const F& f = A.field;
  auto psi = unflatten(D.quo->lift(cls), D.K, N);
  std::vector<Rep<F>> parts{D.P0, N};
  auto S = direct_sum(parts, A);
  ModMap<F> m;
  for (int v = 0; v < A.n(); ++v) {
    Mat<F> x = zeros(f, S.dims[v], D.K.dims[v]);
    for (int j = 0; j < D.K.dims[v]; ++j) {
      for (int i = 0; i < D.P0.dims[v]; ++i) x(i, j) = D.inc.b[v](i, j);
      for (int i = 0; i < N.dims[v]; ++i) x(D.P0.dims[v] + i, j) = f.neg(psi.b[v](i, j));
    }
    m.b.push_back(std::move(x));
  }
  return map_cokernel(S, m).first;
}

// Class vectors to try for an extension space of dimension d: the whole space
// up to scalars when it has at most `budget` points, otherwise basis vectors
// and pairwise sums.  The flag reports whether the list is exhaustive.
template <class F>
std::pair<std::vector<Vec<F>>, bool> class_candidates(const F& f, std::size_t d, std::size_t cap, std::uint64_t budget = 20000) {
  std::vector<Vec<F>> out;
  if (d == 0) return {out, true};
  bool full = false;
  if (f.finite() && d <= cap) {
    // projective points: leading coordinate 1
    std::uint64_t q = f.size(), pts = 0, pw = 1;
    for (std::size_t i = 0; i < d; ++i) {
      pts += pw;
      pw *= q;
      if (pts > budget) break;
    }
    if (pts <= budget) {
      full = true;
      for (std::size_t lead = 0; lead < d; ++lead) {
        std::size_t rest = d - lead - 1;
        std::uint64_t cnt = 1;
        for (std::size_t i = 0; i < rest; ++i) cnt *= q;
        for (std::uint64_t idx = 0; idx < cnt; ++idx) {
          Vec<F> v(d, f.zero());
          v[lead] = f.one();
          std::uint64_t t = idx;
          for (std::size_t i = 0; i < rest; ++i) {
            v[lead + 1 + i] = f.nth(t % q);
            t /= q;
          }
          out.push_back(std::move(v));
        }
      }
    }
  }
  if (!full) {
    for (std::size_t i = 0; i < d; ++i) {
      Vec<F> v(d, f.zero());
      v[i] = f.one();
      out.push_back(v);
    }
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        Vec<F> v(d, f.zero());
        v[i] = f.one();
        v[j] = f.one();
        out.push_back(v);
      }
    if (d == 1) full = true;
  }
  return {out, full};
}

}  // namespace siltlab
