#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "universe.hpp"

namespace siltlab {

// Coordinates on the space of PMats with fixed row/column summands:
// entry (r,c) contributes the coefficients of e_{rows[r]} A e_{cols[c]}.
template <class F>
struct PSpace {
  const FinDimAlgebra<F>* alg;
  std::vector<int> rows, cols;
  std::vector<std::size_t> off;

  PSpace(const FinDimAlgebra<F>& A, std::vector<int> r, std::vector<int> c) : alg(&A), rows(std::move(r)), cols(std::move(c)) {
    off.push_back(0);
    for (int a : rows)
      for (int b : cols) off.push_back(off.back() + A.piece[a][b].size());
  }
  std::size_t dim() const { return off.back(); }

  Vec<F> to_vec(const PMat<F>& m) const {
    Vec<F> v(dim(), alg->field.zero());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& pc = alg->piece[rows[r]][cols[c]];
        std::size_t o = off[r * cols.size() + c];
        for (std::size_t k = 0; k < pc.size(); ++k) v[o + k] = m.at(r, c)[pc[k]];
      }
    return v;
  }

  PMat<F> from_vec(const Vec<F>& v) const {
    auto m = pmat_zero(*alg, rows, cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& pc = alg->piece[rows[r]][cols[c]];
        std::size_t o = off[r * cols.size() + c];
        for (std::size_t k = 0; k < pc.size(); ++k) m.at(r, c)[pc[k]] = v[o + k];
      }
    return m;
  }

  PMat<F> unit(std::size_t i) const {
    Vec<F> v(dim(), alg->field.zero());
    v[i] = alg->field.one();
    return from_vec(v);
  }
};

template <class F>
struct ChainMap {
  PMat<F> minus, zero;
};

template <class F>
ChainMap<F> chain_zero(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y) {
  return {pmat_zero(A, X.minus, Y.minus), pmat_zero(A, X.zero, Y.zero)};
}

template <class F>
ChainMap<F> chain_identity(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  return {pmat_identity(A, X.minus), pmat_identity(A, X.zero)};
}

// f then g
template <class F>
ChainMap<F> chain_compose(const FinDimAlgebra<F>& A, const ChainMap<F>& f, const ChainMap<F>& g) {
  return {pmat_mul(A, f.minus, g.minus), pmat_mul(A, f.zero, g.zero)};
}

template <class F>
bool is_chain_map(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y, const ChainMap<F>& f) {
  auto l = pmat_mul(A, X.d, f.zero), r = pmat_mul(A, f.minus, Y.d);
  return pmat_is_zero(A, pmat_add(A, l, r, true));
}

template <class F>
bool pmat_eq(const FinDimAlgebra<F>& A, const PMat<F>& X, const PMat<F>& Y) {
  return X.rows == Y.rows && X.cols == Y.cols && pmat_is_zero(A, pmat_add(A, X, Y, true));
}

template <class F>
PMat<F> pmat_scale(const FinDimAlgebra<F>& A, const typename F::elem& s, PMat<F> X) {
  for (auto& v : X.e)
    for (auto& t : v) t = A.field.mul(s, t);
  return X;
}

// Hom in K^{[-1,0]}(proj A): chain maps modulo null-homotopic ones.
template <class F>
struct HomK {
  const FinDimAlgebra<F>* alg;
  TwoTermComplex<F> X, Y;
  PSpace<F> sm, s0;
  std::optional<Quotient<F>> quo;

  std::size_t dim() const { return quo ? quo->dim() : 0; }

  Vec<F> flat(const ChainMap<F>& f) const {
    auto a = sm.to_vec(f.minus), b = s0.to_vec(f.zero);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  ChainMap<F> unflat(const Vec<F>& v) const {
    Vec<F> a(v.begin(), v.begin() + sm.dim()), b(v.begin() + sm.dim(), v.end());
    return {sm.from_vec(a), s0.from_vec(b)};
  }
  ChainMap<F> lift(const Vec<F>& c) const { return quo ? unflat(quo->lift(c)) : chain_zero(*alg, X, Y); }
  ChainMap<F> basis(std::size_t i) const {
    Vec<F> c(dim(), alg->field.zero());
    c[i] = alg->field.one();
    return lift(c);
  }
  Vec<F> coords(const ChainMap<F>& f) const { return quo ? quo->coords(flat(f)) : Vec<F>{}; }
  bool is_null(const ChainMap<F>& f) const { return vec_is_zero(alg->field, coords(f)); }
};

template <class F>
HomK<F> hom_K(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y) {
  const F& f = A.field;
  HomK<F> H{&A, X, Y, PSpace<F>(A, X.minus, Y.minus), PSpace<F>(A, X.zero, Y.zero), std::nullopt};
  std::size_t n = H.sm.dim() + H.s0.dim();
  if (n == 0) return H;
  PSpace<F> tgt(A, X.minus, Y.zero);
  Mat<F> L = zeros(f, tgt.dim(), n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec<F> u(n, f.zero());
    u[i] = f.one();
    auto m = H.unflat(u);
    auto img = tgt.to_vec(pmat_add(A, pmat_mul(A, X.d, m.zero), pmat_mul(A, m.minus, Y.d), true));
    for (std::size_t r = 0; r < img.size(); ++r) L(r, i) = img[r];
  }
  auto cycles = tgt.dim() ? nullspace(f, L) : std::vector<Vec<F>>{};
  if (!tgt.dim())
    for (std::size_t i = 0; i < n; ++i) {
      Vec<F> u(n, f.zero());
      u[i] = f.one();
      cycles.push_back(u);
    }
  PSpace<F> hs(A, X.zero, Y.minus);
  std::vector<Vec<F>> nulls;
  for (std::size_t i = 0; i < hs.dim(); ++i) {
    auto h = hs.unit(i);
    nulls.push_back(H.flat({pmat_mul(A, X.d, h), pmat_mul(A, h, Y.d)}));
  }
  H.quo.emplace(f, n, nulls, cycles);
  return H;
}

// E(X, Y) = Hom(X, Y[1]): maps s: X^{-1} -> Y^0 modulo d_X g + h d_Y.
template <class F>
struct ExtK {
  const FinDimAlgebra<F>* alg;
  TwoTermComplex<F> X, Y;
  PSpace<F> sp;
  std::optional<Quotient<F>> quo;

  std::size_t dim() const { return quo ? quo->dim() : 0; }
  PMat<F> lift(const Vec<F>& c) const { return quo ? sp.from_vec(quo->lift(c)) : sp.from_vec(Vec<F>(sp.dim(), alg->field.zero())); }
  Vec<F> coords(const PMat<F>& s) const { return quo ? quo->coords(sp.to_vec(s)) : Vec<F>{}; }
};

template <class F>
ExtK<F> ext_E(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y) {
  const F& f = A.field;
  ExtK<F> E{&A, X, Y, PSpace<F>(A, X.minus, Y.zero), std::nullopt};
  std::size_t n = E.sp.dim();
  if (n == 0) return E;
  std::vector<Vec<F>> all, sub;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<F> u(n, f.zero());
    u[i] = f.one();
    all.push_back(u);
  }
  PSpace<F> gs(A, X.zero, Y.zero), hs(A, X.minus, Y.minus);
  for (std::size_t i = 0; i < gs.dim(); ++i) sub.push_back(E.sp.to_vec(pmat_mul(A, X.d, gs.unit(i))));
  for (std::size_t i = 0; i < hs.dim(); ++i) sub.push_back(E.sp.to_vec(pmat_mul(A, hs.unit(i), Y.d)));
  E.quo.emplace(f, n, sub, all);
  return E;
}

// ---------------------------------------------------------------------------
// Complexes of projectives of any length, for minimalization and (co)cones.

template <class F>
struct Chain {
  int lo = 0;                          // degree of obj[0]
  std::vector<std::vector<int>> obj;   // summand vertices per degree
  std::vector<PMat<F>> d;              // d[k]: obj[k] -> obj[k+1]
};

namespace detail {

// M(dst, j) += s * M(src, j)
template <class F>
void row_axpy(const FinDimAlgebra<F>& A, PMat<F>& M, std::size_t dst, const Vec<F>& s, std::size_t src) {
  for (std::size_t j = 0; j < M.nc(); ++j) {
    if (vec_is_zero(A.field, M.at(src, j))) continue;
    auto p = A.mul(s, M.at(src, j));
    auto& t = M.at(dst, j);
    for (int k = 0; k < A.dim(); ++k) t[k] = A.field.add(t[k], p[k]);
  }
}

// M(i, dst) += M(i, src) * s
template <class F>
void col_axpy(const FinDimAlgebra<F>& A, PMat<F>& M, std::size_t dst, std::size_t src, const Vec<F>& s) {
  for (std::size_t i = 0; i < M.nr(); ++i) {
    if (vec_is_zero(A.field, M.at(i, src))) continue;
    auto p = A.mul(M.at(i, src), s);
    auto& t = M.at(i, dst);
    for (int k = 0; k < A.dim(); ++k) t[k] = A.field.add(t[k], p[k]);
  }
}

template <class F>
Vec<F> neg_vec(const F& f, Vec<F> v) {
  for (auto& t : v) t = f.neg(t);
  return v;
}

template <class F>
PMat<F> drop_row(const PMat<F>& M, std::size_t r) {
  std::vector<std::size_t> rs, cs;
  for (std::size_t i = 0; i < M.nr(); ++i)
    if (i != r) rs.push_back(i);
  for (std::size_t j = 0; j < M.nc(); ++j) cs.push_back(j);
  return pmat_select(M, rs, cs);
}

template <class F>
PMat<F> drop_col(const PMat<F>& M, std::size_t c) {
  std::vector<std::size_t> rs, cs;
  for (std::size_t i = 0; i < M.nr(); ++i) rs.push_back(i);
  for (std::size_t j = 0; j < M.nc(); ++j)
    if (j != c) cs.push_back(j);
  return pmat_select(M, rs, cs);
}

}  // namespace detail

// Removes contractible summands (P = P) by pivoting on entries with an
// invertible idempotent coefficient.  When phi/phiinv are given they track
// the homotopy equivalences original -> current and current -> original.
template <class F>
void minimalize_chain(const FinDimAlgebra<F>& A, Chain<F>& C, std::vector<PMat<F>>* phi = nullptr, std::vector<PMat<F>>* phiinv = nullptr) {
  using detail::col_axpy;
  using detail::neg_vec;
  using detail::row_axpy;
  const F& f = A.field;
  for (;;) {
    bool found = false;
    std::size_t K = 0, R = 0, Cc = 0;
    for (std::size_t k = 0; k < C.d.size() && !found; ++k)
      for (std::size_t r = 0; r < C.obj[k].size() && !found; ++r)
        for (std::size_t c = 0; c < C.obj[k + 1].size() && !found; ++c) {
          int v = C.obj[k][r];
          if (v == C.obj[k + 1][c] && !f.is_zero(A.top_coeff(C.d[k].at(r, c), v))) {
            found = true;
            K = k, R = r, Cc = c;
          }
        }
    if (!found) return;
    int v = C.obj[K][R];
    auto& D = C.d[K];
    auto ui = A.local_inverse(D.at(R, Cc), v);
    for (std::size_t r2 = 0; r2 < D.nr(); ++r2) {
      if (r2 == R || vec_is_zero(f, D.at(r2, Cc))) continue;
      auto t = A.mul(D.at(r2, Cc), ui);
      row_axpy(A, D, r2, neg_vec(f, t), R);
      if (K > 0) col_axpy(A, C.d[K - 1], R, r2, t);
      if (phi) col_axpy(A, (*phi)[K], R, r2, t);
      if (phiinv) row_axpy(A, (*phiinv)[K], r2, neg_vec(f, t), R);
    }
    for (std::size_t c2 = 0; c2 < D.nc(); ++c2) {
      if (c2 == Cc || vec_is_zero(f, D.at(R, c2))) continue;
      auto w = A.mul(ui, D.at(R, c2));
      col_axpy(A, D, c2, Cc, neg_vec(f, w));
      if (K + 1 < C.d.size()) row_axpy(A, C.d[K + 1], Cc, w, c2);
      if (phi) col_axpy(A, (*phi)[K + 1], c2, Cc, neg_vec(f, w));
      if (phiinv) row_axpy(A, (*phiinv)[K + 1], Cc, w, c2);
    }
    C.obj[K].erase(C.obj[K].begin() + R);
    C.obj[K + 1].erase(C.obj[K + 1].begin() + Cc);
    C.d[K] = detail::drop_col(detail::drop_row(C.d[K], R), Cc);
    if (K > 0) C.d[K - 1] = detail::drop_col(C.d[K - 1], R);
    if (K + 1 < C.d.size()) C.d[K + 1] = detail::drop_row(C.d[K + 1], Cc);
    if (phi) {
      (*phi)[K] = detail::drop_col((*phi)[K], R);
      (*phi)[K + 1] = detail::drop_col((*phi)[K + 1], Cc);
    }
    if (phiinv) {
      (*phiinv)[K] = detail::drop_row((*phiinv)[K], R);
      (*phiinv)[K + 1] = detail::drop_row((*phiinv)[K + 1], Cc);
    }
  }
}

template <class F>
struct Minimalized {
  TwoTermComplex<F> min;
  ChainMap<F> to, from;  // X -> min, min -> X; to then from is homotopic to id
};

template <class F>
Minimalized<F> minimalize(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  Chain<F> C{-1, {X.minus, X.zero}, {X.d}};
  std::vector<PMat<F>> phi{pmat_identity(A, X.minus), pmat_identity(A, X.zero)};
  std::vector<PMat<F>> inv = phi;
  minimalize_chain(A, C, &phi, &inv);
  Minimalized<F> m;
  m.min = {C.obj[0], C.obj[1], C.d[0]};
  m.to = {phi[0], phi[1]};
  m.from = {inv[0], inv[1]};
  return m;
}

template <class F>
TwoTermComplex<F> minimal(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  Chain<F> C{-1, {X.minus, X.zero}, {X.d}};
  minimalize_chain(A, C);
  return {C.obj[0], C.obj[1], C.d[0]};
}

template <class F>
bool is_minimal(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  return minimal(A, X).minus.size() == X.minus.size();
}

template <class F>
bool is_zero_object(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  auto m = minimal(A, X);
  return m.minus.empty() && m.zero.empty();
}

// Result of a (co)cone computation: the two-term object when the minimal
// (co)cone lives in degrees [-1,0], otherwise the offending degrees.
template <class F>
struct ConeResult {
  std::optional<TwoTermComplex<F>> obj;
  std::vector<int> bad_degrees;
  explicit operator bool() const { return obj.has_value(); }
};

// Cone(f: X -> Y): X^{-1} -> X^0 + Y^{-1} -> Y^0.
template <class F>
ConeResult<F> cone_of_map(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y, const ChainMap<F>& f) {
  Chain<F> C;
  C.lo = -2;
  std::vector<int> mid = X.zero;
  mid.insert(mid.end(), Y.minus.begin(), Y.minus.end());
  C.obj = {X.minus, mid, Y.zero};
  auto d1 = pmat_zero(A, X.minus, mid);
  for (std::size_t r = 0; r < X.minus.size(); ++r) {
    for (std::size_t c = 0; c < X.zero.size(); ++c) d1.at(r, c) = detail::neg_vec(A.field, X.d.at(r, c));
    for (std::size_t c = 0; c < Y.minus.size(); ++c) d1.at(r, X.zero.size() + c) = f.minus.at(r, c);
  }
  auto d2 = pmat_zero(A, mid, Y.zero);
  for (std::size_t c = 0; c < Y.zero.size(); ++c) {
    for (std::size_t r = 0; r < X.zero.size(); ++r) d2.at(r, c) = f.zero.at(r, c);
    for (std::size_t r = 0; r < Y.minus.size(); ++r) d2.at(X.zero.size() + r, c) = Y.d.at(r, c);
  }
  C.d = {d1, d2};
  minimalize_chain(A, C);
  ConeResult<F> res;
  if (!C.obj[0].empty()) {
    res.bad_degrees.push_back(-2);
    return res;
  }
  res.obj = TwoTermComplex<F>{C.obj[1], C.obj[2], C.d[1]};
  return res;
}

// Cocone(g: Y -> Z): Y^{-1} -> Y^0 + Z^{-1} -> Z^0, shifted to degrees -1..1.
template <class F>
ConeResult<F> cocone_of_map(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& Y, const TwoTermComplex<F>& Z, const ChainMap<F>& g) {
  Chain<F> C;
  C.lo = -1;
  std::vector<int> mid = Y.zero;
  mid.insert(mid.end(), Z.minus.begin(), Z.minus.end());
  C.obj = {Y.minus, mid, Z.zero};
  auto d1 = pmat_zero(A, Y.minus, mid);
  for (std::size_t r = 0; r < Y.minus.size(); ++r) {
    for (std::size_t c = 0; c < Y.zero.size(); ++c) d1.at(r, c) = Y.d.at(r, c);
    for (std::size_t c = 0; c < Z.minus.size(); ++c) d1.at(r, Y.zero.size() + c) = g.minus.at(r, c);
  }
  auto d2 = pmat_zero(A, mid, Z.zero);
  for (std::size_t c = 0; c < Z.zero.size(); ++c) {
    for (std::size_t r = 0; r < Y.zero.size(); ++r) d2.at(r, c) = g.zero.at(r, c);
    for (std::size_t r = 0; r < Z.minus.size(); ++r) d2.at(Y.zero.size() + r, c) = detail::neg_vec(A.field, Z.d.at(r, c));
  }
  C.d = {d1, d2};
  minimalize_chain(A, C);
  ConeResult<F> res;
  if (!C.obj[2].empty()) {
    res.bad_degrees.push_back(1);
    return res;
  }
  res.obj = TwoTermComplex<F>{C.obj[0], C.obj[1], C.d[0]};
  return res;
}

// X >-> Y ->> Z realizing delta in E(Z, X).
template <class F>
struct Conflation {
  TwoTermComplex<F> X, Y, Z;
  ChainMap<F> inflation, deflation;
  PMat<F> delta;  // representative s: Z^{-1} -> X^0
};

template <class F>
Conflation<F> realize_extension(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& Z, const TwoTermComplex<F>& X, const PMat<F>& s) {
  if (s.rows != Z.minus || s.cols != X.zero) throw ClassOutOfSpan("extension representative has the wrong shape");
  Conflation<F> c;
  c.X = X;
  c.Z = Z;
  c.delta = s;
  c.Y.minus = X.minus;
  c.Y.minus.insert(c.Y.minus.end(), Z.minus.begin(), Z.minus.end());
  c.Y.zero = X.zero;
  c.Y.zero.insert(c.Y.zero.end(), Z.zero.begin(), Z.zero.end());
  c.Y.d = pmat_block(X.d, pmat_zero(A, X.minus, Z.zero), s, Z.d);
  auto incl = [&](const std::vector<int>& a, const std::vector<int>& b) { return pmat_block(pmat_identity(A, a), pmat_zero(A, a, b), pmat_zero(A, std::vector<int>{}, a), pmat_zero(A, std::vector<int>{}, b)); };
  c.inflation = {incl(X.minus, Z.minus), incl(X.zero, Z.zero)};
  auto proj = [&](const std::vector<int>& a, const std::vector<int>& b) {
    auto top = pmat_zero(A, a, b);
    return pmat_block(top, pmat_zero(A, a, std::vector<int>{}), pmat_identity(A, b), pmat_zero(A, b, std::vector<int>{}));
  };
  c.deflation = {proj(X.minus, Z.minus), proj(X.zero, Z.zero)};
  return c;
}

template <class F>
Conflation<F> realize_class(const FinDimAlgebra<F>& A, const ExtK<F>& E, const Vec<F>& cls) {
  if (cls.size() != E.dim()) throw ClassOutOfSpan("class vector has length " + std::to_string(cls.size()) + ", expected " + std::to_string(E.dim()));
  return realize_extension(A, E.X, E.Y, E.lift(cls));
}

// H^0 summands plus shifted projectives: X ~ X_M + Q[1].
template <class F>
struct TwoTermSplit {
  Rep<F> h0;
  std::vector<int> q;  // multiplicity of P_v[1]
};

template <class F>
TwoTermSplit<F> split_h0(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  TwoTermSplit<F> s{h0(A, X), {}};
  auto gm = g_vector(A, minimal_presentation(s.h0));
  auto gx = g_vector(A, X);
  for (int v = 0; v < A.n(); ++v) {
    s.q.push_back(gm[v] - gx[v]);
    if (s.q.back() < 0) throw std::logic_error("negative shifted-projective multiplicity");
  }
  return s;
}

// Indecomposable summands of X as minimal complexes, canonically ordered
// (X_M parts first by module order, then shifted projectives by vertex).
template <class F>
std::vector<TwoTermComplex<F>> decompose_two_term(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, std::uint64_t seed = 0) {
  auto s = split_h0(A, minimal(A, X));
  std::vector<TwoTermComplex<F>> out;
  for (const auto& M : decompose(s.h0, {seed})) out.push_back(minimal_presentation(M));
  for (int v = 0; v < A.n(); ++v)
    for (int k = 0; k < s.q[v]; ++k) out.push_back(shifted(A, std::vector<int>{v}));
  return out;
}

template <class F>
TwoTermComplex<F> direct_sum_all(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& xs) {
  TwoTermComplex<F> S = make_complex(A, {}, {});
  for (const auto& X : xs) S = direct_sum(A, S, X);
  return S;
}

// Dimension of E(X, Y) from E(X_M + Q[1], Y) = D Hom(H^0 Y, tau M) + Hom(Q, H^0 Y).
template <class F>
int ext_dim_tau(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y) {
  auto s = split_h0(A, minimal(A, X));
  auto HY = h0(A, Y);
  int d = s.h0.total() ? hom_dim(HY, tau(s.h0)) : 0;
  for (int v = 0; v < A.n(); ++v) d += s.q[v] * HY.dims[v];
  return d;
}

// Invertible map between sums of projectives: the idempotent coefficients
// form an invertible matrix at every vertex.
template <class F>
bool pmat_is_invertible(const FinDimAlgebra<F>& A, const PMat<F>& M) {
  auto r = M.rows, c = M.cols;
  std::sort(r.begin(), r.end());
  std::sort(c.begin(), c.end());
  if (r != c) return false;
  const F& f = A.field;
  for (int v = 0; v < A.n(); ++v) {
    std::vector<std::size_t> ri, ci;
    for (std::size_t i = 0; i < M.nr(); ++i)
      if (M.rows[i] == v) ri.push_back(i);
    for (std::size_t j = 0; j < M.nc(); ++j)
      if (M.cols[j] == v) ci.push_back(j);
    Mat<F> t = zeros(f, ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
      for (std::size_t j = 0; j < ci.size(); ++j) t(i, j) = A.top_coeff(M.at(ri[i], ci[j]), v);
    if (rank(f, t) != ri.size()) return false;
  }
  return true;
}

template <class F>
std::optional<PMat<F>> pmat_inverse(const FinDimAlgebra<F>& A, const PMat<F>& M) {
  if (!pmat_is_invertible(A, M)) return std::nullopt;
  const F& f = A.field;
  PSpace<F> gs(A, M.cols, M.rows), tgt(A, M.rows, M.rows);
  Mat<F> L = zeros(f, tgt.dim(), gs.dim());
  for (std::size_t i = 0; i < gs.dim(); ++i) {
    auto img = tgt.to_vec(pmat_mul(A, M, gs.unit(i)));
    for (std::size_t r = 0; r < img.size(); ++r) L(r, i) = img[r];
  }
  auto x = solve(f, L, tgt.to_vec(pmat_identity(A, M.rows)));
  if (!x) return std::nullopt;
  return gs.from_vec(*x);
}

// An isomorphism of minimal complexes with its inverse.
template <class F>
struct IsoWitness {
  ChainMap<F> f, g;
};

template <class F>
bool verify_iso_witness(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y, const IsoWitness<F>& w) {
  if (!is_chain_map(A, X, Y, w.f) || !is_chain_map(A, Y, X, w.g)) return false;
  auto fg = chain_compose(A, w.f, w.g), gf = chain_compose(A, w.g, w.f);
  return pmat_eq(A, fg.minus, pmat_identity(A, X.minus)) && pmat_eq(A, fg.zero, pmat_identity(A, X.zero)) &&
         pmat_eq(A, gf.minus, pmat_identity(A, Y.minus)) && pmat_eq(A, gf.zero, pmat_identity(A, Y.zero));
}

// Searches for an isomorphism between minimal complexes among random chain
// maps; the witness is checked exactly.
template <class F>
std::optional<IsoWitness<F>> find_isomorphism(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y, std::uint64_t seed = 0, int tries = 8) {
  auto sx = X.minus, sy = Y.minus, tx = X.zero, ty = Y.zero;
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());
  std::sort(tx.begin(), tx.end());
  std::sort(ty.begin(), ty.end());
  if (sx != sy || tx != ty) return std::nullopt;
  const F& f = A.field;
  auto H = hom_K(A, X, Y);
  // chain maps, not classes: add null-homotopic directions too
  PSpace<F> hs(A, X.zero, Y.minus);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull ^ (X.minus.size() * 131 + X.zero.size()));
  for (int t = 0; t < tries; ++t) {
    Vec<F> c(H.dim());
    for (auto& x : c) x = f.random(rng);
    auto m = H.lift(c);
    Vec<F> hv(hs.dim());
    for (auto& x : hv) x = f.random(rng);
    auto h = hs.from_vec(hv);
    m.minus = pmat_add(A, m.minus, pmat_mul(A, X.d, h));
    m.zero = pmat_add(A, m.zero, pmat_mul(A, h, Y.d));
    auto im = pmat_inverse(A, m.minus), iz = pmat_inverse(A, m.zero);
    if (!im || !iz) continue;
    IsoWitness<F> w{m, {*im, *iz}};
    if (verify_iso_witness(A, X, Y, w)) return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The two-term universe {X_M} + {P_v[1]} over a module universe.

template <class F>
struct TTEntry {
  std::string id;
  TwoTermComplex<F> cx;
  int module = -1;  // index into the module universe, or -1 for P_v[1]
  int vertex = -1;  // v for P_v[1]
  std::vector<int> g;
};

template <class F>
struct TwoTermUniverse {
  const FinDimAlgebra<F>* alg = nullptr;
  const Universe<F>* mods = nullptr;
  std::vector<TTEntry<F>> entries;
  std::vector<Rep<F>> h0s, taus;  // per entry

  std::size_t size() const { return entries.size(); }
  bool complete() const { return mods->complete; }
};

template <class F>
TwoTermUniverse<F> two_term_universe(const Universe<F>& U) {
  const auto& A = *U.alg;
  TwoTermUniverse<F> T;
  T.alg = &A;
  T.mods = &U;
  for (std::size_t k = 0; k < U.size(); ++k) {
    TTEntry<F> e;
    e.id = "X_M" + std::to_string(k);
    e.cx = minimal_presentation(U.modules[k]);
    e.module = static_cast<int>(k);
    e.g = g_vector(A, e.cx);
    T.entries.push_back(e);
    T.h0s.push_back(U.modules[k]);
    T.taus.push_back(tau(U.modules[k]));
  }
  for (int v = 0; v < A.n(); ++v) {
    TTEntry<F> e;
    e.id = "P_" + A.vertex_names[v] + "[1]";
    e.cx = shifted(A, std::vector<int>{v});
    e.vertex = v;
    e.g = g_vector(A, e.cx);
    T.entries.push_back(e);
    T.h0s.push_back(zero_rep(A));
    T.taus.push_back(zero_rep(A));
  }
  return T;
}

template <class F>
int shifted_index(const TwoTermUniverse<F>& T, int v) {
  return static_cast<int>(T.mods->size()) + v;
}

// Entry indices (with multiplicity) of the indecomposable summands of X.
template <class F>
std::vector<int> identify_two_term(const TwoTermUniverse<F>& T, const TwoTermComplex<F>& X, std::uint64_t seed = 0) {
  const auto& A = *T.alg;
  auto s = split_h0(A, minimal(A, X));
  std::vector<int> out = s.h0.total() ? identify_summands(*T.mods, s.h0, seed) : std::vector<int>{};
  for (int v = 0; v < A.n(); ++v)
    for (int k = 0; k < s.q[v]; ++k) out.push_back(shifted_index(T, v));
  std::sort(out.begin(), out.end());
  return out;
}

// tau-formula dimension of E(entry i, entry j).
template <class F>
int ext_dim_entries(const TwoTermUniverse<F>& T, int i, int j) {
  const auto& ei = T.entries[i];
  const auto& HY = T.h0s[j];
  if (ei.module >= 0) return hom_dim(HY, T.taus[i]);
  return HY.dims[ei.vertex];
}

template <class F>
struct TwoTermTables {
  std::vector<std::vector<int>> ext;  // tau formula
  std::vector<std::vector<int>> hom;  // dim Hom_K
};

template <class F>
TwoTermTables<F> two_term_tables(const TwoTermUniverse<F>& T, int threads = 1, bool with_hom = true) {
  std::size_t n = T.size();
  TwoTermTables<F> t;
  t.ext.assign(n, std::vector<int>(n, 0));
  t.hom.assign(n, std::vector<int>(n, 0));
  parallel_for(n * n, threads, [&](std::size_t k) {
    std::size_t i = k / n, j = k % n;
    t.ext[i][j] = ext_dim_entries(T, static_cast<int>(i), static_cast<int>(j));
    if (with_hom) t.hom[i][j] = static_cast<int>(hom_K(*T.alg, T.entries[i].cx, T.entries[j].cx).dim());
  });
  return t;
}

}  // namespace siltlab
