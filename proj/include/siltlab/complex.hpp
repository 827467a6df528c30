#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace siltlab {

// A matrix of algebra elements describing a map between sums of
// indecomposable projectives, in row-vector convention: rows index the
// summands P_{rows[i]} of the source, columns the summands P_{cols[j]} of
// the target, and entry (i,j) lies in e_{rows[i]} A e_{cols[j]}, acting by
// right multiplication.  Composition P -X-> Q -Y-> R is the product X*Y.
template <class F>
struct PMat {
  std::vector<int> rows, cols;
  std::vector<Vec<F>> e;

  std::size_t nr() const { return rows.size(); }
  std::size_t nc() const { return cols.size(); }
  Vec<F>& at(std::size_t i, std::size_t j) { return e[i * cols.size() + j]; }
  const Vec<F>& at(std::size_t i, std::size_t j) const { return e[i * cols.size() + j]; }
};

template <class F>
PMat<F> pmat_zero(const FinDimAlgebra<F>& A, const std::vector<int>& rows, const std::vector<int>& cols) {
  PMat<F> m{rows, cols, {}};
  m.e.assign(rows.size() * cols.size(), A.zero_vec());
  return m;
}

template <class F>
PMat<F> pmat_identity(const FinDimAlgebra<F>& A, const std::vector<int>& v) {
  auto m = pmat_zero(A, v, v);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(i, i) = A.unit_vec(A.idem[v[i]]);
  return m;
}

template <class F>
PMat<F> pmat_mul(const FinDimAlgebra<F>& A, const PMat<F>& X, const PMat<F>& Y) {
  auto Z = pmat_zero(A, X.rows, Y.cols);
  const F& f = A.field;
  for (std::size_t i = 0; i < X.nr(); ++i)
    for (std::size_t k = 0; k < X.nc(); ++k) {
      const auto& x = X.at(i, k);
      if (vec_is_zero(f, x)) continue;
      for (std::size_t j = 0; j < Y.nc(); ++j) {
        const auto& y = Y.at(k, j);
        if (vec_is_zero(f, y)) continue;
        auto p = A.mul(x, y);
        auto& z = Z.at(i, j);
        for (int t = 0; t < A.dim(); ++t) z[t] = f.add(z[t], p[t]);
      }
    }
  return Z;
}

template <class F>
PMat<F> pmat_add(const FinDimAlgebra<F>& A, const PMat<F>& X, const PMat<F>& Y, bool subtract = false) {
  PMat<F> Z = X;
  const F& f = A.field;
  for (std::size_t i = 0; i < Z.e.size(); ++i)
    for (int t = 0; t < A.dim(); ++t) Z.e[i][t] = subtract ? f.sub(X.e[i][t], Y.e[i][t]) : f.add(X.e[i][t], Y.e[i][t]);
  return Z;
}

template <class F>
PMat<F> pmat_neg(const FinDimAlgebra<F>& A, PMat<F> X) {
  for (auto& v : X.e)
    for (auto& t : v) t = A.field.neg(t);
  return X;
}

template <class F>
bool pmat_is_zero(const FinDimAlgebra<F>& A, const PMat<F>& X) {
  for (const auto& v : X.e)
    if (!vec_is_zero(A.field, v)) return false;
  return true;
}

// Keeps the listed rows and columns.
template <class F>
PMat<F> pmat_select(const PMat<F>& X, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  PMat<F> Y;
  for (auto i : r) Y.rows.push_back(X.rows[i]);
  for (auto j : c) Y.cols.push_back(X.cols[j]);
  for (auto i : r)
    for (auto j : c) Y.e.push_back(X.at(i, j));
  return Y;
}

// Block matrix [[X, Y], [Z, W]].
template <class F>
PMat<F> pmat_block(const PMat<F>& X, const PMat<F>& Y, const PMat<F>& Z, const PMat<F>& W) {
  PMat<F> M;
  M.rows = X.rows;
  M.rows.insert(M.rows.end(), Z.rows.begin(), Z.rows.end());
  M.cols = X.cols;
  M.cols.insert(M.cols.end(), Y.cols.begin(), Y.cols.end());
  for (std::size_t i = 0; i < X.nr(); ++i) {
    for (std::size_t j = 0; j < X.nc(); ++j) M.e.push_back(X.at(i, j));
    for (std::size_t j = 0; j < Y.nc(); ++j) M.e.push_back(Y.at(i, j));
  }
  for (std::size_t i = 0; i < Z.nr(); ++i) {
    for (std::size_t j = 0; j < Z.nc(); ++j) M.e.push_back(Z.at(i, j));
    for (std::size_t j = 0; j < W.nc(); ++j) M.e.push_back(W.at(i, j));
  }
  return M;
}

// An object of K^{[-1,0]}(proj A): minus -> zero with differential d.
template <class F>
struct TwoTermComplex {
  std::vector<int> minus, zero;
  PMat<F> d;
};

template <class F>
TwoTermComplex<F> make_complex(const FinDimAlgebra<F>& A, std::vector<int> minus, std::vector<int> zero) {
  return {minus, zero, pmat_zero(A, minus, zero)};
}

template <class F>
TwoTermComplex<F> stalk(const FinDimAlgebra<F>& A, const std::vector<int>& zero) {
  return make_complex(A, {}, zero);
}

template <class F>
TwoTermComplex<F> shifted(const FinDimAlgebra<F>& A, const std::vector<int>& minus) {
  return make_complex(A, minus, {});
}

template <class F>
TwoTermComplex<F> direct_sum(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, const TwoTermComplex<F>& Y) {
  TwoTermComplex<F> Z;
  Z.minus = X.minus;
  Z.minus.insert(Z.minus.end(), Y.minus.begin(), Y.minus.end());
  Z.zero = X.zero;
  Z.zero.insert(Z.zero.end(), Y.zero.begin(), Y.zero.end());
  Z.d = pmat_block(X.d, pmat_zero(A, X.minus, Y.zero), pmat_zero(A, Y.minus, X.zero), Y.d);
  return Z;
}

template <class F>
std::vector<int> multiplicities(int n, const std::vector<int>& v) {
  std::vector<int> m(n, 0);
  for (int x : v) ++m[x];
  return m;
}

// g = [P^0] - [P^{-1}].
template <class F>
std::vector<int> g_vector(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  std::vector<int> g(A.n(), 0);
  for (int v : X.zero) ++g[v];
  for (int v : X.minus) --g[v];
  return g;
}

inline std::string gvec_str(const std::vector<int>& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + std::to_string(g[i]);
  return s + ")";
}

}  // namespace siltlab
