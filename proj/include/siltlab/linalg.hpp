#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace siltlab {

template <class F>
using Vec = std::vector<typename F::elem>;

template <class F>
struct Mat {
  using elem = typename F::elem;
  std::size_t rows = 0, cols = 0;
  std::vector<elem> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, const elem& z) : rows(r), cols(c), a(r * c, z) {}

  elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const elem& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool empty() const { return rows == 0 || cols == 0; }
};

template <class F>
Mat<F> zeros(const F& f, std::size_t r, std::size_t c) { return Mat<F>(r, c, f.zero()); }

template <class F>
Mat<F> identity(const F& f, std::size_t n) {
  Mat<F> m(n, n, f.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <class F>
Mat<F> mat_mul(const F& f, const Mat<F>& A, const Mat<F>& B) {
  if (A.cols != B.rows) throw std::logic_error("mat_mul: shape mismatch");
  Mat<F> C(A.rows, B.cols, f.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const auto& x = A(i, k);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < B.cols; ++j) C(i, j) = f.add(C(i, j), f.mul(x, B(k, j)));
    }
  return C;
}

template <class F>
Mat<F> mat_add(const F& f, const Mat<F>& A, const Mat<F>& B) {
  Mat<F> C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = f.add(A.a[i], B.a[i]);
  return C;
}

template <class F>
Mat<F> mat_sub(const F& f, const Mat<F>& A, const Mat<F>& B) {
  Mat<F> C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = f.sub(A.a[i], B.a[i]);
  return C;
}

template <class F>
Mat<F> mat_scale(const F& f, const typename F::elem& s, const Mat<F>& A) {
  Mat<F> C = A;
  for (auto& x : C.a) x = f.mul(s, x);
  return C;
}

template <class F>
bool mat_is_zero(const F& f, const Mat<F>& A) {
  for (const auto& x : A.a)
    if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
bool mat_eq(const F& f, const Mat<F>& A, const Mat<F>& B) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (std::size_t i = 0; i < A.a.size(); ++i)
    if (!f.eq(A.a[i], B.a[i])) return false;
  return true;
}

template <class F>
Mat<F> transpose(const Mat<F>& A) {
  Mat<F> T(A.cols, A.rows, typename F::elem{});
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

template <class F>
Vec<F> mat_vec(const F& f, const Mat<F>& A, const Vec<F>& x) {
  Vec<F> y(A.rows, f.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j)
      if (!f.is_zero(x[j])) y[i] = f.add(y[i], f.mul(A(i, j), x[j]));
  return y;
}

template <class F>
Mat<F> from_columns(const F& f, std::size_t rows, const std::vector<Vec<F>>& cols) {
  Mat<F> M(rows, cols.size(), f.zero());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
  return M;
}

template <class F>
Vec<F> column(const Mat<F>& A, std::size_t j) {
  Vec<F> v(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i) v[i] = A(i, j);
  return v;
}

template <class F>
Mat<F> submatrix(const Mat<F>& A, std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) {
  Mat<F> S(r, c, typename F::elem{});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) S(i, j) = A(r0 + i, c0 + j);
  return S;
}

template <class F>
bool vec_is_zero(const F& f, const Vec<F>& v) {
  for (const auto& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
void axpy(const F& f, Vec<F>& y, const typename F::elem& s, const Vec<F>& x) {
  if (f.is_zero(s)) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!f.is_zero(x[i])) y[i] = f.add(y[i], f.mul(s, x[i]));
}

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, Mat<F>& A) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::size_t k = r;
    while (k < A.rows && f.is_zero(A(k, c))) ++k;
    if (k == A.rows) continue;
    if (k != r)
      for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(k, j), A(r, j));
    auto iv = f.inv(A(r, c));
    for (std::size_t j = c; j < A.cols; ++j) A(r, j) = f.mul(A(r, j), iv);
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == r || f.is_zero(A(i, c))) continue;
      auto s = A(i, c);
      for (std::size_t j = c; j < A.cols; ++j) A(i, j) = f.sub(A(i, j), f.mul(s, A(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

template <class F>
std::size_t rank(const F& f, Mat<F> A) {
  return rref(f, A).size();
}

// Basis of {x : A x = 0}.
template <class F>
std::vector<Vec<F>> nullspace(const F& f, Mat<F> A) {
  auto piv = rref(f, A);
  std::vector<bool> is_piv(A.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec<F>> out;
  for (std::size_t free = 0; free < A.cols; ++free) {
    if (is_piv[free]) continue;
    Vec<F> v(A.cols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(A(r, free));
    out.push_back(std::move(v));
  }
  return out;
}

// Some x with A x = b, if one exists.
template <class F>
std::optional<Vec<F>> solve(const F& f, const Mat<F>& A, const Vec<F>& b) {
  Mat<F> M(A.rows, A.cols + 1, f.zero());
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) M(i, j) = A(i, j);
    M(i, A.cols) = b[i];
  }
  auto piv = rref(f, M);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  Vec<F> x(A.cols, f.zero());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M(r, A.cols);
  return x;
}

template <class F>
std::optional<Mat<F>> inverse(const F& f, const Mat<F>& A) {
  if (A.rows != A.cols) return std::nullopt;
  std::size_t n = A.rows;
  Mat<F> M(n, 2 * n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = f.one();
  }
  auto piv = rref(f, M);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
  return submatrix(M, 0, n, n, n);
}

// Basis of the column space, as a list of columns of A.
template <class F>
std::vector<Vec<F>> column_space(const F& f, const Mat<F>& A) {
  Mat<F> T = transpose(A);
  rref(f, T);
  std::vector<Vec<F>> out;
  for (std::size_t i = 0; i < T.rows; ++i) {
    Vec<F> v(T.cols);
    for (std::size_t j = 0; j < T.cols; ++j) v[j] = T(i, j);
    if (vec_is_zero(f, v)) break;
    out.push_back(std::move(v));
  }
  return out;
}

// Incrementally maintained subspace in reduced echelon form.  Each row
// carries a tag vector recording which inserted generators produced it,
// so reduce() can report coordinates relative to tagged generators.
template <class F>
class Echelon {
 public:
  using elem = typename F::elem;

  Echelon(const F& f, std::size_t dim, std::size_t ntags = 0) : f_(&f), dim_(dim), ntags_(ntags) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  // Reduces v in place; returns the tag combination subtracted.
  Vec<F> reduce(Vec<F>& v) const {
    const F& f = *f_;
    Vec<F> tag(ntags_, f.zero());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto s = v[piv_[r]];
      if (f.is_zero(s)) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!f.is_zero(rows_[r][j])) v[j] = f.sub(v[j], f.mul(s, rows_[r][j]));
      for (std::size_t j = 0; j < ntags_; ++j)
        if (!f.is_zero(tags_[r][j])) tag[j] = f.add(tag[j], f.mul(s, tags_[r][j]));
    }
    return tag;
  }

  bool contains(Vec<F> v) const {
    reduce(v);
    return vec_is_zero(*f_, v);
  }

  // Inserts v (with optional tag); returns false when v is dependent.
  bool insert(Vec<F> v, Vec<F> tag = {}) {
    const F& f = *f_;
    if (tag.empty()) tag.assign(ntags_, f.zero());
    auto t = reduce(v);
    for (std::size_t j = 0; j < ntags_; ++j) tag[j] = f.sub(tag[j], t[j]);
    std::size_t p = 0;
    while (p < dim_ && f.is_zero(v[p])) ++p;
    if (p == dim_) return false;
    auto iv = f.inv(v[p]);
    for (auto& x : v) x = f.mul(x, iv);
    for (auto& x : tag) x = f.mul(x, iv);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto s = rows_[r][p];
      if (f.is_zero(s)) continue;
      for (std::size_t j = 0; j < dim_; ++j) rows_[r][j] = f.sub(rows_[r][j], f.mul(s, v[j]));
      for (std::size_t j = 0; j < ntags_; ++j) tags_[r][j] = f.sub(tags_[r][j], f.mul(s, tag[j]));
    }
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    piv_.insert(piv_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    tags_.insert(tags_.begin() + pos, std::move(tag));
    return true;
  }

  const std::vector<Vec<F>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

 private:
  const F* f_;
  std::size_t dim_, ntags_;
  std::vector<Vec<F>> rows_, tags_;
  std::vector<std::size_t> piv_;
};

// A quotient V/S of a subspace V by a subspace S of the same ambient space,
// with a chosen complement basis and a coordinate map.
template <class F>
class Quotient {
 public:
  Quotient(const F& f, std::size_t ambient, const std::vector<Vec<F>>& sub, const std::vector<Vec<F>>& space)
      : f_(&f), ech_(f, ambient, 0) {
    std::vector<Vec<F>> comp;
    Echelon<F> probe(f, ambient);
    for (const auto& s : sub) probe.insert(s);
    for (const auto& v : space)
      if (probe.insert(v)) comp.push_back(v);
    ech_ = Echelon<F>(f, ambient, comp.size());
    for (const auto& s : sub) ech_.insert(s);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      Vec<F> tag(comp.size(), f.zero());
      tag[i] = f.one();
      ech_.insert(comp[i], tag);
    }
    basis_ = std::move(comp);
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec<F>>& basis() const { return basis_; }

  // Coordinates of v (assumed to lie in V) in the complement basis.
  Vec<F> coords(Vec<F> v) const { return ech_.reduce(v); }
  bool is_zero(const Vec<F>& v) const { return vec_is_zero(*f_, coords(v)); }
  Vec<F> lift(const Vec<F>& c) const {
    Vec<F> v(ech_.dim(), f_->zero());
    for (std::size_t i = 0; i < c.size(); ++i) axpy(*f_, v, c[i], basis_[i]);
    return v;
  }

 private:
  const F* f_;
  Echelon<F> ech_;
  std::vector<Vec<F>> basis_;
};

// Characteristic polynomial det(xI - A), coefficients low to high.
template <class F>
Vec<F> charpoly(const F& f, const Mat<F>& A) {
  // Hessenberg reduction followed by the standard recurrence.
  std::size_t n = A.rows;
  Mat<F> H = A;
  for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
    std::size_t i = m;
    while (i < n && f.is_zero(H(i, m - 1))) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(H(i, j), H(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(H(j, i), H(j, m));
    }
    auto iv = f.inv(H(m, m - 1));
    for (std::size_t k = m + 1; k < n; ++k) {
      auto u = f.mul(H(k, m - 1), iv);
      if (f.is_zero(u)) continue;
      for (std::size_t j = 0; j < n; ++j) H(k, j) = f.sub(H(k, j), f.mul(u, H(m, j)));
      for (std::size_t j = 0; j < n; ++j) H(j, m) = f.add(H(j, m), f.mul(u, H(j, k)));
    }
  }
  std::vector<Vec<F>> p(n + 1);
  p[0] = Vec<F>{f.one()};
  for (std::size_t k = 1; k <= n; ++k) {
    Vec<F> next(k + 1, f.zero());
    const auto& prev = p[k - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], prev[i]);
      next[i] = f.sub(next[i], f.mul(H(k - 1, k - 1), prev[i]));
    }
    auto t = f.one();
    for (std::size_t i = 1; i < k; ++i) {
      t = f.mul(t, H(k - i, k - i - 1));
      auto c = f.mul(t, H(k - i - 1, k - 1));
      if (f.is_zero(c)) continue;
      const auto& q = p[k - i - 1];
      for (std::size_t j = 0; j < q.size(); ++j) next[j] = f.sub(next[j], f.mul(c, q[j]));
    }
    p[k] = std::move(next);
  }
  return p[n];
}

template <class F>
typename F::elem poly_eval(const F& f, const Vec<F>& c, const typename F::elem& x) {
  auto r = f.zero();
  for (std::size_t i = c.size(); i-- > 0;) r = f.add(f.mul(r, x), c[i]);
  return r;
}

}  // namespace siltlab
