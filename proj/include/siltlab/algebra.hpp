#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace siltlab {

struct Arrow {
  std::string name;
  std::string from, to;
};

struct RelationTerm {
  std::string coeff;
  std::vector<std::string> path;  // traversal order: [a,b] is "a then b"
};

struct BoundQuiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::vector<RelationTerm>> relations;
};

// A basic finite-dimensional algebra with a basis adapted to its complete
// set of primitive idempotents: every basis element b lies in
// e_{tgt(b)} A e_{src(b)}, and each e_v is itself a basis element.
//
// Left modules throughout.  For quiver algebras a path p from i to j lies in
// e_j A e_i and the product x*y means "first y, then x".
template <class F>
struct FinDimAlgebra {
  using elem = typename F::elem;
  using Sparse = std::vector<std::pair<int, elem>>;

  F field;
  std::string name;
  std::vector<std::string> vertex_names;
  std::vector<std::string> labels;
  std::vector<int> src, tgt, degree;
  std::vector<int> idem;  // idem[v] = basis index of e_v
  std::vector<Sparse> table;  // table[i*dim+j] = b_i * b_j
  // Generators of the radical as an ideal; every non-idempotent basis
  // element is the product gens[word[b][0]] * gens[word[b][1]] * ...
  std::vector<int> gens;
  std::vector<std::vector<int>> word;
  std::optional<BoundQuiver> quiver;
  // piece[t][s] lists the basis indices spanning e_t A e_s.
  std::vector<std::vector<std::vector<int>>> piece;

  int dim() const { return static_cast<int>(labels.size()); }
  int n() const { return static_cast<int>(idem.size()); }
  bool is_idempotent(int b) const { return idem[tgt[b]] == b; }

  const Sparse& mul_basis(int i, int j) const { return table[static_cast<std::size_t>(i) * dim() + j]; }

  Vec<F> unit_vec(int b) const {
    Vec<F> v(dim(), field.zero());
    v[b] = field.one();
    return v;
  }

  Vec<F> zero_vec() const { return Vec<F>(dim(), field.zero()); }

  Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
    const F& f = field;
    Vec<F> r = zero_vec();
    for (int i = 0; i < dim(); ++i) {
      if (f.is_zero(x[i])) continue;
      for (int j = 0; j < dim(); ++j) {
        if (f.is_zero(y[j]) || src[i] != tgt[j]) continue;
        auto c = f.mul(x[i], y[j]);
        for (const auto& [k, v] : mul_basis(i, j)) r[k] = f.add(r[k], f.mul(c, v));
      }
    }
    return r;
  }

  // Coefficient of e_v in an element of e_v A e_v.
  elem top_coeff(const Vec<F>& x, int v) const { return x[idem[v]]; }

  // Inverse of an invertible element of the local algebra e_v A e_v.
  Vec<F> local_inverse(const Vec<F>& x, int v) const {
    const F& f = field;
    auto c = x[idem[v]];
    if (f.is_zero(c)) throw std::domain_error("local_inverse: element is radical");
    auto ic = f.inv(c);
    // x = c(e + r) with r radical, so x^{-1} = c^{-1}(e - r + r^2 - ...).
    Vec<F> r = x;
    for (auto& t : r) t = f.mul(t, ic);
    r[idem[v]] = f.zero();
    Vec<F> acc = unit_vec(idem[v]);
    Vec<F> term = unit_vec(idem[v]);
    for (int k = 1; k <= dim() + 1; ++k) {
      term = mul(term, r);
      for (auto& t : term) t = f.neg(t);
      if (vec_is_zero(f, term)) break;
      for (int i = 0; i < dim(); ++i) acc[i] = f.add(acc[i], term[i]);
    }
    for (auto& t : acc) t = f.mul(t, ic);
    return acc;
  }

  bool in_piece(const Vec<F>& x, int t, int s) const {
    for (int i = 0; i < dim(); ++i)
      if (!field.is_zero(x[i]) && (tgt[i] != t || src[i] != s)) return false;
    return true;
  }

  bool check_associative() const {
    const F& f = field;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        for (int k = 0; k < dim(); ++k) {
          auto a = mul(mul(unit_vec(i), unit_vec(j)), unit_vec(k));
          auto b = mul(unit_vec(i), mul(unit_vec(j), unit_vec(k)));
          for (int t = 0; t < dim(); ++t)
            if (!f.eq(a[t], b[t])) return false;
        }
    return true;
  }

  bool check_idempotents() const {
    const F& f = field;
    Vec<F> sum = zero_vec();
    for (int v = 0; v < n(); ++v) {
      for (int w = 0; w < n(); ++w) {
        auto p = mul(unit_vec(idem[v]), unit_vec(idem[w]));
        auto expect = v == w ? unit_vec(idem[v]) : zero_vec();
        for (int t = 0; t < dim(); ++t)
          if (!f.eq(p[t], expect[t])) return false;
      }
      sum[idem[v]] = f.add(sum[idem[v]], f.one());
    }
    for (int b = 0; b < dim(); ++b) {
      auto l = mul(sum, unit_vec(b)), r = mul(unit_vec(b), sum);
      for (int t = 0; t < dim(); ++t)
        if (!f.eq(l[t], t == b ? f.one() : f.zero()) || !f.eq(r[t], t == b ? f.one() : f.zero())) return false;
    }
    return true;
  }

  std::string element_str(const Vec<F>& x) const {
    std::string out;
    for (int i = 0; i < dim(); ++i) {
      if (field.is_zero(x[i])) continue;
      if (!out.empty()) out += " + ";
      auto c = field.str(x[i]);
      out += (c == "1" ? "" : c + "*") + labels[i];
    }
    return out.empty() ? "0" : out;
  }

  void build_pieces() {
    piece.assign(n(), std::vector<std::vector<int>>(n()));
    for (int b = 0; b < dim(); ++b) piece[tgt[b]][src[b]].push_back(b);
  }
};

namespace detail {

using Path = std::vector<int>;  // arrow indices in traversal order

inline std::string path_label(const BoundQuiver& q, const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + q.arrows[p[i]].name;
  return s;
}

}  // namespace detail

// Path basis of kQ/I for homogeneous relations: the ideal is computed degree
// by degree, I_n = arrows*I_{n-1} + I_{n-1}*arrows + (relations of length n).
// Within a degree the lexicographically largest paths are eliminated first,
// so the surviving basis paths are the smallest ones.
template <class F>
FinDimAlgebra<F> path_algebra(const BoundQuiver& q, const F& f, int max_length = 64) {
  using detail::Path;
  FinDimAlgebra<F> A;
  A.field = f;
  A.quiver = q;
  A.vertex_names = q.vertices;
  int nv = static_cast<int>(q.vertices.size());
  if (nv == 0) throw InputError("quiver has no vertices");
  std::map<std::string, int> vid, aid;
  for (int i = 0; i < nv; ++i)
    if (!vid.emplace(q.vertices[i], i).second) throw InputError("duplicate vertex '" + q.vertices[i] + "'");
  std::vector<int> as, at;
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    const auto& ar = q.arrows[a];
    if (!vid.count(ar.from) || !vid.count(ar.to)) throw InputError("arrow '" + ar.name + "' has an unknown endpoint");
    if (!aid.emplace(ar.name, static_cast<int>(a)).second) throw InputError("duplicate arrow '" + ar.name + "'");
    as.push_back(vid[ar.from]);
    at.push_back(vid[ar.to]);
  }
  auto by_name = [&](const Path& x, const Path& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [&](int a, int b) {
      return q.arrows[a].name < q.arrows[b].name;
    });
  };

  // Relations grouped by degree, as sparse combinations of paths.
  std::map<int, std::vector<std::vector<std::pair<Path, typename F::elem>>>> rels;
  for (const auto& rel : q.relations) {
    std::vector<std::pair<Path, typename F::elem>> terms;
    int len = -1, rs = -1, rt = -1;
    for (const auto& term : rel) {
      Path p;
      for (const auto& nm : term.path) {
        auto it = aid.find(nm);
        if (it == aid.end()) throw MalformedPath("unknown arrow '" + nm + "' in relation");
        if (!p.empty() && at[p.back()] != as[it->second])
          throw MalformedPath("relation term is not composable at arrow '" + nm + "'");
        p.push_back(it->second);
      }
      if (p.size() < 2) throw NonAdmissibleIdeal("relation term of length " + std::to_string(p.size()) + " is not in the square of the arrow ideal");
      if (len >= 0 && static_cast<int>(p.size()) != len)
        throw NonAdmissibleIdeal("relation mixes path lengths; only homogeneous relations are supported");
      if (rs >= 0 && (as[p.front()] != rs || at[p.back()] != rt))
        throw MalformedPath("relation terms do not share source and target");
      len = static_cast<int>(p.size());
      rs = as[p.front()];
      rt = at[p.back()];
      terms.emplace_back(p, f.parse(term.coeff));
    }
    if (!terms.empty()) rels[len].push_back(std::move(terms));
  }

  struct Degree {
    std::vector<Path> paths;  // sorted descending, so pivots land on large paths
    std::map<Path, int> index;
    std::vector<Vec<F>> ideal;  // basis of I_n over `paths`
    std::optional<Echelon<F>> ech;
    std::vector<int> basis;  // indices into paths of surviving basis paths
  };
  std::vector<Degree> deg;
  auto pstart = [&](const Path& p) { return as[p.front()]; };
  auto pend = [&](const Path& p) { return at[p.back()]; };

  for (int n = 0;; ++n) {
    if (n > max_length)
      throw NonAdmissibleIdeal("paths of length " + std::to_string(max_length) + " survive; the arrow ideal is not nilpotent modulo the relations");
    Degree d;
    if (n == 1) {
      for (std::size_t a = 0; a < q.arrows.size(); ++a) d.paths.push_back(Path{static_cast<int>(a)});
    } else if (n > 1) {
      // Only extend surviving-or-not paths of the previous degree: every
      // path of length n is a path of length n-1 followed by an arrow.
      for (const auto& p : deg[n - 1].paths)
        for (std::size_t a = 0; a < q.arrows.size(); ++a)
          if (as[a] == pend(p)) {
            Path x = p;
            x.push_back(static_cast<int>(a));
            d.paths.push_back(x);
          }
    }
    std::sort(d.paths.begin(), d.paths.end(), [&](const Path& x, const Path& y) { return by_name(y, x); });
    for (std::size_t i = 0; i < d.paths.size(); ++i) d.index[d.paths[i]] = static_cast<int>(i);
    d.ech.emplace(f, d.paths.size());
    if (n >= 2) {
      const auto& prev = deg[n - 1];
      for (const auto& v : prev.ideal) {
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
          Vec<F> after(d.paths.size(), f.zero()), before(d.paths.size(), f.zero());
          bool any_after = false, any_before = false;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (f.is_zero(v[i])) continue;
            const auto& p = prev.paths[i];
            if (pend(p) == as[a]) {
              Path x = p;
              x.push_back(static_cast<int>(a));
              after[d.index.at(x)] = v[i];
              any_after = true;
            }
            if (at[a] == pstart(p)) {
              Path x{static_cast<int>(a)};
              x.insert(x.end(), p.begin(), p.end());
              before[d.index.at(x)] = v[i];
              any_before = true;
            }
          }
          if (any_after) d.ech->insert(after);
          if (any_before) d.ech->insert(before);
        }
      }
      for (const auto& rel : rels[n]) {
        Vec<F> v(d.paths.size(), f.zero());
        for (const auto& [p, c] : rel) v[d.index.at(p)] = f.add(v[d.index.at(p)], c);
        d.ech->insert(v);
      }
    }
    d.ideal = d.ech->rows();
    std::vector<bool> piv(d.paths.size(), false);
    for (auto c : d.ech->pivots()) piv[c] = true;
    for (std::size_t i = d.paths.size(); i-- > 0;)
      if (!piv[i]) d.basis.push_back(static_cast<int>(i));
    bool empty = n > 0 && d.basis.empty();
    deg.push_back(std::move(d));
    if (empty) break;
  }

  // Assemble the basis: trivial paths, then paths by length and name.
  std::vector<std::pair<int, int>> where;  // (degree, path index)
  for (int v = 0; v < nv; ++v) {
    A.labels.push_back("e" + q.vertices[v]);
    A.src.push_back(v);
    A.tgt.push_back(v);
    A.degree.push_back(0);
    A.idem.push_back(v);
    A.word.push_back({});
    where.emplace_back(0, v);
  }
  std::map<std::pair<int, int>, int> basis_of;
  for (std::size_t n = 1; n < deg.size(); ++n)
    for (int i : deg[n].basis) {
      const auto& p = deg[n].paths[i];
      basis_of[{static_cast<int>(n), i}] = A.dim();
      A.labels.push_back(detail::path_label(q, p));
      A.src.push_back(pstart(p));
      A.tgt.push_back(pend(p));
      A.degree.push_back(static_cast<int>(n));
      where.emplace_back(static_cast<int>(n), i);
      // b = last arrow * ... * first arrow
      std::vector<int> w;
      for (std::size_t k = p.size(); k-- > 0;) w.push_back(p[k]);
      A.word.push_back(w);
    }
  // Arrows as generators: generator index = arrow index; an arrow killed by
  // the relations is impossible for admissible ideals.
  for (std::size_t a = 0; a < q.arrows.size(); ++a) A.gens.push_back(basis_of.at({1, deg[1].index.at(Path{static_cast<int>(a)})}));

  // Normal form of a path of length n as sparse basis combination.
  auto normal_form = [&](const Path& p) {
    typename FinDimAlgebra<F>::Sparse out;
    int n = static_cast<int>(p.size());
    if (n >= static_cast<int>(deg.size())) return out;
    const auto& d = deg[n];
    Vec<F> v(d.paths.size(), f.zero());
    v[d.index.at(p)] = f.one();
    d.ech->reduce(v);
    for (int i : d.basis)
      if (!f.is_zero(v[i])) out.emplace_back(basis_of.at({n, i}), v[i]);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };
  auto path_of = [&](int b) -> Path {
    auto [n, i] = where[b];
    return n == 0 ? Path{} : deg[n].paths[i];
  };

  int D = A.dim();
  A.table.assign(static_cast<std::size_t>(D) * D, {});
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      if (A.src[i] != A.tgt[j]) continue;
      auto& cell = A.table[static_cast<std::size_t>(i) * D + j];
      if (A.degree[i] == 0) {
        cell.emplace_back(j, f.one());
      } else if (A.degree[j] == 0) {
        cell.emplace_back(i, f.one());
      } else {
        Path x = path_of(j);
        auto y = path_of(i);
        x.insert(x.end(), y.begin(), y.end());
        cell = normal_form(x);
      }
    }
  A.build_pieces();
  return A;
}

// Jacobson radical via the trace form tr(L_{xy}); valid in characteristic 0
// or characteristic above the dimension.
template <class F>
std::vector<Vec<F>> radical_by_trace(const F& f, int dim, const std::function<Vec<F>(const Vec<F>&, const Vec<F>&)>& mul) {
  if (f.characteristic() != 0 && static_cast<int>(f.characteristic()) <= dim)
    throw BadField("characteristic must exceed the algebra dimension for radical computation");
  auto unit = [&](int i) {
    Vec<F> v(dim, f.zero());
    v[i] = f.one();
    return v;
  };
  // trace of left multiplication by basis element k
  std::vector<typename F::elem> tr(dim, f.zero());
  for (int k = 0; k < dim; ++k)
    for (int j = 0; j < dim; ++j) tr[k] = f.add(tr[k], mul(unit(k), unit(j))[j]);
  Mat<F> G(dim, dim, f.zero());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      auto p = mul(unit(i), unit(j));
      auto s = f.zero();
      for (int k = 0; k < dim; ++k) s = f.add(s, f.mul(p[k], tr[k]));
      G(i, j) = s;
    }
  return nullspace(f, G);
}

// Builds a FinDimAlgebra from structure constants in an arbitrary basis
// together with a complete set of primitive orthogonal idempotents.  The
// basis is re-chosen to be adapted to the idempotents and the radical.
template <class F>
FinDimAlgebra<F> abstract_algebra(const F& f, int dim, const std::vector<Vec<F>>& mult_table,
                                  const std::vector<Vec<F>>& idempotents, std::string name = "abstract") {
  auto mul = [&](const Vec<F>& x, const Vec<F>& y) {
    Vec<F> r(dim, f.zero());
    for (int i = 0; i < dim; ++i) {
      if (f.is_zero(x[i])) continue;
      for (int j = 0; j < dim; ++j) {
        if (f.is_zero(y[j])) continue;
        axpy(f, r, f.mul(x[i], y[j]), mult_table[static_cast<std::size_t>(i) * dim + j]);
      }
    }
    return r;
  };
  FinDimAlgebra<F> A;
  A.field = f;
  A.name = std::move(name);
  int nv = static_cast<int>(idempotents.size());
  if (dim == 0) {
    A.build_pieces();
    return A;
  }
  auto rad = radical_by_trace<F>(f, dim, mul);
  Echelon<F> radech(f, dim);
  for (const auto& r : rad) radech.insert(r);

  std::vector<Vec<F>> newb;
  std::vector<int> ns, nt;
  for (int v = 0; v < nv; ++v) {
    newb.push_back(idempotents[v]);
    ns.push_back(v);
    nt.push_back(v);
  }
  for (int t = 0; t < nv; ++t)
    for (int s = 0; s < nv; ++s) {
      // e_t (rad) e_s
      Echelon<F> piece(f, dim);
      for (const auto& r : rad) {
        auto x = mul(mul(idempotents[t], r), idempotents[s]);
        if (piece.insert(x)) {
          newb.push_back(x);
          ns.push_back(s);
          nt.push_back(t);
        }
      }
      // dimension check: e_t A e_s = e_t rad e_s (+ k e_t when s == t)
      Echelon<F> full(f, dim);
      for (int b = 0; b < dim; ++b) {
        Vec<F> u(dim, f.zero());
        u[b] = f.one();
        full.insert(mul(mul(idempotents[t], u), idempotents[s]));
      }
      std::size_t expect = piece.size() + (s == t ? 1 : 0);
      if (full.size() != expect) throw InputError("algebra is not split basic with respect to the given idempotents");
    }
  if (static_cast<int>(newb.size()) != dim) throw InputError("idempotents are not complete");
  Mat<F> P = from_columns(f, dim, newb);  // new basis in old coordinates
  auto Pinv = inverse(f, P);
  if (!Pinv) throw InputError("idempotents are not complete");
  A.src = ns;
  A.tgt = nt;
  A.degree.assign(dim, 1);
  for (int v = 0; v < nv; ++v) {
    A.idem.push_back(v);
    A.degree[v] = 0;
    A.vertex_names.push_back(std::to_string(v + 1));
  }
  for (int b = 0; b < dim; ++b) A.labels.push_back(b < nv ? "e" + std::to_string(b + 1) : "r" + std::to_string(b - nv + 1));
  A.word.assign(dim, {});
  for (int b = nv; b < dim; ++b) {
    A.word[b] = {static_cast<int>(A.gens.size())};
    A.gens.push_back(b);
  }
  A.table.assign(static_cast<std::size_t>(dim) * dim, {});
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      auto c = mat_vec(f, *Pinv, mul(newb[i], newb[j]));
      auto& cell = A.table[static_cast<std::size_t>(i) * dim + j];
      for (int k = 0; k < dim; ++k)
        if (!f.is_zero(c[k])) cell.emplace_back(k, c[k]);
    }
  A.build_pieces();
  return A;
}

}  // namespace siltlab
