#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "two_term.hpp"

namespace siltlab {

using GMatrix = std::vector<std::vector<int>>;  // sorted g-vectors

inline std::string gmatrix_str(const GMatrix& g) {
  std::string s = "{";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + gvec_str(g[i]);
  return s + "}";
}

// A basic presilting object: indecomposable minimal summands ordered by
// decreasing g-vector.
template <class F>
struct SiltingObject {
  std::vector<TwoTermComplex<F>> summands;
  GMatrix g;

  std::size_t size() const { return summands.size(); }
};

template <class F>
SiltingObject<F> make_silting_object(const FinDimAlgebra<F>& A, std::vector<TwoTermComplex<F>> parts) {
  std::vector<std::pair<std::vector<int>, TwoTermComplex<F>>> tagged;
  for (auto& p : parts) tagged.emplace_back(g_vector(A, p), std::move(p));
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  SiltingObject<F> S;
  for (auto& [g, p] : tagged) {
    S.g.push_back(g);
    S.summands.push_back(std::move(p));
  }
  return S;
}

template <class F>
TwoTermComplex<F> total(const FinDimAlgebra<F>& A, const SiltingObject<F>& S) {
  return direct_sum_all(A, S.summands);
}

// Pairwise non-isomorphic indecomposable summands of X (iso classes picked by
// explicit isomorphism search).
template <class F>
std::vector<TwoTermComplex<F>> basic_summands(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& parts, std::uint64_t seed = 0) {
  std::vector<TwoTermComplex<F>> out;
  for (const auto& p : parts) {
    bool dup = false;
    for (const auto& q : out)
      if (g_vector(A, p) == g_vector(A, q) && find_isomorphism(A, p, q, seed)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(p);
  }
  return out;
}

template <class F>
bool is_presilting(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  return ext_E(A, X, X).dim() == 0;
}

template <class F>
bool is_silting(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X, std::uint64_t seed = 0) {
  if (!is_presilting(A, X)) return false;
  return static_cast<int>(basic_summands(A, decompose_two_term(A, X, seed), seed).size()) == A.n();
}

template <class F>
TwoTermComplex<F> regular_stalk(const FinDimAlgebra<F>& A) {
  std::vector<int> v;
  for (int i = 0; i < A.n(); ++i) v.push_back(i);
  return stalk(A, v);
}

template <class F>
TwoTermComplex<F> regular_shift(const FinDimAlgebra<F>& A) {
  std::vector<int> v;
  for (int i = 0; i < A.n(); ++i) v.push_back(i);
  return shifted(A, v);
}

// ---------------------------------------------------------------------------
// Minimal approximations by add(U) for U a list of pairwise non-isomorphic
// indecomposables.

// Radical of End_K(X) for indecomposable X, as coordinate vectors in hom_K(X,X).
template <class F>
std::vector<Vec<F>> end_radical(const FinDimAlgebra<F>& A, const HomK<F>& H) {
  const F& f = A.field;
  std::size_t k = H.dim();
  if (k == 0) return {};
  std::vector<Vec<F>> table(k * k);
  std::vector<ChainMap<F>> b;
  for (std::size_t i = 0; i < k; ++i) b.push_back(H.basis(i));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) table[i * k + j] = H.coords(chain_compose(A, b[j], b[i]));  // b_i o b_j
  int dim = static_cast<int>(k);
  return radical_by_trace<F>(f, dim, [&](const Vec<F>& x, const Vec<F>& y) {
    Vec<F> r(k, f.zero());
    for (std::size_t i = 0; i < k; ++i) {
      if (f.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < k; ++j)
        if (!f.is_zero(y[j])) axpy(f, r, f.mul(x[i], y[j]), table[i * k + j]);
    }
    return r;
  });
}

template <class F>
struct Approximation {
  std::vector<int> mult;          // multiplicity of each U_i
  TwoTermComplex<F> object;       // the sum of copies of the U_i
  ChainMap<F> map;                // object -> Z (right) or Z -> object (left)
};

namespace detail {

template <class F>
ChainMap<F> stack_maps(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& srcs, const std::vector<ChainMap<F>>& maps, const TwoTermComplex<F>& Z, bool right) {
  // right: [m_1; m_2; ...] from the sum; left: [m_1, m_2, ...] into the sum
  TwoTermComplex<F> S = direct_sum_all(A, srcs);
  ChainMap<F> m = right ? chain_zero(A, S, Z) : chain_zero(A, Z, S);
  std::size_t om = 0, oz = 0;
  for (std::size_t k = 0; k < srcs.size(); ++k) {
    const auto& mk = maps[k];
    if (right) {
      for (std::size_t r = 0; r < srcs[k].minus.size(); ++r)
        for (std::size_t c = 0; c < Z.minus.size(); ++c) m.minus.at(om + r, c) = mk.minus.at(r, c);
      for (std::size_t r = 0; r < srcs[k].zero.size(); ++r)
        for (std::size_t c = 0; c < Z.zero.size(); ++c) m.zero.at(oz + r, c) = mk.zero.at(r, c);
    } else {
      for (std::size_t r = 0; r < Z.minus.size(); ++r)
        for (std::size_t c = 0; c < srcs[k].minus.size(); ++c) m.minus.at(r, om + c) = mk.minus.at(r, c);
      for (std::size_t r = 0; r < Z.zero.size(); ++r)
        for (std::size_t c = 0; c < srcs[k].zero.size(); ++c) m.zero.at(r, oz + c) = mk.zero.at(r, c);
    }
    om += srcs[k].minus.size();
    oz += srcs[k].zero.size();
  }
  return m;
}

}  // namespace detail

// Right add(U)-approximation of Z.  Minimal: multiplicity of U_i is the
// dimension of Hom(U_i, Z) modulo maps factoring radically through add(U).
template <class F>
Approximation<F> right_approximation(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& U, const TwoTermComplex<F>& Z, bool minimal_only = true) {
  std::size_t n = U.size();
  std::vector<HomK<F>> toZ;
  for (const auto& u : U) toZ.push_back(hom_K(A, u, Z));
  std::vector<TwoTermComplex<F>> srcs;
  std::vector<ChainMap<F>> maps;
  Approximation<F> ap;
  ap.mult.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& H = toZ[i];
    std::vector<Vec<F>> chosen;
    if (minimal_only && H.dim() > 0) {
      std::vector<Vec<F>> sub, all;
      for (std::size_t k = 0; k < n; ++k) {
        if (toZ[k].dim() == 0) continue;
        auto Hik = hom_K(A, U[i], U[k]);
        std::vector<ChainMap<F>> rad;
        if (k == i) {
          for (const auto& c : end_radical(A, Hik)) rad.push_back(Hik.lift(c));
        } else {
          for (std::size_t a = 0; a < Hik.dim(); ++a) rad.push_back(Hik.basis(a));
        }
        for (const auto& r : rad)
          for (std::size_t b = 0; b < toZ[k].dim(); ++b) sub.push_back(H.coords(chain_compose(A, r, toZ[k].basis(b))));
      }
      for (std::size_t a = 0; a < H.dim(); ++a) {
        Vec<F> u(H.dim(), A.field.zero());
        u[a] = A.field.one();
        all.push_back(u);
      }
      Quotient<F> q(A.field, H.dim(), sub, all);
      chosen = q.basis();
    } else {
      for (std::size_t a = 0; a < H.dim(); ++a) {
        Vec<F> u(H.dim(), A.field.zero());
        u[a] = A.field.one();
        chosen.push_back(u);
      }
    }
    ap.mult[i] = static_cast<int>(chosen.size());
    for (const auto& c : chosen) {
      srcs.push_back(U[i]);
      maps.push_back(H.lift(c));
    }
  }
  ap.object = direct_sum_all(A, srcs);
  ap.map = detail::stack_maps(A, srcs, maps, Z, true);
  return ap;
}

template <class F>
Approximation<F> left_approximation(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& U, const TwoTermComplex<F>& Z, bool minimal_only = true) {
  std::size_t n = U.size();
  std::vector<HomK<F>> fromZ;
  for (const auto& u : U) fromZ.push_back(hom_K(A, Z, u));
  std::vector<TwoTermComplex<F>> dsts;
  std::vector<ChainMap<F>> maps;
  Approximation<F> ap;
  ap.mult.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& H = fromZ[i];
    std::vector<Vec<F>> chosen, all;
    for (std::size_t a = 0; a < H.dim(); ++a) {
      Vec<F> u(H.dim(), A.field.zero());
      u[a] = A.field.one();
      all.push_back(u);
    }
    if (minimal_only && H.dim() > 0) {
      std::vector<Vec<F>> sub;
      for (std::size_t k = 0; k < n; ++k) {
        if (fromZ[k].dim() == 0) continue;
        auto Hki = hom_K(A, U[k], U[i]);
        std::vector<ChainMap<F>> rad;
        if (k == i) {
          for (const auto& c : end_radical(A, Hki)) rad.push_back(Hki.lift(c));
        } else {
          for (std::size_t a = 0; a < Hki.dim(); ++a) rad.push_back(Hki.basis(a));
        }
        for (const auto& r : rad)
          for (std::size_t b = 0; b < fromZ[k].dim(); ++b) sub.push_back(H.coords(chain_compose(A, fromZ[k].basis(b), r)));
      }
      chosen = Quotient<F>(A.field, H.dim(), sub, all).basis();
    } else {
      chosen = all;
    }
    ap.mult[i] = static_cast<int>(chosen.size());
    for (const auto& c : chosen) {
      dsts.push_back(U[i]);
      maps.push_back(H.lift(c));
    }
  }
  ap.object = direct_sum_all(A, dsts);
  ap.map = detail::stack_maps(A, dsts, maps, Z, false);
  return ap;
}

template <class F>
void require_presilting(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& U) {
  if (!is_presilting(A, direct_sum_all(A, U))) throw NotPresilting("object has self-extensions");
}

template <class F>
SiltingObject<F> complete_with(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& U, const TwoTermComplex<F>& V, std::uint64_t seed) {
  auto parts = U;
  for (auto& p : decompose_two_term(A, V, seed)) parts.push_back(p);
  return make_silting_object(A, basic_summands(A, parts, seed));
}

// T_U = U + Cocone(U' -> Lambda[1]) with U' -> Lambda[1] a minimal right
// add(U)-approximation.
template <class F>
SiltingObject<F> bongartz_complete(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& U, std::uint64_t seed = 0) {
  require_presilting(A, U);
  auto L1 = regular_shift(A);
  auto ap = right_approximation(A, U, L1);
  auto cc = cocone_of_map(A, ap.object, L1, ap.map);
  if (!cc) throw std::logic_error("Bongartz cocone left the two-term window");
  return complete_with(A, U, *cc.obj, seed);
}

// U + Cone(Lambda -> U') with Lambda -> U' a minimal left approximation.
template <class F>
SiltingObject<F> bongartz_cocomplete(const FinDimAlgebra<F>& A, const std::vector<TwoTermComplex<F>>& U, std::uint64_t seed = 0) {
  require_presilting(A, U);
  auto L = regular_stalk(A);
  auto ap = left_approximation(A, U, L);
  auto c = cone_of_map(A, L, ap.object, ap.map);
  if (!c) throw std::logic_error("co-Bongartz cone left the two-term window");
  return complete_with(A, U, *c.obj, seed);
}

template <class F>
int find_summand(const FinDimAlgebra<F>& A, const SiltingObject<F>& S, const TwoTermComplex<F>& X, std::uint64_t seed = 0) {
  auto g = g_vector(A, X);
  for (std::size_t i = 0; i < S.size(); ++i)
    if (S.g[i] == g && find_isomorphism(A, S.summands[i], X, seed)) return static_cast<int>(i);
  return -1;
}

// Exchange of summand k through a left (then right) approximation triangle.
template <class F>
SiltingObject<F> mutate(const FinDimAlgebra<F>& A, const SiltingObject<F>& T, std::size_t k, std::uint64_t seed = 0) {
  std::vector<TwoTermComplex<F>> rest;
  for (std::size_t i = 0; i < T.size(); ++i)
    if (i != k) rest.push_back(T.summands[i]);
  SiltingObject<F> R = make_silting_object(A, rest);
  auto pick = [&](const TwoTermComplex<F>& Y) -> std::optional<SiltingObject<F>> {
    std::vector<TwoTermComplex<F>> fresh;
    for (auto& p : decompose_two_term(A, Y, seed))
      if (find_summand(A, R, p, seed) < 0) fresh.push_back(p);
    fresh = basic_summands(A, fresh, seed);
    if (fresh.size() != 1 || find_isomorphism(A, fresh[0], T.summands[k], seed)) return std::nullopt;
    auto parts = rest;
    parts.push_back(fresh[0]);
    return make_silting_object(A, parts);
  };
  auto lap = left_approximation(A, rest, T.summands[k]);
  if (auto c = cone_of_map(A, T.summands[k], lap.object, lap.map))
    if (auto r = pick(*c.obj)) return *r;
  auto rap = right_approximation(A, rest, T.summands[k]);
  if (auto c = cocone_of_map(A, rap.object, T.summands[k], rap.map))
    if (auto r = pick(*c.obj)) return *r;
  throw ExchangeLeavesWindow("exchange of summand " + gvec_str(T.g[k]) + " leaves the two-term window");
}

template <class F>
struct MutationGraph {
  std::vector<SiltingObject<F>> nodes;
  std::vector<std::tuple<int, int, int>> edges;  // (from, to, summand index in from)
  bool complete = false;
  int cap = 0;
  int collisions = 0;           // key hits that needed an isomorphism check
  int collision_failures = 0;   // hits where no isomorphism was found
  int window_exits = 0;
};

// BFS over mutations from Lambda, nodes keyed by g-matrix.
template <class F>
MutationGraph<F> enumerate_silting(const FinDimAlgebra<F>& A, int cap, std::uint64_t seed = 0) {
  MutationGraph<F> G;
  G.cap = cap;
  std::map<GMatrix, int> index;
  auto start = make_silting_object(A, decompose_two_term(A, regular_stalk(A), seed));
  G.nodes.push_back(start);
  index[start.g] = 0;
  bool overflow = false;
  for (std::size_t q = 0; q < G.nodes.size(); ++q) {
    for (std::size_t k = 0; k < G.nodes[q].size(); ++k) {
      SiltingObject<F> T;
      try {
        T = mutate(A, G.nodes[q], k, seed);
      } catch (const ExchangeLeavesWindow&) {
        ++G.window_exits;
        continue;
      }
      auto it = index.find(T.g);
      if (it != index.end()) {
        ++G.collisions;
        const auto& old = G.nodes[it->second];
        for (std::size_t i = 0; i < T.size(); ++i)
          if (!find_isomorphism(A, T.summands[i], old.summands[i], seed)) {
            ++G.collision_failures;
            break;
          }
        G.edges.emplace_back(static_cast<int>(q), it->second, static_cast<int>(k));
        continue;
      }
      if (static_cast<int>(G.nodes.size()) >= cap) {
        overflow = true;
        continue;
      }
      index[T.g] = static_cast<int>(G.nodes.size());
      G.edges.emplace_back(static_cast<int>(q), static_cast<int>(G.nodes.size()), static_cast<int>(k));
      G.nodes.push_back(std::move(T));
    }
    if (overflow) break;
  }
  G.complete = !overflow;
  if (G.complete) {
    // canonical order: by sorted g-matrix, descending
    std::vector<int> order(G.nodes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return G.nodes[a].g > G.nodes[b].g; });
    std::vector<int> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    std::vector<SiltingObject<F>> nodes;
    for (int i : order) nodes.push_back(G.nodes[i]);
    G.nodes = std::move(nodes);
    for (auto& [a, b, k] : G.edges) {
      a = pos[a];
      b = pos[b];
    }
    std::sort(G.edges.begin(), G.edges.end());
  }
  return G;
}

struct GFiniteness {
  bool finite = false;
  int count = 0;  // n when finite, the cap otherwise
  std::string str() const { return (finite ? "finite(" : "unknown(") + std::to_string(count) + ")"; }
};

template <class F>
GFiniteness decide_g_finite(const MutationGraph<F>& G) {
  if (G.complete) return {true, static_cast<int>(G.nodes.size())};
  return {false, G.cap};
}

template <class F>
void require_complete(const MutationGraph<F>& G) {
  if (!G.complete) throw GraphIncomplete("mutation graph stopped at cap " + std::to_string(G.cap));
}

// All basic presilting objects as summand subsets of siltings (including 0),
// ordered by size then g-matrix.
template <class F>
std::vector<SiltingObject<F>> presiltings_from_siltings(const FinDimAlgebra<F>& A, const MutationGraph<F>& G) {
  require_complete(G);
  std::map<GMatrix, SiltingObject<F>> seen;
  for (const auto& T : G.nodes) {
    std::size_t n = T.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<TwoTermComplex<F>> parts;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) parts.push_back(T.summands[i]);
      auto S = make_silting_object(A, parts);
      seen.emplace(S.g, S);
    }
  }
  std::vector<SiltingObject<F>> out;
  for (auto& [g, S] : seen) out.push_back(S);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.g > b.g;
  });
  return out;
}

struct FanReport {
  int radius = 0;
  std::size_t points = 0;
  std::vector<std::vector<int>> uncovered;
};

// Nonnegative integer solution c of sum_i c_i g_i = theta, if any.
inline std::optional<std::vector<long long>> cone_coefficients(const GMatrix& g, const std::vector<int>& theta) {
  RationalField Q;
  std::size_t n = theta.size();
  if (g.empty()) {
    for (int t : theta)
      if (t != 0) return std::nullopt;
    return std::vector<long long>{};
  }
  Mat<RationalField> M(n, g.size(), Q.zero());
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) M(i, j) = g[j][i];
  Vec<RationalField> b;
  for (int t : theta) b.push_back(t);
  auto x = solve(Q, M, b);
  if (!x) return std::nullopt;
  if (!nullspace(Q, M).empty()) return std::nullopt;
  std::vector<long long> c;
  for (const auto& v : *x) {
    if (v < 0 || boost::multiprecision::denominator(v) != 1) return std::nullopt;
    c.push_back(static_cast<long long>(boost::multiprecision::numerator(v)));
  }
  return c;
}

template <class F>
FanReport fan_covers(const FinDimAlgebra<F>& A, const MutationGraph<F>& G, int radius) {
  require_complete(G);
  FanReport rep;
  rep.radius = radius;
  int n = A.n();
  std::vector<int> theta(n, -radius);
  for (;;) {
    ++rep.points;
    bool covered = false;
    for (const auto& T : G.nodes)
      if (cone_coefficients(T.g, theta)) {
        covered = true;
        break;
      }
    if (!covered) rep.uncovered.push_back(theta);
    int i = 0;
    while (i < n && theta[i] == radius) theta[i++] = -radius;
    if (i == n) break;
    ++theta[i];
  }
  return rep;
}

template <class F>
int silting_index(const MutationGraph<F>& G, const GMatrix& g) {
  for (std::size_t i = 0; i < G.nodes.size(); ++i)
    if (G.nodes[i].g == g) return static_cast<int>(i);
  return -1;
}

}  // namespace siltlab
