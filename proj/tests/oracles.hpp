#pragma once

// Brute-force reference computations used by the tests.  They only rely on
// the E-tables, the module structure maps and plain linear algebra.

#include <map>
#include <string>
#include <vector>

#include <siltlab/io.hpp>
#include <siltlab/thick.hpp>

namespace oracle {

using namespace siltlab;

inline std::string fixture(const std::string& name) { return std::string(SILTLAB_FIXTURES) + "/" + name + ".json"; }

template <class F = PrimeField>
FinDimAlgebra<F> load(const std::string& name, const F& f = PrimeField(101)) {
  return parse_algebra(read_json_file(fixture(name)), f);
}

// Paths of the quiver avoiding every (monomial) relation as a subword.
inline int monomial_path_count(const json& j, int max_len = 12) {
  std::map<std::string, std::pair<std::string, std::string>> arrows;
  for (const auto& a : j["arrows"]) arrows[a["name"]] = {a["from"], a["to"]};
  std::vector<std::vector<std::string>> rel;
  for (const auto& r : j["relations"]) rel.push_back(r["terms"][0]["path"].get<std::vector<std::string>>());
  auto bad = [&](const std::vector<std::string>& w) {
    for (const auto& r : rel)
      for (std::size_t s = 0; s + r.size() <= w.size(); ++s)
        if (std::equal(r.begin(), r.end(), w.begin() + s)) return true;
    return false;
  };
  int count = static_cast<int>(j["vertices"].size());
  // words read left to right in travel order
  std::vector<std::vector<std::string>> layer;
  for (const auto& [n, e] : arrows) layer.push_back({n});
  for (int len = 1; len <= max_len && !layer.empty(); ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& w : layer) {
      if (bad(w)) continue;
      ++count;
      for (const auto& [n, e] : arrows)
        if (e.first == arrows[w.back()].second) {
          auto v = w;
          v.push_back(n);
          next.push_back(v);
        }
    }
    layer = next;
  }
  return count;
}

// dim Hom(M, N) from the defining equations phi_t M_a = N_a phi_s.
template <class F>
int hom_dim(const Rep<F>& M, const Rep<F>& N) {
  const auto& A = *M.alg;
  const F& f = A.field;
  std::vector<int> off{0};
  for (std::size_t v = 0; v < M.dims.size(); ++v) off.push_back(off.back() + N.dims[v] * M.dims[v]);
  int unknowns = off.back();
  if (unknowns == 0) return 0;
  std::vector<Vec<F>> rows;
  for (std::size_t g = 0; g < A.gens.size(); ++g) {
    int b = A.gens[g];
    int s = A.src[b], t = A.tgt[b];
    const auto& Ma = M.act[g];
    const auto& Na = N.act[g];
    for (int r = 0; r < N.dims[t]; ++r)
      for (int c = 0; c < M.dims[s]; ++c) {
        Vec<F> row(unknowns, f.zero());
        // (phi_t Ma)(r,c) = sum_k phi_t(r,k) Ma(k,c)
        for (int k = 0; k < M.dims[t]; ++k) row[off[t] + r * M.dims[t] + k] = f.add(row[off[t] + r * M.dims[t] + k], Ma(k, c));
        // (Na phi_s)(r,c) = sum_k Na(r,k) phi_s(k,c)
        for (int k = 0; k < N.dims[s]; ++k) row[off[s] + k * M.dims[s] + c] = f.sub(row[off[s] + k * M.dims[s] + c], Na(r, k));
        rows.push_back(row);
      }
  }
  if (rows.empty()) return unknowns;
  Mat<F> E(rows.size(), unknowns, f.zero());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int k = 0; k < unknowns; ++k) E(i, k) = rows[i][k];
  return unknowns - static_cast<int>(rank(f, E));
}

// Pairwise E-compatible sets of self-compatible entries, the empty set included.
inline std::vector<Subset> compatible_sets(const std::vector<std::vector<int>>& ext, int exact_size = -1) {
  int n = static_cast<int>(ext.size());
  std::vector<Subset> out;
  for (unsigned long m = 0; m < (1ul << n); ++m) {
    Subset s;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(i);
    if (exact_size >= 0 && static_cast<int>(s.size()) != exact_size) continue;
    bool ok = true;
    for (int a : s)
      for (int b : s) ok = ok && ext[a][b] == 0;
    if (ok) out.push_back(s);
  }
  return out;
}

template <class F>
GMatrix g_of(const TwoTermUniverse<F>& T, const Subset& s) {
  GMatrix g;
  for (int i : s) g.push_back(T.entries[i].g);
  std::sort(g.rbegin(), g.rend());
  return g;
}

template <class F>
std::vector<Subset> torsion_by_scan(const Universe<F>& U, std::size_t ext_cap = 4) {
  std::vector<Subset> out;
  int n = static_cast<int>(U.size());
  for (unsigned long m = 0; m < (1ul << n); ++m) {
    Subset s;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(i);
    if (is_torsion_class(U, s, ext_cap)) out.push_back(s);
  }
  return out;
}

// All (x, y) with x^perp = y and ^perp y = x, found from every subset x.
inline std::vector<CotorsionPair> cotorsion_by_scan(const std::vector<std::vector<int>>& ext) {
  std::set<std::pair<Subset, Subset>> seen;
  int n = static_cast<int>(ext.size());
  for (unsigned long m = 0; m < (1ul << n); ++m) {
    Subset x;
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) x.push_back(i);
    auto y = perp_right(ext, x);
    if (perp_left(ext, y) == x) seen.insert({x, y});
  }
  std::vector<CotorsionPair> out;
  for (const auto& [x, y] : seen) out.push_back({x, y});
  return out;
}

// Nonnegative integer combination of the rows of g equal to theta, by search.
inline bool in_integer_cone(const GMatrix& g, const std::vector<int>& theta, int bound) {
  std::function<bool(std::size_t, std::vector<int>)> go = [&](std::size_t k, std::vector<int> rest) {
    if (k == g.size()) return std::all_of(rest.begin(), rest.end(), [](int v) { return v == 0; });
    for (int t = 0; t <= bound; ++t) {
      if (go(k + 1, rest)) return true;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= g[k][i];
    }
    return false;
  };
  return go(0, theta);
}

inline std::vector<std::vector<int>> lattice_box(int n, int r) {
  std::vector<std::vector<int>> pts{{}};
  for (int d = 0; d < n; ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& p : pts)
      for (int v = -r; v <= r; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(q);
      }
    pts = next;
  }
  return pts;
}

}  // namespace oracle
